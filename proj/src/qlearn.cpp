#include "pacrl/qlearn.hpp"

#include <algorithm>
#include <stdexcept>

namespace pacrl {

namespace {

constexpr std::uint64_t kEpisodeNoiseStream = 0x65706E6F697365ULL;
constexpr std::uint64_t kEpisodeActionStream = 0x657061637473ULL;

}  // namespace

QTable::QTable(int block_length, int info_length)
    : n_block_(block_length), n_info_(info_length) {
    if (info_length <= 0 || info_length >= block_length)
        throw std::invalid_argument("QTable requires 0 < K < N");
    values_.assign(static_cast<std::size_t>(rows()) * cols() * 2, 0.0);
}

std::size_t QTable::index(MazeState s, int action) const {
    if (s.row < 0 || s.row >= rows() || s.col < 0 || s.col >= cols())
        throw std::out_of_range("maze state outside the grid");
    if (action != kActionDown && action != kActionRight)
        throw std::out_of_range("action must be 0 or 1");
    return (static_cast<std::size_t>(s.row) * cols() + s.col) * 2 + action;
}

Partition rm_score_partition(int block_length, int info_length) {
    if (info_length <= 0 || info_length >= block_length)
        throw std::invalid_argument("partition requires 0 < K < N");
    std::vector<int> scores(block_length);
    for (int i = 0; i < block_length; ++i) scores[i] = rm_score(i);
    std::vector<int> sorted = scores;
    std::sort(sorted.begin(), sorted.end());
    Partition part;
    part.boundary_score = sorted[block_length - info_length - 1];
    for (int i = 0; i < block_length; ++i) {
        if (scores[i] > part.boundary_score) part.info_set.insert(i);
        else if (scores[i] == part.boundary_score) part.boundary_set.insert(i);
    }
    return part;
}

MazeState next_state(MazeState s, int action, int block_length, int info_length) {
    if (action == kActionDown) {
        if (s.row >= block_length - info_length)
            throw std::out_of_range("down action from the bottom row");
        return {s.row + 1, s.col};
    }
    if (action == kActionRight) {
        if (s.col >= info_length)
            throw std::out_of_range("right action from the last column");
        return {s.row, s.col + 1};
    }
    throw std::invalid_argument("action must be 0 or 1");
}

int epsilon_greedy(const QTable& q, MazeState s, double eps, Xoshiro256ss& rng) {
    if (eps > 0.0 && rng.coin(eps)) return static_cast<int>(rng.below(2));
    const double down = q.at(s, kActionDown);
    const double right = q.at(s, kActionRight);
    if (down == right) return static_cast<int>(rng.below(2));
    return right > down ? kActionRight : kActionDown;
}

ActionDecision select_action(const QTable& q, Partition& partition, int info_length,
                             int k, MazeState s, double eps, Xoshiro256ss* rng) {
    if (partition.boundary_set.count(k)) {
        const int assigned = static_cast<int>(partition.info_set.size());
        const int undecided = static_cast<int>(partition.boundary_set.size());
        if (assigned == info_length) return {kActionDown, false};
        if (assigned + undecided == info_length) return {kActionRight, false};
        int action;
        if (rng) {
            action = epsilon_greedy(q, s, eps, *rng);
        } else {
            // greedy extraction: ties prefer the information action
            action = q.at(s, kActionRight) >= q.at(s, kActionDown) ? kActionRight
                                                                   : kActionDown;
        }
        partition.boundary_set.erase(k);
        if (action == kActionRight) partition.info_set.insert(k);
        return {action, true};
    }
    if (partition.info_set.count(k)) return {kActionRight, false};
    return {kActionDown, false};
}

void update_q(QTable& q, MazeState s, MazeState s_next, int action, double reward,
              double alpha, double gamma) {
    const int bottom_row = q.block_length() - q.info_length();
    double bootstrap;
    if (s_next.row == bottom_row) bootstrap = q.at(s_next, kActionRight);
    else if (s_next.col == q.info_length()) bootstrap = q.at(s_next, kActionDown);
    else bootstrap = q.max_at(s_next);
    double& cell = q.at(s, action);
    cell += alpha * (reward + gamma * bootstrap - cell);
}

RewardResult reward(const BitVector& best_v, int k, int allzero_rank,
                    int first_error_seen, double base_reward, double step_reward) {
    if (allzero_rank < 1) throw std::invalid_argument("all-zero rank must be >= 1");
    const double rank_penalty = step_reward * (allzero_rank - 1);
    if (best_v.at(k) == 0) return {base_reward - rank_penalty, first_error_seen};
    double r = -base_reward - rank_penalty;
    if (first_error_seen == 0) r -= base_reward;
    return {r, 1};
}

double epsilon_at(const TrainConfig& cfg, int episode) {
    if (cfg.episodes <= 1) return cfg.epsilon_start;
    const double t = static_cast<double>(episode) / (cfg.episodes - 1);
    return cfg.epsilon_start + t * (cfg.epsilon_end - cfg.epsilon_start);
}

EpisodeOutcome run_episode(const CodeParams& code, const PrecoderPolynomial& w,
                           QTable& q, const TrainConfig& cfg, int episode_index) {
    const int n_block = code.block_length;
    const int n_info = code.info_length;
    const double eps = epsilon_at(cfg, episode_index);

    // Fresh all-zero-codeword transmission at the training SNR.
    ChannelConfig channel;
    channel.ebn0_db = cfg.train_ebn0_db;
    channel.rate = code.rate();
    channel.seed = mix_seed(cfg.seed, kEpisodeNoiseStream);
    const std::uint64_t noise_frame = cfg.freeze_noise ? 0 : episode_index;
    const double sigma = sigma_from_ebn0(channel.ebn0_db, channel.rate);
    const auto y = transmit(BitVector(n_block, 0), channel, noise_frame);
    const auto llrs = llr_vector(y, sigma * sigma);

    DecoderConfig decoder;
    decoder.list_size = cfg.list_size;
    decoder.kernel = cfg.kernel;
    decoder.precoder = w;
    DecoderSession session(llrs, decoder);

    Xoshiro256ss action_rng(
        mix_seed(mix_seed(cfg.seed, kEpisodeActionStream), episode_index));
    Partition partition = rm_score_partition(n_block, n_info);

    EpisodeOutcome outcome;
    std::vector<MazeState> states;
    states.reserve(n_block + 1);
    MazeState s;
    states.push_back(s);

    for (int k = 0; k < n_block; ++k) {
        const ActionDecision decision =
            select_action(q, partition, n_info, k, s, eps, &action_rng);
        if (decision.explored) ++outcome.explore_calls;
        const int a = decision.action;
        const MazeState s_next = next_state(s, a, n_block, n_info);
        const StepReport report = session.step(a == kActionDown);
        outcome.actions.push_back(static_cast<std::uint8_t>(a));
        if (a == kActionRight && !report.allzero_alive) {
            const double r = -2.0 * cfg.base_reward;
            update_q(q, s, s_next, a, r, cfg.alpha, cfg.gamma);
            outcome.dropped = true;
            outcome.cum_reward = r;
            return outcome;
        }
        states.push_back(s_next);
        s = s_next;
    }

    const DecodeResult result = session.finalize();
    outcome.allzero_rank = result.allzero_rank;
    outcome.best_v = result.best().v;

    // Replay the whole trajectory now that the final list is known.
    int first_error_seen = 0;
    for (int k = 0; k < n_block; ++k) {
        const auto [r, f] = reward(outcome.best_v, k, outcome.allzero_rank,
                                   first_error_seen, cfg.base_reward, cfg.step_reward);
        first_error_seen = f;
        update_q(q, states[k], states[k + 1], outcome.actions[k], r, cfg.alpha,
                 cfg.gamma);
        outcome.cum_reward += r;
    }
    return outcome;
}

RateProfile TrainReport::best_episode_profile() const {
    if (best_episode < 0)
        throw std::runtime_error("no completed episode recorded");
    BitVector bits;
    bits.reserve(best_episode_actions.size());
    for (auto a : best_episode_actions) bits.push_back(a);
    return RateProfile(std::move(bits));
}

std::pair<QTable, TrainReport> train(const CodeParams& code,
                                     const PrecoderPolynomial& w,
                                     const TrainConfig& cfg) {
    if (cfg.episodes < 0) throw std::invalid_argument("episodes must be >= 0");
    QTable q(code.block_length, code.info_length);
    TrainReport report;
    report.episodes.reserve(cfg.episodes);
    for (int e = 0; e < cfg.episodes; ++e) {
        const EpisodeOutcome outcome = run_episode(code, w, q, cfg, e);
        report.total_explore_calls += outcome.explore_calls;
        if (!outcome.dropped) {
            ++report.completed_episodes;
            if (report.best_episode < 0 || outcome.allzero_rank < report.best_episode_rank) {
                report.best_episode = e;
                report.best_episode_rank = outcome.allzero_rank;
                report.best_episode_actions = outcome.actions;
            }
        }
        report.episodes.push_back({e, outcome.dropped ? 1 : 0, outcome.allzero_rank,
                                   epsilon_at(cfg, e), outcome.cum_reward});
    }
    return {std::move(q), std::move(report)};
}

RateProfile extract_profile(const QTable& q) {
    const int n_block = q.block_length();
    const int n_info = q.info_length();
    Partition partition = rm_score_partition(n_block, n_info);
    BitVector bits(n_block, 0);
    MazeState s;
    for (int k = 0; k < n_block; ++k) {
        const ActionDecision decision =
            select_action(q, partition, n_info, k, s, 0.0, nullptr);
        bits[k] = static_cast<std::uint8_t>(decision.action);
        s = next_state(s, decision.action, n_block, n_info);
    }
    return RateProfile(std::move(bits));
}

}  // namespace pacrl
