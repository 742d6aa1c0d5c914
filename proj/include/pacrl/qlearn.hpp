#ifndef PACRL_QLEARN_HPP
#define PACRL_QLEARN_HPP

#include <cstdint>
#include <set>
#include <vector>

#include "pacrl/channel.hpp"
#include "pacrl/pac.hpp"
#include "pacrl/rng.hpp"
#include "pacrl/scl.hpp"

namespace pacrl {

// Position in the (N-K+1) x (K+1) maze: row counts frozen decisions taken,
// col counts information decisions taken, row + col = current bit index.
struct MazeState {
    int row = 0;
    int col = 0;
    bool operator==(const MazeState&) const = default;
};

constexpr int kActionDown = 0;   // freeze the current bit index
constexpr int kActionRight = 1;  // allocate it to information

class QTable {
public:
    QTable(int block_length, int info_length);

    double at(MazeState s, int action) const { return values_[index(s, action)]; }
    double& at(MazeState s, int action) { return values_[index(s, action)]; }
    double max_at(MazeState s) const {
        return std::max(at(s, kActionDown), at(s, kActionRight));
    }

    int block_length() const { return n_block_; }
    int info_length() const { return n_info_; }
    int rows() const { return n_block_ - n_info_ + 1; }
    int cols() const { return n_info_ + 1; }
    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }

private:
    std::size_t index(MazeState s, int action) const;

    int n_block_;
    int n_info_;
    std::vector<double> values_;  // row-major (row, col, action), zero-initialized
};

// Split of indices around the boundary RM score t_b: scores above it are
// forced information, scores at it are left for the agent to decide.
struct Partition {
    std::set<int> info_set;      // forced information indices (grows during play)
    std::set<int> boundary_set;  // undecided indices with score == boundary_score
    int boundary_score = 0;
};

// boundary_score is the (N-K)-th smallest RM score (1-based count).
Partition rm_score_partition(int block_length, int info_length);

MazeState next_state(MazeState s, int action, int block_length, int info_length);

// With probability eps a uniform action, otherwise argmax with uniform
// random tie-break drawn from the same stream.
int epsilon_greedy(const QTable& q, MazeState s, double eps, Xoshiro256ss& rng);

struct ActionDecision {
    int action;
    bool explored;  // true when the epsilon-greedy policy was consulted
};

// One step of the action generation rules. Indices above the boundary force
// right, below force down; boundary indices are forced once the remaining
// budget allows no choice and are otherwise decided by epsilon-greedy, which
// moves the index out of boundary_set (into info_set on a right action).
// Passing rng = nullptr selects the deterministic greedy policy with ties
// resolved to the right action, as used for profile extraction.
ActionDecision select_action(const QTable& q, Partition& partition, int info_length,
                             int k, MazeState s, double eps, Xoshiro256ss* rng);

// Boundary-aware one-cell update: when the next state sits on the bottom row
// the bootstrap uses the right action's value, on the last column the down
// action's value, otherwise the max over actions.
void update_q(QTable& q, MazeState s, MazeState s_next, int action, double reward,
              double alpha, double gamma);

struct RewardResult {
    double reward;
    int first_error_seen;  // updated first-error flag f
};

// Reward for replayed pair k: +x when c_k = 0 else -x, minus the rank
// penalty z*(i-1), with an extra -x at the first erroneous bit.
RewardResult reward(const BitVector& best_v, int k, int allzero_rank,
                    int first_error_seen, double base_reward, double step_reward);

struct TrainConfig {
    int episodes = 20000;
    double alpha = 0.1;
    double epsilon_start = 0.2;
    double epsilon_end = 0.01;  // linear decay across episodes
    double gamma = 1.0;
    double base_reward = 1.0;  // x
    double step_reward = 0.25; // z
    double train_ebn0_db = 2.5;
    int list_size = 8;
    Kernel kernel = Kernel::exact;
    std::uint64_t seed = 1;
    bool freeze_noise = false;  // reuse episode 0's channel draw every episode
};

double epsilon_at(const TrainConfig& cfg, int episode);

struct EpisodeOutcome {
    std::vector<std::uint8_t> actions;  // one per step taken
    bool dropped = false;               // F: all-zero path left the list
    int allzero_rank = 0;               // i, valid when !dropped
    BitVector best_v;                   // c, valid when !dropped
    double cum_reward = 0.0;
    int explore_calls = 0;              // epsilon-greedy invocations
};

// Play one maze episode against the list decoder on a fresh all-zero-codeword
// transmission, then update Q: every visited pair on completion, or only the
// current pair with reward -2x when the all-zero path is dropped.
EpisodeOutcome run_episode(const CodeParams& code, const PrecoderPolynomial& w,
                           QTable& q, const TrainConfig& cfg, int episode_index);

struct EpisodeRecord {
    int episode;
    int dropped;        // F
    int allzero_rank;   // i (0 when dropped)
    double epsilon;
    double cum_reward;
};

struct TrainReport {
    std::vector<EpisodeRecord> episodes;
    long total_explore_calls = 0;
    int completed_episodes = 0;  // episodes with F = 0
    // Best completed episode: smallest all-zero rank, earliest episode wins ties.
    int best_episode = -1;
    int best_episode_rank = 0;
    std::vector<std::uint8_t> best_episode_actions;

    RateProfile best_episode_profile() const;
};

std::pair<QTable, TrainReport> train(const CodeParams& code,
                                     const PrecoderPolynomial& w,
                                     const TrainConfig& cfg);

// Greedy (eps = 0) replay of the action generation over a trained table.
// Deterministic; the result always contains the forced information set and
// has popcount exactly K.
RateProfile extract_profile(const QTable& q);

}  // namespace pacrl

#endif
