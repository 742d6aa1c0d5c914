#include "pacrl/scl.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace pacrl {

namespace {

double softplus(double t) {
    // log(1 + exp(t)) without overflow
    return std::max(t, 0.0) + std::log1p(std::exp(-std::abs(t)));
}

}  // namespace

double pm_penalty(double lambda, std::uint8_t u) {
    // log(1 + exp(-(1-2u) * lambda))
    return softplus(u ? lambda : -lambda);
}

double llr_combine_f(double a, double b, Kernel kernel) {
    const double sign = ((a < 0) != (b < 0)) ? -1.0 : 1.0;
    const double mag = std::min(std::abs(a), std::abs(b));
    if (kernel == Kernel::min_sum) return sign * mag;
    return sign * mag + std::log1p(std::exp(-std::abs(a + b))) -
           std::log1p(std::exp(-std::abs(a - b)));
}

DecoderSession::DecoderSession(std::vector<double> channel_llrs, DecoderConfig config)
    : n_block_(static_cast<int>(channel_llrs.size())),
      n_stages_(0),
      cfg_(std::move(config)),
      chan_llr_(std::move(channel_llrs)) {
    if (n_block_ < 2 || (n_block_ & (n_block_ - 1)) != 0)
        throw std::invalid_argument("channel LLR vector length must be a power of two");
    if (cfg_.list_size < 1) throw std::invalid_argument("list size must be >= 1");
    while ((1 << n_stages_) < n_block_) ++n_stages_;
    llr_offset_.resize(n_stages_);
    std::size_t offset = 0;
    for (int s = 1; s <= n_stages_; ++s) {
        llr_offset_[s - 1] = offset;
        offset += std::size_t{1} << (n_stages_ - s);
    }
    paths_.reserve(2 * cfg_.list_size);
    paths_.push_back(make_root());
}

DecoderSession::Path DecoderSession::make_root() const {
    Path p;
    p.v_hist.reserve(n_block_);
    p.u_hist.reserve(n_block_);
    p.reg.assign(std::max(cfg_.precoder.length() - 1, 0), 0);
    p.llr.assign(n_block_ - 1, 0.0);
    p.csum.assign(2 * (n_block_ - 1), 0);
    return p;
}

std::uint8_t DecoderSession::conv_feed_zero(const Path& p) const {
    const auto& taps = cfg_.precoder.taps();
    std::uint8_t acc = 0;
    for (std::size_t j = 1; j < taps.size(); ++j)
        acc ^= static_cast<std::uint8_t>(taps[j] & p.reg[j - 1]);
    return acc;
}

void DecoderSession::append_bit(Path& p, std::uint8_t v, std::uint8_t u) {
    p.v_hist.push_back(v);
    p.u_hist.push_back(u);
    if (!p.reg.empty()) {
        for (std::size_t j = p.reg.size() - 1; j > 0; --j) p.reg[j] = p.reg[j - 1];
        p.reg[0] = v;
    }
    if (v) p.allzero = false;
    csum_at(p, n_stages_)[k_ % 2] = u;
}

// Stage s works on width W = 2^(n-s) values; the lower stage holds 2W. The
// natural (non-bit-reversed) order splits the lower stage into halves, so
// f/g combine lower[beta] with lower[beta + W]. Partial sums at stage s are
// stored as csum[phase * W + beta], phase being the stage-local bit parity.
void DecoderSession::compute_llr(Path& p, int stage, int phase) const {
    if (stage > 1 && phase % 2 == 0) compute_llr(p, stage - 1, phase >> 1);
    const double* lower = (stage == 1) ? chan_llr_.data() : llr_at(p, stage - 1);
    double* out = llr_at(p, stage);
    const std::uint8_t* csum = csum_at(p, stage);
    const std::size_t width = std::size_t{1} << (n_stages_ - stage);
    if (phase % 2 == 0) {
        for (std::size_t beta = 0; beta < width; ++beta)
            out[beta] = llr_combine_f(lower[beta], lower[beta + width], cfg_.kernel);
    } else {
        for (std::size_t beta = 0; beta < width; ++beta)
            out[beta] = llr_combine_g(lower[beta], lower[beta + width], csum[beta]);
    }
}

void DecoderSession::propagate_csums(Path& p, int stage, int phase) const {
    // phase is odd: both stage-local halves are decided, so fold their
    // re-encoded output into the parent's slot for parity psi % 2
    const int psi = phase >> 1;
    if (stage > 1) {
        const std::uint8_t* src = csum_at(p, stage);
        std::uint8_t* dst = csum_at(p, stage - 1);
        const std::size_t width = std::size_t{1} << (n_stages_ - stage);
        const std::size_t base = (psi % 2) * 2 * width;
        for (std::size_t beta = 0; beta < width; ++beta) {
            dst[base + beta] = static_cast<std::uint8_t>(src[beta] ^ src[width + beta]);
            dst[base + width + beta] = src[width + beta];
        }
    }
    if (psi % 2 == 1 && stage > 1) propagate_csums(p, stage - 1, psi);
}

bool DecoderSession::allzero_alive() const {
    for (const auto& p : paths_)
        if (p.allzero) return true;
    return false;
}

std::vector<double> DecoderSession::path_metrics() const {
    std::vector<double> pms;
    pms.reserve(paths_.size());
    for (const auto& p : paths_) pms.push_back(p.pm);
    return pms;
}

StepReport DecoderSession::step(bool frozen) {
    if (k_ >= n_block_) throw std::runtime_error("decoder stepped past the last bit");

    for (auto& p : paths_) compute_llr(p, n_stages_, k_);

    if (frozen) {
        for (auto& p : paths_) {
            const std::uint8_t u = conv_feed_zero(p);
            p.pm += pm_penalty(decision_llr(p), u);
            append_bit(p, 0, u);
        }
    } else {
        struct Fork {
            double pm;
            std::uint64_t order;
            std::uint32_t parent;
            std::uint8_t v;
        };
        std::vector<Fork> forks;
        forks.reserve(2 * paths_.size());
        for (std::uint32_t idx = 0; idx < paths_.size(); ++idx) {
            Path& p = paths_[idx];
            const double lambda = decision_llr(p);
            const std::uint8_t u0 = conv_feed_zero(p);
            forks.push_back({p.pm + pm_penalty(lambda, u0), p.order, idx, 0});
            forks.push_back({p.pm + pm_penalty(lambda, static_cast<std::uint8_t>(u0 ^ 1)),
                             p.order, idx, 1});
        }
        std::sort(forks.begin(), forks.end(), [](const Fork& a, const Fork& b) {
            if (a.pm != b.pm) return a.pm < b.pm;
            if (a.order != b.order) return a.order < b.order;
            return a.v < b.v;
        });
        if (forks.size() > static_cast<std::size_t>(cfg_.list_size))
            forks.resize(cfg_.list_size);

        std::vector<std::uint8_t> fork_count(paths_.size(), 0);
        for (const auto& f : forks) ++fork_count[f.parent];
        std::vector<std::uint8_t> remaining = fork_count;

        std::vector<Path> survivors;
        survivors.reserve(forks.size());
        for (const auto& f : forks) {
            Path& parent = paths_[f.parent];
            const std::uint8_t u0 = conv_feed_zero(parent);
            // When both children survive, v = 0 continues under the parent's
            // creation order and the v = 1 sibling gets a fresh one.
            const bool fresh_order = fork_count[f.parent] == 2 && f.v == 1;
            Path child = (--remaining[f.parent] == 0) ? std::move(parent) : parent;
            child.pm = f.pm;
            if (fresh_order) child.order = next_order_++;
            append_bit(child, f.v, f.v ? static_cast<std::uint8_t>(u0 ^ 1) : u0);
            survivors.push_back(std::move(child));
        }
        paths_ = std::move(survivors);
    }

    if (k_ % 2 == 1)
        for (auto& p : paths_) propagate_csums(p, n_stages_, k_);

    ++k_;
    return {allzero_alive(), static_cast<int>(paths_.size())};
}

DecodeResult DecoderSession::finalize() const {
    if (k_ != n_block_)
        throw std::runtime_error("finalize requires all bits to be stepped");

    std::vector<std::size_t> ranking(paths_.size());
    std::iota(ranking.begin(), ranking.end(), std::size_t{0});
    std::sort(ranking.begin(), ranking.end(), [this](std::size_t a, std::size_t b) {
        if (paths_[a].pm != paths_[b].pm) return paths_[a].pm < paths_[b].pm;
        return paths_[a].order < paths_[b].order;
    });

    DecodeResult result;
    result.candidates.reserve(paths_.size());
    for (std::size_t rank = 0; rank < ranking.size(); ++rank) {
        const Path& p = paths_[ranking[rank]];
        if (p.allzero) result.allzero_rank = static_cast<int>(rank) + 1;
        result.candidates.push_back(
            {p.pm, p.v_hist, p.u_hist, polar_transform(p.u_hist)});
    }
    return result;
}

DecodeResult decode(const std::vector<double>& llrs, const RateProfile& profile,
                    const DecoderConfig& config) {
    if (profile.block_length() != static_cast<int>(llrs.size()))
        throw std::invalid_argument("profile length must match LLR vector length");
    DecoderSession session(llrs, config);
    for (int k = 0; k < profile.block_length(); ++k) session.step(!profile.is_info(k));
    return session.finalize();
}

}  // namespace pacrl
