#ifndef PACRL_SCL_HPP
#define PACRL_SCL_HPP

#include <cstdint>
#include <vector>

#include "pacrl/pac.hpp"

namespace pacrl {

enum class Kernel {
    exact,    // f(a,b) = 2 atanh(tanh(a/2) tanh(b/2)), stable log-domain form
    min_sum,  // f(a,b) = sign(a) sign(b) min(|a|,|b|)
};

struct DecoderConfig {
    int list_size = 8;
    Kernel kernel = Kernel::exact;
    PrecoderPolynomial precoder{};  // w = [1] decodes a plain polar code
};

struct StepReport {
    bool allzero_alive;
    int active_paths;
};

struct Candidate {
    double path_metric;
    BitVector v;  // carrier bits as decided
    BitVector u;  // precoded bits
    BitVector x;  // codeword
};

struct DecodeResult {
    std::vector<Candidate> candidates;  // ascending path metric
    int allzero_rank = 0;               // 1-based rank of the all-zero path, 0 if dropped

    bool allzero_alive() const { return allzero_rank > 0; }
    const Candidate& best() const { return candidates.front(); }
};

// Successive cancellation list decoding driven one bit index at a time. The
// caller decides per index whether it is frozen, which lets a code
// construction search reuse the decoder without a fixed rate-profile.
class DecoderSession {
public:
    DecoderSession(std::vector<double> channel_llrs, DecoderConfig config);

    // Decide bit v_k for every surviving path. Frozen forces v_k = 0; info
    // branches each path on v_k in {0,1} and keeps the list_size best paths
    // by path metric (ties broken by path creation order, then branch bit).
    StepReport step(bool frozen);

    DecodeResult finalize() const;  // requires all N bits stepped

    int step_index() const { return k_; }
    int block_length() const { return n_block_; }
    int active_paths() const { return static_cast<int>(paths_.size()); }
    bool allzero_alive() const;
    std::vector<double> path_metrics() const;  // unsorted, one per active path

private:
    struct Path {
        double pm = 0.0;
        std::uint64_t order = 0;  // creation order, for deterministic ties
        bool allzero = true;
        BitVector v_hist;
        BitVector u_hist;
        BitVector reg;  // last p-1 carrier bits, reg[0] = v_{k-1}
        // Working arrays for stages 1..n, flattened so that cloning a path
        // is two block copies: stage s starts at llr_offset_[s-1] and holds
        // 2^(n-s) values; csum holds twice as many per stage.
        std::vector<double> llr;
        BitVector csum;
    };

    Path make_root() const;
    double* llr_at(Path& p, int stage) const { return p.llr.data() + llr_offset_[stage - 1]; }
    std::uint8_t* csum_at(Path& p, int stage) const {
        return p.csum.data() + 2 * llr_offset_[stage - 1];
    }
    double decision_llr(Path& p) const { return *llr_at(p, n_stages_); }
    void compute_llr(Path& p, int stage, int phase) const;
    void propagate_csums(Path& p, int stage, int phase) const;
    std::uint8_t conv_feed_zero(const Path& p) const;    // u_k given v_k = 0
    void append_bit(Path& p, std::uint8_t v, std::uint8_t u);

    int n_block_;
    int n_stages_;
    DecoderConfig cfg_;
    std::vector<double> chan_llr_;
    std::vector<std::size_t> llr_offset_;  // per stage, stage 1 first
    std::vector<Path> paths_;
    int k_ = 0;
    std::uint64_t next_order_ = 1;
};

// One-shot decode: index k is frozen iff it is not in the profile.
DecodeResult decode(const std::vector<double>& llrs, const RateProfile& profile,
                    const DecoderConfig& config);

// Path metric penalty for deciding bit u against decision LLR lambda.
double pm_penalty(double lambda, std::uint8_t u);

double llr_combine_f(double a, double b, Kernel kernel);
inline double llr_combine_g(double a, double b, std::uint8_t partial_sum) {
    return (partial_sum ? -a : a) + b;
}

}  // namespace pacrl

#endif
