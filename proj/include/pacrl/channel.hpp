#ifndef PACRL_CHANNEL_HPP
#define PACRL_CHANNEL_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "pacrl/pac.hpp"
#include "pacrl/scl.hpp"

namespace pacrl {

// BI-AWGN with BPSK mapping 0 -> +1, 1 -> -1 at Eb/N0 given in dB.
struct ChannelConfig {
    double ebn0_db = 0.0;
    double rate = 0.5;
    std::uint64_t seed = 0;
    bool noise = true;  // false transmits y = +-1 exactly
};

// Noise standard deviation: sigma^2 = 1 / (2 R 10^(ebn0_db/10)).
double sigma_from_ebn0(double ebn0_db, double rate);

// y_j = (1 - 2 x_j) + n_j, n_j ~ N(0, sigma^2). The noise stream depends only
// on (cfg.seed, frame_index), so frames can be simulated in any order.
std::vector<double> transmit(const BitVector& x, const ChannelConfig& cfg,
                             std::uint64_t frame_index);

// llr_j = 2 y_j / sigma^2, positive favoring bit 0.
std::vector<double> llr_vector(const std::vector<double>& y, double sigma_sq);

struct SimConfig {
    std::uint64_t max_frames = 10000;
    std::uint64_t min_frame_errors = 0;  // 0 disables early stop
    std::vector<double> snr_points_db;
    int workers = 1;           // 0 = hardware concurrency
    bool random_data = false;  // default: all-zero codeword
    bool noise = true;
};

struct SnrPointResult {
    double ebn0_db;
    std::uint64_t frames;
    std::uint64_t errors;
    double fer;
    double ci95;  // 95% confidence half-width on fer
};

struct SimResult {
    std::vector<SnrPointResult> points;
};

// Monte Carlo FER sweep. A frame errs when the best candidate's v differs
// from the transmitted v. Early stop (when enabled) is evaluated on fixed
// frame-block boundaries so results do not depend on the worker count.
SimResult run_fer(const CodeParams& code, const RateProfile& profile,
                  const DecoderConfig& decoder, const SimConfig& sim,
                  std::uint64_t seed);

// CSV rows "ebn0_db,frames,errors,fer,ci95" with a header line.
std::string sim_result_csv(const SimResult& result);

}  // namespace pacrl

#endif
