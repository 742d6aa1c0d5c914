#include "pacrl/channel.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "pacrl/rng.hpp"

namespace pacrl {

namespace {

constexpr std::uint64_t kNoiseStream = 0x6368616E6E656CULL;  // per-frame noise
constexpr std::uint64_t kDataStream = 0x64617461ULL;         // per-frame data bits
constexpr std::uint64_t kPointStream = 0x706F696E74ULL;      // per-SNR-point seeds
constexpr std::uint64_t kStopBlock = 1024;  // early-stop granularity in frames

}  // namespace

double sigma_from_ebn0(double ebn0_db, double rate) {
    if (rate <= 0.0 || rate > 1.0)
        throw std::invalid_argument("rate must be in (0, 1]");
    const double ebn0 = std::pow(10.0, ebn0_db / 10.0);
    return std::sqrt(1.0 / (2.0 * rate * ebn0));
}

std::vector<double> transmit(const BitVector& x, const ChannelConfig& cfg,
                             std::uint64_t frame_index) {
    const double sigma = sigma_from_ebn0(cfg.ebn0_db, cfg.rate);
    std::vector<double> y(x.size());
    if (!cfg.noise) {
        for (std::size_t j = 0; j < x.size(); ++j) y[j] = x[j] ? -1.0 : 1.0;
        return y;
    }
    Xoshiro256ss rng(mix_seed(mix_seed(cfg.seed, kNoiseStream), frame_index));
    NormalSource normal(rng);
    for (std::size_t j = 0; j < x.size(); ++j)
        y[j] = (x[j] ? -1.0 : 1.0) + sigma * normal.next();
    return y;
}

std::vector<double> llr_vector(const std::vector<double>& y, double sigma_sq) {
    if (sigma_sq <= 0.0) throw std::invalid_argument("sigma^2 must be positive");
    std::vector<double> llrs(y.size());
    for (std::size_t j = 0; j < y.size(); ++j) llrs[j] = 2.0 * y[j] / sigma_sq;
    return llrs;
}

namespace {

// Simulate one frame; returns true on frame error.
bool simulate_frame(const CodeParams& code, const RateProfile& profile,
                    const DecoderConfig& decoder, const ChannelConfig& channel,
                    bool random_data, std::uint64_t frame_index) {
    BitVector v_tx(code.block_length, 0);
    BitVector x(code.block_length, 0);
    if (random_data) {
        Xoshiro256ss data_rng(
            mix_seed(mix_seed(channel.seed, kDataStream), frame_index));
        BitVector d(code.info_length);
        for (auto& bit : d) bit = static_cast<std::uint8_t>(data_rng.next() & 1);
        v_tx = rate_profile_map(d, profile);
        x = polar_transform(conv_precode(v_tx, decoder.precoder));
    }
    const double sigma = sigma_from_ebn0(channel.ebn0_db, channel.rate);
    const auto y = transmit(x, channel, frame_index);
    const auto llrs = llr_vector(y, sigma * sigma);
    const DecodeResult result = decode(llrs, profile, decoder);
    return result.best().v != v_tx;
}

}  // namespace

SimResult run_fer(const CodeParams& code, const RateProfile& profile,
                  const DecoderConfig& decoder, const SimConfig& sim,
                  std::uint64_t seed) {
    if (sim.max_frames < 1) throw std::invalid_argument("max_frames must be >= 1");
    if (profile.block_length() != code.block_length)
        throw std::invalid_argument("profile length must match code block length");
    if (profile.popcount() != code.info_length)
        throw std::invalid_argument("profile popcount must match code info length");
    if (sim.snr_points_db.empty())
        throw std::invalid_argument("at least one SNR point required");

    int workers = sim.workers;
    if (workers == 0) workers = static_cast<int>(std::thread::hardware_concurrency());
    workers = std::max(workers, 1);

    SimResult result;
    for (std::size_t pidx = 0; pidx < sim.snr_points_db.size(); ++pidx) {
        ChannelConfig channel;
        channel.ebn0_db = sim.snr_points_db[pidx];
        channel.rate = code.rate();
        channel.seed = mix_seed(mix_seed(seed, kPointStream), pidx);
        channel.noise = sim.noise;

        std::uint64_t frames = 0;
        std::uint64_t errors = 0;
        while (frames < sim.max_frames) {
            const std::uint64_t block_end =
                std::min<std::uint64_t>(frames + kStopBlock, sim.max_frames);
            std::atomic<std::uint64_t> next_frame(frames);
            std::atomic<std::uint64_t> block_errors(0);
            auto work = [&]() {
                std::uint64_t local_errors = 0;
                for (;;) {
                    const std::uint64_t f = next_frame.fetch_add(1);
                    if (f >= block_end) break;
                    if (simulate_frame(code, profile, decoder, channel,
                                       sim.random_data, f))
                        ++local_errors;
                }
                block_errors.fetch_add(local_errors);
            };
            if (workers == 1) {
                work();
            } else {
                std::vector<std::thread> pool;
                pool.reserve(workers);
                for (int t = 0; t < workers; ++t) pool.emplace_back(work);
                for (auto& t : pool) t.join();
            }
            errors += block_errors.load();
            frames = block_end;
            if (sim.min_frame_errors > 0 && errors >= sim.min_frame_errors) break;
        }

        const double fer = static_cast<double>(errors) / static_cast<double>(frames);
        const double ci =
            1.96 * std::sqrt(std::max(fer * (1.0 - fer), 0.0) / static_cast<double>(frames));
        result.points.push_back({channel.ebn0_db, frames, errors, fer, ci});
    }
    return result;
}

std::string sim_result_csv(const SimResult& result) {
    std::ostringstream out;
    out << "ebn0_db,frames,errors,fer,ci95\n";
    out.precision(12);
    for (const auto& p : result.points)
        out << p.ebn0_db << ',' << p.frames << ',' << p.errors << ',' << p.fer << ','
            << p.ci95 << '\n';
    return out.str();
}

}  // namespace pacrl
