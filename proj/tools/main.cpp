// pacrl: construct, simulate and inspect PAC codes with learned rate-profiles.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "pacrl/channel.hpp"
#include "pacrl/io.hpp"
#include "pacrl/pac.hpp"
#include "pacrl/qlearn.hpp"
#include "pacrl/scl.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace pacrl;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;

struct Table1Row {
    int n;
    int k;
    const char* w;
    int list_size;
    const char* hex;
};

const std::map<std::string, Table1Row>& table1_rows() {
    static const std::map<std::string, Table1Row> rows = {
        {"64-32-w1-l8", {64, 32, "1", 8, "01050377051F7F7F"}},
        {"64-32-pac-l8", {64, 32, "1011011", 8, "0015115F175717FF"}},
        {"64-32-pac-l32", {64, 32, "1011011", 32, "01070737057F177F"}},
        {"128-72-w1-l8", {128, 72, "1", 8, "0001115701173F7F053F177F17FF7FFF"}},
        {"128-72-pac-l8", {128, 72, "1011011", 8, "0011011711371FFF0177577F177F7FFF"}},
        {"256-128-pac-l8",
         {256, 128, "1011011", 8,
          "000100010001011F0001113F073737FF0105157F055F5F7F157F5FFF7FFFFFFF"}},
        {"256-128-pac-l32",
         {256, 128, "1011011", 32,
          "000100010001011F0001113F073737FF0105157F055F5F7F157F5FFF7FFFFFFF"}},
    };
    return rows;
}

// Accepts raw hex, "table1:<row>" or "@file.json".
RateProfile resolve_profile(const std::string& spec, int n, int k) {
    if (spec.rfind("table1:", 0) == 0) {
        const std::string name = spec.substr(7);
        const auto it = table1_rows().find(name);
        if (it == table1_rows().end()) {
            std::string known;
            for (const auto& [key, row] : table1_rows()) known += " " + key;
            throw std::runtime_error("unknown table1 row '" + name + "'; known:" + known);
        }
        if (it->second.n != n || it->second.k != k)
            throw std::runtime_error("table1 row " + name + " is a (" +
                                     std::to_string(it->second.n) + "," +
                                     std::to_string(it->second.k) + ") profile");
        return RateProfile::from_hex(it->second.hex, n);
    }
    if (!spec.empty() && spec.front() == '@') {
        auto [profile, record] = load_profile(fs::path(spec.substr(1)));
        if (record.block_length != n || record.info_length != k)
            throw std::runtime_error("profile file is (" +
                                     std::to_string(record.block_length) + "," +
                                     std::to_string(record.info_length) + ")");
        return profile;
    }
    RateProfile profile = RateProfile::from_hex(spec, n);
    if (profile.popcount() != k)
        throw std::runtime_error("profile popcount " + std::to_string(profile.popcount()) +
                                 " does not match k = " + std::to_string(k));
    return profile;
}

std::vector<double> parse_snr_sweep(const std::string& spec) {
    std::vector<double> points;
    if (spec.find(':') != std::string::npos) {
        double start, stop, step = 0.5;
        char colon;
        std::istringstream in(spec);
        in >> start >> colon >> stop;
        if (in.peek() == ':') in >> colon >> step;
        if (!in || step <= 0) throw std::runtime_error("bad snr sweep: " + spec);
        for (double v = start; v <= stop + 1e-9; v += step) points.push_back(v);
    } else {
        std::istringstream in(spec);
        std::string tok;
        while (std::getline(in, tok, ',')) points.push_back(std::stod(tok));
    }
    if (points.empty()) throw std::runtime_error("empty snr sweep: " + spec);
    return points;
}

std::string bits_to_string(const BitVector& bits) {
    std::string s(bits.size(), '0');
    for (std::size_t i = 0; i < bits.size(); ++i) s[i] = bits[i] ? '1' : '0';
    return s;
}

BitVector bits_from_string(const std::string& s) {
    BitVector bits;
    bits.reserve(s.size());
    for (char c : s) {
        if (c != '0' && c != '1') throw std::runtime_error("data must be a 0/1 string");
        bits.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return bits;
}

struct CodeArgs {
    int n = 64;
    int k = 32;
    std::string w = "1011011";
    int list_size = 8;
    std::string kernel = "exact";
};

void add_code_options(CLI::App* cmd, CodeArgs& args, bool with_list = true) {
    cmd->add_option("--n", args.n, "codeword length (power of two)")->required();
    cmd->add_option("--k", args.k, "information length")->required();
    cmd->add_option("--w", args.w, "precoder taps as a 0/1 string, e.g. 1011011");
    if (with_list)
        cmd->add_option("--list,-L", args.list_size, "SCL list size");
    cmd->add_option("--kernel", args.kernel, "LLR combining rule")
        ->check(CLI::IsMember({"exact", "minsum"}));
}

DecoderConfig decoder_from(const CodeArgs& args) {
    DecoderConfig cfg;
    cfg.list_size = args.list_size;
    cfg.kernel = kernel_from_name(args.kernel);
    cfg.precoder = PrecoderPolynomial::from_string(args.w);
    return cfg;
}

json code_config_json(const CodeArgs& args) {
    return json{{"n", args.n},
                {"k", args.k},
                {"w", args.w},
                {"list_size", args.list_size},
                {"kernel", args.kernel}};
}

int run_train(const CodeArgs& code_args, const TrainConfig& train_cfg,
              const std::string& out_dir, bool best_episode) {
    const CodeParams code(code_args.n, code_args.k);
    const auto w = PrecoderPolynomial::from_string(code_args.w);

    auto [q, report] = train(code, w, train_cfg);
    RateProfile profile = extract_profile(q);
    if (best_episode) {
        if (report.best_episode < 0)
            throw std::runtime_error("no episode completed; cannot use --best-episode");
        profile = report.best_episode_profile();
    }

    json config = code_config_json(code_args);
    config["train"] = train_config_json(train_cfg);
    config["extraction"] = best_episode ? "best-episode" : "greedy";
    const RunManifest manifest = make_manifest(train_cfg.seed, config);

    const fs::path dir(out_dir);
    fs::create_directories(dir);
    ProfileRecord record{code_args.n, code_args.k, code_args.w, train_cfg.list_size,
                         profile.to_hex(), "trained"};
    save_profile(dir / "profile.json", record, profile, manifest);
    save_qtable(dir / "qtable.json", q, train_cfg, manifest);
    save_telemetry_jsonl(dir / "telemetry.jsonl", report);

    const int episodes = static_cast<int>(report.episodes.size());
    std::cout << "profile " << profile.to_hex() << "\n";
    std::cout << "episodes " << episodes << ", completed " << report.completed_episodes
              << ", explore calls " << report.total_explore_calls << "\n";
    std::cout << "wrote " << (dir / "profile.json").string() << ", qtable.json, telemetry.jsonl\n";
    if (report.total_explore_calls == 0)
        std::cout << "note: partition fully determines this profile"
                  << " (deterministic fallback, nothing to learn)\n";
    if (episodes > 0 && report.completed_episodes == 0)
        std::cerr << "warning: all-zero path dropped in every episode;"
                  << " training did not converge at this SNR/list size\n";
    return kExitOk;
}

int run_simulate(const CodeArgs& code_args, const std::string& profile_spec,
                 const std::string& snr_spec, SimConfig sim, std::uint64_t seed,
                 const std::string& out_prefix) {
    const CodeParams code(code_args.n, code_args.k);
    const RateProfile profile = resolve_profile(profile_spec, code_args.n, code_args.k);
    const DecoderConfig decoder = decoder_from(code_args);
    sim.snr_points_db = parse_snr_sweep(snr_spec);

    const SimResult result = run_fer(code, profile, decoder, sim, seed);

    json semantic = code_config_json(code_args);
    semantic["profile_hex"] = profile.to_hex();
    semantic["seed"] = seed;
    semantic["max_frames"] = sim.max_frames;
    semantic["min_frame_errors"] = sim.min_frame_errors;
    semantic["random_data"] = sim.random_data;
    semantic["noise"] = sim.noise;

    std::cout << sim_result_csv(result);
    if (!out_prefix.empty()) {
        json config = semantic;
        config["workers"] = sim.workers;
        const RunManifest manifest = make_manifest(seed, config);
        save_sim_csv(fs::path(out_prefix + ".csv"), result, semantic);
        save_sim_json(fs::path(out_prefix + ".json"), result, manifest);
        std::cout << "wrote " << out_prefix << ".csv and " << out_prefix << ".json\n";
    }
    return kExitOk;
}

int run_encode(const CodeArgs& code_args, const std::string& profile_spec,
               const std::string& data) {
    const RateProfile profile = resolve_profile(profile_spec, code_args.n, code_args.k);
    const auto w = PrecoderPolynomial::from_string(code_args.w);
    const BitVector d = bits_from_string(data);
    if (static_cast<int>(d.size()) != code_args.k)
        throw std::runtime_error("data must have exactly k bits");
    const BitVector v = rate_profile_map(d, profile);
    const BitVector u = conv_precode(v, w);
    const BitVector x = polar_transform(u);
    std::cout << "v " << bits_to_string(v) << "\n";
    std::cout << "u " << bits_to_string(u) << "\n";
    std::cout << "x " << bits_to_string(x) << "\n";
    return kExitOk;
}

int run_decode(const CodeArgs& code_args, const std::string& profile_spec,
               const std::string& llr_spec, const std::string& out_file) {
    const RateProfile profile = resolve_profile(profile_spec, code_args.n, code_args.k);
    const DecoderConfig decoder = decoder_from(code_args);

    std::vector<double> llrs;
    std::istringstream in(llr_spec);
    std::string tok;
    while (std::getline(in, tok, ',')) llrs.push_back(std::stod(tok));
    if (static_cast<int>(llrs.size()) != code_args.n)
        throw std::runtime_error("expected n = " + std::to_string(code_args.n) + " llrs");

    const DecodeResult result = decode(llrs, profile, decoder);
    json candidates = json::array();
    for (std::size_t rank = 0; rank < result.candidates.size(); ++rank) {
        const auto& c = result.candidates[rank];
        std::printf("#%zu pm=%.6f v=%s\n", rank + 1, c.path_metric,
                    bits_to_string(c.v).c_str());
        candidates.push_back({{"rank", rank + 1},
                              {"pm", c.path_metric},
                              {"v", bits_to_string(c.v)},
                              {"u", bits_to_string(c.u)},
                              {"x", bits_to_string(c.x)}});
    }
    if (result.allzero_rank > 0)
        std::cout << "allzero rank " << result.allzero_rank << "\n";
    if (!out_file.empty()) {
        json config = code_config_json(code_args);
        config["profile_hex"] = profile.to_hex();
        std::ofstream out(out_file);
        out << json{{"candidates", candidates},
                    {"allzero_rank", result.allzero_rank},
                    {"manifest", to_json(make_manifest(0, config))}}
                   .dump(2)
            << "\n";
    }
    return kExitOk;
}

int run_profile_report(int n, int k) {
    const Partition part = rm_score_partition(n, k);
    std::cout << "boundary score " << part.boundary_score << "\n";
    std::cout << "forced info " << part.info_set.size() << "\n";
    std::cout << "learnable " << part.boundary_set.size() << " (choose "
              << k - static_cast<int>(part.info_set.size()) << ")\n";
    return kExitOk;
}

int run_profile_convert(int n, const std::string& hex, const std::string& indices,
                        const std::string& out_file) {
    RateProfile profile;
    if (!hex.empty() && indices.empty()) {
        profile = RateProfile::from_hex(hex, n);
    } else if (hex.empty() && !indices.empty()) {
        std::vector<int> idx;
        std::istringstream in(indices);
        std::string tok;
        while (std::getline(in, tok, ',')) idx.push_back(std::stoi(tok));
        profile = RateProfile::from_info_indices(n, idx);
    } else {
        throw std::runtime_error("convert needs exactly one of --hex / --indices");
    }
    std::cout << "hex " << profile.to_hex() << "\n";
    std::cout << "popcount " << profile.popcount() << "\n";
    std::cout << "indices";
    for (int i : profile.info_indices()) std::cout << ' ' << i;
    std::cout << "\n";
    if (!out_file.empty()) {
        ProfileRecord record{n, profile.popcount(), "", 0, profile.to_hex(), "external"};
        save_profile(fs::path(out_file), record, profile,
                     make_manifest(0, json{{"n", n}}));
    }
    return kExitOk;
}

int run_profile_diff(int n, const std::string& hex_a, const std::string& hex_b) {
    const RateProfile a = RateProfile::from_hex(hex_a, n);
    const RateProfile b = RateProfile::from_hex(hex_b, n);
    std::vector<int> only_a, only_b;
    for (int i = 0; i < n; ++i) {
        if (a.is_info(i) && !b.is_info(i)) only_a.push_back(i);
        if (b.is_info(i) && !a.is_info(i)) only_b.push_back(i);
    }
    std::cout << "only in a (" << only_a.size() << "):";
    for (int i : only_a) std::cout << ' ' << i;
    std::cout << "\nonly in b (" << only_b.size() << "):";
    for (int i : only_b) std::cout << ' ' << i;
    std::cout << "\nsymmetric difference " << only_a.size() + only_b.size() << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"PAC code workbench: rate-profile learning, list decoding and "
                 "FER simulation"};
    app.set_version_flag("--version", std::string("pacrl ") + version_string());
    app.require_subcommand(1);

    // train
    auto* cmd_train = app.add_subcommand("train", "learn a rate-profile with Q-learning");
    CodeArgs train_code;
    TrainConfig train_cfg;
    std::string train_out = "train-out";
    bool best_episode = false;
    add_code_options(cmd_train, train_code);
    cmd_train->add_option("--episodes,-E", train_cfg.episodes, "training episodes");
    cmd_train->add_option("--seed", train_cfg.seed, "master seed");
    cmd_train->add_option("--train-snr", train_cfg.train_ebn0_db, "training Eb/N0 in dB");
    cmd_train->add_option("--alpha", train_cfg.alpha, "learning rate");
    cmd_train->add_option("--eps", train_cfg.epsilon_start, "initial exploration rate");
    cmd_train->add_option("--eps-end", train_cfg.epsilon_end, "final exploration rate");
    cmd_train->add_option("--gamma", train_cfg.gamma, "discount factor");
    cmd_train->add_option("--base-reward", train_cfg.base_reward, "base reward x");
    cmd_train->add_option("--step-reward", train_cfg.step_reward, "rank penalty z");
    cmd_train->add_flag("--freeze-noise", train_cfg.freeze_noise,
                        "reuse one channel draw for every episode");
    cmd_train->add_flag("--best-episode", best_episode,
                        "emit the best episode's profile instead of the greedy one");
    cmd_train->add_option("--out-dir", train_out, "output directory");

    // simulate
    auto* cmd_sim = app.add_subcommand("simulate", "Monte Carlo FER sweep");
    CodeArgs sim_code;
    std::string sim_profile, sim_snr = "1:3:0.5", sim_out;
    SimConfig sim_cfg;
    std::uint64_t sim_seed = 1;
    add_code_options(cmd_sim, sim_code);
    cmd_sim->add_option("--profile", sim_profile,
                        "hex string, @profile.json, or table1:<row>")->required();
    cmd_sim->add_option("--snr", sim_snr, "sweep start:stop[:step] or comma list (dB)");
    cmd_sim->add_option("--frames", sim_cfg.max_frames, "frames per SNR point");
    cmd_sim->add_option("--min-errors", sim_cfg.min_frame_errors,
                        "stop a point early after this many frame errors (0 = never)");
    cmd_sim->add_option("--seed", sim_seed, "master seed");
    cmd_sim->add_option("--workers", sim_cfg.workers, "worker threads (0 = hardware)");
    cmd_sim->add_flag("--random-data", sim_cfg.random_data,
                      "encode random data instead of the all-zero codeword");
    bool no_noise = false;
    cmd_sim->add_flag("--no-noise", no_noise, "disable channel noise (sanity checks)");
    cmd_sim->add_option("--out", sim_out, "output prefix for .csv/.json");

    // codec
    auto* cmd_codec = app.add_subcommand("codec", "encode or decode single frames");
    cmd_codec->require_subcommand(1);
    auto* cmd_enc = cmd_codec->add_subcommand("encode", "data bits -> v, u, x");
    CodeArgs enc_code;
    std::string enc_profile, enc_data;
    add_code_options(cmd_enc, enc_code, false);
    cmd_enc->add_option("--profile", enc_profile, "rate profile")->required();
    cmd_enc->add_option("--data", enc_data, "k data bits as a 0/1 string")->required();

    auto* cmd_dec = cmd_codec->add_subcommand("decode", "channel llrs -> ranked candidates");
    CodeArgs dec_code;
    std::string dec_profile, dec_llrs, dec_out;
    add_code_options(cmd_dec, dec_code);
    cmd_dec->add_option("--profile", dec_profile, "rate profile")->required();
    cmd_dec->add_option("--llrs", dec_llrs, "comma-separated channel llrs")->required();
    cmd_dec->add_option("--out", dec_out, "write candidates as JSON");

    // profile
    auto* cmd_prof = app.add_subcommand("profile", "rate-profile conversions and reports");
    cmd_prof->require_subcommand(1);
    auto* cmd_report = cmd_prof->add_subcommand("report", "partition sizes for (n,k)");
    int rep_n = 64, rep_k = 32;
    cmd_report->add_option("--n", rep_n)->required();
    cmd_report->add_option("--k", rep_k)->required();

    auto* cmd_conv = cmd_prof->add_subcommand("convert", "hex <-> index list");
    int conv_n = 64;
    std::string conv_hex, conv_indices, conv_out;
    cmd_conv->add_option("--n", conv_n)->required();
    cmd_conv->add_option("--hex", conv_hex, "profile hex");
    cmd_conv->add_option("--indices", conv_indices, "comma-separated info indices");
    cmd_conv->add_option("--out", conv_out, "write profile JSON");

    auto* cmd_diff = cmd_prof->add_subcommand("diff", "compare two profiles");
    int diff_n = 64;
    std::string diff_a, diff_b;
    cmd_diff->add_option("--n", diff_n)->required();
    cmd_diff->add_option("-a", diff_a, "first profile hex")->required();
    cmd_diff->add_option("-b", diff_b, "second profile hex")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (cmd_train->parsed()) {
            train_cfg.list_size = train_code.list_size;
            train_cfg.kernel = kernel_from_name(train_code.kernel);
            return run_train(train_code, train_cfg, train_out, best_episode);
        }
        if (cmd_sim->parsed()) {
            sim_cfg.noise = !no_noise;
            return run_simulate(sim_code, sim_profile, sim_snr, sim_cfg, sim_seed, sim_out);
        }
        if (cmd_enc->parsed()) return run_encode(enc_code, enc_profile, enc_data);
        if (cmd_dec->parsed()) return run_decode(dec_code, dec_profile, dec_llrs, dec_out);
        if (cmd_report->parsed()) return run_profile_report(rep_n, rep_k);
        if (cmd_conv->parsed())
            return run_profile_convert(conv_n, conv_hex, conv_indices, conv_out);
        if (cmd_diff->parsed()) return run_profile_diff(diff_n, diff_a, diff_b);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitUsage;
}
