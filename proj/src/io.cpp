#include "pacrl/io.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <stdexcept>

namespace pacrl {

using nlohmann::json;

const char* version_string() {
#ifdef PACRL_VERSION
    return PACRL_VERSION;
#else
    return "0.0.0";
#endif
}

RunManifest make_manifest(std::uint64_t seed, json config) {
    RunManifest m;
    m.seed = seed;
    m.config = std::move(config);
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm_utc{};
    gmtime_r(&t, &tm_utc);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    m.created_utc = buf;
    return m;
}

json to_json(const RunManifest& m) {
    return json{{"tool", m.tool},
                {"version", m.version},
                {"created_utc", m.created_utc},
                {"seed", m.seed},
                {"config", m.config}};
}

std::string kernel_name(Kernel kernel) {
    return kernel == Kernel::exact ? "exact" : "minsum";
}

Kernel kernel_from_name(const std::string& name) {
    if (name == "exact") return Kernel::exact;
    if (name == "minsum" || name == "min-sum") return Kernel::min_sum;
    throw std::invalid_argument("unknown kernel: " + name);
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path.string());
    json j;
    in >> j;
    return j;
}

}  // namespace

json profile_record_json(const ProfileRecord& record, const RateProfile& profile,
                         const RunManifest& manifest) {
    return json{{"n", record.block_length},
                {"k", record.info_length},
                {"w", record.precoder},
                {"list_size", record.list_size},
                {"hex", record.hex},
                {"info_indices", profile.info_indices()},
                {"provenance", record.provenance},
                {"manifest", to_json(manifest)}};
}

void save_profile(const std::filesystem::path& path, const ProfileRecord& record,
                  const RateProfile& profile, const RunManifest& manifest) {
    write_file(path, profile_record_json(record, profile, manifest).dump(2) + "\n");
}

std::pair<RateProfile, ProfileRecord> load_profile(const std::filesystem::path& path) {
    const json j = read_json(path);
    ProfileRecord record;
    record.block_length = j.at("n").get<int>();
    record.info_length = j.at("k").get<int>();
    record.precoder = j.at("w").get<std::string>();
    record.list_size = j.value("list_size", 0);
    record.hex = j.at("hex").get<std::string>();
    record.provenance = j.value("provenance", "external");
    RateProfile profile = RateProfile::from_hex(record.hex, record.block_length);
    if (profile.popcount() != record.info_length)
        throw std::runtime_error("profile popcount does not match k in " + path.string());
    if (j.contains("info_indices")) {
        const auto indices = j.at("info_indices").get<std::vector<int>>();
        if (RateProfile::from_info_indices(record.block_length, indices) != profile)
            throw std::runtime_error("info_indices disagree with hex in " + path.string());
    }
    return {std::move(profile), std::move(record)};
}

json train_config_json(const TrainConfig& cfg) {
    return json{{"episodes", cfg.episodes},
                {"alpha", cfg.alpha},
                {"epsilon_start", cfg.epsilon_start},
                {"epsilon_end", cfg.epsilon_end},
                {"gamma", cfg.gamma},
                {"base_reward", cfg.base_reward},
                {"step_reward", cfg.step_reward},
                {"train_ebn0_db", cfg.train_ebn0_db},
                {"list_size", cfg.list_size},
                {"kernel", kernel_name(cfg.kernel)},
                {"seed", cfg.seed},
                {"freeze_noise", cfg.freeze_noise}};
}

json qtable_json(const QTable& q, const TrainConfig& cfg, const RunManifest& manifest) {
    return json{{"n", q.block_length()},
                {"k", q.info_length()},
                {"rows", q.rows()},
                {"cols", q.cols()},
                {"actions", 2},
                {"values", q.values()},
                {"train_config", train_config_json(cfg)},
                {"manifest", to_json(manifest)}};
}

void save_qtable(const std::filesystem::path& path, const QTable& q,
                 const TrainConfig& cfg, const RunManifest& manifest) {
    write_file(path, qtable_json(q, cfg, manifest).dump() + "\n");
}

QTable load_qtable(const std::filesystem::path& path) {
    const json j = read_json(path);
    QTable q(j.at("n").get<int>(), j.at("k").get<int>());
    auto values = j.at("values").get<std::vector<double>>();
    if (values.size() != q.values().size())
        throw std::runtime_error("qtable value count mismatch in " + path.string());
    q.values() = std::move(values);
    return q;
}

void save_telemetry_jsonl(const std::filesystem::path& path, const TrainReport& report) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    for (const auto& rec : report.episodes) {
        out << json{{"episode", rec.episode},
                    {"F", rec.dropped},
                    {"i", rec.allzero_rank},
                    {"epsilon", rec.epsilon},
                    {"cum_reward", rec.cum_reward}}
                   .dump()
            << '\n';
    }
}

json sim_result_json(const SimResult& result, const RunManifest& manifest) {
    json points = json::array();
    for (const auto& p : result.points)
        points.push_back({{"ebn0_db", p.ebn0_db},
                          {"frames", p.frames},
                          {"errors", p.errors},
                          {"fer", p.fer},
                          {"ci95", p.ci95}});
    return json{{"points", points}, {"manifest", to_json(manifest)}};
}

void save_sim_csv(const std::filesystem::path& path, const SimResult& result,
                  const json& semantic_config) {
    std::string text;
    for (auto it = semantic_config.begin(); it != semantic_config.end(); ++it)
        text += "# " + it.key() + "=" + (it->is_string() ? it->get<std::string>() : it->dump()) + "\n";
    text += sim_result_csv(result);
    write_file(path, text);
}

void save_sim_json(const std::filesystem::path& path, const SimResult& result,
                   const RunManifest& manifest) {
    write_file(path, sim_result_json(result, manifest).dump(2) + "\n");
}

}  // namespace pacrl
