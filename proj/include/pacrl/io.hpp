#ifndef PACRL_IO_HPP
#define PACRL_IO_HPP

#include <cstdint>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "pacrl/channel.hpp"
#include "pacrl/pac.hpp"
#include "pacrl/qlearn.hpp"

namespace pacrl {

const char* version_string();

// Every artifact file embeds a manifest: tool identity, seed and a full echo
// of the configuration that produced it.
struct RunManifest {
    std::string tool = "pacrl";
    std::string version = version_string();
    std::string created_utc;  // ISO-8601, filled by make_manifest
    std::uint64_t seed = 0;
    nlohmann::json config;
};

RunManifest make_manifest(std::uint64_t seed, nlohmann::json config);
nlohmann::json to_json(const RunManifest& manifest);

struct ProfileRecord {
    int block_length = 0;
    int info_length = 0;
    std::string precoder;  // binary string, e.g. "1011011"
    int list_size = 0;
    std::string hex;
    std::string provenance;  // trained | table1 | external
};

nlohmann::json profile_record_json(const ProfileRecord& record,
                                   const RateProfile& profile,
                                   const RunManifest& manifest);
void save_profile(const std::filesystem::path& path, const ProfileRecord& record,
                  const RateProfile& profile, const RunManifest& manifest);
// Returns the profile plus its record; validates hex length and popcount.
std::pair<RateProfile, ProfileRecord> load_profile(const std::filesystem::path& path);

nlohmann::json qtable_json(const QTable& q, const TrainConfig& cfg,
                           const RunManifest& manifest);
void save_qtable(const std::filesystem::path& path, const QTable& q,
                 const TrainConfig& cfg, const RunManifest& manifest);
QTable load_qtable(const std::filesystem::path& path);

void save_telemetry_jsonl(const std::filesystem::path& path, const TrainReport& report);

nlohmann::json train_config_json(const TrainConfig& cfg);
nlohmann::json sim_result_json(const SimResult& result, const RunManifest& manifest);

// The CSV body is fully determined by (seed, semantic configs); volatile
// details such as timestamps or worker counts stay in the JSON manifest.
void save_sim_csv(const std::filesystem::path& path, const SimResult& result,
                  const nlohmann::json& semantic_config);
void save_sim_json(const std::filesystem::path& path, const SimResult& result,
                   const RunManifest& manifest);

std::string kernel_name(Kernel kernel);
Kernel kernel_from_name(const std::string& name);

}  // namespace pacrl

#endif
