#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pacrl/channel.hpp"
#include "pacrl/io.hpp"
#include "pacrl/pac.hpp"
#include "pacrl/qlearn.hpp"
#include "pacrl/scl.hpp"

namespace py = pybind11;
using namespace pacrl;

PYBIND11_MODULE(_core, m) {
    m.doc() = "PAC code workbench: encoding, list decoding, channel simulation "
              "and Q-learning rate-profile construction";
    m.attr("__version__") = version_string();

    py::class_<CodeParams>(m, "CodeParams")
        .def(py::init<int, int>(), py::arg("n"), py::arg("k"))
        .def_readonly("n", &CodeParams::block_length)
        .def_readonly("k", &CodeParams::info_length)
        .def_readonly("stages", &CodeParams::stages)
        .def_property_readonly("rate", &CodeParams::rate)
        .def("__repr__", [](const CodeParams& p) {
            return "CodeParams(" + std::to_string(p.block_length) + ", " +
                   std::to_string(p.info_length) + ")";
        });

    py::class_<RateProfile>(m, "RateProfile")
        .def(py::init<BitVector>(), py::arg("bits"))
        .def_static("from_hex", &RateProfile::from_hex, py::arg("hex"), py::arg("n"))
        .def_static("from_info_indices", &RateProfile::from_info_indices,
                    py::arg("n"), py::arg("indices"))
        .def("to_hex", &RateProfile::to_hex)
        .def("info_indices", &RateProfile::info_indices)
        .def("frozen_indices", &RateProfile::frozen_indices)
        .def("popcount", &RateProfile::popcount)
        .def("block_length", &RateProfile::block_length)
        .def("is_info", &RateProfile::is_info, py::arg("index"))
        .def("bits", &RateProfile::bits)
        .def(py::self == py::self)
        .def("__repr__", [](const RateProfile& p) {
            return "RateProfile('" + p.to_hex() + "', " +
                   std::to_string(p.block_length()) + ")";
        });

    py::class_<PrecoderPolynomial>(m, "Precoder")
        .def(py::init([](const std::string& taps) {
                 return PrecoderPolynomial::from_string(taps);
             }),
             py::arg("taps"))
        .def_property_readonly("length", &PrecoderPolynomial::length)
        .def("taps", &PrecoderPolynomial::taps)
        .def("__str__", &PrecoderPolynomial::to_string)
        .def("__repr__", [](const PrecoderPolynomial& w) {
            return "Precoder('" + w.to_string() + "')";
        });

    m.def("rm_score", &rm_score, py::arg("index"));
    m.def("rate_profile_map", &rate_profile_map, py::arg("data"), py::arg("profile"));
    m.def("conv_precode", &conv_precode, py::arg("v"), py::arg("w"));
    m.def("conv_precode_inverse", &conv_precode_inverse, py::arg("u"), py::arg("w"));
    m.def("polar_transform", [](BitVector u) { return polar_transform(std::move(u)); },
          py::arg("u"));
    m.def("pac_encode", &pac_encode, py::arg("data"), py::arg("profile"), py::arg("w"));

    py::enum_<Kernel>(m, "Kernel")
        .value("exact", Kernel::exact)
        .value("min_sum", Kernel::min_sum);

    py::class_<DecoderConfig>(m, "DecoderConfig")
        .def(py::init([](int list_size, Kernel kernel, const std::string& w) {
                 return DecoderConfig{list_size, kernel,
                                      PrecoderPolynomial::from_string(w)};
             }),
             py::arg("list_size") = 8, py::arg("kernel") = Kernel::exact,
             py::arg("w") = "1")
        .def_readwrite("list_size", &DecoderConfig::list_size)
        .def_readwrite("kernel", &DecoderConfig::kernel)
        .def_readwrite("precoder", &DecoderConfig::precoder);

    py::class_<StepReport>(m, "StepReport")
        .def_readonly("allzero_alive", &StepReport::allzero_alive)
        .def_readonly("active_paths", &StepReport::active_paths);

    py::class_<Candidate>(m, "Candidate")
        .def_readonly("path_metric", &Candidate::path_metric)
        .def_readonly("v", &Candidate::v)
        .def_readonly("u", &Candidate::u)
        .def_readonly("x", &Candidate::x);

    py::class_<DecodeResult>(m, "DecodeResult")
        .def_readonly("candidates", &DecodeResult::candidates)
        .def_readonly("allzero_rank", &DecodeResult::allzero_rank)
        .def_property_readonly("allzero_alive", &DecodeResult::allzero_alive)
        .def_property_readonly("best", [](const DecodeResult& r) { return r.best(); });

    py::class_<DecoderSession>(m, "DecoderSession")
        .def(py::init<std::vector<double>, DecoderConfig>(), py::arg("llrs"),
             py::arg("config"))
        .def("step", &DecoderSession::step, py::arg("frozen"))
        .def("finalize", &DecoderSession::finalize)
        .def_property_readonly("step_index", &DecoderSession::step_index)
        .def_property_readonly("block_length", &DecoderSession::block_length)
        .def_property_readonly("active_paths", &DecoderSession::active_paths)
        .def_property_readonly("allzero_alive", &DecoderSession::allzero_alive)
        .def("path_metrics", &DecoderSession::path_metrics);

    m.def("decode", &decode, py::arg("llrs"), py::arg("profile"), py::arg("config"));

    m.def("sigma_from_ebn0", &sigma_from_ebn0, py::arg("ebn0_db"), py::arg("rate"));

    py::class_<ChannelConfig>(m, "ChannelConfig")
        .def(py::init([](double ebn0_db, double rate, std::uint64_t seed, bool noise) {
                 return ChannelConfig{ebn0_db, rate, seed, noise};
             }),
             py::arg("ebn0_db"), py::arg("rate"), py::arg("seed") = 0,
             py::arg("noise") = true)
        .def_readwrite("ebn0_db", &ChannelConfig::ebn0_db)
        .def_readwrite("rate", &ChannelConfig::rate)
        .def_readwrite("seed", &ChannelConfig::seed)
        .def_readwrite("noise", &ChannelConfig::noise);

    m.def("transmit", &transmit, py::arg("x"), py::arg("config"),
          py::arg("frame_index"));
    m.def("llr_vector", &llr_vector, py::arg("y"), py::arg("sigma_sq"));

    py::class_<SimConfig>(m, "SimConfig")
        .def(py::init<>())
        .def_readwrite("max_frames", &SimConfig::max_frames)
        .def_readwrite("min_frame_errors", &SimConfig::min_frame_errors)
        .def_readwrite("snr_points_db", &SimConfig::snr_points_db)
        .def_readwrite("workers", &SimConfig::workers)
        .def_readwrite("random_data", &SimConfig::random_data)
        .def_readwrite("noise", &SimConfig::noise);

    py::class_<SnrPointResult>(m, "SnrPointResult")
        .def_readonly("ebn0_db", &SnrPointResult::ebn0_db)
        .def_readonly("frames", &SnrPointResult::frames)
        .def_readonly("errors", &SnrPointResult::errors)
        .def_readonly("fer", &SnrPointResult::fer)
        .def_readonly("ci95", &SnrPointResult::ci95);

    py::class_<SimResult>(m, "SimResult")
        .def_readonly("points", &SimResult::points)
        .def("csv", [](const SimResult& r) { return sim_result_csv(r); });

    m.def("run_fer", &run_fer, py::arg("code"), py::arg("profile"),
          py::arg("decoder"), py::arg("sim"), py::arg("seed"),
          py::call_guard<py::gil_scoped_release>());

    py::class_<MazeState>(m, "MazeState")
        .def(py::init([](int row, int col) { return MazeState{row, col}; }),
             py::arg("row") = 0, py::arg("col") = 0)
        .def_readwrite("row", &MazeState::row)
        .def_readwrite("col", &MazeState::col)
        .def(py::self == py::self)
        .def("__repr__", [](const MazeState& s) {
            return "MazeState(" + std::to_string(s.row) + ", " +
                   std::to_string(s.col) + ")";
        });

    py::class_<QTable>(m, "QTable")
        .def(py::init<int, int>(), py::arg("n"), py::arg("k"))
        .def("at", py::overload_cast<MazeState, int>(&QTable::at, py::const_),
             py::arg("state"), py::arg("action"))
        .def("set",
             [](QTable& q, MazeState s, int a, double v) { q.at(s, a) = v; },
             py::arg("state"), py::arg("action"), py::arg("value"))
        .def("max_at", &QTable::max_at, py::arg("state"))
        .def_property_readonly("n", &QTable::block_length)
        .def_property_readonly("k", &QTable::info_length)
        .def_property_readonly("rows", &QTable::rows)
        .def_property_readonly("cols", &QTable::cols)
        .def("values", py::overload_cast<>(&QTable::values, py::const_));

    py::class_<Partition>(m, "Partition")
        .def_readonly("info_set", &Partition::info_set)
        .def_readonly("boundary_set", &Partition::boundary_set)
        .def_readonly("boundary_score", &Partition::boundary_score);

    m.def("rm_score_partition", &rm_score_partition, py::arg("n"), py::arg("k"));
    m.def("next_state", &next_state, py::arg("state"), py::arg("action"),
          py::arg("n"), py::arg("k"));
    m.def("update_q", &update_q, py::arg("q"), py::arg("state"),
          py::arg("next_state"), py::arg("action"), py::arg("reward"),
          py::arg("alpha"), py::arg("gamma"));
    m.def("reward",
          [](const BitVector& best_v, int k, int allzero_rank, int first_error_seen,
             double base_reward, double step_reward) {
              const auto r = reward(best_v, k, allzero_rank, first_error_seen,
                                    base_reward, step_reward);
              return py::make_tuple(r.reward, r.first_error_seen);
          },
          py::arg("best_v"), py::arg("k"), py::arg("allzero_rank"),
          py::arg("first_error_seen"), py::arg("base_reward"), py::arg("step_reward"));

    py::class_<TrainConfig>(m, "TrainConfig")
        .def(py::init<>())
        .def_readwrite("episodes", &TrainConfig::episodes)
        .def_readwrite("alpha", &TrainConfig::alpha)
        .def_readwrite("epsilon_start", &TrainConfig::epsilon_start)
        .def_readwrite("epsilon_end", &TrainConfig::epsilon_end)
        .def_readwrite("gamma", &TrainConfig::gamma)
        .def_readwrite("base_reward", &TrainConfig::base_reward)
        .def_readwrite("step_reward", &TrainConfig::step_reward)
        .def_readwrite("train_ebn0_db", &TrainConfig::train_ebn0_db)
        .def_readwrite("list_size", &TrainConfig::list_size)
        .def_readwrite("kernel", &TrainConfig::kernel)
        .def_readwrite("seed", &TrainConfig::seed)
        .def_readwrite("freeze_noise", &TrainConfig::freeze_noise);

    py::class_<EpisodeOutcome>(m, "EpisodeOutcome")
        .def_readonly("actions", &EpisodeOutcome::actions)
        .def_readonly("dropped", &EpisodeOutcome::dropped)
        .def_readonly("allzero_rank", &EpisodeOutcome::allzero_rank)
        .def_readonly("best_v", &EpisodeOutcome::best_v)
        .def_readonly("cum_reward", &EpisodeOutcome::cum_reward)
        .def_readonly("explore_calls", &EpisodeOutcome::explore_calls);

    py::class_<EpisodeRecord>(m, "EpisodeRecord")
        .def_readonly("episode", &EpisodeRecord::episode)
        .def_readonly("dropped", &EpisodeRecord::dropped)
        .def_readonly("allzero_rank", &EpisodeRecord::allzero_rank)
        .def_readonly("epsilon", &EpisodeRecord::epsilon)
        .def_readonly("cum_reward", &EpisodeRecord::cum_reward);

    py::class_<TrainReport>(m, "TrainReport")
        .def_readonly("episodes", &TrainReport::episodes)
        .def_readonly("total_explore_calls", &TrainReport::total_explore_calls)
        .def_readonly("completed_episodes", &TrainReport::completed_episodes)
        .def_readonly("best_episode", &TrainReport::best_episode)
        .def_readonly("best_episode_rank", &TrainReport::best_episode_rank);

    m.def("run_episode", &run_episode, py::arg("code"), py::arg("w"), py::arg("q"),
          py::arg("config"), py::arg("episode_index"));
    m.def("train", &train, py::arg("code"), py::arg("w"), py::arg("config"),
          py::call_guard<py::gil_scoped_release>());
    m.def("extract_profile", &extract_profile, py::arg("q"));
    m.def("epsilon_at", &epsilon_at, py::arg("config"), py::arg("episode"));
}
