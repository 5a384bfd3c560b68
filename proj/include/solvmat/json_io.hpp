#pragma once

#include "solvmat/fg.hpp"
#include "solvmat/measure.hpp"
#include "solvmat/metrics.hpp"
#include "solvmat/walk.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>

namespace solvmat {

inline constexpr const char* kArtifactVersion = "1.0.0";

struct ConfigError : std::runtime_error {
    ConfigError(const std::string& field, const std::string& what)
        : std::runtime_error(field + ": " + what), field(field) {}
    std::string field;
};

/// Matrix file {n, primes, entries: [[rational strings]]}, row major.
struct MatrixFile {
    TriangularMatrix matrix;
    PrimeSet primes;
};
MatrixFile parse_matrix_json(const nlohmann::json& j);
MatrixFile read_matrix_file(const std::string& path);

/// Measure config {n, p, support: [{x: [ints], f: [[rational strings]], prob: "a/b"}]}.
MeasureSpec parse_measure_json(const nlohmann::json& j);
MeasureSpec read_measure_file(const std::string& path);

/// Experiment config for the walk driver; the measure may be inline (object)
/// or a path string relative to the config file's directory.
struct ExperimentConfig {
    MeasureSpec measure;
    long steps = 0;
    std::vector<std::uint64_t> seeds;
    std::vector<long> checkpoints;
    double real_tol = 1e-9;
    long padic_digits = 30;
    long window = 100;
    std::string out_dir = ".";
    std::vector<std::string> formats = {"json", "csv"};
    std::string canonical_text;  // re-serialized config, input to the hash
};
ExperimentConfig parse_experiment_json(const nlohmann::json& j, const std::string& base_dir);
ExperimentConfig read_experiment_config(const std::string& path);

/// FNV-1a of the canonical config text, hex-encoded; stable across platforms.
std::string config_hash(const std::string& canonical_text);

/// Common header for every output file: artifact version, RNG identity,
/// config hash.
nlohmann::json output_header(const std::string& canonical_config_text);

nlohmann::json matrix_json(const TriangularMatrix& m);
nlohmann::json length_report_json(const LengthReport& r, const PrimeSet& P);
nlohmann::json displacement_json(const DisplacementMatrix& D);
nlohmann::json triviality_json(const TrivialityVerdict& v);
nlohmann::json boundary_json(const BoundaryPoint& b);

/// One JSONL trajectory record {m, y, phi_exact?, phi_shadow, padic_shadows};
/// exact entries included only when include_exact is set (audit checkpoints).
nlohmann::json walk_state_json(const WalkState& s, bool include_exact);

}  // namespace solvmat
