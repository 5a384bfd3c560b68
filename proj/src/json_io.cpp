#include "solvmat/json_io.hpp"
#include "solvmat/walk.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace solvmat {

namespace {

nlohmann::json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path, "cannot open file");
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(path, e.what());
    }
}

const nlohmann::json& field(const nlohmann::json& j, const char* name) {
    auto it = j.find(name);
    if (it == j.end()) throw ConfigError(name, "missing field");
    return *it;
}

TriangularMatrix parse_entries(int n, const nlohmann::json& rows, const char* where) {
    if (!rows.is_array() || static_cast<int>(rows.size()) != n)
        throw ConfigError(where, "expected " + std::to_string(n) + " rows");
    std::vector<Rational> flat;
    flat.reserve(static_cast<std::size_t>(n) * n);
    for (const auto& row : rows) {
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw ConfigError(where, "expected " + std::to_string(n) + " columns per row");
        for (const auto& cell : row) flat.push_back(parse_rational(cell.get<std::string>()));
    }
    return TriangularMatrix(n, flat);
}

}  // namespace

MatrixFile parse_matrix_json(const nlohmann::json& j) {
    const int n = field(j, "n").get<int>();
    if (n < 1) throw ConfigError("n", "must be positive");
    std::vector<Int> primes;
    for (const auto& p : field(j, "primes")) primes.push_back(Int(p.get<long>()));
    return {parse_entries(n, field(j, "entries"), "entries"), PrimeSet(std::move(primes))};
}

MatrixFile read_matrix_file(const std::string& path) { return parse_matrix_json(load_json(path)); }

MeasureSpec parse_measure_json(const nlohmann::json& j) {
    const int n = field(j, "n").get<int>();
    const Int p(field(j, "p").get<long>());
    std::vector<MeasureSpec::Atom> atoms;
    for (const auto& a : field(j, "support")) {
        std::vector<long> x = field(a, "x").get<std::vector<long>>();
        TriangularMatrix f = parse_entries(n, field(a, "f"), "support.f");
        atoms.push_back({SemiDirectElement(std::move(x), p, std::move(f)),
                         parse_rational(field(a, "prob").get<std::string>())});
    }
    return MeasureSpec(n, p, std::move(atoms));
}

MeasureSpec read_measure_file(const std::string& path) {
    return parse_measure_json(load_json(path));
}

ExperimentConfig parse_experiment_json(const nlohmann::json& j, const std::string& base_dir) {
    const nlohmann::json& measure = field(j, "measure");
    MeasureSpec mu = measure.is_string()
                         ? read_measure_file((std::filesystem::path(base_dir) /
                                              measure.get<std::string>()).string())
                         : parse_measure_json(measure);

    const nlohmann::json& run = field(j, "run");
    auto run_field = [&run](const char* name) -> const nlohmann::json& {
        auto it = run.find(name);
        if (it == run.end()) throw ConfigError(std::string("run.") + name, "missing field");
        return *it;
    };
    ExperimentConfig cfg{std::move(mu)};
    cfg.steps = run_field("steps").get<long>();
    if (cfg.steps < 0) throw ConfigError("run.steps", "must be non-negative");
    cfg.seeds = run_field("seeds").get<std::vector<std::uint64_t>>();
    if (cfg.seeds.empty()) throw ConfigError("run.seeds", "at least one seed required");
    if (std::set<std::uint64_t>(cfg.seeds.begin(), cfg.seeds.end()).size() != cfg.seeds.size())
        throw ConfigError("run.seeds", "seeds must be distinct");
    cfg.checkpoints = run_field("checkpoints").get<std::vector<long>>();
    if (cfg.checkpoints.empty()) throw ConfigError("run.checkpoints", "required");
    for (std::size_t i = 0; i < cfg.checkpoints.size(); ++i) {
        if (cfg.checkpoints[i] > cfg.steps)
            throw ConfigError("run.checkpoints", "checkpoint beyond steps");
        if (i > 0 && cfg.checkpoints[i] <= cfg.checkpoints[i - 1])
            throw ConfigError("run.checkpoints", "must be strictly increasing");
    }

    if (auto det = j.find("detection"); det != j.end()) {
        if (auto it = det->find("real_tol"); it != det->end()) cfg.real_tol = it->get<double>();
        if (auto it = det->find("padic_digits"); it != det->end())
            cfg.padic_digits = it->get<long>();
        if (auto it = det->find("window"); it != det->end()) cfg.window = it->get<long>();
    }
    if (auto out = j.find("output"); out != j.end()) {
        if (auto it = out->find("directory"); it != out->end())
            cfg.out_dir = it->get<std::string>();
        if (auto it = out->find("formats"); it != out->end())
            cfg.formats = it->get<std::vector<std::string>>();
    }
    cfg.canonical_text = j.dump();
    return cfg;
}

ExperimentConfig read_experiment_config(const std::string& path) {
    return parse_experiment_json(load_json(path),
                                 std::filesystem::path(path).parent_path().string());
}

std::string config_hash(const std::string& canonical_text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : canonical_text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream out;
    out << std::hex << h;
    return out.str();
}

nlohmann::json output_header(const std::string& canonical_config_text) {
    return {{"artifact_version", kArtifactVersion},
            {"rng", rng_identity()},
            {"config_hash", config_hash(canonical_config_text)}};
}

nlohmann::json matrix_json(const TriangularMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < m.n(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < m.n(); ++j) row.push_back(format_rational(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

nlohmann::json length_report_json(const LengthReport& r, const PrimeSet& P) {
    nlohmann::json per_prime = nlohmann::json::object();
    for (const auto& [p, part] : r.per_prime)
        per_prime[p.str()] = {{"forward_exponent", part.forward_exponent},
                              {"inverse_exponent", part.inverse_exponent}};
    nlohmann::json foreign = nlohmann::json::array();
    for (const Int& q : r.foreign_checked) foreign.push_back(q.str());
    nlohmann::json primes = nlohmann::json::array();
    for (const Int& p : P.primes()) primes.push_back(p.str());
    return {{"estimate", r.estimate_l},
            {"primes", std::move(primes)},
            {"per_prime", std::move(per_prime)},
            {"real_forward", r.real_forward},
            {"real_inverse", r.real_inverse},
            {"padic_part", r.padic_part()},
            {"adelic", r.adelic},
            {"foreign_checked_zero", std::move(foreign)}};
}

nlohmann::json displacement_json(const DisplacementMatrix& D) {
    nlohmann::json means = nlohmann::json::array();
    for (const Rational& m : D.means) means.push_back(format_rational(m));
    nlohmann::json entries = nlohmann::json::array();
    for (int i = 0; i < D.n; ++i)
        for (int j = i + 1; j < D.n; ++j)
            entries.push_back({{"i", i + 1}, {"j", j + 1}, {"d", format_rational(D.at(i, j))}});
    return {{"n", D.n},
            {"means", std::move(means)},
            {"entries", std::move(entries)},
            {"non_zero", D.non_zero},
            {"row_homogeneous", D.row_homogeneous},
            {"column_homogeneous", D.column_homogeneous},
            {"homogeneous", D.homogeneous}};
}

nlohmann::json triviality_json(const TrivialityVerdict& v) {
    nlohmann::json out = {{"verdict", v.trivial ? "Trivial" : "NonTrivial"},
                          {"strict_verdict", v.strict_trivial ? "Trivial" : "NonTrivial"},
                          {"abelian_support", v.abelian_support},
                          {"zero_displacement", v.zero_displacement}};
    if (v.witness_entry)
        out["witness_entry"] = {v.witness_entry->first + 1, v.witness_entry->second + 1};
    if (v.witness_atom) out["witness_atom"] = *v.witness_atom;
    return out;
}

nlohmann::json boundary_json(const BoundaryPoint& b) {
    nlohmann::json entries = nlohmann::json::array();
    for (int i = 0; i < b.n; ++i)
        for (int j = i + 1; j < b.n; ++j) {
            const BoundaryEntry& e = b.at(i, j);
            nlohmann::json entry = {{"i", i + 1}, {"j", j + 1}};
            switch (e.tag) {
                case BoundaryEntry::Tag::Real:
                    entry["tag"] = "Real";
                    entry["real_value"] = e.real_value;
                    entry["cauchy_bound"] = e.cauchy_bound;
                    entry["value"] = format_rational(e.value);
                    break;
                case BoundaryEntry::Tag::PAdic:
                    entry["tag"] = "PAdic";
                    entry["valuation"] = e.padic->valuation();
                    entry["unit_digits"] = e.padic->unit_digits().str();
                    entry["precision"] = e.padic->precision();
                    entry["value"] = format_rational(e.value);
                    break;
                case BoundaryEntry::Tag::Undefined:
                    entry["tag"] = "Undefined";
                    entry["hypothesis_ok"] = e.hypothesis_ok;
                    break;
            }
            entries.push_back(std::move(entry));
        }
    return {{"n", b.n}, {"p", b.p.str()}, {"entries", std::move(entries)}};
}

nlohmann::json walk_state_json(const WalkState& s, bool include_exact) {
    const int n = s.phi.n();
    nlohmann::json rec = {{"m", s.m}, {"y", s.y}};
    if (include_exact) rec["phi_exact"] = matrix_json(s.phi);
    nlohmann::json shadow = nlohmann::json::array();
    nlohmann::json padics = nlohmann::json::array();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            shadow.push_back(s.real_shadow(i, j));
            const PAdicTrunc& t = s.padic_shadow(i, j);
            padics.push_back(t.is_zero()
                                 ? nlohmann::json({{"zero", true}})
                                 : nlohmann::json({{"valuation", t.valuation()},
                                                   {"unit_digits", t.unit_digits().str()},
                                                   {"precision", t.precision()}}));
        }
    rec["phi_shadow"] = std::move(shadow);
    rec["padic_shadows"] = std::move(padics);
    return rec;
}

}  // namespace solvmat
