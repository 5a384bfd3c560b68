#include "solvmat/json_io.hpp"
#include "solvmat/plocal.hpp"
#include "solvmat/word.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <thread>

namespace {

using namespace solvmat;

constexpr int kExitConfig = 2;
constexpr int kExitNotMember = 3;

void write_csv_header(std::ostream& out, const std::string& config_text) {
    out << "# artifact_version=" << kArtifactVersion << " rng=\"" << rng_identity()
        << "\" config_hash=" << config_hash(config_text) << "\n";
}

int cmd_metrics(const std::string& matrix_path, int bfs_radius) {
    MatrixFile mf = read_matrix_file(matrix_path);
    FGElement f = fg_certify(mf.matrix, mf.primes);
    LengthReport report = adelic_length(f);
    nlohmann::json out = length_report_json(report, mf.primes);
    out["header"] = output_header(matrix_path);
    if (mf.primes.size() == 1) {
        SemiDirectElement a = sd_from_matrix(f);
        out["sd_estimate"] = sd_length_estimate(a);
    }
    if (bfs_radius > 0) out["bfs_word_length"] = bfs_word_length(f, bfs_radius);
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_factorize(const std::string& matrix_path, const std::string& out_path) {
    MatrixFile mf = read_matrix_file(matrix_path);
    FGElement f = fg_certify(mf.matrix, mf.primes);
    GeneratorWord w = factorize(f);
    SandwichConstants c = sandwich_constants(f.n(), mf.primes);
    nlohmann::json tokens = nlohmann::json::array();
    for (const GenSymbol& g : w) tokens.push_back(g.token());
    nlohmann::json out = {{"header", output_header(matrix_path)},
                          {"length", w.size()},
                          {"bound", (c.A_n * Int(length_estimate(f))).str()},
                          {"word", std::move(tokens)}};
    if (out_path.empty()) {
        std::cout << out.dump(2) << "\n";
    } else {
        std::ofstream file(out_path);
        file << out.dump(2) << "\n";
        std::cout << "word of length " << w.size() << " (bound "
                  << (c.A_n * Int(length_estimate(f))).str() << ") written to " << out_path
                  << "\n";
    }
    return 0;
}

int cmd_invert(const std::string& matrix_path) {
    MatrixFile mf = read_matrix_file(matrix_path);
    FGElement f = fg_certify(mf.matrix, mf.primes);
    TriangularMatrix inv = tri_inverse(f.matrix());
    fg_certify(inv, mf.primes);
    nlohmann::json out = {{"header", output_header(matrix_path)},
                          {"n", inv.n()},
                          {"entries", matrix_json(inv)}};
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_displacement(const std::string& measure_path) {
    MeasureSpec mu = read_measure_file(measure_path);
    nlohmann::json out = displacement_json(displacement(mu));
    out["header"] = output_header(measure_path);
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_check_triviality(const std::string& measure_path) {
    MeasureSpec mu = read_measure_file(measure_path);
    nlohmann::json out = triviality_json(check_triviality(mu));
    out["header"] = output_header(measure_path);
    std::cout << out.dump(2) << "\n";
    return 0;
}

struct SeedResult {
    std::uint64_t seed = 0;
    bool converged = false;
    std::string diagnostics;
    nlohmann::json boundary;
    std::vector<std::pair<long, long>> errors;
};

int cmd_walk(const std::string& config_path, long seed_override) {
    ExperimentConfig cfg = read_experiment_config(config_path);
    if (seed_override >= 0) cfg.seeds = {static_cast<std::uint64_t>(seed_override)};
    std::filesystem::create_directories(cfg.out_dir);

    DisplacementMatrix D = displacement(cfg.measure);
    TrivialityVerdict verdict = check_triviality(cfg.measure);
    const long audit = default_audit_every();

    std::vector<SeedResult> results(cfg.seeds.size());
    auto run_one = [&](std::size_t idx) {
        SeedResult& r = results[idx];
        r.seed = cfg.seeds[idx];
        std::vector<WalkState> traj =
            run_walk(cfg.measure, cfg.steps, r.seed, cfg.checkpoints, audit);
        std::ofstream jsonl(std::filesystem::path(cfg.out_dir) /
                            ("trajectory_seed" + std::to_string(r.seed) + ".jsonl"));
        jsonl << output_header(cfg.canonical_text).dump() << "\n";
        for (const WalkState& s : traj)
            jsonl << walk_state_json(s, audit > 0 && s.m % audit == 0).dump() << "\n";
        try {
            BoundaryPoint b =
                detect_boundary(traj, D, cfg.measure.p(), cfg.real_tol, cfg.padic_digits,
                                cfg.window);
            r.converged = true;
            r.boundary = boundary_json(b);
            r.errors = error_series(traj, b, cfg.measure).points;
        } catch (const NotConverged& e) {
            r.diagnostics = e.what();
        }
    };

    std::vector<std::thread> workers;
    for (std::size_t i = 0; i < cfg.seeds.size(); ++i) workers.emplace_back(run_one, i);
    for (std::thread& w : workers) w.join();

    nlohmann::json seeds_out = nlohmann::json::array();
    for (const SeedResult& r : results) {
        nlohmann::json s = {{"seed", r.seed}, {"converged", r.converged}};
        if (r.converged)
            s["boundary"] = r.boundary;
        else
            s["diagnostics"] = r.diagnostics;
        seeds_out.push_back(std::move(s));
    }
    nlohmann::json summary = {{"header", output_header(cfg.canonical_text)},
                              {"displacement", displacement_json(D)},
                              {"triviality", triviality_json(verdict)},
                              {"seeds", std::move(seeds_out)}};
    {
        std::ofstream out(std::filesystem::path(cfg.out_dir) / "summary.json");
        out << summary.dump(2) << "\n";
    }
    {
        std::ofstream csv(std::filesystem::path(cfg.out_dir) / "errors.csv");
        write_csv_header(csv, cfg.canonical_text);
        csv << "seed,m,estimate\n";
        for (const SeedResult& r : results)
            for (const auto& [m, est] : r.errors)
                csv << r.seed << "," << m << "," << est << "\n";
    }
    std::cout << "summary.json and errors.csv written to " << cfg.out_dir << "\n";
    return 0;
}

int cmd_verify(const std::string& suite) {
    std::mt19937_64 rng(12345);
    auto report = [](const std::string& name, bool ok) {
        std::cout << (ok ? "PASS " : "FAIL ") << name << "\n";
        return ok ? 0 : 1;
    };
    if (suite == "digit-lemmas") {
        PrimeSet P({2, 3});
        std::uniform_int_distribution<long> num(-1000, 1000);
        std::uniform_int_distribution<long> exp(0, 6);
        bool ok = true;
        for (int trial = 0; trial < 2000 && ok; ++trial) {
            Rational x = Rational(num(rng)) * pow_rational(6, -exp(rng));
            Rational y = Rational(num(rng)) * pow_rational(6, -exp(rng));
            PLocalNumber a(x, P), b(y, P), sum(x + y, P), prod(x * y, P);
            ok = ok && span(sum) <= span(a) + span(b);
            ok = ok && span(prod) <= 3 * (span(a) + span(b));
        }
        return report(suite, ok);
    }
    if (suite == "algebra") {
        std::uniform_int_distribution<long> num(-6, 6);
        bool ok = true;
        for (int trial = 0; trial < 100 && ok; ++trial) {
            TriangularMatrix m(4);
            for (int i = 0; i < 4; ++i)
                for (int j = i + 1; j < 4; ++j) m.set(i, j, Rational(num(rng), 2));
            ok = ok && (m * tri_inverse(m)).is_identity();
        }
        return report(suite, ok);
    }
    if (suite == "deterministic-walk") {
        TriangularMatrix th(2);
        th.set(0, 1, Rational(1));
        MeasureSpec mu(2, 2, {{SemiDirectElement({1, 0}, 2, th), Rational(1)}});
        std::vector<long> cps = {0, 50, 100};
        std::vector<WalkState> traj = run_walk(mu, 100, 1, cps);
        bool ok = traj.back().phi.at(0, 1) == pow_rational(2, 100) - 1;
        return report(suite, ok);
    }
    if (suite == "triviality") {
        TriangularMatrix f(2);
        f.set(0, 1, Rational(1));
        MeasureSpec mu(2, 2, {{SemiDirectElement({1, 0}, 2, f), Rational(1)}});
        TrivialityVerdict v = check_triviality(mu);
        return report(suite, !v.trivial && v.witness_entry &&
                                 *v.witness_entry == std::make_pair(0, 0 + 1));
    }
    std::cerr << "unknown suite: " << suite
              << " (known: digit-lemmas, algebra, deterministic-walk, triviality)\n";
    return kExitConfig;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"solvable matrix group metrics and random-walk boundary experiments"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path, out_dir, format = "json", matrix_path, measure_path, suite;
    long seed_override = -1;
    int bfs_radius = 0;
    app.add_option("--config", config_path, "experiment config file");
    app.add_option("--seed", seed_override, "restrict the walk to a single seed");
    app.add_option("--out", out_dir, "output directory or file");
    app.add_option("--format", format, "json|csv")
        ->check(CLI::IsMember({"json", "csv"}));

    CLI::App* metrics = app.add_subcommand("metrics", "length estimates and adelic report");
    metrics->add_option("matrix", matrix_path, "matrix JSON file")->required();
    metrics->add_option("--bfs-radius", bfs_radius, "also report the exact word length");

    CLI::App* walk = app.add_subcommand("walk", "seeded walk sweep with boundary detection");

    CLI::App* factorize = app.add_subcommand("factorize", "generator word for a matrix");
    factorize->add_option("matrix", matrix_path, "matrix JSON file")->required();

    CLI::App* invert = app.add_subcommand("invert", "exact inverse of a group element");
    invert->add_option("matrix", matrix_path, "matrix JSON file")->required();

    CLI::App* disp = app.add_subcommand("displacement", "displacement matrix of a measure");
    disp->add_option("measure", measure_path, "measure JSON file")->required();

    CLI::App* triv = app.add_subcommand("check-triviality", "boundary triviality verdict");
    triv->add_option("measure", measure_path, "measure JSON file")->required();

    CLI::App* verify = app.add_subcommand("verify", "run a named property suite");
    verify->add_option("suite", suite, "suite name")->required();

    try {
        app.parse(argc, argv);
        if (metrics->parsed()) return cmd_metrics(matrix_path, bfs_radius);
        if (walk->parsed()) {
            if (config_path.empty()) {
                std::cerr << "walk requires --config\n";
                return kExitConfig;
            }
            return cmd_walk(config_path, seed_override);
        }
        if (factorize->parsed()) return cmd_factorize(matrix_path, out_dir);
        if (invert->parsed()) return cmd_invert(matrix_path);
        if (disp->parsed()) return cmd_displacement(measure_path);
        if (triv->parsed()) return cmd_check_triviality(measure_path);
        if (verify->parsed()) return cmd_verify(suite);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitConfig;
    } catch (const solvmat::NotMember& e) {
        std::cerr << "not a group element: " << e.what() << "\n";
        return kExitNotMember;
    } catch (const solvmat::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
