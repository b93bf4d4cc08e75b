#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "povm/circle_set.hpp"
#include "povm/eigen.hpp"
#include "povm/errors.hpp"
#include "povm/gram.hpp"
#include "povm/line_povm.hpp"
#include "povm/moments.hpp"
#include "povm/oracle.hpp"
#include "povm/phase_povm.hpp"
#include "povm/rng.hpp"
#include "povm/serialize.hpp"
#include "povm/spectral.hpp"
#include "povm/version.hpp"

namespace povm {

struct CliOptions {
    std::string command;
    std::string config_path;          // empty means command defaults
    std::string out_dir = "povm_out";
    std::optional<std::uint64_t> seed;  // overrides a random generator's seed
    std::vector<long> dims;             // overrides convergence one-sided dims
    std::string format = "json";        // matrix output format: json or csv
};

namespace detail_cli {

inline Json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return Json::parse(ss.str());
    } catch (const Json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
}

inline void ensure_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw ConfigError("cannot create output directory " + dir + ": " + ec.message());
}

inline void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file: " + path);
    out << text;
    if (!out) throw ConfigError("write failed: " + path);
}

inline void write_json(const std::string& path, const Json& j) {
    write_text(path, j.dump(2) + "\n");
}

/// Hash of the effective run: config after command line overrides, plus the
/// toolkit version. Embedded in every output so results are traceable to
/// their inputs.
inline std::string effective_hash(const Json& effective) {
    return hex64(fnv1a64(effective.dump() + "|" + std::string(k_version)));
}

inline Json header(const std::string& command, const Json& effective) {
    return Json{{"command", command},
                {"config_hash", effective_hash(effective)},
                {"version", std::string(k_version)}};
}

inline GeneratorSpec generator_with_seed(const Json& cfg, const CliOptions& opt,
                                         Json& effective) {
    GeneratorSpec gen = generator_from_json(require_field(cfg, "generator", "config"));
    if (opt.seed.has_value()) {
        if (auto* rs = std::get_if<RandomSeeded>(&gen)) {
            rs->seed = *opt.seed;
            effective["generator"]["seed"] = *opt.seed;
        } else {
            throw ConfigError("--seed given but the generator is not random");
        }
    }
    return gen;
}

inline void write_matrix(const std::string& stem, const ComplexMatrix& m,
                         const std::string& format) {
    if (format == "csv") {
        write_text(stem + ".csv", matrix_to_csv(m));
    } else if (format == "json") {
        write_json(stem + ".json", matrix_to_json(m));
    } else {
        throw ConfigError("unknown format \"" + format + "\" (expected json or csv)");
    }
}

inline std::vector<CircleSet> sets_from_config(const Json& cfg) {
    const Json& arr = require_field(cfg, "sets", "config");
    if (!arr.is_array() || arr.empty())
        throw ConfigError("config: sets must be a non-empty array");
    std::vector<CircleSet> sets;
    for (const auto& s : arr) sets.push_back(circle_set_from_json(s));
    return sets;
}

inline StateVector random_state(std::size_t dim, Rng& rng) {
    std::vector<Complex> amp(dim);
    for (auto& c : amp) {
        const double re = rng.uniform_pm1();
        const double im = rng.uniform_pm1();
        c = Complex(re, im);
    }
    return StateVector(std::move(amp));
}

}  // namespace detail_cli

/// build: construct the observable from a generator config and write the
/// effect operator of every configured set plus a moment CSV.
inline int run_build(const CliOptions& opt) {
    using namespace detail_cli;
    if (opt.config_path.empty()) throw ConfigError("build needs --config");
    const Json cfg = load_config(opt.config_path);
    check_keys(cfg, {"generator", "indexing", "sets", "max_moment"}, "config");
    Json effective = cfg;
    const Indexing idx = indexing_from_json(require_field(cfg, "indexing", "config"));
    const GeneratorSpec gen = generator_with_seed(cfg, opt, effective);
    const std::vector<CircleSet> sets = sets_from_config(cfg);
    const int max_moment =
        cfg.contains("max_moment") ? cfg["max_moment"].get<int>() : 2;
    if (max_moment < 1 || max_moment > 16)
        throw ConfigError("max_moment must lie in 1..16");

    ensure_dir(opt.out_dir);
    const PhasePovm p(build_gram(gen, idx));

    Json summary = header("build", effective);
    summary["indexing"] = indexing_to_json(idx);
    Json set_rows = Json::array();
    for (std::size_t i = 0; i < sets.size(); ++i) {
        const HermitianOperator f = povm_value(p, sets[i]);
        write_matrix(opt.out_dir + "/effect_" + std::to_string(i), f.matrix(), opt.format);
        const PsdCertificate cert = psd_certify(f);
        set_rows.push_back(Json{{"set", circle_set_to_json(sets[i])},
                                {"measure", sets[i].measure()},
                                {"min_eigenvalue", cert.min_eigenvalue},
                                {"norm", operator_norm(f)}});
    }
    summary["effects"] = std::move(set_rows);
    write_text(opt.out_dir + "/moments.csv", moment_report_csv(p, max_moment));
    write_json(opt.out_dir + "/summary.json", summary);
    return 0;
}

/// dilemma-report: one JSON report contrasting the observable with the
/// spectral measure of its own first moment. Deterministic byte for byte
/// for a fixed config.
inline int run_dilemma_report(const CliOptions& opt) {
    using namespace detail_cli;
    if (opt.config_path.empty()) throw ConfigError("dilemma-report needs --config");
    const Json cfg = load_config(opt.config_path);
    check_keys(cfg, {"generator", "indexing", "sets", "shifts", "states", "window"}, "config");
    Json effective = cfg;
    const Indexing idx = indexing_from_json(require_field(cfg, "indexing", "config"));
    const GeneratorSpec gen = generator_with_seed(cfg, opt, effective);
    const std::vector<CircleSet> sets = sets_from_config(cfg);
    std::vector<double> shifts;
    for (const auto& s : require_field(cfg, "shifts", "config"))
        shifts.push_back(as_double(s, "shifts"));
    if (shifts.empty()) throw ConfigError("config: shifts must be non-empty");
    std::size_t window = cfg.contains("window") ? cfg["window"].get<std::size_t>() : 5;

    const PhasePovm p(build_gram(gen, idx));
    const std::size_t n = p.dim();
    if (window > n) window = n;

    std::vector<StateVector> states;
    const Json& st = require_field(cfg, "states", "config");
    const std::string skind = require_field(st, "kind", "states").get<std::string>();
    if (skind == "random") {
        check_keys(st, {"kind", "count", "seed"}, "states");
        const std::size_t count = require_field(st, "count", "states").get<std::size_t>();
        Rng rng(require_field(st, "seed", "states").get<std::uint64_t>());
        for (std::size_t i = 0; i < count; ++i) states.push_back(random_state(n, rng));
    } else if (skind == "explicit") {
        check_keys(st, {"kind", "vectors"}, "states");
        for (const auto& v : require_field(st, "vectors", "states"))
            states.push_back(state_from_json(Json{{"amplitudes", v}}, "states"));
    } else {
        throw ConfigError("states: kind must be \"random\" or \"explicit\"");
    }

    const HermitianOperator f1 = moment_operator(p, 1);
    const GramMatrix recovered = recover_gram(f1, idx);
    double round_trip = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            round_trip = std::max(round_trip,
                                  std::abs(recovered.entry(i, j) - p.gram().entry(i, j)));

    Json report = header("dilemma-report", effective);
    report["indexing"] = indexing_to_json(idx);
    report["round_trip_max_error"] = round_trip;

    const SupportComparison sup = support_compare(p);
    report["first_moment_spectrum"] = Json{{"min", sup.spectrum_min},
                                           {"max", sup.spectrum_max},
                                           {"support_min", sup.support_min},
                                           {"support_max", sup.support_max},
                                           {"inclusion_ok", sup.inclusion_ok}};

    const HermitianOperator noise = noise_operator(p);
    const PsdCertificate noise_cert = psd_certify(noise);
    report["noise"] = Json{{"min_eigenvalue", noise_cert.min_eigenvalue},
                           {"norm", operator_norm(noise)},
                           {"trace", noise.trace()}};

    Json cov = Json::array();
    Json cov_spec = Json::array();
    for (std::size_t i = 0; i < sets.size(); ++i) {
        for (double x : shifts) {
            cov.push_back(Json{{"set", i}, {"shift", x},
                               {"defect", covariance_defect(p, sets[i], x)}});
            cov_spec.push_back(Json{{"set", i}, {"shift", x},
                                    {"defect", spectral_covariance_defect(p, sets[i], x)}});
        }
    }
    report["povm_covariance_defects"] = std::move(cov);
    report["spectral_covariance_defects"] = std::move(cov_spec);

    const BinnedSpectralMeasure e(f1);
    Json comm = Json::array();
    Json mult = Json::array();
    for (std::size_t i = 0; i < sets.size(); ++i)
        for (std::size_t j = i + 1; j < sets.size(); ++j) {
            comm.push_back(Json{{"set_a", i}, {"set_b", j},
                                {"commutator_norm", commutator_norm(p, sets[i], sets[j])}});
            mult.push_back(Json{{"set_a", i}, {"set_b", j},
                                {"defect", multiplicativity_defect(e, to_real(sets[i]),
                                                                  to_real(sets[j]))}});
        }
    report["povm_commutators"] = std::move(comm);
    report["spectral_multiplicativity_defects"] = std::move(mult);

    Json idem = Json::array();
    for (std::size_t i = 0; i < sets.size(); ++i)
        idem.push_back(Json{{"set", i}, {"window", window},
                            {"defect", idempotence_defect(p, sets[i], window)}});
    report["povm_idempotence_defects"] = std::move(idem);

    Json vars = Json::array();
    for (const auto& phi : states) {
        const VarianceReport rep = variance_report(p, phi);
        vars.push_back(Json{{"mean", rep.mean},
                            {"var_povm", rep.var_povm},
                            {"var_spectral", rep.var_spectral},
                            {"noise", rep.noise},
                            {"additivity_residual",
                             std::abs(rep.var_povm - rep.var_spectral - rep.noise)},
                            {"spectral_mean", spectral_mean(e, phi)}});
    }
    report["variance_reports"] = std::move(vars);

    ensure_dir(opt.out_dir);
    write_json(opt.out_dir + "/dilemma_report.json", report);
    return 0;
}

/// convergence: canonical-observable truncation sweep. One-sided spectra
/// narrow strictly inside (0, 2*pi) and keep a full-window idempotence
/// defect; two-sided central windows converge toward projection-valued.
inline int run_convergence(const CliOptions& opt) {
    using namespace detail_cli;
    Json cfg = Json::object();
    if (!opt.config_path.empty()) cfg = load_config(opt.config_path);
    check_keys(cfg, {"set", "nat_dims", "int_orders", "window"}, "config");
    CircleSet set = cfg.contains("set") ? circle_set_from_json(cfg["set"])
                                        : normalize({{0.0, k_pi}});
    std::vector<long> nat_dims = {8, 16, 32, 64};
    if (cfg.contains("nat_dims")) {
        nat_dims.clear();
        for (const auto& d : cfg["nat_dims"]) nat_dims.push_back(d.get<long>());
    }
    if (!opt.dims.empty()) nat_dims = opt.dims;
    std::vector<long> int_orders = {8, 16, 32};
    if (cfg.contains("int_orders")) {
        int_orders.clear();
        for (const auto& d : cfg["int_orders"]) int_orders.push_back(d.get<long>());
    }
    const std::size_t window = cfg.contains("window") ? cfg["window"].get<std::size_t>() : 5;

    Json effective = cfg;
    effective["set"] = circle_set_to_json(set);
    effective["nat_dims"] = nat_dims;
    effective["int_orders"] = int_orders;
    effective["window"] = window;

    std::string wide = "family,dim,min_eig,max_eig,central_window_defect,full_window_defect\n";
    std::string longfmt = "family,dim,quantity,value\n";
    const auto emit = [&](const std::string& family, std::size_t dim, double mn, double mx,
                          double central, double full) {
        wide += family + "," + std::to_string(dim) + "," + format_real(mn) + "," +
                format_real(mx) + "," + format_real(central) + "," + format_real(full) + "\n";
        for (const auto& [name, val] :
             std::initializer_list<std::pair<const char*, double>>{
                 {"min_eig", mn},
                 {"max_eig", mx},
                 {"central_window_defect", central},
                 {"full_window_defect", full}})
            longfmt += family + "," + std::to_string(dim) + "," + name + "," +
                       format_real(val) + "\n";
    };

    for (long d : nat_dims) {
        const PhasePovm p(build_gram(ConstantGenerators{}, Indexing::nat_truncated(d)));
        const EigenSystem sys = eigen_hermitian(moment_operator(p, 1));
        const std::size_t w = std::min(window, p.dim());
        emit("nat", p.dim(), sys.values.front(), sys.values.back(),
             idempotence_defect(p, set, w), idempotence_defect(p, set, p.dim()));
    }
    for (long order : int_orders) {
        const PhasePovm p(build_gram(ConstantGenerators{}, Indexing::int_truncated(order)));
        const EigenSystem sys = eigen_hermitian(moment_operator(p, 1));
        const std::size_t w = std::min(window, p.dim());
        emit("int", p.dim(), sys.values.front(), sys.values.back(),
             idempotence_defect(p, set, w), idempotence_defect(p, set, p.dim()));
    }

    ensure_dir(opt.out_dir);
    Json summary = header("convergence", effective);
    write_text(opt.out_dir + "/convergence.csv",
               "# config_hash=" + effective_hash(effective) + " version=" +
                   std::string(k_version) + "\n" + wide);
    write_text(opt.out_dir + "/convergence_long.csv", longfmt);
    write_json(opt.out_dir + "/summary.json", summary);
    return 0;
}

/// line: smeared-position run. Reports the first-moment interior defect,
/// variance additivity for the configured state, and the two-kernel
/// nonuniqueness witness when a second density is given.
inline int run_line(const CliOptions& opt) {
    using namespace detail_cli;
    if (opt.config_path.empty()) throw ConfigError("line needs --config");
    const Json cfg = load_config(opt.config_path);
    check_keys(cfg, {"grid", "density", "density_b", "state", "sets"}, "config");
    const LineGrid grid = grid_from_json(require_field(cfg, "grid", "config"));
    const SmearedPositionPovm s(density_from_json(require_field(cfg, "density", "config"), grid));

    Json report = header("line", cfg);
    report["grid"] = grid_to_json(grid);
    report["density"] = density_to_json(s.profile());
    report["first_moment_interior_defect"] = first_moment_interior_defect(s);

    const DiagonalOperator f1 = first_moment_line(s);
    std::string f1_csv = "j,x,value\n";
    for (std::size_t j = 0; j < grid.n_points(); ++j)
        f1_csv += std::to_string(j) + "," + format_real(grid.point(j)) + "," +
                  format_real(f1.value(j)) + "\n";

    ensure_dir(opt.out_dir);
    write_text(opt.out_dir + "/first_moment.csv", f1_csv);

    if (cfg.contains("sets")) {
        Json rows = Json::array();
        const Json& arr = cfg["sets"];
        if (!arr.is_array()) throw ConfigError("config: sets must be an array");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const RealSet x = real_set_from_json(arr[i]);
            const SmearedValue val = smeared_value(s, x);
            const DiagonalOperator sharp = position_spectral(grid, x);
            rows.push_back(Json{{"set", real_set_to_json(x)},
                                {"boundary_loss", val.boundary_loss},
                                {"boundary_warning", val.boundary_warning},
                                {"max_diag", val.op.sup_norm()},
                                {"sharp_gap", (val.op - sharp).sup_norm()}});
            std::string csv = "j,x,smeared,sharp\n";
            for (std::size_t j = 0; j < grid.n_points(); ++j)
                csv += std::to_string(j) + "," + format_real(grid.point(j)) + "," +
                       format_real(val.op.value(j)) + "," + format_real(sharp.value(j)) + "\n";
            write_text(opt.out_dir + "/effect_" + std::to_string(i) + ".csv", csv);
        }
        report["effects"] = std::move(rows);
    }

    if (cfg.contains("state")) {
        const Json& st = cfg["state"];
        StateVector phi = [&]() -> StateVector {
            if (st.is_object() && st.contains("kind")) {
                check_keys(st, {"kind", "sigma", "center"}, "state");
                if (st["kind"].get<std::string>() != "gaussian")
                    throw ConfigError("state: kind must be \"gaussian\" or give amplitudes");
                try {
                    return gaussian_state(grid, as_double(require_field(st, "sigma", "state"),
                                                          "state"),
                                          st.contains("center")
                                              ? as_double(st["center"], "state")
                                              : 0.0);
                } catch (const RangeError& e) {
                    throw ConfigError(std::string("state: ") + e.what());
                }
            }
            return state_from_json(st, "state");
        }();
        const VarianceAdditivity var = variance_additivity_check(s, phi);
        report["variance_additivity"] = Json{{"mean_smeared", var.mean_smeared},
                                             {"var_smeared", var.var_smeared},
                                             {"mean_sharp", var.mean_sharp},
                                             {"var_sharp", var.var_sharp},
                                             {"var_profile", var.var_profile},
                                             {"residual", var.residual},
                                             {"discretization_bound",
                                              var.discretization_bound}};
    }

    if (cfg.contains("density_b")) {
        const SmearedPositionPovm sb(density_from_json(cfg["density_b"], grid));
        const NonuniquenessWitness w = nonuniqueness_witness(s, sb, default_witness_sets());
        report["density_b"] = density_to_json(sb.profile());
        report["nonuniqueness"] = Json{{"moment_gap", w.moment_gap},
                                       {"measure_gap", w.measure_gap},
                                       {"witness_index", w.witness_index},
                                       {"per_set_gap", w.per_set_gap}};
    }

    write_json(opt.out_dir + "/line_report.json", report);
    return 0;
}

/// oracle-check: audits the closed-form coefficients against the
/// independent quadrature oracle. Exit 1 when any disagreement exceeds the
/// tolerance.
inline int run_oracle_check(const CliOptions& opt) {
    using namespace detail_cli;
    Json cfg = Json::object();
    if (!opt.config_path.empty()) cfg = load_config(opt.config_path);
    check_keys(cfg, {"max_k", "max_abs_d", "tolerance"}, "config");
    const int max_k = cfg.contains("max_k") ? cfg["max_k"].get<int>() : 6;
    const int max_d = cfg.contains("max_abs_d") ? cfg["max_abs_d"].get<int>() : 64;
    const double tol = cfg.contains("tolerance") ? cfg["tolerance"].get<double>() : 1e-11;
    if (max_k < 0 || max_d < 0 || !(tol > 0.0)) throw ConfigError("bad oracle-check bounds");

    Json effective = cfg;
    effective["max_k"] = max_k;
    effective["max_abs_d"] = max_d;
    effective["tolerance"] = tol;

    double worst_moment = 0.0;
    for (int k = 0; k <= max_k; ++k)
        for (int d = -max_d; d <= max_d; ++d)
            worst_moment = std::max(
                worst_moment,
                std::abs(moment_coefficient(k, d) - oracle_moment_coefficient(k, d)));

    const std::vector<CircleSet> sets = {
        normalize({{0.0, k_pi}}),
        normalize({{0.5, 1.0}, {2.0, 4.5}}),
        normalize({{5.5, 1.0}}),  // wraps through zero
        CircleSet::full(),
    };
    double worst_circle = 0.0;
    for (const auto& x : sets)
        for (int d = -16; d <= 16; ++d)
            worst_circle = std::max(
                worst_circle,
                std::abs(fourier_coefficient(x, d) - oracle_circle_coefficient(x, d)));

    const bool pass = worst_moment <= tol && worst_circle <= tol;
    Json out = header("oracle-check", effective);
    out["max_error_moment"] = worst_moment;
    out["max_error_circle"] = worst_circle;
    out["tolerance"] = tol;
    out["pass"] = pass;
    ensure_dir(opt.out_dir);
    write_json(opt.out_dir + "/oracle_check.json", out);
    if (!pass) std::cerr << "oracle-check: disagreement above tolerance\n";
    return pass ? 0 : 1;
}

/// Dispatch plus the exit code contract: 0 success, 1 scientific invariant
/// violation, 2 configuration or IO problem.
inline int run_command(const CliOptions& opt) {
    try {
        if (opt.command == "build") return run_build(opt);
        if (opt.command == "dilemma-report") return run_dilemma_report(opt);
        if (opt.command == "convergence") return run_convergence(opt);
        if (opt.command == "line") return run_line(opt);
        if (opt.command == "oracle-check") return run_oracle_check(opt);
        std::cerr << "unknown command: " << opt.command << "\n";
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace povm
