#pragma once

// Batch front end.  Subcommands: invariant, geometry, asymptotics, fourier,
// verify.  Exit codes: 0 ok, 1 verification failure, 2 usage, 3 domain error.

#include "asymptotics.hpp"
#include "config.hpp"
#include "geometry.hpp"
#include "output.hpp"
#include "qdilog.hpp"
#include "rt_exact.hpp"
#include "verify.hpp"

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

namespace rtvol {

inline const char* kUsage =
    "usage: rtvol <invariant|geometry|asymptotics|fourier|verify> [options]\n"
    "  -p N             surgery slope numerator\n"
    "  -q N             surgery slope denominator (>= 1 after normalization)\n"
    "  -r SPEC          level(s): single odd r, list r1,r2,..., or range a..b (odds)\n"
    "  --config FILE    flat key=value config; flags override\n"
    "  --tol.NAME V     named tolerance override\n"
    "  --budget.NAME V  named budget override (e.g. budget.terms, budget.r_cap)\n"
    "  --format csv|json   output format (default csv)\n"
    "  --out PATH       write output to PATH (default stdout)\n"
    "  --pretty         aligned human-readable table instead of csv\n"
    "  --quick          verify only: restrict to r <= 51\n";

namespace cli_detail {

inline RunConfig parse_args(const std::vector<std::string>& args, std::size_t start) {
    RunConfig cfg;
    // config file first so flags can override
    for (std::size_t i = start; i < args.size(); ++i)
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) throw UsageError("--config needs a path");
            load_config_file(cfg, args[i + 1]);
        }
    for (std::size_t i = start; i < args.size(); ++i) {
        const std::string& a = args[i];
        auto next = [&]() -> const std::string& {
            if (i + 1 >= args.size()) throw UsageError("missing value after " + a);
            return args[++i];
        };
        if (a == "-p") cfg.p = std::stoll(next());
        else if (a == "-q") cfg.q = std::stoll(next());
        else if (a == "-r") cfg.r_list = parse_r_spec(next());
        else if (a == "--config") { next(); }
        else if (a == "--format") cfg.format = next();
        else if (a == "--out") cfg.out = next();
        else if (a == "--pretty") cfg.pretty = true;
        else if (a == "--quick") cfg.quick = true;
        else if (a.rfind("--tol.", 0) == 0) cfg.tol[a.substr(6)] = std::stod(next());
        else if (a.rfind("--budget.", 0) == 0) cfg.budget[a.substr(9)] = std::stod(next());
        else throw UsageError("unknown option: " + a);
    }
    return cfg;
}

inline SurgerySlope slope_of(const RunConfig& cfg) {
    try {
        return SurgerySlope(cfg.p, cfg.q);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

inline void emit(const RunConfig& cfg, const Table& table, const nlohmann::json& summary) {
    if (cfg.format == "json") {
        nlohmann::json doc;
        doc["config"] = {{"p", cfg.p}, {"q", cfg.q}, {"format", cfg.format}};
        if (!cfg.r_list.empty()) doc["config"]["r"] = cfg.r_list;
        doc["rows"] = table.to_json_rows();
        doc["summary"] = summary;
        write_text(cfg.out, doc.dump(2) + "\n");
    } else if (cfg.pretty) {
        write_text(cfg.out, table.to_pretty());
    } else {
        write_text(cfg.out, table.to_csv());
    }
}

inline int cmd_invariant(const RunConfig& cfg) {
    const SurgerySlope slope = slope_of(cfg);
    if (cfg.r_list.empty()) throw UsageError("invariant: -r required");
    if (!slope.hyperbolic())
        std::cerr << "warning: slope " << slope.p << "/" << slope.q
                  << " is exceptional (non-hyperbolic); the state sum is still defined\n";
    const double max_terms = cfg.budget_or("terms", 5e8);
    const int r_cap = static_cast<int>(cfg.budget_or("r_cap", 0));
    Table t;
    t.header = {"r", "re", "im", "log_abs", "arg", "formula", "crosscheck_rel"};
    double worst = 0.0;
    for (int r : cfg.r_list) {
        const RootData rd(r);
        const InvariantValue sym = rt_symmetrized(slope, rd, max_terms, r_cap);
        const InvariantValue dir = rt_direct(slope, rd, max_terms, r_cap);
        const double rel = std::abs(sym.value - dir.value) / std::abs(sym.value);
        worst = std::max(worst, rel);
        auto fmt = cfg.pretty ? fmt_pretty : fmt_full;
        t.rows.push_back({std::to_string(r), fmt(sym.value.real()), fmt(sym.value.imag()),
                          fmt(sym.log_value.real()), fmt(sym.log_value.imag()), sym.formula,
                          fmt(rel)});
    }
    emit(cfg, t, {{"max_crosscheck_rel", worst}});
    const double tol = cfg.tol_or("crosscheck", 1e-9);
    if (worst > tol) {
        std::cerr << "invariant: cross-formula residual " << worst << " exceeds " << tol << "\n";
        return 1;
    }
    return 0;
}

inline int cmd_geometry(const RunConfig& cfg) {
    const SurgerySlope slope = slope_of(cfg);
    if (!slope.hyperbolic()) {
        std::cerr << "geometry: slope " << slope.p << "/" << slope.q
                  << " is exceptional (non-hyperbolic)\n";
        return 3;
    }
    const CriticalData cd = solve_critical(slope, cfg.tol_or("newton", 1e-13));
    const auto h = holonomies(slope, cd);
    const FkpBound fkp = fkp_lower_bound(slope);
    auto fmt = cfg.pretty ? fmt_pretty : fmt_full;
    Table t;
    t.header = {"field", "value", "value_im"};
    auto row = [&](const std::string& n, cplx v) {
        t.rows.push_back({n, fmt(v.real()), fmt(v.imag())});
    };
    row("x0", cd.x0);
    row("y0", cd.y0);
    row("A", cd.A);
    row("B", cd.B);
    t.rows.push_back({"volume", fmt(cd.volume), "0"});
    t.rows.push_back({"cs_mod_pi2", fmt(cd.cs), "0"});
    row("hess_det", cd.hess_det);
    row("holonomy_m", h[0]);
    row("holonomy_l", h[1]);
    row("holonomy_core", h[2]);
    t.rows.push_back({"fkp_lower_bound", fmt(fkp.value), fkp.vacuous ? "vacuous" : "0"});
    t.rows.push_back({"yoshida_discrepancy", fmt(yoshida_check(slope, cd)), "0"});
    t.rows.push_back({"residual_critical", fmt(cd.residual_critical), "0"});
    t.rows.push_back({"residual_gluing", fmt(cd.residual_gluing), "0"});
    emit(cfg, t, {{"volume", cd.volume}, {"cs_mod_pi2", cd.cs}});
    return 0;
}

inline int cmd_asymptotics(const RunConfig& cfg) {
    const SurgerySlope slope = slope_of(cfg);
    if (cfg.r_list.empty()) throw UsageError("asymptotics: -r required");
    if (!slope.hyperbolic()) {
        std::cerr << "asymptotics: need a hyperbolic slope\n";
        return 3;
    }
    const double max_terms = cfg.budget_or("terms", 5e8);
    const auto recs = convergence_table(slope, cfg.r_list, max_terms);
    auto fmt = cfg.pretty ? fmt_pretty : fmt_full;
    Table t;
    t.header = {"r", "re_scaled", "im_scaled", "target_re", "target_im",
                "residual", "ratio_re", "ratio_im"};
    for (const auto& rec : recs)
        t.rows.push_back({std::to_string(rec.r), fmt(rec.rt_log_scaled.real()),
                          fmt(rec.rt_log_scaled.imag()), fmt(rec.target.real()),
                          fmt(rec.target.imag()), fmt(rec.residual),
                          fmt(rec.saddle_ratio.real()), fmt(rec.saddle_ratio.imag())});
    emit(cfg, t,
         {{"first_residual", recs.front().residual}, {"last_residual", recs.back().residual}});
    return 0;
}

inline int cmd_fourier(const RunConfig& cfg) {
    const SurgerySlope slope = slope_of(cfg);
    if (cfg.r_list.empty()) throw UsageError("fourier: -r required");
    if (!slope.hyperbolic()) {
        std::cerr << "fourier: need a hyperbolic slope\n";
        return 3;
    }
    const CriticalData cd = solve_critical(slope);
    auto fmt = cfg.pretty ? fmt_pretty : fmt_full;
    Table t;
    t.header = {"r", "hat_f0_re", "hat_f0_im", "hat_fm1_re", "hat_fm1_im",
                "kappa_sum_re", "kappa_sum_im", "exact_re", "exact_im", "rel_err"};
    const CfExpansion cf = expand_negative_cf(slope.p, slope.q);
    for (int r : cfg.r_list) {
        const QuantumDilog phi(r);
        const FourierLeading fl = fourier_leading(slope, phi, cd);
        const cplx approx = kappa_r(r, cf, linking_signature(cf)) * (fl.hat_f0 + fl.hat_fm1);
        const RootData rd(r);
        const cplx exact = rt_symmetrized(slope, rd, cfg.budget_or("terms", 5e8)).value;
        const double rel = std::abs(approx - exact) / std::abs(exact);
        t.rows.push_back({std::to_string(r), fmt(fl.hat_f0.real()), fmt(fl.hat_f0.imag()),
                          fmt(fl.hat_fm1.real()), fmt(fl.hat_fm1.imag()), fmt(approx.real()),
                          fmt(approx.imag()), fmt(exact.real()), fmt(exact.imag()), fmt(rel)});
    }
    emit(cfg, t, {{"slope_k", cf.k()}});
    return 0;
}

inline int cmd_verify(const RunConfig& cfg) {
    const auto results = run_acceptance(cfg.quick, stdout);
    bool ok = true;
    for (const auto& r : results) ok = ok && r.pass;
    return ok ? 0 : 1;
}

}  // namespace cli_detail

inline int run_cli(const std::vector<std::string>& args) {
    try {
        if (args.empty()) {
            std::cerr << kUsage;
            return 2;
        }
        const std::string& cmd = args[0];
        const RunConfig cfg = cli_detail::parse_args(args, 1);
        if (cmd == "invariant") return cli_detail::cmd_invariant(cfg);
        if (cmd == "geometry") return cli_detail::cmd_geometry(cfg);
        if (cmd == "asymptotics") return cli_detail::cmd_asymptotics(cfg);
        if (cmd == "fourier") return cli_detail::cmd_fourier(cfg);
        if (cmd == "verify") return cli_detail::cmd_verify(cfg);
        std::cerr << "unknown subcommand: " << cmd << "\n" << kUsage;
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n" << kUsage;
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 3;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace rtvol
