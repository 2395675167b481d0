// Command-line front end: critical-point tables, fixed-point solvers, the
// finite-tree compatibility oracle and (theta, c) phase-diagram sweeps.
//
// Exit codes: 0 success; 2 flag parsing; 3 bad value or misuse; 4 regime
// (analysis does not apply there); 5 degenerate parameters; 6 scan window
// trouble; 7 size budget exceeded; 8 I/O failure; 1 anything else.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sos/classifier.hpp"
#include "sos/criticals.hpp"
#include "sos/errors.hpp"
#include "sos/model.hpp"
#include "sos/report_io.hpp"
#include "sos/solvers.hpp"
#include "sos/sweep.hpp"
#include "sos/tree.hpp"

namespace {

using namespace sos;

// ---------------------------------------------------------------------------
// Small flag-string parsers. Bad strings raise contract_error (exit code 3).

RootFindConfig parse_scan(const std::string& text, const RootFindConfig& base) {
    RootFindConfig cfg = base;
    double lo = 0.0, hi = 0.0;
    int points = 0;
    if (std::sscanf(text.c_str(), "%lf:%lf:%d", &lo, &hi, &points) != 3)
        throw contract_error("--scan expects lo:hi:points, got '" + text + "'");
    cfg.scan_lo = lo;
    cfg.scan_hi = hi;
    cfg.scan_points = points;
    cfg.validate();
    return cfg;
}

BranchPattern parse_pattern(const std::string& text) {
    BranchPattern p;
    if (std::sscanf(text.c_str(), "%d,%d,%d,%d", &p.a, &p.b, &p.c, &p.d) != 4)
        throw contract_error("--pattern expects a,b,c,d, got '" + text + "'");
    return p;
}

RootSplit parse_root_split(const std::string& text) {
    RootSplit s;
    if (std::sscanf(text.c_str(), "%d,%d", &s.to_h, &s.to_l) != 2)
        throw contract_error("--root-split expects to_h,to_l, got '" + text + "'");
    return s;
}

void parse_theta_range(const std::string& text, SweepSpec& spec) {
    if (std::sscanf(text.c_str(), "%lf:%lf:%d", &spec.theta_lo, &spec.theta_hi,
                    &spec.theta_steps) != 3)
        throw contract_error("sweep --theta expects lo:hi:steps, got '" + text + "'");
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t used = 0;
        out.push_back(std::stoi(text.substr(pos), &used));
        pos += used;
        if (pos < text.size()) {
            if (text[pos] != ',') throw contract_error("--c expects a comma list of integers");
            ++pos;
        }
    }
    if (out.empty()) throw contract_error("--c expects at least one integer");
    return out;
}

PrefactorConvention parse_convention(const std::string& text) {
    if (text == "k") return PrefactorConvention::KOverHStar;
    if (text == "d") return PrefactorConvention::DOverHStar;
    throw contract_error("--convention expects 'k' or 'd', got '" + text + "'");
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open " + path + " for writing");
    out << text;
    if (!out) throw io_error("failed while writing " + path);
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty())
        std::cout << text;
    else
        write_text(out_path, text);
}

// Shared per-subcommand state filled by CLI11.
struct Options {
    double theta = 0.0;
    int k = 0;
    int m = 2;
    int d = -1;
    int c = 0;
    int n = 2;
    int workers = 1;
    int budget = kDefaultEnumerationBudget;
    std::string mode;
    std::string pattern_text;
    std::string scan_text;
    std::string theta_text;     // sweep range lo:hi:steps
    std::string c_list_text;    // sweep comma list
    std::string root_split_text;
    std::string convention_text = "d";
    std::string out_path;
    std::string format = "human";
    double tol = 1e-13;
    double perturb = 0.0;
    std::optional<unsigned> seed;
    bool have_scan = false;
    bool have_pattern = false;
    bool have_c = false;
    bool have_root_split = false;
};

// Largest additive offset the b = 0 chain can see: |c h*/k| <= c * max|f|.
double chain_shift_bound(const ModelParams& params, int c) {
    const auto [lo, hi] = kernel_f_bounds(params.theta);
    return std::abs(c) * std::max(std::abs(lo), std::abs(hi));
}

RootFindConfig scan_config(const Options& opt, const ModelParams& params, double shift) {
    RootFindConfig cfg;
    cfg.tol_x = opt.tol;
    if (opt.have_scan) return parse_scan(opt.scan_text, cfg);
    // No explicit window: widen the default so every bounded fixed point is
    // inside regardless of the parameters.
    return widened_config(params, cfg, shift);
}

void require_m2(const Options& opt) {
    if (opt.m != 2) throw domain_error("the reduced solvers cover m = 2 only");
}

// ---------------------------------------------------------------------------
// criticals

int cmd_criticals(const Options& opt) {
    require_m2(opt);
    if (opt.d < 2) throw domain_error("criticals needs --d >= 2");
    const int k = opt.k > 0 ? opt.k : opt.d;  // default: pure chain with c = 0
    const auto convention = parse_convention(opt.convention_text);

    const ModelParams params(opt.theta, k);
    const auto ti = solve_ti(params, scan_config(opt, params, 0.0));
    const int idx = ti.size() == 3 ? 1 : 0;
    const double h_star = ti.roots[static_cast<std::size_t>(idx)].h2;

    const auto cs_k = make_critical_set(opt.theta, k, opt.d, h_star,
                                        PrefactorConvention::KOverHStar);
    const auto cs_d = make_critical_set(opt.theta, k, opt.d, h_star,
                                        PrefactorConvention::DOverHStar);
    const auto& sel = convention == PrefactorConvention::KOverHStar ? cs_k : cs_d;

    if (opt.format == "json") {
        nlohmann::json j;
        j["theta"] = opt.theta;
        j["k"] = k;
        j["d"] = opt.d;
        j["h_star"] = h_star;
        j["selected_convention"] = to_string(convention);
        j["k_over_h_star"] = to_json(cs_k);
        j["d_over_h_star"] = to_json(cs_d);
        emit(j.dump(2) + "\n", opt.out_path);
        return 0;
    }
    if (opt.format != "human")
        throw contract_error("criticals supports --format json or human output");

    std::string text;
    text += "theta = " + format_human(opt.theta) + "  k = " + std::to_string(k) +
            "  d = " + std::to_string(opt.d) + "\n";
    text += "zeta = " + format_human(sel.zeta) + "\n";
    text += "theta_c = " + format_human(sel.theta_c) + "\n";
    text += "discriminant = " + format_human(sel.discriminant_value) + "\n";
    text += "h* (translation-invariant root) = " + format_human(h_star) + "\n";
    if (!sel.x1) {
        text += "unique-solution regime; no critical pair\n";
    } else {
        text += "x1 = " + format_human(*sel.x1) + "  x2 = " + format_human(*sel.x2);
        if (sel.discriminant_value == 0.0 || *sel.x1 == *sel.x2)
            text += "  (x1 = x2: double root at the critical temperature)";
        text += "\n";
        if (!sel.eta1) {
            text += "quadratic roots are not positive; no eta pair or c* interval\n";
        } else {
            text += "eta1 = " + format_human(*sel.eta1) + "  eta2 = " + format_human(*sel.eta2) +
                    "\n";
            auto c_line = [&](const CriticalSet& cs, const char* name) {
                std::string line(name);
                if (cs.c_star_1)
                    line += " c*_1 = " + format_human(*cs.c_star_1) +
                            "  c*_2 = " + format_human(*cs.c_star_2);
                else
                    line += " c* undefined (h* = 0)";
                return line + "\n";
            };
            text += c_line(cs_k, "[k/h* convention]");
            text += c_line(cs_d, "[d/h* convention]");
            text += "selected convention: " + std::string(to_string(convention)) + "\n";
            if (k != opt.d)
                text += "note: the two published prefactors disagree by the factor k/d; "
                        "only k/h* matches the transformed-form count\n";
        }
    }
    emit(text, opt.out_path);
    return 0;
}

// ---------------------------------------------------------------------------
// solve

std::string solution_csv(const SolutionReport& rep, const std::vector<FamilyTag>& tags) {
    std::string out = "# sosgibbs solutions v1\n";
    out += "h2,l2,residual,derivative,stability,family,label\n";
    for (std::size_t i = 0; i < rep.size(); ++i) {
        out += format_machine(rep.roots[i].h2) + "," + format_machine(rep.roots[i].l2) + "," +
               format_machine(rep.residuals[i]) + "," + format_machine(rep.derivatives[i]) +
               "," + to_string(rep.stability[i]) + "," + to_string(tags[i]) + "," +
               rep.labels[i] + "\n";
    }
    return out;
}

int cmd_solve(const Options& opt) {
    require_m2(opt);
    if (opt.k < 1) throw domain_error("solve needs --k >= 1");
    const ModelParams params(opt.theta, opt.k);

    BranchPattern pattern;
    SolutionReport rep;
    std::string mode = opt.mode;
    if (mode == "ti") {
        pattern = BranchPattern{0, opt.k, opt.k, 0};
        rep = solve_ti(params, scan_config(opt, params, 0.0));
    } else if (mode == "periodic") {
        pattern = BranchPattern{0, opt.k, opt.k, 0};
        rep = solve_periodic(params, scan_config(opt, params, 0.0));
    } else if (mode == "b-zero") {
        if (!opt.have_c) throw contract_error("--mode b-zero needs --c");
        pattern = BranchPattern{opt.k, 0, opt.c, opt.k - opt.c};
        rep = solve_b_zero(params, opt.c,
                           scan_config(opt, params, chain_shift_bound(params, opt.c)));
    } else if (mode == "b-nonzero") {
        if (!opt.have_pattern) throw contract_error("--mode b-nonzero needs --pattern");
        pattern = parse_pattern(opt.pattern_text);
        rep = solve_b_nonzero(pattern, params, scan_config(opt, params, 0.0));
    } else if (mode == "nonperiodic") {
        if (!opt.have_pattern) throw contract_error("--mode nonperiodic needs --pattern");
        pattern = parse_pattern(opt.pattern_text);
        rep = solve_non_ti_23(pattern, params, scan_config(opt, params, 0.0));
    } else {
        throw contract_error(
            "--mode must be one of ti, periodic, b-zero, b-nonzero, nonperiodic");
    }

    std::vector<FamilyTag> tags;
    tags.reserve(rep.size());
    for (const auto& r : rep.roots) tags.push_back(family_tag_for(pattern, r));

    // The two-periodic analysis reports the one-level map slope k f'(h) at
    // each equal-pair root: values below -1 signal the period-doubling
    // regime with extra two-periodic solutions.
    std::vector<std::string> period_notes;
    if (mode == "periodic") {
        for (std::size_t i = 0; i < rep.size(); ++i) {
            if (std::abs(rep.roots[i].h2 - rep.roots[i].l2) > 1e-9) continue;
            const double slope =
                opt.k * kernel_f_derivative(rep.roots[i].h2, opt.theta);
            char buf[160];
            std::snprintf(buf, sizeof buf,
                          "root %zu: one-level slope k f'(h) = %.6g; "
                          "period-doubling condition slope < -1: %s",
                          i, slope, slope < -1.0 ? "yes" : "no");
            period_notes.emplace_back(buf);
        }
    }

    if (opt.format == "json") {
        nlohmann::json j = to_json(rep);
        auto& fam = j["family_tags"] = nlohmann::json::array();
        for (auto t : tags) fam.push_back(to_string(t));
        j["period_doubling"] = period_notes;
        emit(j.dump(2) + "\n", opt.out_path);
        return 0;
    }
    if (opt.format == "csv") {
        emit(solution_csv(rep, tags), opt.out_path);
        return 0;
    }
    if (opt.format != "human") throw contract_error("--format must be csv, json or human");

    std::string text = "mode " + mode + ": " + std::to_string(rep.size()) + " root(s)\n";
    if (rep.has_h_star) text += "h* = " + format_human(rep.h_star) + "\n";
    for (std::size_t i = 0; i < rep.size(); ++i) {
        text += "root[" + std::to_string(i) + "]: h2 = " + format_human(rep.roots[i].h2) +
                ", l2 = " + format_human(rep.roots[i].l2) +
                ", residual = " + format_human(rep.residuals[i]) +
                ", |deriv| = " + format_human(rep.derivatives[i]) + ", " +
                to_string(rep.stability[i]) + ", family = " + to_string(tags[i]);
        if (!rep.labels[i].empty()) text += ", " + rep.labels[i];
        text += "\n";
    }
    if (rep.cross_check_count >= 0)
        text += "transformed-form root count = " + std::to_string(rep.cross_check_count) +
                ", roots with l2 > 0: " + std::to_string(rep.positive_l2_count) + "\n";
    for (const auto& note : period_notes) text += note + "\n";
    if (!rep.regime_note.empty()) text += "note: " + rep.regime_note + "\n";
    emit(text, opt.out_path);
    return 0;
}

// ---------------------------------------------------------------------------
// sweep

int cmd_sweep(const Options& opt) {
    require_m2(opt);
    SweepSpec spec;
    parse_theta_range(opt.theta_text, spec);
    spec.k = opt.k;
    spec.workers = opt.workers;
    spec.output_path = opt.out_path;
    if (opt.format == "csv")
        spec.format = SweepSpec::Format::Csv;
    else if (opt.format == "json")
        spec.format = SweepSpec::Format::Json;
    else
        throw contract_error("sweep --format must be csv or json");
    if (opt.have_pattern)
        spec.pattern = parse_pattern(opt.pattern_text);
    else if (opt.have_c)
        spec.c_values = parse_int_list(opt.c_list_text);
    else
        throw contract_error("sweep needs --c (list) or --pattern");
    if (opt.have_scan) {
        RootFindConfig base;
        base.tol_x = opt.tol;
        spec.root_config = parse_scan(opt.scan_text, base);
    } else {
        spec.root_config.tol_x = opt.tol;
        // theta < 1 throughout: the widest window over the grid comes from
        // the smallest theta, and c never exceeds k.
        const ModelParams widest(spec.theta_lo, std::max(spec.k, 1));
        spec.root_config =
            widened_config(widest, spec.root_config, chain_shift_bound(widest, spec.k));
    }
    run_sweep(spec);
    return 0;
}

// ---------------------------------------------------------------------------
// verify-tree

int cmd_verify_tree(const Options& opt) {
    require_m2(opt);
    if (opt.k < 1) throw domain_error("verify-tree needs --k >= 1");
    const ModelParams params(opt.theta, opt.k);
    BranchPattern pattern = opt.have_pattern
                                ? parse_pattern(opt.pattern_text)
                                : BranchPattern{opt.k, 0, opt.c, opt.k - opt.c};

    const auto cfg = scan_config(opt, params, chain_shift_bound(params, pattern.c));
    const auto rep = classify_point(pattern, params, cfg);
    const auto tree = build_tree(opt.k, opt.n, opt.budget);

    std::optional<RootSplit> split;
    if (opt.have_root_split) split = parse_root_split(opt.root_split_text);

    // Optional probe away from the fixed point: a fixed direction of the
    // requested norm, or a seeded random one.
    double dh = 0.0, dl = 0.0;
    if (opt.perturb != 0.0) {
        if (opt.seed) {
            std::mt19937_64 rng(*opt.seed);
            std::normal_distribution<double> gauss;
            double u = gauss(rng), v = gauss(rng);
            const double norm = std::hypot(u, v);
            if (norm == 0.0) u = 1.0, v = 0.0;
            dh = opt.perturb * u / (norm == 0.0 ? 1.0 : norm);
            dl = opt.perturb * v / (norm == 0.0 ? 1.0 : norm);
        } else {
            dh = opt.perturb / std::numbers::sqrt2;
            dl = -opt.perturb / std::numbers::sqrt2;
        }
    }

    struct PerRoot {
        double deviation;
        std::array<double, 3> marginal;
    };
    // An HBar root under a b = 0 pattern would propagate HBar to the whole
    // ball and the chain field l2 would never enter; root the chain on the
    // LBar side instead so its solutions are actually distinguishable.
    const Label root_label = pattern.b == 0 ? Label::LBar : Label::HBar;

    std::vector<PerRoot> results;
    for (const auto& root : rep.solutions.roots) {
        auto fields = assign_fields(tree, pattern, root.h2, root.l2, root_label, split);
        if (opt.perturb != 0.0) fields = fields.perturbed(dh, dl);
        PerRoot pr;
        pr.deviation = check_compatibility(tree, fields, opt.theta, opt.workers);
        pr.marginal = root_marginal(exact_mu_n(tree, fields, opt.theta, opt.workers));
        results.push_back(pr);
    }

    if (opt.format == "json") {
        nlohmann::json j;
        j["regime"] = to_json(rep);
        j["n"] = opt.n;
        j["perturbation"] = {{"dh2", dh}, {"dl2", dl}};
        auto& arr = j["checks"] = nlohmann::json::array();
        for (const auto& pr : results)
            arr.push_back({{"deviation", pr.deviation},
                           {"root_marginal", {pr.marginal[0], pr.marginal[1], pr.marginal[2]}}});
        emit(j.dump(2) + "\n", opt.out_path);
        return 0;
    }
    if (opt.format != "human")
        throw contract_error("verify-tree supports --format json or human output");

    std::string text;
    text += "regime " + std::string(to_string(rep.regime)) + " (" + rep.theorem_applied +
            "); " + std::to_string(rep.n_solutions_found) + " solution(s)\n";
    if (opt.perturb != 0.0)
        text += "perturbation: dh2 = " + format_human(dh) + ", dl2 = " + format_human(dl) + "\n";
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& root = rep.solutions.roots[i];
        text += "solution[" + std::to_string(i) + "] (h2 = " + format_human(root.h2) +
                ", l2 = " + format_human(root.l2) +
                "): deviation = " + format_machine(results[i].deviation) +
                ", root marginal = (" + format_machine(results[i].marginal[0]) + ", " +
                format_machine(results[i].marginal[1]) + ", " +
                format_machine(results[i].marginal[2]) + ")\n";
    }
    for (std::size_t i = 0; i < results.size(); ++i)
        for (std::size_t j = i + 1; j < results.size(); ++j) {
            double dist = 0.0;
            for (int s = 0; s < 3; ++s)
                dist = std::max(dist,
                                std::abs(results[i].marginal[s] - results[j].marginal[s]));
            text += "marginal sup-distance [" + std::to_string(i) + "," + std::to_string(j) +
                    "] = " + format_machine(dist) + "\n";
        }
    emit(text, opt.out_path);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gibbs-measure solver and classifier for the three-level height "
                 "model on a Cayley tree"};
    app.require_subcommand(1);

    Options opt;
    int selected = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->set_config("--config");
        sub->add_option("--scan", opt.scan_text, "root scan window as lo:hi:points");
        sub->add_option("--tol", opt.tol, "bisection x-tolerance");
        sub->add_option("--out", opt.out_path, "write output to this path");
        sub->add_option("--m", opt.m, "number of levels above the ground level (must be 2)");
    };

    auto* criticals = app.add_subcommand("criticals", "critical temperature, quadratic "
                                                      "roots, eta pair and c* interval");
    criticals->add_option("--theta", opt.theta, "activation theta = exp(J beta)")->required();
    criticals->add_option("--d", opt.d, "chain branching number d")->required();
    criticals->add_option("--k", opt.k, "tree order (defaults to d)");
    criticals->add_option("--convention", opt.convention_text, "c* prefactor: k or d");
    criticals->add_option("--format", opt.format, "human or json");
    add_common(criticals);
    criticals->callback([&] { selected = 1; });

    auto* solve = app.add_subcommand("solve", "fixed points of the boundary-field system");
    solve->add_option("--mode", opt.mode,
                      "ti | periodic | b-zero | b-nonzero | nonperiodic")
        ->required();
    solve->add_option("--theta", opt.theta, "activation theta = exp(J beta)")->required();
    solve->add_option("--k", opt.k, "tree order")->required();
    solve->add_option("--c", opt.c, "b = 0 chain parameter c")
        ->each([&](const std::string&) { opt.have_c = true; });
    solve->add_option("--pattern", opt.pattern_text, "branch pattern a,b,c,d")
        ->each([&](const std::string&) { opt.have_pattern = true; });
    solve->add_option("--format", opt.format, "human, csv or json");
    add_common(solve);
    solve->callback([&] { selected = 2; });

    auto* sweep = app.add_subcommand("sweep", "phase-diagram sweep over (theta, c)");
    sweep->add_option("--theta", opt.theta_text, "theta grid as lo:hi:steps")->required();
    sweep->add_option("--k", opt.k, "tree order")->required();
    sweep->add_option("--c", opt.c_list_text, "comma list of c values")
        ->each([&](const std::string&) { opt.have_c = true; });
    sweep->add_option("--pattern", opt.pattern_text, "classify this b != 0 pattern instead")
        ->each([&](const std::string&) { opt.have_pattern = true; });
    sweep->add_option("--format", opt.format, "csv or json")->required();
    sweep->add_option("--workers", opt.workers, "parallel workers (output independent)");
    add_common(sweep);
    sweep->callback([&] { selected = 3; });

    auto* verify = app.add_subcommand("verify-tree", "exact finite-ball compatibility "
                                                     "check and root marginals");
    verify->add_option("--theta", opt.theta, "activation theta = exp(J beta)")->required();
    verify->add_option("--k", opt.k, "tree order")->required();
    verify->add_option("--n", opt.n, "ball radius (default 2)");
    verify->add_option("--c", opt.c, "b = 0 chain parameter c (default 0)")
        ->each([&](const std::string&) { opt.have_c = true; });
    verify->add_option("--pattern", opt.pattern_text, "branch pattern a,b,c,d")
        ->each([&](const std::string&) { opt.have_pattern = true; });
    verify->add_option("--root-split", opt.root_split_text,
                       "labels of the root's k+1 children as to_h,to_l")
        ->each([&](const std::string&) { opt.have_root_split = true; });
    verify->add_option("--perturb", opt.perturb, "move fields off the fixed point by this norm");
    verify->add_option("--seed", opt.seed, "seed for a random perturbation direction");
    verify->add_option("--workers", opt.workers, "parallel workers (output independent)");
    verify->add_option("--budget", opt.budget, "vertex budget for exact enumeration");
    verify->add_option("--format", opt.format, "human or json");
    add_common(verify);
    verify->callback([&] { selected = 4; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    // Track which optional window flag was actually given.
    for (auto* sub : {criticals, solve, sweep, verify})
        if (sub->parsed() && sub->count("--scan") > 0) opt.have_scan = true;

    try {
        switch (selected) {
            case 1: return cmd_criticals(opt);
            case 2: return cmd_solve(opt);
            case 3: return cmd_sweep(opt);
            case 4: return cmd_verify_tree(opt);
            default: return 2;
        }
    } catch (const domain_error& e) {
        std::cerr << "error (bad value): " << e.what() << "\n";
        return 3;
    } catch (const contract_error& e) {
        std::cerr << "error (misuse): " << e.what() << "\n";
        return 3;
    } catch (const regime_error& e) {
        std::cerr << "error (regime): " << e.what() << "\n";
        return 4;
    } catch (const degenerate_error& e) {
        std::cerr << "error (degenerate): " << e.what() << "\n";
        return 5;
    } catch (const scan_error& e) {
        std::cerr << "error (scan window): " << e.what() << "\n";
        return 6;
    } catch (const size_error& e) {
        std::cerr << "error (size budget): " << e.what() << "\n";
        return 7;
    } catch (const io_error& e) {
        std::cerr << "error (I/O): " << e.what() << "\n";
        return 8;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
