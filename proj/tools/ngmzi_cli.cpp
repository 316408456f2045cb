// SPDX-License-Identifier: MIT
//
// Command-line front end: single-point evaluations (parity, sensitivity,
// probability, wigner), batch sweeps, canned figure data sets, the
// closed-form-vs-oracle verification suite, and squeezing optimization.
//
// Exit codes: 0 success, 1 usage/config/I-O error, 2 numeric failure,
// 3 verification failure.

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "ngmzi/figures.hpp"
#include "ngmzi/interferometer.hpp"
#include "ngmzi/ngstate.hpp"
#include "ngmzi/oracle.hpp"
#include "ngmzi/sweep.hpp"
#include "ngmzi/verify.hpp"

namespace {

using namespace ngmzi;

constexpr std::uint64_t kSeed = 12345;  // wigner sample points in verify runs
constexpr double kPointTolerance = 1e-6;

/// State flags of one single-point subcommand.  Each subcommand owns its
/// instance: params() dispatches on which exclusive option (--lambda vs
/// --r-sq, --n-th vs --kappa) was actually given to *that* subcommand, so
/// the stored Option handles must not be shared.
struct StateOpts {
    double r_sq = 0.0, lambda = 0.0, tau = 1.0, phi = 0.01;
    double n_th = 0.0, kappa = 0.5;
    int m = 0, n = 0;
    CLI::Option* o_lambda = nullptr;
    CLI::Option* o_n_th = nullptr;

    NGParams params() const {
        const double kap =
            (o_n_th != nullptr && o_n_th->count() > 0) ? n_th + 0.5 : kappa;
        if (o_lambda != nullptr && o_lambda->count() > 0) {
            return NGParams::from_lambda(lambda, kap, tau, m, n);
        }
        return NGParams::from_r_sq(r_sq, kap - 0.5, tau, m, n);
    }
};

void add_state_options(CLI::App* sub, StateOpts& st, bool with_phi) {
    CLI::Option* o_r_sq =
        sub->add_option("--r-sq", st.r_sq, "squeezing strength r_sq")
            ->capture_default_str();
    st.o_lambda = sub->add_option("--lambda", st.lambda,
                                  "squeezing parameter tanh(r_sq)");
    o_r_sq->excludes(st.o_lambda);
    st.o_lambda->excludes(o_r_sq);
    sub->add_option("--tau", st.tau, "herald beamsplitter transmissivity")
        ->capture_default_str();
    st.o_n_th = sub->add_option("--n-th", st.n_th,
                                "thermal occupancy of the input modes");
    CLI::Option* o_kappa =
        sub->add_option("--kappa", st.kappa, "thermal parameter n_th + 1/2")
            ->capture_default_str();
    st.o_n_th->excludes(o_kappa);
    o_kappa->excludes(st.o_n_th);
    sub->add_option("--m", st.m, "ancilla photons injected at the herald")
        ->capture_default_str();
    sub->add_option("--n", st.n, "ancilla photons detected at the herald")
        ->capture_default_str();
    if (with_phi) {
        sub->add_option("--phi", st.phi, "interferometer phase (radians)")
            ->capture_default_str();
    }
}

void say(const char* name, double value) {
    std::cout << name << " = " << format_number(value) << "\n";
}

int default_cutoff(const NGParams& p) { return p.n_th() > 0.0 ? 115 : 45; }

/// Oracle spot check of one scalar; prints the comparison and returns 3 on
/// mismatch, 0 otherwise (tail-uncertified cutoffs report and pass).
int spot_check(const NGParams& p, int cutoff, const char* name,
               double closed, const std::function<double(
                                   const HeraldedEnsemble&)>& oracle_value) {
    const int nmax = cutoff > 0 ? cutoff : default_cutoff(p);
    const HeraldedEnsemble oracle(p.r_sq(), p.n_th(), p.tau, p.m, p.n, nmax);
    say("oracle_trace_deficit", oracle.trace_deficit());
    if (oracle.trace_deficit() >= kDefaultTailTol) {
        std::cout << "verify: skipped (tail not certified at cutoff " << nmax
                  << ")\n";
        return 0;
    }
    const double ref = oracle_value(oracle);
    const double dev = std::abs(closed - ref);
    std::cout << "oracle_" << name << " = " << format_number(ref) << "\n";
    say("deviation", dev);
    if (dev > kPointTolerance) {
        std::cerr << "verify: " << name << " deviates by "
                  << format_number(dev) << " (tolerance "
                  << format_number(kPointTolerance) << ")\n";
        return 3;
    }
    return 0;
}

Vec4 parse_point(const std::string& text) {
    Vec4 xi = Vec4::Zero();
    std::istringstream in(text);
    std::string tok;
    int i = 0;
    while (std::getline(in, tok, ',')) {
        if (i >= 4) break;
        try {
            xi(i) = std::stod(tok);
        } catch (const std::exception&) {
            throw ConfigError("wigner: bad --point component '" + tok + "'");
        }
        ++i;
    }
    if (i != 4) {
        throw ConfigError("wigner: --point needs q1,p1,q2,p2");
    }
    return xi;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Phase sensitivity of a parity-detection Mach-Zehnder "
        "interferometer fed with heralded non-Gaussian two-mode squeezed "
        "thermal light"};
    app.require_subcommand(1);
    std::function<int()> action;

    std::string point_text = "0,0,0,0";
    bool spot_verify = false;
    int cutoff = 0;

    CLI::App* parity = app.add_subcommand(
        "parity", "Parity signal of the output mode at phase phi");
    StateOpts st_parity;
    add_state_options(parity, st_parity, true);
    parity->add_flag("--verify", spot_verify, "cross-check with the oracle");
    parity->add_option("--cutoff", cutoff, "oracle Fock cutoff (0 = auto)");
    parity->callback([&] {
        action = [&] {
            const StateOpts& st = st_parity;
            const NGParams p = st.params();
            const double f = parity_expectation(p, st.phi);
            say("phi_rad", st.phi);
            say("parity", f);
            if (!spot_verify) return 0;
            return spot_check(p, cutoff, "parity", f,
                              [&](const HeraldedEnsemble& o) {
                                  return o.parity(st.phi);
                              });
        };
    });

    CLI::App* sens = app.add_subcommand(
        "sensitivity",
        "Parity, slope, phase uncertainty and heralding probability");
    StateOpts st_sens;
    add_state_options(sens, st_sens, true);
    sens->callback([&] {
        action = [&] {
            const StateOpts& st = st_sens;
            const NGParams p = st.params();
            const PhaseSensitivityRecord rec = sensitivity_record(p, st.phi);
            say("phi_rad", rec.phi);
            say("parity", rec.parity);
            say("dparity_dphi", rec.dparity_dphi);
            say("delta_phi_rad", rec.delta_phi);
            say("probability", rec.probability);
            say("merit_thermal",
                phase_uncertainty_tmst(p.lambda, p.kappa, st.phi) -
                    rec.delta_phi);
            if (std::abs(p.kappa - 0.5) <= 1e-12) {
                say("merit_vacuum",
                    phase_uncertainty_tmst(p.lambda, 0.5, st.phi) -
                        rec.delta_phi);
            }
            return 0;
        };
    });

    CLI::App* prob = app.add_subcommand(
        "probability", "Heralding success probability");
    StateOpts st_prob;
    add_state_options(prob, st_prob, false);
    prob->add_flag("--verify", spot_verify, "cross-check with the oracle");
    prob->add_option("--cutoff", cutoff, "oracle Fock cutoff (0 = auto)");
    prob->callback([&] {
        action = [&] {
            const NGParams p = st_prob.params();
            const double value = success_probability(p);
            say("probability", value);
            if (!spot_verify) return 0;
            return spot_check(p, cutoff, "probability", value,
                              [](const HeraldedEnsemble& o) {
                                  return o.probability();
                              });
        };
    });

    CLI::App* wig = app.add_subcommand(
        "wigner", "Normalized Wigner function at a phase-space point");
    StateOpts st_wig;
    add_state_options(wig, st_wig, false);
    wig->add_option("--point", point_text, "phase point q1,p1,q2,p2")
        ->capture_default_str();
    wig->add_flag("--verify", spot_verify, "cross-check with the oracle");
    wig->add_option("--cutoff", cutoff, "oracle Fock cutoff (0 = auto)");
    wig->callback([&] {
        action = [&] {
            const NGParams p = st_wig.params();
            const Vec4 xi = parse_point(point_text);
            const double w = wigner_normalized(p, xi);
            say("wigner", w);
            if (!spot_verify) return 0;
            return spot_check(p, cutoff, "wigner", w,
                              [&](const HeraldedEnsemble& o) {
                                  return o.wigner(xi);
                              });
        };
    });

    CLI::App* opt = app.add_subcommand(
        "optimize", "Minimize the phase uncertainty over r_sq");
    StateOpts st_opt;
    add_state_options(opt, st_opt, true);
    double r_lo = 0.05, r_hi = 4.0;
    opt->add_option("--r-lo", r_lo, "lower end of the r_sq search range")
        ->capture_default_str();
    opt->add_option("--r-hi", r_hi, "upper end of the r_sq search range")
        ->capture_default_str();
    opt->callback([&] {
        action = [&] {
            const NGParams tmpl = st_opt.params();
            const OptimalSqueezing res =
                find_optimal_squeezing(tmpl, st_opt.phi, r_lo, r_hi);
            say("r_opt", res.r_opt);
            say("delta_phi_opt_rad", res.delta_phi_opt);
            return 0;
        };
    });

    CLI::App* sweep = app.add_subcommand(
        "sweep", "Evaluate a parameter grid from a config file");
    std::string config_path, out_path, format;
    int workers = 0;
    bool sweep_verify = false;
    sweep->add_option("--config", config_path, "sweep configuration file")
        ->required();
    sweep->add_option("--out", out_path, "output path (overrides config)");
    sweep->add_option("--format", format, "csv | jsonl (overrides config)");
    sweep->add_option("--workers", workers, "worker threads (overrides)");
    sweep->add_flag("--verify", sweep_verify, "enable oracle spot checks");
    sweep->add_option("--cutoff", cutoff, "oracle Fock cutoff (overrides)");
    sweep->callback([&] {
        action = [&] {
            SweepConfig cfg = parse_sweep_config_file(config_path);
            if (!out_path.empty()) cfg.out_path = out_path;
            if (!format.empty()) {
                if (format != "csv" && format != "jsonl") {
                    throw ConfigError("format must be csv or jsonl");
                }
                cfg.format = format;
            }
            if (workers > 0) cfg.workers = workers;
            if (sweep_verify) cfg.verify = true;
            if (cutoff > 0) cfg.cutoff = cutoff;

            std::ofstream file;
            std::ostream* os = &std::cout;
            if (!cfg.out_path.empty()) {
                file.open(cfg.out_path);
                if (!file) {
                    throw IOError("sweep: cannot write '" + cfg.out_path +
                                  "'");
                }
                os = &file;
            }
            std::size_t count = 0;
            std::size_t errors = 0;
            if (cfg.format == "csv") {
                write_csv_header(*os, cfg.verify);
                errors = run_sweep(cfg, [&](const SweepRecord& rec) {
                    write_csv_record(*os, rec, cfg.verify);
                    ++count;
                });
            } else {
                errors = run_sweep(cfg, [&](const SweepRecord& rec) {
                    write_jsonl_record(*os, rec);
                    ++count;
                });
            }
            std::cerr << "sweep: " << count << " records, " << errors
                      << " with errors\n";
            return 0;
        };
    });

    CLI::App* fig = app.add_subcommand(
        "figure", "Write the data set and plot stub for a standard figure");
    std::string fig_id, fig_out = "figures";
    std::string id_help = "figure id (";
    for (const std::string& id : figure_ids()) id_help += id + " ";
    id_help.back() = ')';
    fig->add_option("id", fig_id, id_help)->required();
    fig->add_option("--out", fig_out, "output directory")
        ->capture_default_str();
    fig->callback([&] {
        action = [&] {
            for (const std::string& path : figure_command(fig_id, fig_out)) {
                std::cout << path << "\n";
            }
            return 0;
        };
    });

    CLI::App* ver = app.add_subcommand(
        "verify", "Run the closed-form-vs-oracle equivalence grid");
    double tolerance = 1e-6;
    int ver_workers = int(std::thread::hardware_concurrency());
    ver->add_option("--cutoff", cutoff,
                    "oracle Fock cutoff (0 = auto per case)");
    ver->add_option("--tolerance", tolerance,
                    "bound applied to all deviations")
        ->capture_default_str();
    ver->add_option("--workers", ver_workers, "worker threads")
        ->capture_default_str();
    ver->callback([&] {
        action = [&] {
            const VerifyReport rep = run_verification(
                cutoff, tolerance, std::max(1, ver_workers), kSeed);
            for (std::size_t i = 0; i < rep.cases.size(); ++i) {
                const VerifyCaseResult& r = rep.cases[i];
                std::printf(
                    "case %2zu m=%d n=%d tau=%.2f r_sq=%.1f n_th=%.1f "
                    "cutoff=%d ",
                    i + 1, r.c.m, r.c.n, r.c.tau, r.c.r_sq, r.c.n_th,
                    r.cutoff);
                if (r.skipped) {
                    std::printf("SKIP (%s)\n", r.note.c_str());
                    continue;
                }
                std::printf(
                    "deficit=%.2e dev_P=%.2e dev_parity=%.2e dev_W=%.2e %s\n",
                    r.trace_deficit, r.dev_probability, r.dev_parity,
                    r.dev_wigner,
                    r.passed ? "ok"
                             : (r.note.empty() ? "FAIL"
                                               : ("FAIL: " + r.note).c_str()));
            }
            std::printf(
                "verify: %zu cases, %d failed, %d skipped; max deviations: "
                "P=%.3e parity=%.3e wigner=%.3e (tolerance %.1e)\n",
                rep.cases.size(), rep.failures, rep.skips,
                rep.max_dev_probability, rep.max_dev_parity,
                rep.max_dev_wigner, tolerance);
            return rep.failures > 0 ? 3 : 0;
        };
    });

    CLI11_PARSE(app, argc, argv);
    if (!action) {
        std::cerr << app.help();
        return 1;
    }
    try {
        return action();
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const IOError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
