// SPDX-License-Identifier: MIT
//
// Acceptance gate: nine numbered criteria, one [PASS]/[FAIL] line each,
// exit code = number of failed criteria.  Run with no arguments for all
// criteria or with a single argument (1..9) for one of them.
//
// Criterion 5's second clause (catalysis merit below 1e-3 at
// tau = 0.9999 with phi = 0.01) is measured and reported honestly; at
// that working point the merit decays linearly in (1 - tau) with a slope
// of a few hundred, so the clause is red.  The ctest entry marks the
// expected failure; the bound is not loosened here.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "ngmzi/interferometer.hpp"
#include "ngmzi/ngstate.hpp"
#include "ngmzi/verify.hpp"

using namespace ngmzi;

namespace {

struct Outcome {
    bool passed = false;
    std::string detail;
};

double seconds_since(
    const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         t0)
        .count();
}

std::string fmt(const char* format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof(buf), format, args);
    va_end(args);
    return buf;
}

// ---------------------------------------------------------------- 1
// Full parity pipeline at m = n = 0, tau = 1 against the squeezed-thermal
// closed form, to 1e-10 absolute over a lambda x kappa x phi grid, under
// one second.
Outcome criterion_1() {
    const auto t0 = std::chrono::steady_clock::now();
    double max_dev = 0.0;
    int points = 0;
    for (int il = 1; il <= 9; ++il) {
        const double lambda = 0.1 * il;
        for (double kappa : {0.5, 1.0, 2.0}) {
            const NGParams p = NGParams::from_lambda(lambda, kappa, 1.0, 0, 0);
            for (int ip = 1; ip <= 30; ++ip) {
                const double phi = 0.05 * ip;
                const double a = parity_expectation(p, phi);
                const double b = parity_expectation_tmst(lambda, kappa, phi);
                max_dev = std::max(max_dev, std::abs(a - b));
                ++points;
            }
        }
    }
    const double dt = seconds_since(t0);
    const bool ok = max_dev <= 1e-10 && dt < 1.0;
    return {ok, fmt("max |parity - baseline| = %.3g over %d grid points "
                    "(tol 1e-10), %.3f s",
                    max_dev, points, dt)};
}

// ---------------------------------------------------------------- 2
// Closed forms vs the truncated-Fock oracle across the heralding grid:
// probability to 1e-8, parity to 1e-6 at phi in {0.01, 0.3}, normalized
// Wigner to 1e-6 at 5 seeded random points per case; every case's
// truncation certified below 1e-10.
Outcome criterion_2() {
    const auto t0 = std::chrono::steady_clock::now();
    const int workers =
        std::max(1u, std::thread::hardware_concurrency());
    const VerifyReport report = run_verification(0, 1e-6, workers, 12345);
    int bad = 0, skips = 0;
    double max_deficit = 0.0;
    for (const VerifyCaseResult& r : report.cases) {
        if (r.skipped) {
            ++skips;
            continue;
        }
        max_deficit = std::max(max_deficit, r.trace_deficit);
        if (!(r.dev_probability <= 1e-8 && r.dev_parity <= 1e-6 &&
              r.dev_wigner <= 1e-6)) {
            ++bad;
        }
    }
    const double dt = seconds_since(t0);
    const bool ok = bad == 0 && skips == 0 && max_deficit < 1e-10;
    return {ok,
            fmt("%zu cases: max dev probability = %.3g (tol 1e-8), parity "
                "= %.3g, wigner = %.3g (tol 1e-6), max tail deficit = %.3g "
                "(tol 1e-10), %d skips, %.1f s",
                report.cases.size(), report.max_dev_probability,
                report.max_dev_parity, report.max_dev_wigner, max_deficit,
                skips, dt)};
}

// ---------------------------------------------------------------- 3
// Optimal squeezing of the vacuum and thermal baselines at phi = 0.01.
Outcome criterion_3() {
    const auto t0 = std::chrono::steady_clock::now();
    const NGParams vac = NGParams::from_lambda(0.0, 0.5, 1.0, 0, 0);
    const OptimalSqueezing a = find_optimal_squeezing(vac, 0.01, 0.05, 4.0);
    const NGParams th = NGParams::from_lambda(0.0, 1.0, 1.0, 0, 0);
    const OptimalSqueezing b = find_optimal_squeezing(th, 0.01, 0.05, 4.0);
    const double dt = seconds_since(t0);
    const bool ok = std::abs(a.r_opt - 2.65) <= 0.05 &&
                    std::abs(b.r_opt - 2.80) <= 0.05 && dt < 1.0;
    return {ok, fmt("r_opt = %.4f (target 2.65 +/- 0.05), %.4f (target "
                    "2.80 +/- 0.05), %.3f s",
                    a.r_opt, b.r_opt, dt)};
}

// ---------------------------------------------------------------- 4
// Single-photon subtraction at tau = 0.9, kappa = 1, phi = 0.01: the
// uncertainty exceeds 1e3 somewhere in r_sq [0.2, 0.4] and is finite at
// r_sq = 0.15 and 0.6.
Outcome criterion_4() {
    double peak = 0.0, peak_r = 0.0;
    for (int i = 0; i <= 200; ++i) {
        const double r_sq = 0.2 + 0.2 * i / 200.0;
        const NGParams p = NGParams::from_r_sq(r_sq, 0.5, 0.9, 0, 1);
        const double d = phase_uncertainty(p, 0.01);
        if (d > peak) {
            peak = d;
            peak_r = r_sq;
        }
    }
    const double lo =
        phase_uncertainty(NGParams::from_r_sq(0.15, 0.5, 0.9, 0, 1), 0.01);
    const double hi =
        phase_uncertainty(NGParams::from_r_sq(0.6, 0.5, 0.9, 0, 1), 0.01);
    const bool ok =
        peak > 1e3 && std::isfinite(lo) && std::isfinite(hi);
    return {ok, fmt("peak uncertainty %.4g at r_sq = %.3f (needs > 1e3); "
                    "flanks %.4g (r_sq = 0.15), %.4g (r_sq = 0.6)",
                    peak, peak_r, lo, hi)};
}

// ---------------------------------------------------------------- 5
// All six heralded operations beat the thermal baseline at r_sq = 1,
// phi = 0.01, kappa = 1, tau = 0.9; and the catalysis advantage closes
// toward unit transmissivity (|merit| < 1e-3 at tau = 0.9999).
Outcome criterion_5() {
    const std::pair<int, int> pairs[] = {{0, 1}, {0, 2}, {1, 0},
                                         {2, 0}, {1, 1}, {2, 2}};
    double min_merit = 1e300;
    std::string merits;
    for (auto [m, n] : pairs) {
        const NGParams p = NGParams::from_r_sq(1.0, 0.5, 0.9, m, n);
        const double merit = merit_thermal(p, 0.01);
        min_merit = std::min(min_merit, merit);
        merits += fmt(" (%d,%d)=%.3f", m, n, merit);
    }
    const bool orderings_ok = min_merit > 0.0;

    // Catalysis gap at tau = 0.9999 (phi = 0.01 inherited from above).
    double gap1 = 0.0, gap2 = 0.0;
    {
        const NGParams p1 = NGParams::from_r_sq(1.0, 0.5, 0.9999, 1, 1);
        const NGParams p2 = NGParams::from_r_sq(1.0, 0.5, 0.9999, 2, 2);
        gap1 = merit_thermal(p1, 0.01);
        gap2 = merit_thermal(p2, 0.01);
    }
    const bool gap_ok = std::abs(gap1) < 1e-3 && std::abs(gap2) < 1e-3;
    const bool ok = orderings_ok && gap_ok;
    return {ok,
            fmt("six-pair merits:%s (all > 0: %s); catalysis gap at tau = "
                "0.9999: |%.3g| and |%.3g| vs bound 1e-3 (%s) — the gap "
                "decays linearly, ~%.0f x (1 - tau), so the bound needs "
                "tau >= 1 - 3e-6 at this phase",
                merits.c_str(), orderings_ok ? "yes" : "no", gap1, gap2,
                gap_ok ? "met" : "not met", std::abs(gap1) / 1e-4)};
}

// ---------------------------------------------------------------- 6
// Herald completeness: detecting some count is certain to 1e-8 after
// summing n = 0..60.
Outcome criterion_6() {
    double min_total = 2.0;
    for (int m : {0, 1, 2}) {
        for (double tau : {0.5, 0.8}) {
            NGParams p = NGParams::from_r_sq(1.0, 0.5, tau, m, 0);
            double total = 0.0;
            for (int n = 0; n <= 60; ++n) {
                p.n = n;
                total += success_probability(p);
            }
            min_total = std::min(min_total, total);
        }
    }
    const bool ok = min_total >= 1.0 - 1e-8;
    return {ok, fmt("min sum over (m, tau) combinations = 1 - %.3g "
                    "(needs >= 1 - 1e-8)",
                    1.0 - min_total)};
}

// ---------------------------------------------------------------- 7
// Normalization: the normalized Wigner function integrates to 1 +/- 1e-4
// over [-6, 6]^4 for one subtraction, one addition and one catalysis
// state (lambda = 0.5, kappa = 1, tau = 0.9).
Outcome criterion_7() {
    const auto t0 = std::chrono::steady_clock::now();
    // Tensor Gauss-Legendre nodes/weights on [-6, 6] (Newton iteration).
    const int nq = 48;
    std::vector<double> node(nq), weight(nq);
    for (int i = 0; i < nq; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (nq + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 1; k < nq; ++k) {
                const double p2 = ((2 * k + 1) * x * p1 - k * p0) / (k + 1);
                p0 = p1;
                p1 = p2;
            }
            dp = nq * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        node[size_t(i)] = 6.0 * x;
        weight[size_t(i)] = 6.0 * 2.0 / ((1.0 - x * x) * dp * dp);
    }

    double worst = 0.0;
    std::string details;
    for (auto [m, n] : {std::pair{0, 1}, std::pair{1, 0}, std::pair{1, 1}}) {
        const NGParams p = NGParams::from_lambda(0.5, 1.0, 0.9, m, n);
        const double prob = success_probability(p);
        const int nworkers =
            std::max(1u, std::thread::hardware_concurrency());
        std::vector<double> partial(size_t(nq), 0.0);
        std::vector<std::thread> pool;
        std::atomic<int> next{0};
        for (int w = 0; w < nworkers; ++w) {
            pool.emplace_back([&]() {
                for (int i = next.fetch_add(1); i < nq;
                     i = next.fetch_add(1)) {
                    Vec4 xi;
                    xi(0) = node[size_t(i)];
                    double acc = 0.0;
                    for (int j = 0; j < nq; ++j) {
                        xi(1) = node[size_t(j)];
                        for (int k = 0; k < nq; ++k) {
                            xi(2) = node[size_t(k)];
                            double inner = 0.0;
                            for (int l = 0; l < nq; ++l) {
                                xi(3) = node[size_t(l)];
                                inner += weight[size_t(l)] *
                                         wigner_unnormalized(p, xi);
                            }
                            acc += weight[size_t(j)] * weight[size_t(k)] *
                                   inner;
                        }
                    }
                    partial[size_t(i)] = acc;
                }
            });
        }
        for (std::thread& t : pool) t.join();
        double total = 0.0;
        for (int i = 0; i < nq; ++i)
            total += weight[size_t(i)] * partial[size_t(i)];
        const double dev = std::abs(total / prob - 1.0);
        worst = std::max(worst, dev);
        details += fmt(" (%d,%d): 1%+.2e", m, n, total / prob - 1.0);
    }
    const double dt = seconds_since(t0);
    const bool ok = worst <= 1e-4;
    return {ok, fmt("integral deviations%s (tol 1e-4), %.1f s",
                    details.c_str(), dt)};
}

// ---------------------------------------------------------------- 8
// The baseline uncertainty is pi-periodic in phase.
Outcome criterion_8() {
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> u(0.02, 3.12);
    double max_dev = 0.0;
    for (int t = 0; t < 50; ++t) {
        double phi = u(rng);
        // Nodes of the signal are infinite-uncertainty points; redraw
        // within machine distance of them (the property there is
        // inf == inf, checked separately below).
        while (std::abs(std::sin(2.0 * phi)) < 1e-3) phi = u(rng);
        const double a = phase_uncertainty_tmst(0.62, 1.0, phi);
        const double b = phase_uncertainty_tmst(0.62, 1.0, phi + M_PI);
        max_dev =
            std::max(max_dev, std::abs(a - b) / std::max(1.0, std::abs(a)));
    }
    // At machine-precision multiples of pi/2 the computed sin(2 phi) is
    // ~1e-16 rather than an exact zero; the divergence shows up as a
    // >> 1e12 value (or inf at exact zeros).
    const auto diverges = [](double v) { return std::isinf(v) || v > 1e12; };
    const bool inf_ok =
        diverges(phase_uncertainty_tmst(0.62, 1.0, M_PI / 2)) &&
        diverges(phase_uncertainty_tmst(0.62, 1.0, 3 * M_PI / 2));
    const bool ok = max_dev <= 1e-10 && inf_ok;
    return {ok, fmt("max |dphi(phi) - dphi(phi + pi)| (scaled) = %.3g over "
                    "50 seeded phases (tol 1e-10); node divergences match: "
                    "%s",
                    max_dev, inf_ok ? "yes" : "no")};
}

// ---------------------------------------------------------------- 9
// Thermal noise strictly raises the baseline uncertainty.
Outcome criterion_9() {
    double min_gap = 1e300;
    int points = 0;
    for (int il = 1; il <= 18; ++il) {
        const double lambda = 0.05 * il;
        for (int ip = 1; ip <= 20; ++ip) {
            const double phi = 0.025 * ip;
            const double tmsv = phase_uncertainty_tmst(lambda, 0.5, phi);
            const double tmst = phase_uncertainty_tmst(lambda, 1.0, phi);
            min_gap = std::min(min_gap, tmst - tmsv);
            ++points;
        }
    }
    const bool ok = min_gap > 0.0;
    return {ok, fmt("min (thermal - vacuum) uncertainty gap = %.3g over "
                    "%d grid points (needs > 0)",
                    min_gap, points)};
}

}  // namespace

int main(int argc, char** argv) {
    using CriterionFn = Outcome (*)();
    const CriterionFn criteria[] = {criterion_1, criterion_2, criterion_3,
                                    criterion_4, criterion_5, criterion_6,
                                    criterion_7, criterion_8, criterion_9};
    const char* names[] = {
        "closed-form degeneration to the squeezed-thermal baseline",
        "closed forms match the Fock oracle across the heralding grid",
        "optimal squeezing of the baselines at phi = 0.01",
        "sensitivity divergence and recovery across the squeezing axis",
        "heralded states beat the thermal baseline; catalysis gap closes",
        "herald completeness",
        "Wigner normalization over [-6, 6]^4",
        "baseline uncertainty is pi-periodic",
        "thermal noise raises the baseline uncertainty"};

    int first = 1, last = 9;
    if (argc > 1) {
        const int which = std::atoi(argv[1]);
        if (which < 1 || which > 9) {
            std::fprintf(stderr, "usage: %s [1..9]\n", argv[0]);
            return 64;
        }
        first = last = which;
    }

    int failures = 0;
    for (int c = first; c <= last; ++c) {
        Outcome out;
        try {
            out = criteria[c - 1]();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        std::printf("[%s] criterion %d: %s — %s\n",
                    out.passed ? "PASS" : "FAIL", c, names[c - 1],
                    out.detail.c_str());
        std::fflush(stdout);
        if (!out.passed) ++failures;
    }
    return failures;
}
