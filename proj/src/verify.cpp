// SPDX-License-Identifier: MIT

#include "ngmzi/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <sstream>
#include <thread>

#include "ngmzi/interferometer.hpp"
#include "ngmzi/ngstate.hpp"
#include "ngmzi/oracle.hpp"

namespace ngmzi {

namespace {

constexpr double kParityPhis[] = {0.01, 0.3};
constexpr int kWignerSamples = 5;
constexpr double kWignerBox = 1.5;

int default_cutoff(double n_th) { return n_th > 0.0 ? 115 : 45; }

VerifyCaseResult run_case(const VerifyCase& c, int cutoff_override,
                          double tolerance, std::uint64_t seed) {
    VerifyCaseResult res;
    res.c = c;
    res.cutoff = cutoff_override > 0 ? cutoff_override
                                     : default_cutoff(c.n_th);
    try {
        const HeraldedEnsemble oracle(c.r_sq, c.n_th, c.tau, c.m, c.n,
                                      res.cutoff);
        res.trace_deficit = oracle.trace_deficit();
        if (res.trace_deficit >= kDefaultTailTol) {
            res.skipped = true;
            std::ostringstream msg;
            msg << "tail not certified: trace deficit " << res.trace_deficit
                << " at cutoff " << res.cutoff << " (tolerance "
                << kDefaultTailTol << ")";
            res.note = msg.str();
            return res;
        }

        const NGParams p =
            NGParams::from_r_sq(c.r_sq, c.n_th, c.tau, c.m, c.n);
        res.dev_probability =
            std::abs(success_probability(p) - oracle.probability());
        for (double phi : kParityPhis) {
            res.dev_parity =
                std::max(res.dev_parity, std::abs(parity_expectation(p, phi) -
                                                  oracle.parity(phi)));
        }
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> box(-kWignerBox, kWignerBox);
        for (int s = 0; s < kWignerSamples; ++s) {
            Vec4 xi;
            for (int i = 0; i < 4; ++i) xi(i) = box(rng);
            res.dev_wigner =
                std::max(res.dev_wigner, std::abs(wigner_normalized(p, xi) -
                                                  oracle.wigner(xi)));
        }
        res.passed = res.dev_probability <= tolerance &&
                     res.dev_parity <= tolerance &&
                     res.dev_wigner <= tolerance;
    } catch (const TailTooLarge& e) {
        res.skipped = true;
        res.note = e.what();
    } catch (const Error& e) {
        res.passed = false;
        res.note = e.what();
    }
    return res;
}

}  // namespace

std::vector<VerifyCase> verification_grid() {
    static const int pairs[][2] = {{0, 1}, {1, 0}, {1, 1},
                                   {0, 2}, {2, 0}, {2, 2}};
    static const double taus[] = {0.5, 0.8, 0.95};
    static const double r_sqs[] = {0.5, 1.0};
    static const double n_ths[] = {0.0, 0.5};
    std::vector<VerifyCase> grid;
    for (const auto& mn : pairs) {
        for (double tau : taus) {
            for (double r_sq : r_sqs) {
                for (double n_th : n_ths) {
                    grid.push_back(VerifyCase{mn[0], mn[1], tau, r_sq, n_th});
                }
            }
        }
    }
    return grid;
}

VerifyReport run_verification(int cutoff_override, double tolerance,
                              int workers, std::uint64_t seed) {
    const std::vector<VerifyCase> grid = verification_grid();
    VerifyReport report;
    report.cases.resize(grid.size());

    const int nw = std::max(
        1, std::min<int>(workers, static_cast<int>(grid.size())));
    std::atomic<std::size_t> next{0};
    auto work = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= grid.size()) break;
            report.cases[i] =
                run_case(grid[i], cutoff_override, tolerance, seed + i);
        }
    };
    if (nw == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(nw));
        for (int t = 0; t < nw; ++t) pool.emplace_back(work);
        for (std::thread& t : pool) t.join();
    }

    for (const VerifyCaseResult& r : report.cases) {
        if (r.skipped) {
            ++report.skips;
            continue;
        }
        if (!r.passed) ++report.failures;
        report.max_dev_probability =
            std::max(report.max_dev_probability, r.dev_probability);
        report.max_dev_parity = std::max(report.max_dev_parity, r.dev_parity);
        report.max_dev_wigner = std::max(report.max_dev_wigner, r.dev_wigner);
    }
    return report;
}

}  // namespace ngmzi
