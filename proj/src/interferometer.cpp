// SPDX-License-Identifier: MIT

#include "ngmzi/interferometer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ngmzi/coeff_engine.hpp"

namespace ngmzi {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kFdStep = 1e-6;        // central finite-difference step
constexpr double kSlopeFloor = 1e-14;   // |df/dphi| below this => +inf

// Numerator of the parity signal at the *internal* interferometer angle
// psi (the quadrature-point bias is applied by the callers):
//   e0 * D1 exp(u^T M3 u).
double parity_numerator(const NGParams& p, double psi) {
    const CoefficientSet cs = coefficients_parity(p, psi);
    QuadExp kernel;
    kernel.M = cs.M3.cast<cplx>();
    const cplx val = deriv_extract(kernel, DerivOrder{p.m, p.n});
    return cs.e0 * val.real();
}

double checked_probability(const NGParams& p) {
    const double prob = success_probability(p);
    if (prob <= kProbabilityFloor) {
        std::ostringstream msg;
        msg << "parity_expectation: heralding branch (m=" << p.m
            << ", n=" << p.n << ", tau=" << p.tau
            << ") carries probability " << prob;
        throw NegligibleProbability(msg.str());
    }
    return prob;
}

// Parity signal, its derivative (Richardson-extrapolated central
// differences) and the heralding probability in one pass: the probability
// kernel does not depend on phi, so it is evaluated once and the parity
// numerator five times (phi, phi +- h, phi +- h/2).
struct SignalSlope {
    double parity;
    double slope;
    double probability;
};

SignalSlope evaluate_signal(const NGParams& p, double phi) {
    const double prob = checked_probability(p);
    const double psi = phi + kPi / 2.0;
    const double f0 = parity_numerator(p, psi) / prob;
    const double h = kFdStep;
    const double d1 = (parity_numerator(p, psi + h) -
                       parity_numerator(p, psi - h)) /
                      (2.0 * h * prob);
    const double d2 = (parity_numerator(p, psi + h / 2.0) -
                       parity_numerator(p, psi - h / 2.0)) /
                      (h * prob);
    return SignalSlope{f0, (4.0 * d2 - d1) / 3.0, prob};
}

double uncertainty_from_signal(const SignalSlope& s) {
    if (std::abs(s.slope) < kSlopeFloor) return kInf;
    const double var = std::max(0.0, 1.0 - s.parity * s.parity);
    return std::sqrt(var) / std::abs(s.slope);
}

}  // namespace

double parity_expectation(const NGParams& p, double phi) {
    const double prob = checked_probability(p);
    return parity_numerator(p, phi + kPi / 2.0) / prob;
}

double parity_expectation_tmst(double lambda, double kappa, double phi) {
    if (!(lambda >= 0.0 && lambda < 1.0)) {
        throw DomainError("parity_expectation_tmst: lambda outside [0, 1)");
    }
    if (!(kappa >= 0.5)) {
        throw DomainError("parity_expectation_tmst: kappa below 1/2");
    }
    const double l2 = lambda * lambda;
    const double R = 1.0 + l2 * l2 - 2.0 * l2 * std::cos(2.0 * phi);
    return (1.0 - l2) / (2.0 * kappa * std::sqrt(R));
}

double phase_uncertainty(const NGParams& p, double phi) {
    return uncertainty_from_signal(evaluate_signal(p, phi));
}

double phase_uncertainty_tmst(double lambda, double kappa, double phi) {
    if (!(lambda >= 0.0 && lambda < 1.0)) {
        throw DomainError("phase_uncertainty_tmst: lambda outside [0, 1)");
    }
    if (!(kappa >= 0.5)) {
        throw DomainError("phase_uncertainty_tmst: kappa below 1/2");
    }
    const double l2 = lambda * lambda;
    const double mu2 = 1.0 - l2;
    const double s2p = std::sin(2.0 * phi);
    if (lambda == 0.0 || s2p == 0.0) return kInf;
    const double R = 1.0 + l2 * l2 - 2.0 * l2 * std::cos(2.0 * phi);
    // kappa^2 R - mu2^2/4 >= 0 for all valid parameters (R >= mu2^2 and
    // kappa >= 1/2); the clamp only absorbs rounding at the equality edge.
    const double arg = std::max(0.0, kappa * kappa * R - mu2 * mu2 / 4.0);
    return R * std::sqrt(arg) / (l2 * mu2 * std::abs(s2p));
}

double merit_thermal(const NGParams& p, double phi) {
    p.validate();
    return phase_uncertainty_tmst(p.lambda, p.kappa, phi) -
           phase_uncertainty(p, phi);
}

double merit_vacuum(const NGParams& p, double phi) {
    p.validate();
    if (std::abs(p.kappa - 0.5) > 1e-12) {
        std::ostringstream msg;
        msg << "merit_vacuum: defined against the squeezed-vacuum baseline "
               "(kappa = 1/2), got kappa = "
            << p.kappa;
        throw DomainError(msg.str());
    }
    return phase_uncertainty_tmst(p.lambda, 0.5, phi) -
           phase_uncertainty(p, phi);
}

OptimalSqueezing find_optimal_squeezing(const NGParams& tmpl, double phi,
                                        double r_lo, double r_hi) {
    if (!(r_lo > 0.0 && r_lo <= r_hi && r_hi <= 4.0)) {
        std::ostringstream msg;
        msg << "find_optimal_squeezing: need 0 < r_lo <= r_hi <= 4, got ["
            << r_lo << ", " << r_hi << "]";
        throw DomainError(msg.str());
    }
    auto objective = [&](double r_sq) {
        const NGParams p = NGParams::from_r_sq(r_sq, tmpl.kappa - 0.5,
                                               tmpl.tau, tmpl.m, tmpl.n);
        return phase_uncertainty(p, phi);
    };
    if (r_lo == r_hi) {
        return OptimalSqueezing{r_lo, objective(r_lo)};
    }

    // Deterministic coarse scan to bracket the minimum.
    constexpr int kGrid = 201;
    int best = 0;
    double best_val = kInf;
    const double step = (r_hi - r_lo) / (kGrid - 1);
    for (int i = 0; i < kGrid; ++i) {
        const double val = objective(r_lo + i * step);
        if (val < best_val) {
            best_val = val;
            best = i;
        }
    }
    if (best == 0 || best == kGrid - 1) {
        std::ostringstream msg;
        msg << "find_optimal_squeezing: objective is minimized at the "
               "boundary r_sq = "
            << r_lo + best * step << " of [" << r_lo << ", " << r_hi
            << "]; no interior minimum";
        throw NoMinimumInRange(msg.str());
    }

    // Golden-section refinement inside the bracketing grid cell pair.
    double a = r_lo + (best - 1) * step;
    double b = r_lo + (best + 1) * step;
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = objective(x1);
    double f2 = objective(x2);
    while (b - a > 1e-10) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = objective(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = objective(x2);
        }
    }
    const double r_opt = (a + b) / 2.0;
    return OptimalSqueezing{r_opt, objective(r_opt)};
}

PhaseSensitivityRecord sensitivity_record(const NGParams& p, double phi) {
    const SignalSlope s = evaluate_signal(p, phi);
    PhaseSensitivityRecord rec;
    rec.params = p;
    rec.phi = phi;
    rec.parity = s.parity;
    rec.dparity_dphi = s.slope;
    rec.delta_phi = uncertainty_from_signal(s);
    rec.probability = s.probability;
    return rec;
}

}  // namespace ngmzi
