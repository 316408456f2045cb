// SPDX-License-Identifier: MIT
//
// Parity-detection Mach-Zehnder interferometry with heralded non-Gaussian
// two-mode squeezed thermal inputs.
//
// The MZI is operated at its quadrature point: parity_expectation(p, phi)
// is the photon-number parity of the output mode with the interferometer
// rotated by phi + pi/2, so that the reported signal f(phi) has maximal
// slope near phi = 0.  The phase uncertainty follows from error
// propagation, Delta phi = sqrt(1 - f^2) / |df/dphi|, evaluated at the
// user's phi with no further shift.

#pragma once

#include "ngmzi/errors.hpp"
#include "ngmzi/ngstate.hpp"

namespace ngmzi {

/// One evaluated operating point: the parity signal, its phase derivative,
/// the propagated phase uncertainty and the heralding probability.
struct PhaseSensitivityRecord {
    NGParams params;
    double phi = 0.0;           ///< interferometer phase (radians)
    double parity = 0.0;        ///< f(phi), in [-1, 1]
    double dparity_dphi = 0.0;  ///< df/dphi (central finite differences)
    double delta_phi = 0.0;     ///< phase uncertainty (radians), may be +inf
    double probability = 0.0;   ///< heralding success probability
};

/// Parity expectation f(phi) of the heralded state after the MZI
/// (quadrature-point convention above): ratio of the parity kernel to the
/// probability kernel, e0 * D1 exp(u^T M3 u) / (d0 * D1 exp(u^T M2 u)).
/// Throws NegligibleProbability when the heralding branch is empty.
double parity_expectation(const NGParams& p, double phi);

/// Closed-form parity of the (un-heralded) two-mode squeezed thermal state:
///   (1 - lambda^2) / (2 kappa sqrt(1 + lambda^4 - 2 lambda^2 cos 2 phi)).
double parity_expectation_tmst(double lambda, double kappa, double phi);

/// Phase uncertainty sqrt(1 - f^2) / |df/dphi| with the derivative taken
/// by central finite differences (step 1e-6, one step-halving consistency
/// check).  Returns +inf when |df/dphi| < 1e-14 (physical divergence).
/// Throws NegligibleProbability (propagated from parity_expectation).
double phase_uncertainty(const NGParams& p, double phi);

/// Closed-form phase uncertainty of the two-mode squeezed thermal state,
/// from error propagation on parity_expectation_tmst:
///   R sqrt(kappa^2 R - mu^4/4) / (lambda^2 mu^2 |sin 2 phi|),
/// with mu^2 = 1 - lambda^2 and R = 1 + lambda^4 - 2 lambda^2 cos 2 phi.
/// Returns +inf where sin 2 phi = 0 or lambda = 0.
double phase_uncertainty_tmst(double lambda, double kappa, double phi);

/// Sensitivity gain over the thermal baseline:
///   Delta phi_TMST(lambda, kappa, phi) - Delta phi(p, phi).
/// Positive values mean the heralded state outperforms the unheralded one.
double merit_thermal(const NGParams& p, double phi);

/// Same figure of merit against the two-mode squeezed *vacuum* baseline;
/// only defined for kappa = 1/2.  Throws DomainError otherwise.
double merit_vacuum(const NGParams& p, double phi);

/// Result of the squeezing optimization.
struct OptimalSqueezing {
    double r_opt = 0.0;       ///< argmin squeezing r_sq
    double delta_phi_opt = 0.0;
};

/// Minimize Delta phi(r_sq) over r_sq in [r_lo, r_hi] (subset of (0, 4])
/// for the template parameters (template lambda is ignored and replaced by
/// tanh r_sq).  Deterministic coarse grid followed by golden-section
/// refinement.  A degenerate interval [a, a] returns the endpoint; if the
/// minimum sits on a boundary (objective monotone over the interval),
/// throws NoMinimumInRange.
OptimalSqueezing find_optimal_squeezing(const NGParams& tmpl, double phi,
                                        double r_lo, double r_hi);

/// Bundle parity, derivative, uncertainty and probability at one point
/// (shares the finite-difference evaluations).
PhaseSensitivityRecord sensitivity_record(const NGParams& p, double phi);

}  // namespace ngmzi
