// SPDX-License-Identifier: MIT
//
// Closed-form machinery for heralded non-Gaussian two-mode squeezed thermal
// states.  A two-mode squeezed thermal state (squeezing parameter
// lambda = tanh r, thermal scale kappa = n_th + 1/2) has one mode mixed with
// a Fock state |m> on a beamsplitter of transmissivity tau; detecting |n>
// on the reflected port heralds photon subtraction (m < n), addition
// (m > n) or catalysis (m = n).
//
// Everything downstream (Wigner function, heralding probability, parity
// signal) is obtained from one Gaussian generating kernel by the mixed
// derivative operator of coeff_engine:
//
//   W_unnorm(xi) = (1/a0) exp(xi^T M1 xi)
//                  * D1 exp(u^T K u + b(xi)^T u),
//   P            = d0 * D1 exp(u^T M2 u),
//
// with K assembled from the scalars a1, a4, a7, the linear couplings
// b(xi) = (a2, a3, a5, a6) linear in the phase point, and M2 the kernel
// after integrating the phase point out.  The parity kernel M3 (used by
// the interferometer module) integrates out only one mode after the MZI
// rotation.

#pragma once

#include <complex>

#include <Eigen/Dense>

#include "ngmzi/errors.hpp"
#include "ngmzi/gaussian.hpp"

namespace ngmzi {

using cplx = std::complex<double>;

/// Parameters of one heralded non-Gaussian two-mode squeezed thermal state.
struct NGParams {
    double lambda = 0.0;  ///< squeezing parameter tanh(r_sq), in [0, 1)
    double kappa = 0.5;   ///< thermal scale n_th + 1/2, >= 1/2
    double tau = 1.0;     ///< heralding beamsplitter transmissivity, in (0, 1]
    int m = 0;            ///< Fock photons injected on the ancilla port
    int n = 0;            ///< photons detected behind the beamsplitter

    /// Validate all domains; throws DomainError with the offending value.
    void validate() const;

    /// Construct from squeezing r_sq >= 0 and thermal occupancy n_th >= 0
    /// (lambda = tanh r_sq, kappa = n_th + 1/2); validates.
    static NGParams from_r_sq(double r_sq, double n_th, double tau, int m,
                              int n);

    /// Construct directly from (lambda, kappa); validates.
    static NGParams from_lambda(double lambda, double kappa, double tau,
                                int m, int n);

    double n_th() const { return kappa - 0.5; }
    double r_sq() const;  ///< atanh(lambda)
};

/// Kind of heralded operation, classified from the photon numbers.
enum class OpKind { PS, PA, PC };

/// PS iff m < n, PA iff m > n, PC iff m = n.
OpKind classify(int m, int n);

/// Short lowercase tag ("ps", "pa", "pc") for serialization.
const char* op_kind_name(OpKind kind);

/// Scalar coefficients and kernel matrices of the closed forms.  Which
/// groups are populated depends on the constructor function:
///   coefficients_wigner      -> a, b, c, M1
///   coefficients_probability -> b, d, M2
///   coefficients_parity      -> b, c, d, e, f, M1, M2, M3 and the trig
///                               shorthands (it needs the Wigner kernel
///                               and the probability kernel to build M3).
/// Unpopulated fields stay zero.
struct CoefficientSet {
    // Generating-kernel scalars.  a2, a3, a5, a6 depend on the phase point
    // and satisfy a3 = -conj(a2), a6 = -conj(a5); a0, a1, a4, a7 are real-
    // valued but kept complex for uniform kernel assembly.
    cplx a0 = 0, a1 = 0, a2 = 0, a3 = 0, a4 = 0, a5 = 0, a6 = 0, a7 = 0;
    // Common building blocks; b0 < 0 for every valid parameter set.
    double b0 = 0, b1 = 0, b2 = 0, b3 = 0, b4 = 0;
    // Numerators of the M1 entries (shared denominator b0).
    double c1 = 0, c2 = 0, c3 = 0;
    // Probability kernel: prefactor d0 and M2 numerators (denominator d4).
    double d0 = 0, d1 = 0, d2 = 0, d3 = 0, d4 = 0;
    // Parity kernel: prefactor e0 and M3 numerators (denominator e7).
    double e0 = 0, e1 = 0, e2 = 0, e3 = 0, e4 = 0, e5 = 0, e6 = 0, e7 = 0;
    // Shorthands entering the e group.
    double f1 = 0, f2 = 0, f3 = 0, f4 = 0, f5 = 0, f6 = 0;
    // Trig shorthands of the parity kernel's phase argument.
    double cos_phi = 0, sin_phi = 0, cos_2phi = 0, sin_2phi = 0;
    // Assembled symmetric kernel matrices.
    Mat4 M1 = Mat4::Zero();
    Mat4 M2 = Mat4::Zero();
    Mat4 M3 = Mat4::Zero();
};

/// Coefficients of the unnormalized-Wigner generating kernel at phase
/// point xi: populates the a group (a2, a3, a5, a6 evaluated at xi), the
/// b group and M1 (with its c numerators).
CoefficientSet coefficients_wigner(const NGParams& p, const Vec4& xi);

/// Coefficients of the heralding-probability kernel: populates the b and
/// d groups and M2.
CoefficientSet coefficients_probability(const NGParams& p);

/// Coefficients of the parity kernel at interferometer rotation angle phi
/// (the raw optical angle; the pi/2 operating-point bias is applied by the
/// caller, see interferometer.hpp).  Populates everything.  M3 is built by
/// exact 2x2 Gaussian elimination of the output-mode phase point from the
/// rotated Wigner kernel; its entries are then reported through the e
/// fields (e_i = M3 entry * e7), so the stored scalars and the stored
/// matrix are consistent by construction.
CoefficientSet coefficients_parity(const NGParams& p, double phi);

/// Unnormalized Wigner function of the heralded state at xi, evaluated by
/// the derivative-extraction route (authoritative).  The imaginary part of
/// the assembled complex value is a rounding residual (<= 1e-10 relative,
/// enforced by tests); the real part is returned.
/// Throws OrderTooLarge for m or n beyond the series-engine cap.
double wigner_unnormalized(const NGParams& p, const Vec4& xi);

/// Same quantity via the two-variable-Hermite closed form (double sum over
/// cross-pairings weighted by a7).  Exposed so tests can pin the two
/// routes against each other; agreement is 1e-10 relative.
double wigner_unnormalized_hermite(const NGParams& p, const Vec4& xi);

/// Heralding success probability P(m -> n).  Evaluates d0 * D1
/// exp(u^T M2 u) in closed combinatorial form (M2 couples only the four
/// pairings u1v1, u2v2, u1v2, v1u2, so the derivative collapses to a
/// single sum over pair counts); exact for any order and overflow-safe up
/// to m, n = 64.  Result is in [0, 1]; it is exactly 0 only for branches
/// that are physically empty (n != m at tau = 1).
/// Throws OrderTooLarge for m or n > 64.
double success_probability(const NGParams& p);

/// Heralding orders above this cap raise OrderTooLarge.
inline constexpr int kMaxHeraldOrder = 64;

/// Probability floor separating physically empty heralding branches from
/// underflow.
inline constexpr double kProbabilityFloor = 1e-12;

/// Normalized Wigner function: wigner_unnormalized / success_probability.
/// Throws NegligibleProbability if the probability is <= kProbabilityFloor.
double wigner_normalized(const NGParams& p, const Vec4& xi);

}  // namespace ngmzi
