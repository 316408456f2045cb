// SPDX-License-Identifier: MIT
//
// Two-mode Gaussian states and symplectic transformations in phase space.
//
// Conventions (fixed throughout the library): hbar = 1, vacuum quadrature
// variance 1/2, quadratures ordered xi = (q1, p1, q2, p2)^T.  A Gaussian
// state is (d, V) with Wigner function
//
//     W(xi) = exp(-1/2 (xi-d)^T V^{-1} (xi-d)) / ((2 pi)^2 sqrt(det V)),
//
// and a symplectic matrix S acts as d -> S d, V -> S V S^T.

#pragma once

#include <Eigen/Dense>

#include "ngmzi/errors.hpp"

namespace ngmzi {

using Vec4 = Eigen::Vector4d;
using Mat4 = Eigen::Matrix4d;

/// Two-mode Gaussian state: displacement d and covariance V in the
/// ordering (q1, p1, q2, p2).
struct GaussianState {
    Vec4 d = Vec4::Zero();
    Mat4 V = Mat4::Identity() * 0.5;  // two-mode vacuum
};

/// Linear phase-space transformation; valid instances satisfy
/// S Omega S^T = Omega.
struct SymplecticTransform {
    Mat4 S = Mat4::Identity();
};

/// The symplectic form Omega = omega (+) omega, omega = [[0,1],[-1,0]],
/// for the (q1, p1, q2, p2) ordering.
Mat4 symplectic_form();

/// Two-mode squeezer, blocks [[cosh r * I, sinh r * Z], [sinh r * Z,
/// cosh r * I]] with Z = diag(1, -1).
SymplecticTransform two_mode_squeezer(double r);

/// Beamsplitter of transmissivity tau:
/// [[sqrt(tau) I, sqrt(1-tau) I], [-sqrt(1-tau) I, sqrt(tau) I]].
/// Throws DomainError if tau is outside [0, 1].
SymplecticTransform beamsplitter(double tau);

/// Net symplectic action of a balanced Mach-Zehnder interferometer with
/// internal phase phi: [[cos(phi/2) I, -sin(phi/2) I],
/// [sin(phi/2) I, cos(phi/2) I]].
SymplecticTransform mzi_transform(double phi);

/// Two-mode squeezed thermal state: d = 0,
/// V = S(r) (n_th + 1/2) I S(r)^T.  The thermal scale kappa = n_th + 1/2
/// is the prefactor of the thermal covariance.  Throws DomainError if
/// n_th < 0.
GaussianState tmst_state(double r, double n_th);

/// Gaussian Wigner function at a phase point.  Throws SingularCovariance
/// if det V <= 0.
double wigner_gaussian(const GaussianState& state, const Vec4& xi);

/// Single-mode Fock-state Wigner function
///   W_n(q, p) = ((-1)^n / pi) exp(-q^2 - p^2) L_n(2 (q^2 + p^2)).
double fock_wigner(int n, double q, double p);

/// Apply a symplectic transformation: (d, V) -> (S d, S V S^T).
GaussianState apply(const SymplecticTransform& S, const GaussianState& state);

}  // namespace ngmzi
