// SPDX-License-Identifier: MIT
//
// Polynomial / derivative-extraction engine.
//
// The closed-form Wigner function, success probability and parity signal of
// a heralded two-mode state are all obtained by applying the same mixed
// derivative operator
//
//     D1 = ((-2)^(m+n) / (m! n!)) d^m/du1 d^m/dv1 d^n/du2 d^n/dv2 |_{u=0}
//
// to a quadratic-exponential kernel exp(u^T M u + b^T u) in the four
// generating variables u = (u1, v1, u2, v2).  This header provides that
// operator together with the classical polynomials (Laguerre, two-variable
// Hermite) that appear in the equivalent closed-form expansions.

#pragma once

#include <complex>

#include <Eigen/Dense>

#include "ngmzi/errors.hpp"

namespace ngmzi {

using cplx = std::complex<double>;

/// Physicists' Laguerre polynomial L_n(x), stable three-term recurrence
///   (k+1) L_{k+1} = (2k+1-x) L_k - k L_{k-1}.
double laguerre(int n, double x);

/// Two-variable Hermite polynomial
///   H_{m,n}(x,y) = sum_{k=0}^{min(m,n)} (-1)^k m! n! / (k! (m-k)! (n-k)!)
///                  * x^(m-k) * y^(n-k),
/// the coefficients of the generating function exp(-s t + s x + t y)
/// = sum H_{m,n} s^m t^n / (m! n!).
cplx hermite_2var(int m, int n, cplx x, cplx y);

/// Generalisation of hermite_2var with an arbitrary pairing weight A:
///   sum_{k=0}^{min(p,q)} p! q! / (k! (p-k)! (q-k)!) * A^k x^(p-k) y^(q-k).
/// hermite_2var(m, n, x, y) == paired_monomial_sum(m, n, -1, x, y).
/// Used by the Hermite-route evaluation of the heralded Wigner function,
/// where the pairing weight is a kernel matrix entry rather than -1.
cplx paired_monomial_sum(int p, int q, cplx A, cplx x, cplx y);

/// Kernel prefactor * exp(u^T M u + b^T u) in the four generating
/// variables u = (u1, v1, u2, v2).  M must be symmetric as stored.
struct QuadExp {
    Eigen::Matrix4cd M = Eigen::Matrix4cd::Zero();
    Eigen::Vector4cd b = Eigen::Vector4cd::Zero();
    cplx prefactor = 1.0;
};

/// Derivative orders of D1: m applies to the (u1, v1) pair, n to (u2, v2).
struct DerivOrder {
    int m = 0;
    int n = 0;
};

/// Orders above this cap raise OrderTooLarge (combinatorial blow-up guard;
/// physical use never exceeds m, n = 2).
inline constexpr int kMaxDerivOrder = 8;

/// Evaluate D1 applied to the kernel:
///
///   prefactor * ((-2)^(m+n) / (m! n!))
///             * [d^m_{u1} d^m_{v1} d^n_{u2} d^n_{v2}
///                exp(u^T M u + b^T u)]_{u=0}.
///
/// Computed by expanding the exponential as a truncated multivariate power
/// series (total degree <= 2(m+n), per-variable exponents capped at m or n)
/// and reading off the coefficient of u1^m v1^m u2^n v2^n times m!^2 n!^2.
/// Exact up to floating-point rounding.
///
/// Throws OrderTooLarge if order.m or order.n exceeds kMaxDerivOrder,
/// DomainError for negative orders.
cplx deriv_extract(const QuadExp& kernel, const DerivOrder& order);

}  // namespace ngmzi
