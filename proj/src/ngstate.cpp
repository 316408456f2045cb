// SPDX-License-Identifier: MIT

#include "ngmzi/ngstate.hpp"

#include <cmath>
#include <sstream>

#include "ngmzi/coeff_engine.hpp"

namespace ngmzi {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Shared symbol block: everything below is a function of (lambda, kappa,
// tau) only.  r is the beamsplitter reflection amplitude sqrt(1 - tau)
// (the squeezing strength never appears directly, only through lambda).
struct Symbols {
    double lam, k, tau;
    double t;     // sqrt(tau)
    double r;     // sqrt(1 - tau)
    double mu2;   // 1 - lambda^2
    double Lam;   // 1 + lambda^2
    double T;     // 1 + tau
    double g;     // 2 k mu2 T + Lam r^2   (> 0)
    double b0;    // -2 k g                (< 0)
};

Symbols make_symbols(const NGParams& p) {
    Symbols s;
    s.lam = p.lambda;
    s.k = p.kappa;
    s.tau = p.tau;
    s.t = std::sqrt(p.tau);
    s.r = std::sqrt(1.0 - p.tau);
    s.mu2 = 1.0 - p.lambda * p.lambda;
    s.Lam = 1.0 + p.lambda * p.lambda;
    s.T = 1.0 + p.tau;
    s.g = 2.0 * s.k * s.mu2 * s.T + s.Lam * s.r * s.r;
    s.b0 = -2.0 * s.k * s.g;
    return s;
}

// Kernel matrix of the quadratic form -a1 u1 v1 - a4 u2 v2
// + a7 (u1 v2 + v1 u2) in the ordering (u1, v1, u2, v2).
Eigen::Matrix4cd kernel_matrix(const CoefficientSet& cs) {
    Eigen::Matrix4cd K = Eigen::Matrix4cd::Zero();
    K(0, 1) = K(1, 0) = -cs.a1 / 2.0;
    K(2, 3) = K(3, 2) = -cs.a4 / 2.0;
    K(0, 3) = K(3, 0) = cs.a7 / 2.0;
    K(1, 2) = K(2, 1) = cs.a7 / 2.0;
    return K;
}

// Matrix of the linear couplings: b(xi) = Bm^T xi with
// b = (a2, a3, a5, a6).  Columns follow from
//   a2 = (2 b1 (q1 - i p1) + 2 b2 (q2 + i p2)) / b0,   a3 = -conj(a2),
//   a5 = (2 b3 (q1 - i p1) + 2 b4 (q2 + i p2)) / b0,   a6 = -conj(a5).
Eigen::Matrix4cd coupling_matrix(const CoefficientSet& cs) {
    const cplx i(0.0, 1.0);
    Eigen::Matrix4cd Bm;
    const double inv_b0 = 1.0 / cs.b0;
    Bm.col(0) << 2.0 * cs.b1, -2.0 * i * cs.b1, 2.0 * cs.b2, 2.0 * i * cs.b2;
    Bm.col(1) << -2.0 * cs.b1, -2.0 * i * cs.b1, -2.0 * cs.b2, 2.0 * i * cs.b2;
    Bm.col(2) << 2.0 * cs.b3, -2.0 * i * cs.b3, 2.0 * cs.b4, 2.0 * i * cs.b4;
    Bm.col(3) << -2.0 * cs.b3, -2.0 * i * cs.b3, -2.0 * cs.b4, 2.0 * i * cs.b4;
    return Bm * inv_b0;
}

void fill_ab_group(const Symbols& s, CoefficientSet& cs) {
    cs.b0 = s.b0;
    cs.b1 = 2.0 * s.k * s.lam * s.r * s.t;
    cs.b2 = -s.k * s.r * (2.0 * s.k * s.mu2 + s.Lam);
    cs.b3 = 2.0 * s.k * s.lam * s.r;
    cs.b4 = s.k * s.r * s.t * (2.0 * s.k * s.mu2 - s.Lam);
    cs.a0 = kPi * kPi * s.k * s.g / s.mu2;
    cs.a1 = s.k * s.r * s.r * (2.0 * s.k * s.mu2 + s.Lam) / s.b0;
    cs.a4 = -s.k * s.r * s.r * (2.0 * s.k * s.mu2 - s.Lam) / s.b0;
    cs.a7 = 4.0 * s.k * s.k * s.mu2 * s.t / s.b0;
}

void fill_m1_group(const Symbols& s, CoefficientSet& cs) {
    cs.c1 = 2.0 * s.k * s.Lam * s.T + s.mu2 * s.r * s.r;
    cs.c2 = -8.0 * s.k * s.lam * s.t;
    cs.c3 = 2.0 * s.k * s.Lam * s.T + 4.0 * s.k * s.k * s.mu2 * s.r * s.r;
    // The template (c1, c2, c3) is positive definite for every valid
    // parameter set, and b0 < 0, so M1 is negative definite and the
    // envelope exp(xi^T M1 xi) decays in every phase-space direction.
    // The guard is defensive: it can only fire on invalid inputs that
    // slipped past validate(), and it keeps the normalization meaningful.
    if (!(cs.c1 > 0.0 && cs.c1 * cs.c3 > cs.c2 * cs.c2)) {
        throw SingularCovariance(
            "Wigner envelope lost negative definiteness (invalid parameters)");
    }
    cs.M1 << cs.c1, 0, cs.c2, 0,
             0, cs.c1, 0, -cs.c2,
             cs.c2, 0, cs.c3, 0,
             0, -cs.c2, 0, cs.c3;
    cs.M1 /= cs.b0;
}

void fill_m2_group(const Symbols& s, CoefficientSet& cs) {
    cs.d0 = 2.0 * s.mu2 / (2.0 * s.k * s.Lam * s.r * s.r + s.mu2 * s.T);
    cs.d1 = -s.r * s.r * (s.mu2 + 2.0 * s.k * s.Lam);
    cs.d2 = -2.0 * s.mu2 * s.t;
    cs.d3 = s.r * s.r * (s.mu2 - 2.0 * s.k * s.Lam);
    cs.d4 = 4.0 * (2.0 * s.k * s.Lam * s.r * s.r + s.mu2 * s.T);  // 8 mu2 / d0
    cs.M2 << 0, cs.d1, 0, cs.d2,
             cs.d1, 0, cs.d2, 0,
             0, cs.d2, 0, cs.d3,
             cs.d2, 0, cs.d3, 0;
    cs.M2 /= cs.d4;
}

}  // namespace

void NGParams::validate() const {
    std::ostringstream msg;
    if (!(lambda >= 0.0 && lambda < 1.0)) {
        msg << "NGParams: lambda = " << lambda << " outside [0, 1)";
        throw DomainError(msg.str());
    }
    if (!(kappa >= 0.5)) {
        msg << "NGParams: kappa = " << kappa << " below the vacuum value 1/2";
        throw DomainError(msg.str());
    }
    if (!(tau > 0.0 && tau <= 1.0)) {
        msg << "NGParams: tau = " << tau << " outside (0, 1]";
        throw DomainError(msg.str());
    }
    if (m < 0 || n < 0) {
        msg << "NGParams: photon numbers (" << m << ", " << n
            << ") must be non-negative";
        throw DomainError(msg.str());
    }
}

NGParams NGParams::from_r_sq(double r_sq, double n_th, double tau, int m,
                             int n) {
    if (r_sq < 0.0) throw DomainError("NGParams: squeezing r_sq < 0");
    if (n_th < 0.0) throw DomainError("NGParams: thermal occupancy n_th < 0");
    NGParams p;
    p.lambda = std::tanh(r_sq);
    p.kappa = n_th + 0.5;
    p.tau = tau;
    p.m = m;
    p.n = n;
    p.validate();
    return p;
}

NGParams NGParams::from_lambda(double lambda, double kappa, double tau, int m,
                               int n) {
    NGParams p;
    p.lambda = lambda;
    p.kappa = kappa;
    p.tau = tau;
    p.m = m;
    p.n = n;
    p.validate();
    return p;
}

double NGParams::r_sq() const { return std::atanh(lambda); }

OpKind classify(int m, int n) {
    if (m < n) return OpKind::PS;
    if (m > n) return OpKind::PA;
    return OpKind::PC;
}

const char* op_kind_name(OpKind kind) {
    switch (kind) {
        case OpKind::PS: return "ps";
        case OpKind::PA: return "pa";
        default: return "pc";
    }
}

CoefficientSet coefficients_wigner(const NGParams& p, const Vec4& xi) {
    p.validate();
    const Symbols s = make_symbols(p);
    CoefficientSet cs;
    fill_ab_group(s, cs);
    fill_m1_group(s, cs);
    const cplx i(0.0, 1.0);
    const cplx z1 = xi(0) - i * xi(1);  // q1 - i p1
    const cplx z2 = xi(2) + i * xi(3);  // q2 + i p2
    cs.a2 = (2.0 * cs.b1 * z1 + 2.0 * cs.b2 * z2) / cs.b0;
    cs.a3 = -std::conj(cs.a2);
    cs.a5 = (2.0 * cs.b3 * z1 + 2.0 * cs.b4 * z2) / cs.b0;
    cs.a6 = -std::conj(cs.a5);
    return cs;
}

CoefficientSet coefficients_probability(const NGParams& p) {
    p.validate();
    const Symbols s = make_symbols(p);
    CoefficientSet cs;
    fill_ab_group(s, cs);
    fill_m2_group(s, cs);
    return cs;
}

CoefficientSet coefficients_parity(const NGParams& p, double phi) {
    p.validate();
    const Symbols s = make_symbols(p);
    CoefficientSet cs;
    fill_ab_group(s, cs);
    fill_m1_group(s, cs);
    fill_m2_group(s, cs);

    cs.cos_phi = std::cos(phi);
    cs.sin_phi = std::sin(phi);
    cs.cos_2phi = std::cos(2.0 * phi);
    cs.sin_2phi = std::sin(2.0 * phi);

    // Shorthands of the parity-kernel scalars.
    const double r2 = s.r * s.r;
    cs.f1 = 4.0 * s.k * s.k - 1.0;
    cs.f2 = 4.0 * s.k * s.k + 1.0;
    cs.f3 = cs.cos_phi * cs.f1 - cs.f2;
    cs.f4 = cs.f2 * s.mu2 + 4.0 * s.k * s.Lam;
    cs.f5 = cs.f2 * s.mu2 - 4.0 * s.k * s.Lam;
    cs.f6 = cs.f4 * s.mu2 * r2 - 4.0 * s.k * s.Lam * s.T;
    const double h1 = 4.0 * s.k * s.Lam * s.T - cs.f3 * s.mu2 * r2;
    const double h2 = 16.0 * s.k * s.lam * cs.sin_phi * s.t;
    cs.e7 = 4.0 * (h1 * h1 - h2 * h2);

    // M3: eliminate the kept output mode's phase point from the rotated
    // Wigner kernel.  Restricting the MZI pullback to (q1', p1', 0, 0)
    // maps the phase point to F eta with eta = (q1', p1') and
    //   F = [[c, 0], [0, c], [-s, 0], [0, -s]],  c = cos(phi/2), ...
    // Integrating exp(eta^T G2 eta + (Bm^T F eta)^T u) over eta gives
    //   pi / sqrt(det(-G2)) * exp(u^T (K - 1/4 BF G2^{-1} BF^T) u),
    // with G2 = F^T M1 F and BF = Bm^T F.
    const double c = std::cos(phi / 2.0);
    const double sn = std::sin(phi / 2.0);
    Eigen::Matrix<double, 4, 2> F;
    F << c, 0,
         0, c,
         -sn, 0,
         0, -sn;
    const Eigen::Matrix2d G2 = F.transpose() * cs.M1 * F;
    const double det_mG2 = G2(0, 0) * G2(1, 1) - G2(0, 1) * G2(1, 0);
    if (!(det_mG2 > 0.0)) {
        throw SingularCovariance(
            "parity kernel: output-mode Gaussian is not integrable");
    }
    const Eigen::Matrix4cd K = kernel_matrix(cs);
    const Eigen::Matrix4cd Bm = coupling_matrix(cs);
    const Eigen::Matrix<cplx, 4, 2> BF = Bm.transpose() * F;
    const Eigen::Matrix2d G2inv = G2.inverse();
    Eigen::Matrix4cd M3c =
        K - 0.25 * BF * G2inv.cast<cplx>() * BF.transpose();
    M3c = 0.5 * (M3c + M3c.transpose()).eval();
    cs.M3 = M3c.real();

    // Prefactor of the integrated kernel: pi^2 / (a0 sqrt(det(-G2)))
    // (det(-G2) = det(G2) for the 2x2 block since (-1)^2 = 1).
    cs.e0 = kPi * kPi / (cs.a0.real() * std::sqrt(det_mG2));

    // Report the matrix entries through the scalar fields so that
    // M3 = [[e1,e2,e3,e4],[e2,e1,e4,e3],[e3,e4,e5,e6],[e4,e3,e6,e5]] / e7
    // holds by construction.
    cs.e1 = cs.M3(0, 0) * cs.e7;
    cs.e2 = cs.M3(0, 1) * cs.e7;
    cs.e3 = cs.M3(0, 2) * cs.e7;
    cs.e4 = cs.M3(0, 3) * cs.e7;
    cs.e5 = cs.M3(2, 2) * cs.e7;
    cs.e6 = cs.M3(2, 3) * cs.e7;
    return cs;
}

double wigner_unnormalized(const NGParams& p, const Vec4& xi) {
    const CoefficientSet cs = coefficients_wigner(p, xi);
    QuadExp kernel;
    kernel.M = kernel_matrix(cs);
    kernel.b << cs.a2, cs.a3, cs.a5, cs.a6;
    const cplx val = deriv_extract(kernel, DerivOrder{p.m, p.n});
    const double envelope =
        std::exp(xi.dot(cs.M1 * xi)) / cs.a0.real();
    return envelope * val.real();
}

double wigner_unnormalized_hermite(const NGParams& p, const Vec4& xi) {
    const CoefficientSet cs = coefficients_wigner(p, xi);
    const int m = p.m, n = p.n;
    if (m > kMaxDerivOrder || n > kMaxDerivOrder) {
        throw OrderTooLarge("wigner_unnormalized_hermite: order beyond cap");
    }
    auto fact = [](int v) {
        double f = 1.0;
        for (int k = 2; k <= v; ++k) f *= k;
        return f;
    };
    // Double sum over a7-pairings between the (u1, v1) and (u2, v2)
    // blocks; each block contributes a paired monomial sum (a two-variable
    // Hermite polynomial up to scaling).
    cplx tot = 0.0;
    const int cap = std::min(m, n);
    for (int i = 0; i <= cap; ++i) {
        for (int j = 0; j <= cap; ++j) {
            const double combo = (fact(m) / fact(m - i)) *
                                 (fact(m) / fact(m - j)) *
                                 (fact(n) / fact(n - j)) *
                                 (fact(n) / fact(n - i)) /
                                 (fact(i) * fact(j));
            tot += std::pow(cs.a7, i + j) * combo *
                   paired_monomial_sum(m - i, m - j, -cs.a1, cs.a2, cs.a3) *
                   paired_monomial_sum(n - j, n - i, -cs.a4, cs.a5, cs.a6);
        }
    }
    const double pref = std::pow(-2.0, m + n) / (fact(m) * fact(n));
    const double envelope = std::exp(xi.dot(cs.M1 * xi)) / cs.a0.real();
    return envelope * pref * tot.real();
}

double success_probability(const NGParams& p) {
    p.validate();
    const int m = p.m, n = p.n;
    if (m > kMaxHeraldOrder || n > kMaxHeraldOrder) {
        std::ostringstream msg;
        msg << "success_probability: order (" << m << ", " << n
            << ") exceeds the cap " << kMaxHeraldOrder;
        throw OrderTooLarge(msg.str());
    }
    const CoefficientSet cs = coefficients_probability(p);
    // M2 couples only u1v1 (weight A/2), u2v2 (B/2) and u1v2, v1u2 (C/2
    // each), so the mixed derivative collapses to a sum over the number j
    // of cross pairings:
    //   P = d0 (-2)^(m+n) sum_j C(m,j) C(n,j) A^(m-j) B^(n-j) C^(2j),
    // folded below as (-2A)^(m-j) (-2B)^(n-j) (4C^2)^j; every factor has
    // magnitude <= 1 and every term is non-negative, so the sum is exact
    // and overflow-free.
    const double A = 2.0 * cs.M2(0, 1);
    const double B = 2.0 * cs.M2(2, 3);
    const double C = 2.0 * cs.M2(0, 3);
    auto binom = [](int nn, int kk) {
        double b = 1.0;
        for (int i = 1; i <= kk; ++i) b *= double(nn - kk + i) / i;
        return b;
    };
    double sum = 0.0;
    for (int j = 0; j <= std::min(m, n); ++j) {
        sum += binom(m, j) * binom(n, j) * std::pow(-2.0 * A, m - j) *
               std::pow(-2.0 * B, n - j) * std::pow(4.0 * C * C, j);
    }
    double prob = cs.d0 * sum;
    if (prob < 0.0) prob = 0.0;  // rounding guard; terms are non-negative
    return prob;
}

double wigner_normalized(const NGParams& p, const Vec4& xi) {
    const double prob = success_probability(p);
    if (prob <= kProbabilityFloor) {
        std::ostringstream msg;
        msg << "wigner_normalized: heralding branch (m=" << p.m
            << ", n=" << p.n << ", tau=" << p.tau
            << ") carries probability " << prob;
        throw NegligibleProbability(msg.str());
    }
    return wigner_unnormalized(p, xi) / prob;
}

}  // namespace ngmzi
