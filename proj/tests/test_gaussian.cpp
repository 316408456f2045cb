// SPDX-License-Identifier: MIT
//
// Tests for the Gaussian phase-space layer: symplectic building blocks,
// two-mode squeezed thermal states, and Gaussian / Fock Wigner functions.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "gauss_legendre.hpp"
#include "ngmzi/errors.hpp"
#include "ngmzi/gaussian.hpp"

using namespace ngmzi;

namespace {

Mat4 blocks_to_mat4(const Eigen::Matrix2d& A, const Eigen::Matrix2d& B,
                    const Eigen::Matrix2d& C, const Eigen::Matrix2d& D) {
    Mat4 M;
    M.topLeftCorner<2, 2>() = A;
    M.topRightCorner<2, 2>() = B;
    M.bottomLeftCorner<2, 2>() = C;
    M.bottomRightCorner<2, 2>() = D;
    return M;
}

const Eigen::Matrix2d kI2 = Eigen::Matrix2d::Identity();
const Eigen::Matrix2d kZ2 = (Eigen::Matrix2d() << 1, 0, 0, -1).finished();

}  // namespace

TEST_CASE("beamsplitter block structure") {
    const double tau = 0.7;
    const Mat4 expect = blocks_to_mat4(
        std::sqrt(tau) * kI2, std::sqrt(1 - tau) * kI2,
        -std::sqrt(1 - tau) * kI2, std::sqrt(tau) * kI2);
    CHECK((beamsplitter(tau).S - expect).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((beamsplitter(1.0).S - Mat4::Identity()).cwiseAbs().maxCoeff() <
          1e-15);
    CHECK_THROWS_AS(beamsplitter(1.2), DomainError);
    CHECK_THROWS_AS(beamsplitter(-0.1), DomainError);
}

TEST_CASE("two-mode squeezer block structure") {
    const double r = 0.8;
    const Mat4 expect =
        blocks_to_mat4(std::cosh(r) * kI2, std::sinh(r) * kZ2,
                       std::sinh(r) * kZ2, std::cosh(r) * kI2);
    CHECK((two_mode_squeezer(r).S - expect).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((two_mode_squeezer(0.0).S - Mat4::Identity())
              .cwiseAbs()
              .maxCoeff() < 1e-15);
}

TEST_CASE("Mach-Zehnder net transform block structure") {
    const double phi = 0.6;
    const double c = std::cos(phi / 2), s = std::sin(phi / 2);
    const Mat4 expect =
        blocks_to_mat4(c * kI2, -s * kI2, s * kI2, c * kI2);
    CHECK((mzi_transform(phi).S - expect).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("symplectic invariants") {
    const Mat4 Omega = symplectic_form();
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 20; ++t) {
        Mat4 S;
        switch (t % 3) {
            case 0: S = two_mode_squeezer(2.0 * u(rng)).S; break;
            case 1: S = beamsplitter(u(rng)).S; break;
            default: S = mzi_transform(6.0 * u(rng) - 3.0).S; break;
        }
        CHECK((S * Omega * S.transpose() - Omega).cwiseAbs().maxCoeff() <
              1e-12);
        CHECK(S.determinant() == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("transform composition matches matrix product") {
    const SymplecticTransform S1 = two_mode_squeezer(0.9);
    const SymplecticTransform S2 = beamsplitter(0.35);
    SymplecticTransform prod;
    prod.S = S2.S * S1.S;
    GaussianState st = tmst_state(0.4, 0.2);
    st.d << 0.3, -0.1, 0.7, 0.2;
    const GaussianState a = apply(S2, apply(S1, st));
    const GaussianState b = apply(prod, st);
    CHECK((a.d - b.d).cwiseAbs().maxCoeff() < 1e-13);
    CHECK((a.V - b.V).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("two-mode squeezed thermal covariance") {
    // r = 0: the thermal scale kappa = n_th + 1/2 multiplies the identity.
    const GaussianState th = tmst_state(0.0, 0.5);
    CHECK((th.V - Mat4::Identity()).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(th.d.cwiseAbs().maxCoeff() == 0.0);

    // r = 1, n_th = 0: cosh(2r)/2 on the diagonal blocks, sinh(2r)/2 * Z
    // on the off-diagonal blocks.
    const GaussianState sq = tmst_state(1.0, 0.0);
    const Mat4 expect = blocks_to_mat4(
        0.5 * std::cosh(2.0) * kI2, 0.5 * std::sinh(2.0) * kZ2,
        0.5 * std::sinh(2.0) * kZ2, 0.5 * std::cosh(2.0) * kI2);
    CHECK((sq.V - expect).cwiseAbs().maxCoeff() < 1e-14);

    CHECK_THROWS_AS(tmst_state(0.3, -0.2), DomainError);
}

TEST_CASE("covariance satisfies the uncertainty relation") {
    const Mat4 Omega = symplectic_form();
    std::mt19937 rng(29);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 10; ++t) {
        const GaussianState st = tmst_state(2.0 * u(rng), u(rng));
        Eigen::Matrix4cd H =
            st.V.cast<std::complex<double>>() +
            std::complex<double>(0.0, 0.5) * Omega.cast<std::complex<double>>();
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(H);
        CHECK(es.eigenvalues().minCoeff() > -1e-12);
    }
}

TEST_CASE("Gaussian Wigner values at the origin") {
    const GaussianState vac;  // two-mode vacuum
    CHECK(wigner_gaussian(vac, Vec4::Zero()) ==
          doctest::Approx(1.0 / (M_PI * M_PI)).epsilon(1e-14));
    // Unit thermal scale: peak value 1/(2 pi kappa)^2 with kappa = 1.
    const GaussianState st = tmst_state(1.0, 0.5);
    CHECK(wigner_gaussian(st, Vec4::Zero()) ==
          doctest::Approx(1.0 / (4.0 * M_PI * M_PI)).epsilon(1e-13));
}

TEST_CASE("Gaussian Wigner matches the explicit squeezed-thermal form") {
    // V^{-1} = (1/kappa) [[cosh(2r) I, -sinh(2r) Z], [-sinh(2r) Z,
    // cosh(2r) I]], so W = exp(-(cosh(2r)(q1^2+p1^2+q2^2+p2^2)
    // - 2 sinh(2r)(q1 q2 - p1 p2)) / (2 kappa)) / (2 pi kappa)^2.
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    const double r = 0.65, n_th = 0.4, kappa = n_th + 0.5;
    const GaussianState st = tmst_state(r, n_th);
    for (int t = 0; t < 25; ++t) {
        Vec4 xi;
        xi << u(rng), u(rng), u(rng), u(rng);
        const double quad =
            std::cosh(2 * r) * xi.squaredNorm() -
            2.0 * std::sinh(2 * r) * (xi(0) * xi(2) - xi(1) * xi(3));
        const double expect =
            std::exp(-quad / (2.0 * kappa)) /
            (4.0 * M_PI * M_PI * kappa * kappa);
        CHECK(wigner_gaussian(st, xi) ==
              doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("Gaussian Wigner function is normalized") {
    const GaussianState st = tmst_state(0.5, 0.25);
    const auto q = ngmzi_test::gauss_legendre(28, -8.0, 8.0);
    const int nq = static_cast<int>(q.nodes.size());
    double total = 0.0;
    Vec4 xi;
    for (int i = 0; i < nq; ++i) {
        xi(0) = q.nodes[static_cast<std::size_t>(i)];
        for (int j = 0; j < nq; ++j) {
            xi(1) = q.nodes[static_cast<std::size_t>(j)];
            double partial = 0.0;
            for (int k = 0; k < nq; ++k) {
                xi(2) = q.nodes[static_cast<std::size_t>(k)];
                for (int l = 0; l < nq; ++l) {
                    xi(3) = q.nodes[static_cast<std::size_t>(l)];
                    partial += q.weights[static_cast<std::size_t>(k)] *
                               q.weights[static_cast<std::size_t>(l)] *
                               wigner_gaussian(st, xi);
                }
            }
            total += q.weights[static_cast<std::size_t>(i)] *
                     q.weights[static_cast<std::size_t>(j)] * partial;
        }
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("Fock-state Wigner values") {
    CHECK(fock_wigner(0, 0.0, 0.0) ==
          doctest::Approx(1.0 / M_PI).epsilon(1e-14));
    CHECK(fock_wigner(1, 0.0, 0.0) ==
          doctest::Approx(-1.0 / M_PI).epsilon(1e-14));
    // n = 2 at radius 1: (1/pi) e^{-1} L_2(2) with L_2(2) = -1.
    CHECK(fock_wigner(2, 1.0, 0.0) ==
          doctest::Approx(-std::exp(-1.0) / M_PI).epsilon(1e-13));
    // n = 0 reduces to the vacuum Gaussian.
    CHECK(fock_wigner(0, 0.7, -0.3) ==
          doctest::Approx(std::exp(-0.49 - 0.09) / M_PI).epsilon(1e-13));
    CHECK_THROWS_AS(fock_wigner(-1, 0.0, 0.0), DomainError);
}

TEST_CASE("singular covariance is rejected") {
    GaussianState st;
    st.V.setZero();
    CHECK_THROWS_AS(wigner_gaussian(st, Vec4::Zero()), SingularCovariance);
}
