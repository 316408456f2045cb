// SPDX-License-Identifier: MIT

#include "ngmzi/gaussian.hpp"

#include <cmath>
#include <sstream>

#include "ngmzi/coeff_engine.hpp"

namespace ngmzi {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

Mat4 symplectic_form() {
    Mat4 omega = Mat4::Zero();
    omega(0, 1) = 1.0;
    omega(1, 0) = -1.0;
    omega(2, 3) = 1.0;
    omega(3, 2) = -1.0;
    return omega;
}

SymplecticTransform two_mode_squeezer(double r) {
    const double ch = std::cosh(r);
    const double sh = std::sinh(r);
    SymplecticTransform out;
    out.S << ch, 0, sh, 0,
             0, ch, 0, -sh,
             sh, 0, ch, 0,
             0, -sh, 0, ch;
    return out;
}

SymplecticTransform beamsplitter(double tau) {
    if (!(tau >= 0.0 && tau <= 1.0)) {
        std::ostringstream msg;
        msg << "beamsplitter: transmissivity " << tau << " outside [0, 1]";
        throw DomainError(msg.str());
    }
    const double t = std::sqrt(tau);
    const double r = std::sqrt(1.0 - tau);
    SymplecticTransform out;
    out.S << t, 0, r, 0,
             0, t, 0, r,
             -r, 0, t, 0,
             0, -r, 0, t;
    return out;
}

SymplecticTransform mzi_transform(double phi) {
    const double c = std::cos(phi / 2.0);
    const double s = std::sin(phi / 2.0);
    SymplecticTransform out;
    out.S << c, 0, -s, 0,
             0, c, 0, -s,
             s, 0, c, 0,
             0, s, 0, c;
    return out;
}

GaussianState tmst_state(double r, double n_th) {
    if (n_th < 0.0) {
        std::ostringstream msg;
        msg << "tmst_state: thermal occupancy " << n_th << " < 0";
        throw DomainError(msg.str());
    }
    const double kappa = n_th + 0.5;
    GaussianState thermal;
    thermal.V = Mat4::Identity() * kappa;
    return apply(two_mode_squeezer(r), thermal);
}

double wigner_gaussian(const GaussianState& state, const Vec4& xi) {
    const double det = state.V.determinant();
    if (!(det > 0.0)) {
        std::ostringstream msg;
        msg << "wigner_gaussian: det V = " << det << " is not positive";
        throw SingularCovariance(msg.str());
    }
    const Vec4 dx = xi - state.d;
    const double quad = dx.dot(state.V.ldlt().solve(dx));
    return std::exp(-0.5 * quad) / (4.0 * kPi * kPi * std::sqrt(det));
}

double fock_wigner(int n, double q, double p) {
    if (n < 0) throw DomainError("fock_wigner: negative photon number");
    const double rho = q * q + p * p;
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    return (sign / kPi) * std::exp(-rho) * laguerre(n, 2.0 * rho);
}

GaussianState apply(const SymplecticTransform& S, const GaussianState& state) {
    GaussianState out;
    out.d = S.S * state.d;
    out.V = S.S * state.V * S.S.transpose();
    return out;
}

}  // namespace ngmzi
