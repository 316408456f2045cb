// SPDX-License-Identifier: MIT

#include "ngmzi/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

namespace ngmzi {

namespace {

using cplx = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;
constexpr double kHeraldProbFloor = 1e-14;
// Heralded ladder entries whose probability mass falls below this floor
// are pruned (and booked into the trace deficit); it keeps the per-total-
// photon-number parity blocks from growing past what the queries resolve.
constexpr double kAmplitudeFloor = 1e-26;

/// P[X >= k0] for X ~ Poisson(mean), by the complementary forward sum.
double poisson_tail(double mean, int k0) {
    if (mean <= 0.0) return 0.0;
    double term = std::exp(-mean);
    if (term == 0.0) return 1.0;  // mean past the exp underflow: all tail
    double cum = term;
    for (int k = 1; k < k0; ++k) {
        term *= mean / k;
        cum += term;
    }
    return std::min(1.0, std::max(0.0, 1.0 - cum));
}

/// Exact beamsplitter block on the total-photon-number-s sector, basis
/// |i, s - i> indexed by the FIRST mode's occupation i = 0 .. s, for the
/// generator theta (a1+ a2 - a1 a2+).  Real orthogonal by construction.
Eigen::MatrixXd bs_block(double theta, int s) {
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(s + 1, s + 1);
    for (int i = 0; i <= s; ++i) {
        if (i + 1 <= s) K(i + 1, i) = theta * std::sqrt(double(s - i) * (i + 1));
        if (i - 1 >= 0) K(i - 1, i) = -theta * std::sqrt(double(i) * (s - i + 1));
    }
    return K.exp();
}

/// Exact MZI block on the sector s, basis |s - j, j> indexed by the SECOND
/// mode's occupation j = 0 .. s, for the generator
/// -(psi / 2) (a1+ a2 - a1 a2+).  Real orthogonal by construction.
Eigen::MatrixXd mzi_block(double psi, int s) {
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(s + 1, s + 1);
    for (int j = 0; j <= s; ++j) {
        if (j - 1 >= 0)
            K(j - 1, j) = -0.5 * psi * std::sqrt(double(s - j + 1) * j);
        if (j + 1 <= s)
            K(j + 1, j) = 0.5 * psi * std::sqrt(double(s - j) * (j + 1));
    }
    return K.exp();
}

/// Truncated displacement operator exp(alpha a+ - conj(alpha) a); the
/// truncated generator stays anti-Hermitian, so the result is exactly
/// unitary (mass reaching the cutoff is reflected, not lost -- which is
/// why displaced queries carry a tail diagnostic).
Eigen::MatrixXcd displacement_matrix(cplx alpha, int dim) {
    Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(dim, dim);
    for (int k = 0; k < dim; ++k) {
        if (k + 1 < dim) G(k + 1, k) = alpha * std::sqrt(double(k + 1));
        if (k - 1 >= 0) G(k - 1, k) = -std::conj(alpha) * std::sqrt(double(k));
    }
    return G.exp();
}

/// Heralding kernel on mode 2: mix |j> (system) with |m> (ancilla) on a
/// beamsplitter of transmissivity tau and detect |n> on the ancilla.  The
/// system output is jp = j + m - n.  Returns the amplitudes value[j] and
/// valid[j] = whether jp fits the truncated system space (invalid entries
/// carry real probability mass that the caller must account for).
struct HeraldKernel {
    std::vector<double> value;
    std::vector<char> valid;
};

HeraldKernel herald_kernel(double tau, int m, int n, int dim) {
    const double theta = std::atan2(std::sqrt(1.0 - tau), std::sqrt(tau));
    HeraldKernel ker;
    ker.value.assign(dim, 0.0);
    ker.valid.assign(dim, 1);
    for (int j = 0; j < dim; ++j) {
        const int s = j + m;
        const int jp = j + m - n;
        if (jp < 0) continue;  // detecting more photons than present: amp 0
        const Eigen::MatrixXd U = bs_block(theta, s);
        ker.value[j] = U(jp, j);
        ker.valid[j] = (jp < dim) ? 1 : 0;
    }
    return ker;
}

void require_modes(const FockOperator& op, int modes, const char* where) {
    if (op.modes != modes || op.cutoff < 2) {
        std::ostringstream msg;
        msg << where << ": expected a " << modes
            << "-mode operator with cutoff >= 2, got modes = " << op.modes
            << ", cutoff = " << op.cutoff;
        throw DomainError(msg.str());
    }
    const long dim = (modes == 2) ? long(op.cutoff) * op.cutoff : op.cutoff;
    if (op.data.rows() != dim || op.data.cols() != dim) {
        std::ostringstream msg;
        msg << where << ": operator storage is " << op.data.rows() << "x"
            << op.data.cols() << ", expected " << dim << "x" << dim;
        throw DomainError(msg.str());
    }
}

void check_displacement_tail(const Eigen::VectorXd& diag, cplx alpha,
                             int cutoff, double eps_tail, const char* mode) {
    // Heuristic: a level-k component displaced by alpha has number
    // statistics no heavier than Poisson with mean (sqrt(k) + |alpha|)^2
    // (amplitudes adding in phase).  Accumulate each level's spill past
    // the cutoff weighted by the level's mass; if the total is
    // non-negligible, the displaced-parity trace is untrustworthy.
    double tail = 0.0;
    for (int k = 0; k < diag.size(); ++k) {
        const double w = std::max(0.0, diag(k));
        if (w < 1e-300) continue;
        const double mean =
            std::pow(std::sqrt(double(k)) + std::abs(alpha), 2.0);
        tail += w * poisson_tail(mean, cutoff);
    }
    if (tail >= eps_tail) {
        std::ostringstream msg;
        msg << "wigner_point: displacement |alpha| = " << std::abs(alpha)
            << " on " << mode << " pushes an estimated mass " << tail
            << " past the cutoff " << cutoff << " (tolerance " << eps_tail
            << ")";
        throw TailTooLarge(msg.str());
    }
}

double displaced_parity_trace_1m(const Eigen::MatrixXcd& rho, cplx alpha) {
    const int N = int(rho.rows());
    const Eigen::MatrixXcd D = displacement_matrix(alpha, N);
    const Eigen::MatrixXcd A = D.adjoint() * rho * D;
    double tr = 0.0;
    for (int k = 0; k < N; ++k) {
        tr += ((k % 2 == 0) ? 1.0 : -1.0) * A(k, k).real();
    }
    return tr;
}

}  // namespace

FockOperator thermal_density(double n_th, int cutoff, double eps_tail) {
    if (n_th < 0.0) throw DomainError("thermal_density: n_th < 0");
    if (cutoff < 2) throw DomainError("thermal_density: cutoff < 2");
    const double x = n_th / (1.0 + n_th);
    const double tail = std::pow(x, cutoff);
    if (tail >= eps_tail) {
        std::ostringstream msg;
        msg << "thermal_density: truncated mass " << tail << " at cutoff "
            << cutoff << " exceeds " << eps_tail;
        throw TailTooLarge(msg.str());
    }
    FockOperator op;
    op.cutoff = cutoff;
    op.modes = 1;
    op.data = Eigen::MatrixXcd::Zero(cutoff, cutoff);
    for (int k = 0; k < cutoff; ++k) {
        op.data(k, k) = std::pow(x, k) / (1.0 + n_th);
    }
    return op;
}

FockOperator two_mode_squeeze_unitary(double r, int cutoff, double eps_tail) {
    if (cutoff < 2) throw DomainError("two_mode_squeeze_unitary: cutoff < 2");
    const double tail = std::pow(std::tanh(std::abs(r)), cutoff);
    if (tail >= eps_tail) {
        std::ostringstream msg;
        msg << "two_mode_squeeze_unitary: Schmidt tail tanh(|r|)^cutoff = "
            << tail << " at cutoff " << cutoff << " exceeds " << eps_tail;
        throw TailTooLarge(msg.str());
    }
    const int N = cutoff;
    FockOperator op;
    op.cutoff = N;
    op.modes = 2;
    op.data = Eigen::MatrixXcd::Zero(long(N) * N, long(N) * N);
    // The generator r (a1+ a2+ - a1 a2) never mixes photon-number
    // differences d = n1 - n2; on the ladder |d + l, l> (l = 0 ..) it is
    // real antisymmetric, so each block exponentiates to an orthogonal
    // matrix and the assembled operator is exactly unitary.
    for (int d = 0; d <= N - 1; ++d) {
        const int L = N - d;
        Eigen::MatrixXd K = Eigen::MatrixXd::Zero(L, L);
        for (int l = 0; l < L; ++l) {
            const double n1 = d + l, n2 = l;
            if (l + 1 < L) K(l + 1, l) = r * std::sqrt((n1 + 1.0) * (n2 + 1.0));
            if (l - 1 >= 0) K(l - 1, l) = -r * std::sqrt(n1 * n2);
        }
        const Eigen::MatrixXd E = K.exp();
        for (int lp = 0; lp < L; ++lp) {
            for (int l = 0; l < L; ++l) {
                // d >= 0 ladder |d + l, l>; the d < 0 ladder |l, d + l| is
                // the same matrix with the modes swapped.
                op.data(long(d + lp) * N + lp, long(d + l) * N + l) = E(lp, l);
                if (d > 0) {
                    op.data(long(lp) * N + (d + lp), long(l) * N + (d + l)) =
                        E(lp, l);
                }
            }
        }
    }
    return op;
}

FockOperator beamsplitter_unitary(double tau, int cutoff) {
    if (!(tau >= 0.0 && tau <= 1.0)) {
        throw DomainError("beamsplitter_unitary: tau outside [0, 1]");
    }
    if (cutoff < 2) throw DomainError("beamsplitter_unitary: cutoff < 2");
    const double theta = std::atan2(std::sqrt(1.0 - tau), std::sqrt(tau));
    const int N = cutoff;
    FockOperator op;
    op.cutoff = N;
    op.modes = 2;
    op.data = Eigen::MatrixXcd::Zero(long(N) * N, long(N) * N);
    // Total photon number is conserved; exponentiate the generator
    // restricted to the in-cutoff slice of each sector so the assembled
    // operator is exactly unitary on the truncated space.
    for (int s = 0; s <= 2 * (N - 1); ++s) {
        const int i_lo = std::max(0, s - N + 1);
        const int i_hi = std::min(s, N - 1);
        const int nb = i_hi - i_lo + 1;
        Eigen::MatrixXd K = Eigen::MatrixXd::Zero(nb, nb);
        for (int i = i_lo; i <= i_hi; ++i) {
            if (i + 1 <= i_hi)
                K(i + 1 - i_lo, i - i_lo) =
                    theta * std::sqrt(double(s - i) * (i + 1));
            if (i - 1 >= i_lo)
                K(i - 1 - i_lo, i - i_lo) =
                    -theta * std::sqrt(double(i) * (s - i + 1));
        }
        const Eigen::MatrixXd E = K.exp();
        for (int ip = i_lo; ip <= i_hi; ++ip) {
            for (int i = i_lo; i <= i_hi; ++i) {
                op.data(long(ip) * N + (s - ip), long(i) * N + (s - i)) =
                    E(ip - i_lo, i - i_lo);
            }
        }
    }
    return op;
}

std::pair<FockOperator, double> herald(const FockOperator& rho, double tau,
                                       int m, int n) {
    require_modes(rho, 2, "herald");
    if (!(tau >= 0.0 && tau <= 1.0)) {
        throw DomainError("herald: tau outside [0, 1]");
    }
    if (m < 0 || n < 0) throw DomainError("herald: negative photon number");
    const int N = rho.cutoff;
    const HeraldKernel ker = herald_kernel(tau, m, n, N);
    const int shift = m - n;

    FockOperator out;
    out.cutoff = N;
    out.modes = 2;
    out.data = Eigen::MatrixXcd::Zero(long(N) * N, long(N) * N);
    // Single-diagonal Kraus on mode 2: K2 |j> = ker[j] |j + shift>.
    for (int n1 = 0; n1 < N; ++n1) {
        for (int n1p = 0; n1p < N; ++n1p) {
            for (int j1 = 0; j1 < N; ++j1) {
                const int j1p = j1 + shift;
                if (j1p < 0 || j1p >= N || !ker.valid[j1]) continue;
                if (ker.value[j1] == 0.0) continue;
                for (int j2 = 0; j2 < N; ++j2) {
                    const int j2p = j2 + shift;
                    if (j2p < 0 || j2p >= N || !ker.valid[j2]) continue;
                    out.data(long(n1) * N + j1p, long(n1p) * N + j2p) =
                        ker.value[j1] * ker.value[j2] *
                        rho.data(long(n1) * N + j1, long(n1p) * N + j2);
                }
            }
        }
    }
    const double prob = out.data.trace().real();
    if (prob < kHeraldProbFloor) {
        std::ostringstream msg;
        msg << "herald: branch (m = " << m << ", n = " << n
            << ", tau = " << tau << ") carries probability " << prob;
        throw NegligibleProbability(msg.str());
    }
    out.data /= prob;
    return {std::move(out), prob};
}

double parity_after_mzi(const FockOperator& rho, double phi) {
    require_modes(rho, 2, "parity_after_mzi");
    const int N = rho.cutoff;
    const double psi = phi + kPi / 2.0;
    double parity = 0.0;
    // The MZI conserves total photon number; each sector s is genuinely
    // (s + 1)-dimensional, so its block is exact (no truncation at all),
    // and only the sector-diagonal blocks of rho contribute to the trace.
    for (int s = 0; s <= 2 * (N - 1); ++s) {
        const int j_lo = std::max(0, s - N + 1);
        const int j_hi = std::min(s, N - 1);
        const int nr = j_hi - j_lo + 1;
        Eigen::MatrixXcd rho_s(nr, nr);
        for (int a = 0; a < nr; ++a) {
            const int ja = j_lo + a;
            for (int b = 0; b < nr; ++b) {
                const int jb = j_lo + b;
                rho_s(a, b) = rho.data(long(s - ja) * N + ja,
                                       long(s - jb) * N + jb);
            }
        }
        if (rho_s.cwiseAbs().maxCoeff() == 0.0) continue;
        const Eigen::MatrixXd U = mzi_block(psi, s);
        const Eigen::MatrixXcd V =
            U.middleCols(j_lo, nr).cast<cplx>();
        const Eigen::MatrixXcd B = V * rho_s * V.adjoint();
        for (int j = 0; j <= s; ++j) {
            parity += ((j % 2 == 0) ? 1.0 : -1.0) * B(j, j).real();
        }
    }
    return parity;
}

double wigner_point(const FockOperator& rho, const Vec4& xi,
                    double eps_tail) {
    require_modes(rho, 2, "wigner_point");
    const int N = rho.cutoff;
    const cplx alpha1(xi(0) / std::sqrt(2.0), xi(1) / std::sqrt(2.0));
    const cplx alpha2(xi(2) / std::sqrt(2.0), xi(3) / std::sqrt(2.0));

    Eigen::VectorXd diag1 = Eigen::VectorXd::Zero(N);
    Eigen::VectorXd diag2 = Eigen::VectorXd::Zero(N);
    for (int n1 = 0; n1 < N; ++n1) {
        for (int n2 = 0; n2 < N; ++n2) {
            const double p = rho.data(long(n1) * N + n2, long(n1) * N + n2).real();
            diag1(n1) += p;
            diag2(n2) += p;
        }
    }
    check_displacement_tail(diag1, alpha1, N, eps_tail, "mode 1");
    check_displacement_tail(diag2, alpha2, N, eps_tail, "mode 2");

    const Eigen::MatrixXcd D1 = displacement_matrix(alpha1, N);
    const Eigen::MatrixXcd D2 = displacement_matrix(alpha2, N);
    const Eigen::MatrixXcd D = Eigen::kroneckerProduct(D1, D2);
    const Eigen::MatrixXcd A = D.adjoint() * rho.data * D;
    double tr = 0.0;
    for (int n1 = 0; n1 < N; ++n1) {
        for (int n2 = 0; n2 < N; ++n2) {
            tr += (((n1 + n2) % 2 == 0) ? 1.0 : -1.0) *
                  A(long(n1) * N + n2, long(n1) * N + n2).real();
        }
    }
    return tr / (kPi * kPi);
}

double wigner_point(const FockOperator& rho, double q, double p,
                    double eps_tail) {
    require_modes(rho, 1, "wigner_point");
    const int N = rho.cutoff;
    const cplx alpha(q / std::sqrt(2.0), p / std::sqrt(2.0));
    const Eigen::VectorXd diag = rho.data.diagonal().real();
    check_displacement_tail(diag, alpha, N, eps_tail, "the mode");
    return displaced_parity_trace_1m(rho.data, alpha) / kPi;
}

HeraldedEnsemble::HeraldedEnsemble(double r_sq, double n_th, double tau,
                                   int m, int n, int nmax,
                                   double weight_floor)
    : nmax_(nmax) {
    if (r_sq < 0.0) throw DomainError("HeraldedEnsemble: r_sq < 0");
    if (n_th < 0.0) throw DomainError("HeraldedEnsemble: n_th < 0");
    if (!(tau >= 0.0 && tau <= 1.0)) {
        throw DomainError("HeraldedEnsemble: tau outside [0, 1]");
    }
    if (m < 0 || n < 0) {
        throw DomainError("HeraldedEnsemble: negative photon number");
    }
    if (nmax < 1 || nmax < std::max(m, n)) {
        throw DomainError("HeraldedEnsemble: nmax too small");
    }
    if (!(weight_floor > 0.0)) {
        throw DomainError("HeraldedEnsemble: weight_floor must be positive");
    }
    const int N = nmax + 1;

    // Thermal input weights p_j = n_th^j / (1 + n_th)^(j+1); pairs below
    // the weight floor are dropped into the deficit.
    const double x = n_th / (1.0 + n_th);
    std::vector<double> pth;
    {
        double pj = 1.0 / (1.0 + n_th);
        while (pth.empty() || pj * pth.front() >= weight_floor) {
            pth.push_back(pj);
            pj *= x;
            if (pj == 0.0) break;
        }
    }
    double kept_mass = 0.0;

    const HeraldKernel ker = herald_kernel(tau, m, n, N);
    const int shift = m - n;
    const double lam2 = std::tanh(r_sq) * std::tanh(r_sq);

    // Squeezing-ladder cache, one orthogonal block per photon-number
    // difference |d| (see two_mode_squeeze_unitary).
    std::vector<Eigen::MatrixXd> ladder(static_cast<std::size_t>(N));
    std::vector<char> have(size_t(N), 0);
    auto ladder_block = [&](int d) -> const Eigen::MatrixXd& {
        if (!have[size_t(d)]) {
            const int L = N - d;
            Eigen::MatrixXd K = Eigen::MatrixXd::Zero(L, L);
            for (int l = 0; l < L; ++l) {
                const double n1 = d + l, n2 = l;
                if (l + 1 < L)
                    K(l + 1, l) = r_sq * std::sqrt((n1 + 1.0) * (n2 + 1.0));
                if (l - 1 >= 0) K(l - 1, l) = -r_sq * std::sqrt(n1 * n2);
            }
            ladder[size_t(d)] = K.exp();
            have[size_t(d)] = 1;
        }
        return ladder[size_t(d)];
    };

    for (size_t j1 = 0; j1 < pth.size(); ++j1) {
        for (size_t j2 = 0; j2 < pth.size(); ++j2) {
            const double w = pth[j1] * pth[j2];
            if (w < weight_floor) continue;
            kept_mass += w;

            const int d = int(j1) - int(j2);
            const int ad = std::abs(d);
            const int L = N - ad;
            const int col = int(std::min(j1, j2));
            if (col >= L) {  // input pair beyond the ladder: all mass lost
                trace_deficit_ += w;
                continue;
            }
            const Eigen::MatrixXd& E = ladder_block(ad);
            const int n1b = (d >= 0) ? d : 0;
            const int n2b = (d >= 0) ? 0 : ad;

            // Estimated squeezed mass beyond the cutoff (the orthogonal
            // block reflects it, so it is invisible to the norm):
            // geometric extrapolation of the top entry with ratio lam2.
            const double top = E(L - 1, col);
            if (lam2 < 1.0) {
                trace_deficit_ += w * top * top * lam2 / (1.0 - lam2);
            }

            Component comp;
            comp.weight = w;
            comp.n1_base = n1b;
            comp.n2_base = n2b + shift;
            comp.amp.assign(size_t(L), 0.0);
            double comp_mass = 0.0;
            for (int l = 0; l < L; ++l) {
                const int n2 = n2b + l;
                const double a = E(l, col) * ker.value[size_t(n2)];
                if (a == 0.0) continue;
                if (!ker.valid[size_t(n2)] || n2 + shift < 0 ||
                    n2 + shift > nmax) {
                    trace_deficit_ += w * a * a;  // heralded past the cutoff
                    continue;
                }
                comp.amp[size_t(l)] = a;
                comp_mass += a * a;
            }
            prob_ += w * comp_mass;

            // Prune the negligible top of the ladder (and leading zeros do
            // not need trimming; queries skip zero amplitudes).
            int last = int(comp.amp.size()) - 1;
            while (last >= 0 &&
                   w * comp.amp[size_t(last)] * comp.amp[size_t(last)] <
                       kAmplitudeFloor) {
                const double a = comp.amp[size_t(last)];
                trace_deficit_ += w * a * a;
                prob_ -= w * a * a;
                --last;
            }
            if (last < 0) continue;
            comp.amp.resize(size_t(last) + 1);
            comps_.push_back(std::move(comp));
        }
    }
    trace_deficit_ += std::max(0.0, 1.0 - kept_mass);
}

double HeraldedEnsemble::parity(double phi) const {
    if (prob_ < kHeraldProbFloor) {
        throw NegligibleProbability("HeraldedEnsemble::parity: empty branch");
    }
    const double psi = phi + kPi / 2.0;

    // Within one component every ladder entry carries a distinct total
    // photon number s, and the MZI conserves s, so coherences between
    // entries never reach the (diagonal) parity observable:
    //   <Pi> = sum_l amp_l^2 * pi_s(l)[n2(l)],
    //   pi_s[j] = sum_j' (-1)^j' U_s[j', j]^2.
    int smax = 0;
    for (const Component& c : comps_) {
        smax = std::max(smax, c.n1_base + c.n2_base +
                              2 * (int(c.amp.size()) - 1));
    }
    std::vector<char> needed(size_t(smax) + 1, 0);
    for (const Component& c : comps_) {
        const int base = c.n1_base + c.n2_base;
        for (size_t l = 0; l < c.amp.size(); ++l) {
            if (c.amp[l] != 0.0) needed[size_t(base + 2 * int(l))] = 1;
        }
    }
    std::vector<Eigen::VectorXd> table(size_t(smax) + 1);
    for (int s = 0; s <= smax; ++s) {
        if (!needed[size_t(s)]) continue;
        const Eigen::MatrixXd U = mzi_block(psi, s);
        Eigen::VectorXd signs(s + 1);
        for (int j = 0; j <= s; ++j) signs(j) = (j % 2 == 0) ? 1.0 : -1.0;
        table[size_t(s)] =
            (U.array() * U.array()).matrix().transpose() * signs;
    }
    double num = 0.0;
    for (const Component& c : comps_) {
        const int base = c.n1_base + c.n2_base;
        double acc = 0.0;
        for (size_t l = 0; l < c.amp.size(); ++l) {
            const double a = c.amp[l];
            if (a == 0.0) continue;
            const int s = base + 2 * int(l);
            const int n2 = c.n2_base + int(l);
            acc += a * a * table[size_t(s)](n2);
        }
        num += c.weight * acc;
    }
    return num / prob_;
}

double HeraldedEnsemble::wigner(const Vec4& xi) const {
    if (prob_ < kHeraldProbFloor) {
        throw NegligibleProbability("HeraldedEnsemble::wigner: empty branch");
    }
    const int N = nmax_ + 1;
    const cplx alpha1(xi(0) / std::sqrt(2.0), xi(1) / std::sqrt(2.0));
    const cplx alpha2(xi(2) / std::sqrt(2.0), xi(3) / std::sqrt(2.0));
    const Eigen::MatrixXcd D1 = displacement_matrix(alpha1, N);
    const Eigen::MatrixXcd D2 = displacement_matrix(alpha2, N);
    Eigen::VectorXcd signs(N);
    for (int k = 0; k < N; ++k) signs(k) = (k % 2 == 0) ? 1.0 : -1.0;
    // Displaced-parity matrices Pi_i = D_i diag(+-1) D_i+; then
    //   W = (1/pi^2) sum_{l,l'} c_l c_l' Pi1[n1(l'), n1(l)] Pi2[n2(l'), n2(l)].
    const Eigen::MatrixXcd Pi1 = D1 * signs.asDiagonal() * D1.adjoint();
    const Eigen::MatrixXcd Pi2 = D2 * signs.asDiagonal() * D2.adjoint();
    cplx acc = 0.0;
    for (const Component& c : comps_) {
        const int L = int(c.amp.size());
        cplx comp = 0.0;
        for (int lp = 0; lp < L; ++lp) {
            if (c.amp[size_t(lp)] == 0.0) continue;
            const int n1p = c.n1_base + lp;
            const int n2p = c.n2_base + lp;
            for (int l = 0; l < L; ++l) {
                if (c.amp[size_t(l)] == 0.0) continue;
                comp += c.amp[size_t(lp)] * c.amp[size_t(l)] *
                        Pi1(n1p, c.n1_base + l) * Pi2(n2p, c.n2_base + l);
            }
        }
        acc += c.weight * comp;
    }
    return acc.real() / (kPi * kPi * prob_);
}

}  // namespace ngmzi
