// SPDX-License-Identifier: MIT
//
// Independent truncated-Fock-basis oracle.
//
// Everything in this header is brute force on purpose: states and
// unitaries are dense matrices on a truncated Fock space, built from
// ladder-operator generators by matrix exponentials.  No formula is shared
// with the closed-form modules beyond the parameter definitions, so an
// error there cannot hide here.  Truncation is always diagnosed (tail
// estimates), never assumed.
//
// Two representations are provided:
//  - FockOperator: plain dense matrices (1 or 2 modes), convenient for
//    small cutoffs and for testing the oracle itself;
//  - HeraldedEnsemble: the heralded two-mode squeezed thermal state kept
//    as a weighted ensemble of pure components (one per thermal Fock input
//    pair).  Each component is a single squeezing ladder, which makes
//    probability, parity and pointwise Wigner values cheap at cutoffs
//    where dense two-mode matrices would not fit in memory.

#pragma once

#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ngmzi/errors.hpp"
#include "ngmzi/gaussian.hpp"

namespace ngmzi {

/// Dense operator on a truncated Fock space: `cutoff` = per-mode dimension
/// N (indices 0 .. N-1), `modes` in {1, 2}, `data` of size N^modes square.
/// Two-mode indices flatten as idx = n1 * N + n2.
struct FockOperator {
    int cutoff = 0;
    int modes = 1;
    Eigen::MatrixXcd data;
};

/// Default tail tolerance for truncation diagnostics.
inline constexpr double kDefaultTailTol = 1e-10;

/// Single-mode thermal state, p_k = n_th^k / (1 + n_th)^(k+1).
/// Throws TailTooLarge if the truncated mass 1 - sum p_k exceeds eps_tail,
/// DomainError for n_th < 0 or cutoff < 2.
FockOperator thermal_density(double n_th, int cutoff,
                             double eps_tail = kDefaultTailTol);

/// Two-mode squeezing unitary exp(r (a1+ a2+ - a1 a2)) on the truncated
/// space, built per photon-number-difference ladder (the generator never
/// mixes ladders) by matrix exponentials.  Exactly unitary as built.
/// Throws TailTooLarge if tanh(|r|)^cutoff >= eps_tail (the Schmidt tail
/// of the squeezed vacuum would not fit the cutoff).
FockOperator two_mode_squeeze_unitary(double r, int cutoff,
                                      double eps_tail = kDefaultTailTol);

/// Beamsplitter unitary exp(theta (a1+ a2 - a1 a2+)) with cos(theta) =
/// sqrt(tau), block-diagonal in total photon number, exactly unitary on
/// the truncated space.  Throws DomainError if tau is outside [0, 1].
FockOperator beamsplitter_unitary(double tau, int cutoff);

/// Mix mode 2 of `rho` with an ancilla prepared in |m>, on a beamsplitter
/// of transmissivity tau, and project the ancilla onto |n>.  Returns the
/// normalized conditional state and the branch probability.  The ancilla
/// contraction is staged (the beamsplitter acts on the (mode 2, ancilla)
/// pair only), so no three-mode matrix is ever formed.
/// Throws NegligibleProbability if the branch probability < 1e-14.
std::pair<FockOperator, double> herald(const FockOperator& rho, double tau,
                                       int m, int n);

/// Photon-number parity of mode 2 after a balanced MZI with internal phase
/// phi, biased at the quadrature point (the optical rotation is
/// phi + pi/2, matching parity_expectation in interferometer.hpp):
/// Tr[rho_out (1 x (-1)^n)].  The MZI unitary conserves total photon
/// number, so only the total-number-diagonal blocks of rho contribute.
double parity_after_mzi(const FockOperator& rho, double phi);

/// Wigner function of a 1- or 2-mode density matrix at a phase point,
/// via the displaced-parity form W = (1/pi^2) Tr[rho D(xi) P D+(xi)]
/// (1/pi and a 2-vector for one mode).  Throws TailTooLarge if the
/// coherent displacement pushes significant mass past the cutoff.
double wigner_point(const FockOperator& rho, const Vec4& xi,
                    double eps_tail = kDefaultTailTol);

/// Single-mode overload (xi = (q, p)).
double wigner_point(const FockOperator& rho, double q, double p,
                    double eps_tail = kDefaultTailTol);

/// Heralded non-Gaussian two-mode squeezed thermal state as a weighted
/// ensemble of pure squeezing-ladder components.  `nmax` is the largest
/// Fock index kept per mode (dimension nmax + 1); `weight_floor` prunes
/// thermal input pairs of negligible weight (pruned mass is part of the
/// diagnosed trace deficit).
class HeraldedEnsemble {
  public:
    HeraldedEnsemble(double r_sq, double n_th, double tau, int m, int n,
                     int nmax, double weight_floor = 1e-13);

    /// Heralding success probability (total branch mass).
    double probability() const { return prob_; }

    /// Parity of mode 2 after the quadrature-point-biased MZI at phase
    /// phi; matches parity_after_mzi and parity_expectation.
    /// Throws NegligibleProbability if the branch is empty.
    double parity(double phi) const;

    /// Normalized Wigner function at a phase point.
    /// Throws NegligibleProbability if the branch is empty.
    double wigner(const Vec4& xi) const;

    /// Probability mass unaccounted for: thermal pairs below the weight
    /// floor, estimated squeezing-ladder mass beyond the cutoff, heralded
    /// amplitudes pushed past the cutoff, and entries pruned by the
    /// amplitude floor.  Values below the configured tail tolerance
    /// certify the cutoff for probability, parity and Wigner queries.
    double trace_deficit() const { return trace_deficit_; }

  private:
    struct Component {
        double weight;             // thermal input weight p_{j1} p_{j2}
        int n1_base, n2_base;      // ladder support: (n1_base + l, n2_base + l)
        std::vector<double> amp;   // heralded amplitudes, index l
    };

    int nmax_;
    double prob_ = 0.0;
    double trace_deficit_ = 0.0;
    std::vector<Component> comps_;
};

}  // namespace ngmzi
