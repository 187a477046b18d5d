#pragma once

#include <vector>

#include "cvrep/density_matrix.hpp"
#include "cvrep/fock_state.hpp"

namespace cvrep {

/// Noiseless linear amplifier built from N quantum scissors with gain g.
struct NlaSpec {
    double gain = 1.0;
    int scissor_count = 1;

    bool valid() const { return gain > 0.0 && scissor_count >= 1; }
};

/// Dual-homodyne outcome beta = X_- + i P_+.
struct HomodyneOutcome {
    cdouble beta{0.0, 0.0};
};

/// Matrix elements <m|D(gamma)|n> of the displacement operator for
/// m, n <= cutoff, row-major. Rows are exact; only population that the
/// true operator sends above the cutoff is lost.
std::vector<cdouble> displacement_matrix(cdouble gamma, int cutoff);

/// D(gamma) applied to one mode.
FockKet apply_displacement(const FockKet& ket, int mode, cdouble gamma);

/// Beamsplitter of transmissivity eta on (mode_a, mode_b):
///   b_a^dag -> sqrt(eta) b_a^dag + sqrt(1-eta) b_b^dag
///   b_b^dag -> -sqrt(1-eta) b_a^dag + sqrt(eta) b_b^dag
FockKet apply_beamsplitter(const FockKet& ket, int mode_a, int mode_b, double eta);

/// Lossy channel of transmission eta on `mode`: beamsplit against a vacuum
/// ancilla and trace the ancilla out.
DensityMatrix apply_loss(const FockKet& ket, int mode, double eta);

/// Same channel but keeping the purifying ancilla, appended as the last mode.
FockKet apply_loss_pure(const FockKet& ket, int mode, double eta);

/// Projects modes (mode_a, mode_r) onto the dual-homodyne eigenstate
/// |beta> = (1/sqrt(pi)) sum_n D_a(beta) |n>_a |n>_r and removes them.
/// The returned ket is sub-normalized; its norm^2 is the outcome density.
FockKet dual_homodyne_project(const FockKet& ket, int mode_a, int mode_r, cdouble beta);

/// T_N = Pi_N g^n on `mode`: occupation n <= N scaled by
/// (g^2+1)^{-N/2} N! / ((N-n)! N^n) g^n, higher occupations zeroed.
FockKet apply_nla(const FockKet& ket, int mode, const NlaSpec& spec);

/// Physical single-scissor circuit on `mode`: a single-photon ancilla split
/// on a beamsplitter of ratio xi = 1/(g^2+1), a balanced beamsplitter mixing
/// the signal with one arm, and photon detection heralding on exactly one
/// pattern (one photon at the ancilla-side detector, zero at the signal-side
/// one). Returned amplitudes follow the T_1 = Pi_1 g^n normalization, under
/// which norm^2 counts both equivalent detector patterns; the accepted
/// pattern alone occurs with probability norm^2 / 2.
FockKet scissor_circuit(const FockKet& ket, int mode, double g);

/// xi = 1/(g^2+1).
double gain_to_splitting(double g);

/// Approximate NLA success probability 1/(g+1)^{2N}; an estimate only,
/// the exact heralding probability is state-dependent.
double nla_success_estimate(const NlaSpec& spec);

} // namespace cvrep
