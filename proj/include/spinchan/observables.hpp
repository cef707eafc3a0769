// observables.hpp — reduced density matrices, transfer fidelity, and concurrence

#pragma once

#include <Eigen/Dense>

#include "spinchan/dynamics.hpp"

namespace spinchan {

// Two-qubit reduced density matrix in the basis {|00>, |01>, |10>, |11>},
// where |01> puts the excitation on the second qubit of the pair.
using TwoQubitRDM = Eigen::Matrix4cd;

// Fidelity value together with the coherence phase alpha = arg(b_i) that
// produced it (alpha = 0 when there is no coherence to speak of).
struct FidelityReport {
    double fidelity{0.0};
    double alpha{0.0};
};

// ---------------------------- reduced density matrices ----------------------------

// One-excitation sector: rho_i = diag(1 - b_ii, b_ii).
Eigen::Matrix2cd single_qubit_rdm(const StateH1& state, int site);

// Vacuum + one-excitation sector: populations a_ii sin^2(theta/2) with the
// vacuum coherence b_i e^{i phi} sin(theta/2) cos(theta/2) off the diagonal.
Eigen::Matrix2cd single_qubit_rdm(const StateH01& state, int site);

// Pair state of sites (i, j): zero |11> block, central block
// [[b_jj, b_ji], [b_ij, b_ii]], and 1 - b_ii - b_jj on |00>.
TwoQubitRDM two_qubit_rdm(const StateH1& state, int i, int j);

// ---------------------------------- fidelities ------------------------------------

// Excitation-transfer fidelity F = b_{target,target}; the population must be
// real to 1e-12 (we do not take magnitudes silently).
double transfer_fidelity(const StateH1& state, int target);

// Input-state fidelity <psi_in| rho_i |psi_in> for the Bloch-sphere input the
// state was evolved from, plus the phase alpha = arg(b_i) in (-pi, pi].
FidelityReport fidelity_bloch(const StateH01& state, int site);

// Bloch-sphere average: Fbar = |b_i| cos(alpha)/3 + a_ii/6 + 1/2.
FidelityReport average_fidelity(const StateH01& state, int site);

// --------------------------------- concurrence ------------------------------------

// Wootters concurrence C = max{0, l1 - l2 - l3 - l4} from the square-rooted
// eigenvalues of R = rho (sy x sy) rho* (sy x sy); eigenvalues of R below
// -1e-10 are a contract violation, anything above is clipped to zero.
double concurrence(const TwoQubitRDM& rdm);

// Closed form for one-excitation pair states: C_ij = 2 |b_ij|.
double concurrence_fast(const StateH1& state, int i, int j);

}  // namespace spinchan
