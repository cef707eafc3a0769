// steady.hpp — infinite-time limits, numeric and in closed form

#pragma once

#include <utility>
#include <vector>

#include "spinchan/dynamics.hpp"
#include "spinchan/spectral.hpp"

namespace spinchan {

// Infinite-time state plus the mode pairs whose coherences survive the limit.
struct SteadyResult {
    StateH1 state;
    std::vector<std::pair<int, int>> degenerate_pairs;  // (k, k'), k < k', 0-based modes
};

// Project the eigenbasis coefficients of rho0 onto |E_k - E_k'| <= tol:
// every other coherence decays for any gamma > 0, so the limit is
// gamma-independent. tol < 0 selects the default 1e-9 * max|E_k - E_k'|.
SteadyResult numeric_steady_state(const Spectrum& spectrum, const StateH1& rho0,
                                  double tol = -1.0);

// Infinite-time Bloch-sphere average fidelity for an excitation sent from
// site s and read at site i: |b_i|/3 + a_ii/6 + 1/2 with only zero-energy
// modes keeping a vacuum coherence. The magnitude convention assumes the
// receiver corrects the asymptotic phase.
double steady_avg_fidelity_numeric(const Spectrum& spectrum, int s, int i, double tol = -1.0);

// ----------------------------- closed-form limits ------------------------------

// Uniform chain, end-to-end excitation transfer: 3 / (2(N+1)).
double steady_fidelity_uniform(int n_sites);

// Uniform chain, Bloch-sphere average:
// (6N+17)/(12N+12) for odd N, (2N+3)/(4N+4) for even N; both tend to 1/2.
double steady_avg_fidelity_uniform(int n_sites);

// Modulated chain, end-to-end: 2^{2-2N} prod_{k=2}^{N} (4 - 2/(k-1)),
// evaluated in log space so large N does not underflow.
double steady_fidelity_modulated(int n_sites);

// Bell pair on sites (1, 2) of a modulated chain; the surviving end-pair
// concurrence is C_init * prod_{n=3}^{N} (2n-5)/(2n-4).
double steady_concurrence_endpair(int n_sites, double c_init);

// Bell pair between an uncoupled memory node and site 1 of a modulated
// chain, read between the node and the far end: 0 for odd N, the end-pair
// product truncated at n = (N+4)/2 for even N.
double steady_concurrence_distribution(int n_sites);

// Hub-and-arms network: 2 / n_arms times the effective-chain fidelity limit,
// with effective length l = l1 + l2 + 1.
double steady_concurrence_multiarm(int l1, int l2, int n_arms);

}  // namespace spinchan
