// dynamics.hpp — density-matrix evolution under intrinsic decoherence,
// with two independent oracle routes for cross-validation

#pragma once

#include <Eigen/Dense>

#include "spinchan/spectral.hpp"

namespace spinchan {

// Density-matrix coefficients b_{nm} over the one-excitation site basis.
struct StateH1 {
    Eigen::MatrixXcd b;
    double time{0.0};
    double gamma{0.0};
};

// cos(theta/2)|vacuum> + e^{i phi} sin(theta/2)|site s>, sites 1-based.
struct PureInput {
    int s{1};
    double theta{0.0};
    double phi{0.0};
};

// Vacuum + one-excitation sector state produced by evolving a PureInput:
// a_{nm} are the excited-sector coefficients, b_n the vacuum coherences,
// and vacuum_weight = cos^2(theta/2).
struct StateH01 {
    Eigen::MatrixXcd a;
    Eigen::VectorXcd b;
    double vacuum_weight{1.0};
    PureInput input;
    double time{0.0};
    double gamma{0.0};
};

// ------------------------------ initial states -------------------------------

// |site><site| in the one-excitation sector.
StateH1 site_state(int n_sites, int site);

// rho = psi psi^dagger for a one-excitation amplitude vector (normalized here).
StateH1 pure_state_h1(const Eigen::VectorXcd& amplitudes);

// --------------------------- eigenbasis propagator ----------------------------

// Exact propagator: coherences between eigenstates k, k' pick up
// exp(-i t (E_k - E_k') - (gamma t / 2)(E_k - E_k')^2); gamma = 0 is unitary.
StateH1 evolve_h1(const Spectrum& spectrum, const StateH1& rho0, double gamma, double t);

// Same propagator for a Bloch-sphere input in the vacuum + one-excitation
// sector; the vacuum sits at energy 0, so b_n(t) = sum_k c_{k,s} c_{k,n}
// exp(-i t E_k - (gamma t / 2) E_k^2).
StateH01 evolve_h01(const Spectrum& spectrum, const PureInput& input, double gamma, double t);

// ------------------------------ oracle routes ---------------------------------

struct KrausResult {
    Eigen::MatrixXcd rho;
    double completeness_defect{0.0};  // max |sum_l M_l^dag M_l - I|
    int terms{0};
};

// Operator-sum route: M_l = (gamma t)^{l/2} H^l exp(-iHt) exp(-gamma t H^2/2)/sqrt(l!),
// summed term by term in the eigenbasis of H until the completeness defect
// drops below 1e-10 (or l_max terms when l_max >= 0). Runs its own
// eigendecomposition and shares no code with evolve_h1.
KrausResult kraus_oracle(const Eigen::MatrixXd& h, const Eigen::MatrixXcd& rho0,
                         double gamma, double t, int l_max = -1);

// Differential route: fixed-step RK4 on
// d rho/dt = -i[H, rho] - (gamma/2)[H, [H, rho]].
// dt < 0 selects 1e-3 scaled by the inverse spectral width; throws if the
// trace drifts by more than 1e-8.
Eigen::MatrixXcd master_equation_oracle(const Eigen::MatrixXd& h, const Eigen::MatrixXcd& rho0,
                                        double gamma, double t, double dt = -1.0);

// ------------------------------- conveniences ---------------------------------

// sqrt of the site population: sqrt(b_ii) resp. sqrt(a_ii sin^2(theta/2)).
double site_amplitude(const StateH1& state, int site);
double site_amplitude(const StateH01& state, int site);

// tr rho^2 of the one-excitation state.
double purity(const StateH1& state);

}  // namespace spinchan
