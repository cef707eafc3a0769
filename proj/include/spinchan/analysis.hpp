// analysis.hpp — transfer-time optimization, coupling sweeps, and channel design

#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "spinchan/channel.hpp"

namespace spinchan {

enum class Parity { Odd, Even };

// Which end-to-end figure of merit an optimizer tracks: the excitation
// population at the far end, or its Bloch-sphere-averaged state fidelity.
enum class TransferObservable { Fidelity, AverageFidelity };

// Location and value of a one-dimensional maximum; at_boundary flags a
// coarse-grid winner on the window edge (the window was likely too small).
struct MaxResult {
    double t{0.0};
    double value{0.0};
    bool at_boundary{false};
};

// One-parameter sweep output plus enough context to reproduce it.
struct SweepResult {
    std::string parameter_name;
    std::vector<double> grid;
    std::vector<double> values;
    std::vector<double> t_at_max;
    ChannelSpec reference;  // channel at the first grid point; the swept entry varies
    double gamma{0.0};
};

// Spectral design summary of a weakly end-coupled chain: the small splitting
// e0 sets the transfer time t_c = pi/e0 (odd sites) or pi/(2 e0) (even),
// exact by construction; the measured argmax is reported alongside.
struct DesignReport {
    double e0{0.0};
    double t_c{0.0};
    Parity parity{Parity::Odd};
    double fidelity_at_tc{0.0};
    double t_measured{0.0};
    double fidelity_max{0.0};
};

// Best uniform field found by a scan, with the time realizing it.
struct FieldResult {
    double b_star{0.0};
    double fbar_max{0.0};
    double t_at_max{0.0};
};

Parity parity_of(int n_sites);

// ------------------------------- maximization ---------------------------------

// Deterministic global maximum over [t_lo, t_hi]: a coarse grid of at least
// 2000 points picks the bracket, golden-section refines it to 1e-8 in t.
MaxResult maximize_on_grid(const std::function<double(double)>& f, double t_lo, double t_hi,
                           int coarse_points = 2001);

// Window capturing the first transfer revival: [0, pi/lambda] for modulated
// (and multiarm) couplings, [0, 1.5 pi/e0] resp. [0, 1.5 pi/(2 e0)] for
// odd resp. even weakly end-coupled chains. Throws for other families.
std::pair<double, double> default_search_window(const ChannelSpec& spec);

// Time maximizing end-to-end transfer (site 1 -> site N) over the window.
MaxResult optimal_transfer_time(const ChannelSpec& spec, double gamma, double t_lo, double t_hi,
                                TransferObservable observable = TransferObservable::Fidelity);

// Same, over default_search_window(spec).
MaxResult optimal_transfer_time(const ChannelSpec& spec, double gamma,
                                TransferObservable observable = TransferObservable::Fidelity);

// ---------------------------------- sweeps -------------------------------------

// Maximum transfer fidelity of a weakly end-coupled chain as the end coupling
// j0 runs over a positive, strictly increasing grid; the interior coupling
// scale is fixed. Each point searches its own parity-scaled window.
SweepResult sweep_j0(Family family, int n_sites, double gamma, const std::vector<double>& j0_grid,
                     double coupling = 1.0);

// ---------------------------------- design -------------------------------------

// Read the design quantities off a weakly end-coupled chain: the splitting
// e0, the predicted t_c, and the simulated fidelity at and near it.
DesignReport extract_design(const ChannelSpec& spec, double gamma);

// Three-level closed form for the end-to-end fidelity of a weakly
// end-coupled chain with splitting e0.
double approx_fidelity_limit(double e0, double gamma, double t, Parity parity);

// Matching closed form for the Bloch-sphere average fidelity; n_sites fixes
// both the parity and the sign of the surviving end coherence.
double approx_avg_fidelity_limit(double e0, double gamma, double t, int n_sites);

// Scan a uniform field over b_grid (must straddle zero), maximizing the
// average transfer fidelity within the even-parity window for each value,
// then refine once around the winner. Any field already on the spec is
// ignored; grid entries are the candidate fields themselves.
FieldResult optimize_field(const ChannelSpec& spec, double gamma,
                           const std::vector<double>& b_grid);

// Same over the default grid: 61 points spanning [-5 e0, 5 e0].
FieldResult optimize_field(const ChannelSpec& spec, double gamma);

}  // namespace spinchan
