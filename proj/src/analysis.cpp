// analysis.cpp — transfer-time optimization, coupling sweeps, and channel design

#include "spinchan/analysis.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include "spinchan/spectral.hpp"

namespace spinchan {

namespace {

// End-to-end transfer curves evaluated from a single diagonalization;
// O(N^2) per time sample, no eigensolves inside optimization loops.
class EndpointCurve {
  public:
    EndpointCurve(const ChannelSpec& spec, double gamma) : gamma_(gamma) {
        const Spectrum sp = diagonalize(build_hamiltonian(spec, Subspace::OneExcitation));
        energies_ = sp.energies;
        weights_.resize(sp.size());
        for (int k = 0; k < sp.size(); ++k) {
            weights_(k) = sp.modes(k, 0) * sp.modes(k, sp.size() - 1);
        }
    }

    // Population reaching the far end at time t from an excitation on site 1.
    double fidelity(double t) const {
        const int n = static_cast<int>(energies_.size());
        double value = weights_.squaredNorm();
        for (int k = 0; k < n; ++k) {
            for (int l = k + 1; l < n; ++l) {
                const double de = energies_(k) - energies_(l);
                value += 2.0 * weights_(k) * weights_(l) * std::cos(de * t)
                       * std::exp(-0.5 * gamma_ * t * de * de);
            }
        }
        return value;
    }

    // Bloch-sphere average fidelity at the far end. field_shift is a uniform
    // diagonal on top of the stored energies; it moves the vacuum coherence
    // phases but cancels out of every population term.
    double avg_fidelity(double t, double field_shift = 0.0) const {
        std::complex<double> b{0.0, 0.0};
        for (int k = 0; k < static_cast<int>(energies_.size()); ++k) {
            const double e = energies_(k) + field_shift;
            b += weights_(k) * std::exp(std::complex<double>(-0.5 * gamma_ * t * e * e, -e * t));
        }
        return b.real() / 3.0 + fidelity(t) / 6.0 + 0.5;
    }

  private:
    Eigen::VectorXd energies_;
    Eigen::VectorXd weights_;
    double gamma_;
};

bool is_end_coupled(Family family) {
    return family == Family::ModifiedA || family == Family::ModifiedB;
}

// Level splitting of the chain without any uniform field on it.
double splitting_of(const ChannelSpec& spec) {
    ChannelSpec bare = spec;
    bare.field_shift = 0.0;
    return smallest_positive_eigenvalue(
        diagonalize(build_hamiltonian(bare, Subspace::OneExcitation)));
}

double golden_section_max(const std::function<double(double)>& f, double a, double b,
                          double tol) {
    const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - ratio * (b - a);
    double d = a + ratio * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

void check_grid(const std::vector<double>& grid, const char* who) {
    if (grid.size() < 2) {
        throw std::invalid_argument(std::string(who) + ": grid needs at least 2 points");
    }
    for (size_t i = 1; i < grid.size(); ++i) {
        if (grid[i] <= grid[i - 1]) {
            throw std::invalid_argument(std::string(who) + ": grid must be strictly increasing");
        }
    }
}

}  // namespace

Parity parity_of(int n_sites) {
    return (n_sites % 2 == 1) ? Parity::Odd : Parity::Even;
}

// ------------------------------- maximization ---------------------------------

MaxResult maximize_on_grid(const std::function<double(double)>& f, double t_lo, double t_hi,
                           int coarse_points) {
    if (!(t_hi > t_lo)) {
        throw std::invalid_argument("maximize_on_grid: window is empty");
    }
    const int m = std::max(coarse_points, 2000);
    const double step = (t_hi - t_lo) / (m - 1);

    int best = 0;
    double best_value = f(t_lo);
    for (int i = 1; i < m; ++i) {
        const double value = f(t_lo + step * i);
        if (value > best_value) {
            best_value = value;
            best = i;
        }
    }

    MaxResult out;
    out.at_boundary = (best == 0 || best == m - 1);
    const double lo = t_lo + step * std::max(0, best - 1);
    const double hi = t_lo + step * std::min(m - 1, best + 1);
    out.t = golden_section_max(f, lo, hi, 1e-8);
    out.value = f(out.t);
    if (best_value > out.value) {  // guard against a flat bracket
        out.t = t_lo + step * best;
        out.value = best_value;
    }
    return out;
}

std::pair<double, double> default_search_window(const ChannelSpec& spec) {
    switch (spec.family) {
        case Family::Modulated:
        case Family::Multiarm:
            return {0.0, M_PI / spec.params.at("lambda")};
        case Family::ModifiedA:
        case Family::ModifiedB: {
            const double e0 = splitting_of(spec);
            const double t_c =
                (parity_of(spec.n_sites) == Parity::Odd) ? M_PI / e0 : M_PI / (2.0 * e0);
            return {0.0, 1.5 * t_c};
        }
        default:
            throw std::invalid_argument(
                "default_search_window: no first-revival window for this family");
    }
}

MaxResult optimal_transfer_time(const ChannelSpec& spec, double gamma, double t_lo, double t_hi,
                                TransferObservable observable) {
    const EndpointCurve curve(spec, gamma);
    if (observable == TransferObservable::Fidelity) {
        return maximize_on_grid([&](double t) { return curve.fidelity(t); }, t_lo, t_hi);
    }
    return maximize_on_grid([&](double t) { return curve.avg_fidelity(t); }, t_lo, t_hi);
}

MaxResult optimal_transfer_time(const ChannelSpec& spec, double gamma,
                                TransferObservable observable) {
    const auto [t_lo, t_hi] = default_search_window(spec);
    return optimal_transfer_time(spec, gamma, t_lo, t_hi, observable);
}

// ---------------------------------- sweeps -------------------------------------

SweepResult sweep_j0(Family family, int n_sites, double gamma, const std::vector<double>& j0_grid,
                     double coupling) {
    if (!is_end_coupled(family)) {
        throw std::invalid_argument("sweep_j0: family has no end coupling to sweep");
    }
    check_grid(j0_grid, "sweep_j0");
    if (j0_grid.front() <= 0.0) {
        throw std::invalid_argument("sweep_j0: end couplings must be positive");
    }

    SweepResult out;
    out.parameter_name = "j0";
    out.gamma = gamma;
    for (const double j0 : j0_grid) {
        const ChannelSpec spec = (family == Family::ModifiedA)
                                     ? modified_chain_a(n_sites, coupling, j0)
                                     : modified_chain_b(n_sites, coupling, j0);
        if (out.grid.empty()) {
            out.reference = spec;
        }
        const MaxResult best = optimal_transfer_time(spec, gamma);
        out.grid.push_back(j0);
        out.values.push_back(best.value);
        out.t_at_max.push_back(best.t);
    }
    return out;
}

// ---------------------------------- design -------------------------------------

DesignReport extract_design(const ChannelSpec& spec, double gamma) {
    if (!is_end_coupled(spec.family)) {
        throw std::invalid_argument("extract_design: expects a weakly end-coupled chain");
    }
    DesignReport report;
    report.e0 = splitting_of(spec);
    report.parity = parity_of(spec.n_sites);
    report.t_c =
        (report.parity == Parity::Odd) ? M_PI / report.e0 : M_PI / (2.0 * report.e0);

    const EndpointCurve curve(spec, gamma);
    report.fidelity_at_tc = curve.fidelity(report.t_c);
    const MaxResult best =
        maximize_on_grid([&](double t) { return curve.fidelity(t); }, 0.0, 1.5 * report.t_c);
    report.t_measured = best.t;
    report.fidelity_max = best.value;
    return report;
}

double approx_fidelity_limit(double e0, double gamma, double t, Parity parity) {
    if (e0 <= 0.0) {
        throw std::invalid_argument("approx_fidelity_limit: splitting must be positive");
    }
    if (gamma < 0.0 || t < 0.0) {
        throw std::invalid_argument("approx_fidelity_limit: gamma and t must be nonnegative");
    }
    const double fast = std::exp(-2.0 * gamma * e0 * e0 * t);
    if (parity == Parity::Even) {
        return 0.5 - 0.5 * fast * std::cos(2.0 * e0 * t);
    }
    const double slow = std::exp(-0.5 * gamma * e0 * e0 * t);
    return 0.375 + 0.125 * fast * std::cos(2.0 * e0 * t) - 0.5 * slow * std::cos(e0 * t);
}

double approx_avg_fidelity_limit(double e0, double gamma, double t, int n_sites) {
    if (n_sites < 2) {
        throw std::invalid_argument("approx_avg_fidelity_limit: need at least 2 sites");
    }
    if (e0 <= 0.0) {
        throw std::invalid_argument("approx_avg_fidelity_limit: splitting must be positive");
    }
    if (gamma < 0.0 || t < 0.0) {
        throw std::invalid_argument("approx_avg_fidelity_limit: gamma and t must be nonnegative");
    }
    const double fast = std::exp(-2.0 * gamma * e0 * e0 * t);
    const double slow = std::exp(-0.5 * gamma * e0 * e0 * t);
    if (n_sites % 2 == 0) {
        // The end coherence is purely imaginary, so only the population term
        // survives the Bloch average; its ceiling is the classical 2/3.
        const double population = 0.5 - 0.5 * fast * std::cos(2.0 * e0 * t);
        return population / 6.0 + 0.5;
    }
    const double population =
        0.375 + 0.125 * fast * std::cos(2.0 * e0 * t) - 0.5 * slow * std::cos(e0 * t);
    const double sign = (((n_sites - 1) / 2) % 2 == 0) ? 1.0 : -1.0;
    const double coherence = sign * 0.5 * (1.0 - slow * std::cos(e0 * t));
    return coherence / 3.0 + population / 6.0 + 0.5;
}

FieldResult optimize_field(const ChannelSpec& spec, double gamma,
                           const std::vector<double>& b_grid) {
    if (!is_end_coupled(spec.family)) {
        throw std::invalid_argument("optimize_field: expects a weakly end-coupled chain");
    }
    if (parity_of(spec.n_sites) != Parity::Even) {
        throw std::invalid_argument("optimize_field: field correction applies to even site counts");
    }
    check_grid(b_grid, "optimize_field");
    if (b_grid.front() >= 0.0 || b_grid.back() <= 0.0) {
        throw std::invalid_argument("optimize_field: grid must straddle zero");
    }

    ChannelSpec bare = spec;
    bare.field_shift = 0.0;
    const EndpointCurve curve(bare, gamma);
    const double e0 = splitting_of(spec);
    const double t_hi = 1.5 * M_PI / (2.0 * e0);

    const auto at_field = [&](double b) {
        return maximize_on_grid([&](double t) { return curve.avg_fidelity(t, 2.0 * b); }, 0.0,
                                t_hi);
    };

    FieldResult out;
    size_t best = 0;
    for (size_t i = 0; i < b_grid.size(); ++i) {
        const MaxResult peak = at_field(b_grid[i]);
        if (i == 0 || peak.value > out.fbar_max) {
            out = {b_grid[i], peak.value, peak.t};
            best = i;
        }
    }

    // One refinement pass between the winner's neighbors.
    const double lo = b_grid[best == 0 ? 0 : best - 1];
    const double hi = b_grid[std::min(b_grid.size() - 1, best + 1)];
    for (int i = 0; i < 61; ++i) {
        const double b = lo + (hi - lo) * i / 60.0;
        const MaxResult peak = at_field(b);
        if (peak.value > out.fbar_max) {
            out = {b, peak.value, peak.t};
        }
    }
    return out;
}

FieldResult optimize_field(const ChannelSpec& spec, double gamma) {
    if (!is_end_coupled(spec.family)) {
        throw std::invalid_argument("optimize_field: expects a weakly end-coupled chain");
    }
    const double e0 = splitting_of(spec);
    std::vector<double> grid(61);
    for (int i = 0; i < 61; ++i) {
        grid[static_cast<size_t>(i)] = -5.0 * e0 + 10.0 * e0 * i / 60.0;
    }
    return optimize_field(spec, gamma, grid);
}

}  // namespace spinchan
