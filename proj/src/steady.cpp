// steady.cpp — infinite-time limits, numeric and in closed form

#include "spinchan/steady.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

namespace spinchan {

namespace {

void check_min_sites(int n_sites, const char* who) {
    if (n_sites < 2) {
        throw std::invalid_argument(std::string(who) + ": need at least 2 sites");
    }
}

// Product of (2n-5)/(2n-4) over n = 3..last; empty when last < 3. The factors
// stay in (0, 1], so a plain running product is safe.
double endpair_product(int last) {
    double product = 1.0;
    for (int n = 3; n <= last; ++n) {
        product *= (2.0 * n - 5.0) / (2.0 * n - 4.0);
    }
    return product;
}

}  // namespace

SteadyResult numeric_steady_state(const Spectrum& spectrum, const StateH1& rho0, double tol) {
    const int n = spectrum.size();
    if (rho0.b.rows() != n || rho0.b.cols() != n) {
        throw std::invalid_argument("numeric_steady_state: state and spectrum sizes differ");
    }
    if ((rho0.b - rho0.b.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
        throw std::invalid_argument("numeric_steady_state: state is not Hermitian");
    }

    if (tol < 0.0) {
        tol = 1e-9 * (spectrum.energies(n - 1) - spectrum.energies(0));
    }

    // Eigenbasis coefficients; zero everything that decays, keep the rest.
    Eigen::MatrixXcd a = spectrum.modes * rho0.b * spectrum.modes.transpose();
    SteadyResult out;
    for (int k = 0; k < n; ++k) {
        for (int l = k + 1; l < n; ++l) {
            if (std::abs(spectrum.energies(k) - spectrum.energies(l)) > tol) {
                a(k, l) = 0.0;
                a(l, k) = 0.0;
            } else {
                out.degenerate_pairs.emplace_back(k, l);
            }
        }
    }

    out.state.b = spectrum.modes.transpose() * a * spectrum.modes;
    out.state.time = std::numeric_limits<double>::infinity();
    out.state.gamma = rho0.gamma;
    return out;
}

double steady_avg_fidelity_numeric(const Spectrum& spectrum, int s, int i, double tol) {
    const int n = spectrum.size();
    if (s < 1 || s > n || i < 1 || i > n) {
        throw std::invalid_argument("steady_avg_fidelity_numeric: site out of range");
    }
    if (tol < 0.0) {
        tol = 1e-9 * spectrum.energies.cwiseAbs().maxCoeff();
    }

    // Only modes at E = 0 keep a coherence with the vacuum.
    double b = 0.0;
    for (int k = 0; k < n; ++k) {
        if (std::abs(spectrum.energies(k)) <= tol) {
            b += spectrum.modes(k, s - 1) * spectrum.modes(k, i - 1);
        }
    }

    const SteadyResult limit = numeric_steady_state(spectrum, site_state(n, s));
    const double population = limit.state.b(i - 1, i - 1).real();
    return std::abs(b) / 3.0 + population / 6.0 + 0.5;
}

// ----------------------------- closed-form limits ------------------------------

double steady_fidelity_uniform(int n_sites) {
    check_min_sites(n_sites, "steady_fidelity_uniform");
    return 3.0 / (2.0 * (n_sites + 1));
}

double steady_avg_fidelity_uniform(int n_sites) {
    check_min_sites(n_sites, "steady_avg_fidelity_uniform");
    if (n_sites % 2 == 1) {
        return (6.0 * n_sites + 17.0) / (12.0 * n_sites + 12.0);
    }
    return (2.0 * n_sites + 3.0) / (4.0 * n_sites + 4.0);
}

double steady_fidelity_modulated(int n_sites) {
    check_min_sites(n_sites, "steady_fidelity_modulated");
    double log_value = (2.0 - 2.0 * n_sites) * std::log(2.0);
    for (int k = 2; k <= n_sites; ++k) {
        log_value += std::log(4.0 - 2.0 / (k - 1));
    }
    return std::exp(log_value);
}

double steady_concurrence_endpair(int n_sites, double c_init) {
    check_min_sites(n_sites, "steady_concurrence_endpair");
    if (c_init < 0.0 || c_init > 1.0) {
        throw std::invalid_argument("steady_concurrence_endpair: initial concurrence not in [0, 1]");
    }
    return c_init * endpair_product(n_sites);
}

double steady_concurrence_distribution(int n_sites) {
    check_min_sites(n_sites, "steady_concurrence_distribution");
    if (n_sites % 2 == 1) {
        return 0.0;
    }
    return endpair_product((n_sites + 4) / 2);
}

double steady_concurrence_multiarm(int l1, int l2, int n_arms) {
    if (l1 < 1 || l2 < 1) {
        throw std::invalid_argument("steady_concurrence_multiarm: arm lengths must be >= 1");
    }
    if (n_arms < 2) {
        throw std::invalid_argument("steady_concurrence_multiarm: need at least 2 output arms");
    }
    return 2.0 * steady_fidelity_modulated(l1 + l2 + 1) / n_arms;
}

}  // namespace spinchan
