#include "spinchan/dynamics.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <stdexcept>

namespace spinchan {

namespace {

using namespace std::complex_literals;

void check_evolution_args(double gamma, double t, const char* who) {
    if (gamma < 0.0) {
        throw std::invalid_argument(std::string(who) + ": decoherence rate must be >= 0");
    }
    if (t < 0.0) {
        throw std::invalid_argument(std::string(who) + ": time must be >= 0");
    }
}

void check_density(const Eigen::MatrixXcd& rho, const char* who) {
    if (rho.rows() != rho.cols() || rho.rows() == 0) {
        throw std::invalid_argument(std::string(who) + ": density matrix must be square");
    }
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
        throw std::invalid_argument(std::string(who) + ": density matrix not Hermitian");
    }
    if (std::abs(rho.trace() - 1.0) > 1e-10) {
        throw std::invalid_argument(std::string(who) + ": density matrix trace is not 1");
    }
}

// Damped-phase factor between two energy levels.
std::complex<double> decay_phase(double de, double gamma, double t) {
    return std::exp(std::complex<double>(-0.5 * gamma * t * de * de, -t * de));
}

}  // namespace

// ------------------------------ initial states -------------------------------

StateH1 site_state(int n_sites, int site) {
    if (site < 1 || site > n_sites) {
        throw std::invalid_argument("site_state: site out of range");
    }
    StateH1 state;
    state.b = Eigen::MatrixXcd::Zero(n_sites, n_sites);
    state.b(site - 1, site - 1) = 1.0;
    return state;
}

StateH1 pure_state_h1(const Eigen::VectorXcd& amplitudes) {
    const double norm = amplitudes.norm();
    if (norm == 0.0) {
        throw std::invalid_argument("pure_state_h1: zero amplitude vector");
    }
    const Eigen::VectorXcd psi = amplitudes / norm;
    StateH1 state;
    state.b = psi * psi.adjoint();
    return state;
}

// --------------------------- eigenbasis propagator ----------------------------

StateH1 evolve_h1(const Spectrum& spectrum, const StateH1& rho0, double gamma, double t) {
    check_evolution_args(gamma, t, "evolve_h1");
    check_density(rho0.b, "evolve_h1");
    if (rho0.b.rows() != spectrum.size()) {
        throw std::invalid_argument("evolve_h1: state and spectrum dimensions differ");
    }
    const Eigen::MatrixXd& m = spectrum.modes;
    Eigen::MatrixXcd a = m * rho0.b * m.transpose();  // eigenbasis coefficients
    const int n = spectrum.size();
    for (int k = 0; k < n; ++k) {
        for (int q = 0; q < n; ++q) {
            a(k, q) *= decay_phase(spectrum.energies[k] - spectrum.energies[q], gamma, t);
        }
    }
    StateH1 out;
    out.b = m.transpose() * a * m;
    out.time = rho0.time + t;
    out.gamma = gamma;
    return out;
}

StateH01 evolve_h01(const Spectrum& spectrum, const PureInput& input, double gamma, double t) {
    check_evolution_args(gamma, t, "evolve_h01");
    const int n = spectrum.size();
    if (input.s < 1 || input.s > n) {
        throw std::invalid_argument("evolve_h01: input site out of range");
    }
    const Eigen::VectorXd weight =
        spectrum.modes.col(input.s - 1);  // c_{k,s} over k
    StateH01 out;
    out.input = input;
    out.vacuum_weight = std::cos(input.theta / 2) * std::cos(input.theta / 2);
    out.time = t;
    out.gamma = gamma;

    out.b = Eigen::VectorXcd::Zero(n);
    for (int k = 0; k < n; ++k) {
        const std::complex<double> phase = decay_phase(spectrum.energies[k], gamma, t);
        out.b += weight[k] * phase * spectrum.modes.row(k).transpose().cast<std::complex<double>>();
    }

    Eigen::MatrixXcd a_eigen(n, n);
    for (int k = 0; k < n; ++k) {
        for (int q = 0; q < n; ++q) {
            a_eigen(k, q) = weight[k] * weight[q] *
                            decay_phase(spectrum.energies[k] - spectrum.energies[q], gamma, t);
        }
    }
    out.a = spectrum.modes.transpose() * a_eigen * spectrum.modes;
    return out;
}

// ------------------------------ oracle routes ---------------------------------

KrausResult kraus_oracle(const Eigen::MatrixXd& h, const Eigen::MatrixXcd& rho0,
                         double gamma, double t, int l_max) {
    check_evolution_args(gamma, t, "kraus_oracle");
    check_density(rho0, "kraus_oracle");
    if (h.rows() != rho0.rows()) {
        throw std::invalid_argument("kraus_oracle: dimensions differ");
    }
    constexpr double kDefectGoal = 1e-10;
    constexpr int kHardCap = 200;
    const int cap = l_max >= 0 ? l_max : kHardCap;
    const int n = static_cast<int>(h.rows());

    // Every operator in the family M_l = (gamma t)^{l/2} H^l e^{-iHt}
    // e^{-gamma t H^2/2}/sqrt(l!) is diagonal in the eigenbasis of H, with
    // entries m_l(E) = sqrt((gamma t E^2)^l/l!) e^{-iEt} e^{-gamma t E^2/2}.
    // Assemble the sum there: a site-basis product chain amplifies rounding
    // error by e^{gamma t E^2/2}, which dwarfs the defect goal for the times
    // this oracle has to certify.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("kraus_oracle: eigensolver failed to converge");
    }
    const Eigen::MatrixXd& basis = solver.eigenvectors();  // columns are modes
    const Eigen::VectorXd& energy = solver.eigenvalues();
    const Eigen::MatrixXcd rho_eig = basis.transpose() * rho0 * basis;

    Eigen::VectorXcd mode(n);
    for (int k = 0; k < n; ++k) {
        mode[k] = std::exp(std::complex<double>(-0.5 * gamma * t * energy[k] * energy[k],
                                                -t * energy[k]));
    }

    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(n, n);
    Eigen::VectorXd completeness = Eigen::VectorXd::Zero(n);

    KrausResult result;
    for (int l = 0; l <= cap; ++l) {
        rho += (mode * mode.adjoint()).cwiseProduct(rho_eig);
        completeness += mode.cwiseAbs2();
        result.terms = l + 1;
        result.completeness_defect = (completeness.array() - 1.0).abs().maxCoeff();
        if (result.completeness_defect < kDefectGoal) {
            break;
        }
        // next diagonal: m_{l+1}(E) = sqrt(gamma t / (l+1)) E m_l(E)
        mode = std::sqrt(gamma * t / (l + 1)) * energy.asDiagonal() * mode;
    }
    if (result.completeness_defect >= kDefectGoal) {
        // terms needed grow with the largest gamma*t*E^2
        const double top = energy.cwiseAbs().maxCoeff();
        const double scale = gamma * t * top * top;
        char defect[32];
        std::snprintf(defect, sizeof defect, "%.3e", result.completeness_defect);
        throw std::runtime_error(
            "kraus_oracle: truncation insufficient at " + std::to_string(result.terms) +
            " terms (defect " + defect + "); need roughly " +
            std::to_string(static_cast<int>(scale + 10 * std::sqrt(scale) + 10)) + " terms");
    }
    result.rho = basis * rho * basis.transpose();
    return result;
}

Eigen::MatrixXcd master_equation_oracle(const Eigen::MatrixXd& h, const Eigen::MatrixXcd& rho0,
                                        double gamma, double t, double dt) {
    check_evolution_args(gamma, t, "master_equation_oracle");
    check_density(rho0, "master_equation_oracle");
    if (h.rows() != rho0.rows()) {
        throw std::invalid_argument("master_equation_oracle: dimensions differ");
    }
    if (dt <= 0.0) {
        const double spectral_width = std::max(1.0, h.cwiseAbs().rowwise().sum().maxCoeff());
        dt = 1e-3 / spectral_width;
    }
    const Eigen::MatrixXcd hc = h.cast<std::complex<double>>();
    const auto flow = [&](const Eigen::MatrixXcd& rho) -> Eigen::MatrixXcd {
        const Eigen::MatrixXcd comm = hc * rho - rho * hc;
        const Eigen::MatrixXcd comm2 = hc * comm - comm * hc;
        return -1i * comm - 0.5 * gamma * comm2;
    };

    Eigen::MatrixXcd rho = rho0;
    const long steps = std::max(1L, std::lround(std::ceil(t / dt)));
    const double step = t / static_cast<double>(steps);
    if (t == 0.0) {
        return rho;
    }
    for (long i = 0; i < steps; ++i) {
        const Eigen::MatrixXcd k1 = flow(rho);
        const Eigen::MatrixXcd k2 = flow(rho + 0.5 * step * k1);
        const Eigen::MatrixXcd k3 = flow(rho + 0.5 * step * k2);
        const Eigen::MatrixXcd k4 = flow(rho + step * k3);
        rho += (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    if (std::abs(rho.trace() - rho0.trace()) > 1e-8) {
        throw std::runtime_error("master_equation_oracle: trace drift exceeds 1e-8; "
                                 "reduce the step size");
    }
    return rho;
}

// ------------------------------- conveniences ---------------------------------

double site_amplitude(const StateH1& state, int site) {
    if (site < 1 || site > state.b.rows()) {
        throw std::invalid_argument("site_amplitude: site out of range");
    }
    return std::sqrt(std::max(0.0, state.b(site - 1, site - 1).real()));
}

double site_amplitude(const StateH01& state, int site) {
    if (site < 1 || site > state.a.rows()) {
        throw std::invalid_argument("site_amplitude: site out of range");
    }
    const double excited = 1.0 - state.vacuum_weight;  // sin^2(theta/2)
    return std::sqrt(std::max(0.0, state.a(site - 1, site - 1).real() * excited));
}

double purity(const StateH1& state) {
    return (state.b * state.b).trace().real();
}

}  // namespace spinchan
