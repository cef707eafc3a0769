// observables.cpp — reduced density matrices, transfer fidelity, and concurrence

#include "spinchan/observables.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace spinchan {

namespace {

using std::complex;

void check_site(int n_sites, int site, const char* who) {
    if (site < 1 || site > n_sites) {
        throw std::invalid_argument(std::string(who) + ": site out of range");
    }
}

// Map std::arg's [-pi, pi] onto the reported (-pi, pi].
double principal_phase(complex<double> z) {
    double alpha = std::arg(z);
    if (alpha <= -M_PI) alpha = M_PI;
    return alpha;
}

// Diagonal entries of evolved density matrices are real populations up to
// round-off; anything larger means the state is corrupt.
double real_population(complex<double> entry, const char* who) {
    if (std::abs(entry.imag()) > 1e-12) {
        throw std::invalid_argument(std::string(who) + ": population has an imaginary part");
    }
    return std::max(0.0, entry.real());
}

}  // namespace

// ---------------------------- reduced density matrices ----------------------------

Eigen::Matrix2cd single_qubit_rdm(const StateH1& state, int site) {
    check_site(static_cast<int>(state.b.rows()), site, "single_qubit_rdm");
    const double population = real_population(state.b(site - 1, site - 1), "single_qubit_rdm");
    Eigen::Matrix2cd rho = Eigen::Matrix2cd::Zero();
    rho(0, 0) = 1.0 - population;
    rho(1, 1) = population;
    return rho;
}

Eigen::Matrix2cd single_qubit_rdm(const StateH01& state, int site) {
    check_site(static_cast<int>(state.a.rows()), site, "single_qubit_rdm");
    const double s = std::sin(state.input.theta / 2.0);
    const double c = std::cos(state.input.theta / 2.0);
    const complex<double> phase{std::cos(state.input.phi), std::sin(state.input.phi)};
    const complex<double> coherence = state.b(site - 1) * phase * s * c;
    const double population =
        real_population(state.a(site - 1, site - 1), "single_qubit_rdm") * s * s;

    Eigen::Matrix2cd rho;
    rho(0, 0) = 1.0 - population;
    rho(0, 1) = std::conj(coherence);
    rho(1, 0) = coherence;
    rho(1, 1) = population;
    return rho;
}

TwoQubitRDM two_qubit_rdm(const StateH1& state, int i, int j) {
    const int n = static_cast<int>(state.b.rows());
    check_site(n, i, "two_qubit_rdm");
    check_site(n, j, "two_qubit_rdm");
    if (i == j) {
        throw std::invalid_argument("two_qubit_rdm: sites must be distinct");
    }

    const double pop_i = real_population(state.b(i - 1, i - 1), "two_qubit_rdm");
    const double pop_j = real_population(state.b(j - 1, j - 1), "two_qubit_rdm");

    TwoQubitRDM rho = TwoQubitRDM::Zero();
    rho(0, 0) = 1.0 - pop_i - pop_j;
    rho(1, 1) = pop_j;
    rho(1, 2) = state.b(j - 1, i - 1);
    rho(2, 1) = state.b(i - 1, j - 1);
    rho(2, 2) = pop_i;
    return rho;
}

// ---------------------------------- fidelities ------------------------------------

double transfer_fidelity(const StateH1& state, int target) {
    check_site(static_cast<int>(state.b.rows()), target, "transfer_fidelity");
    return real_population(state.b(target - 1, target - 1), "transfer_fidelity");
}

FidelityReport fidelity_bloch(const StateH01& state, int site) {
    check_site(static_cast<int>(state.a.rows()), site, "fidelity_bloch");
    const double s2 = std::pow(std::sin(state.input.theta / 2.0), 2);
    const double c2 = 1.0 - s2;
    const complex<double> b = state.b(site - 1);
    const double population = real_population(state.a(site - 1, site - 1), "fidelity_bloch");

    FidelityReport report;
    report.alpha = principal_phase(b);
    report.fidelity = c2 * (1.0 - population * s2 + 2.0 * std::abs(b) * s2 * std::cos(report.alpha))
                    + population * s2 * s2;
    return report;
}

FidelityReport average_fidelity(const StateH01& state, int site) {
    check_site(static_cast<int>(state.a.rows()), site, "average_fidelity");
    const complex<double> b = state.b(site - 1);
    const double population = real_population(state.a(site - 1, site - 1), "average_fidelity");

    FidelityReport report;
    report.alpha = principal_phase(b);
    report.fidelity = std::abs(b) * std::cos(report.alpha) / 3.0 + population / 6.0 + 0.5;
    return report;
}

// --------------------------------- concurrence ------------------------------------

double concurrence(const TwoQubitRDM& rdm) {
    if ((rdm - rdm.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
        throw std::invalid_argument("concurrence: density matrix is not Hermitian");
    }
    if (std::abs(rdm.trace() - 1.0) > 1e-10) {
        throw std::invalid_argument("concurrence: density matrix trace is not 1");
    }
    Eigen::SelfAdjointEigenSolver<TwoQubitRDM> psd(rdm, Eigen::EigenvaluesOnly);
    if (psd.eigenvalues().minCoeff() < -1e-10) {
        throw std::invalid_argument("concurrence: density matrix is not positive semidefinite");
    }

    // sigma_y x sigma_y flips the basis order and signs the middle states.
    TwoQubitRDM flip = TwoQubitRDM::Zero();
    flip(0, 3) = -1.0;
    flip(1, 2) = 1.0;
    flip(2, 1) = 1.0;
    flip(3, 0) = -1.0;
    const TwoQubitRDM r = rdm * flip * rdm.conjugate() * flip;

    Eigen::ComplexEigenSolver<TwoQubitRDM> solver(r, false);
    std::array<double, 4> roots{};
    for (int k = 0; k < 4; ++k) {
        const double eig = solver.eigenvalues()(k).real();
        if (eig < -1e-10) {
            throw std::invalid_argument("concurrence: spin-flipped product has a negative eigenvalue");
        }
        roots[static_cast<size_t>(k)] = std::sqrt(std::max(0.0, eig));
    }
    std::sort(roots.begin(), roots.end(), std::greater<double>());
    return std::max(0.0, roots[0] - roots[1] - roots[2] - roots[3]);
}

double concurrence_fast(const StateH1& state, int i, int j) {
    const int n = static_cast<int>(state.b.rows());
    check_site(n, i, "concurrence_fast");
    check_site(n, j, "concurrence_fast");
    if (i == j) {
        throw std::invalid_argument("concurrence_fast: sites must be distinct");
    }
    return 2.0 * std::abs(state.b(i - 1, j - 1));
}

}  // namespace spinchan
