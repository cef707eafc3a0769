#include "spinchan/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace spinchan {

namespace {

// Flip each row so its (first) largest-magnitude entry is positive.
void normalize_signs(Eigen::MatrixXd& modes) {
    for (Eigen::Index k = 0; k < modes.rows(); ++k) {
        Eigen::Index pivot = 0;
        modes.row(k).cwiseAbs().maxCoeff(&pivot);
        if (modes(k, pivot) < 0.0) {
            modes.row(k) = -modes.row(k);
        }
    }
}

// Ascending energies; exact ties broken by lexicographic row order so the
// result is deterministic even for degenerate spectra.
Spectrum sorted_spectrum(Eigen::VectorXd energies, Eigen::MatrixXd modes) {
    normalize_signs(modes);
    const int n = static_cast<int>(energies.size());
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        if (energies[a] != energies[b]) return energies[a] < energies[b];
        return std::lexicographical_compare(
            modes.row(a).data(), modes.row(a).data() + modes.cols(),
            modes.row(b).data(), modes.row(b).data() + modes.cols());
    });
    Spectrum out;
    out.energies.resize(n);
    out.modes.resize(n, modes.cols());
    for (int k = 0; k < n; ++k) {
        out.energies[k] = energies[order[k]];
        out.modes.row(k) = modes.row(order[k]);
    }
    return out;
}

}  // namespace

Spectrum diagonalize(const Eigen::MatrixXd& h) {
    if (h.rows() != h.cols() || h.rows() == 0) {
        throw std::invalid_argument("diagonalize: matrix must be square and nonempty");
    }
    if ((h - h.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
        throw std::invalid_argument("diagonalize: matrix is not symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("diagonalize: eigensolver failed to converge");
    }
    // Solver rows are site indices and columns eigenvectors; we keep rows = modes.
    return sorted_spectrum(solver.eigenvalues(), solver.eigenvectors().transpose());
}

Spectrum analytic_uniform_spectrum(int n_sites, double j) {
    if (n_sites < 2) {
        throw std::invalid_argument("analytic_uniform_spectrum: need at least 2 sites");
    }
    const double pi = std::numbers::pi;
    Eigen::VectorXd energies(n_sites);
    Eigen::MatrixXd modes(n_sites, n_sites);
    const double norm = std::sqrt(2.0 / (n_sites + 1));
    for (int k = 1; k <= n_sites; ++k) {
        energies[k - 1] = 2.0 * j * std::cos(pi * k / (n_sites + 1));
        for (int n = 1; n <= n_sites; ++n) {
            modes(k - 1, n - 1) = norm * std::sin(pi * k * n / (n_sites + 1));
        }
    }
    return sorted_spectrum(std::move(energies), std::move(modes));
}

Spectrum analytic_modulated_spectrum(int n_sites, double lambda) {
    if (n_sites < 2) {
        throw std::invalid_argument("analytic_modulated_spectrum: need at least 2 sites");
    }
    if (n_sites > 30) {
        throw std::out_of_range(
            "analytic_modulated_spectrum: recursion unstable beyond 30 sites; "
            "use diagonalize instead");
    }
    const int n = n_sites;
    Eigen::VectorXd energies(n);
    Eigen::MatrixXd modes(n, n);
    for (int k = 1; k <= n; ++k) {
        const double ek = (-n + 2 * k - 1) * lambda;
        energies[k - 1] = ek;
        Eigen::VectorXd c = Eigen::VectorXd::Zero(n);
        c[0] = 1.0;
        c[1] = ek * c[0] / (lambda * std::sqrt(1.0 * (n - 1)));
        for (int m = 3; m <= n; ++m) {
            c[m - 1] = (ek * c[m - 2] -
                        lambda * std::sqrt(double(m - 2) * (n - m + 2)) * c[m - 3]) /
                       (lambda * std::sqrt(double(m - 1) * (n - m + 1)));
        }
        modes.row(k - 1) = c / c.norm();
    }
    return sorted_spectrum(std::move(energies), std::move(modes));
}

Eigen::VectorXd eigenvector_population(const Spectrum& spectrum, int site) {
    if (site < 1 || site > spectrum.size()) {
        throw std::invalid_argument("eigenvector_population: site out of range");
    }
    return spectrum.modes.col(site - 1).cwiseAbs2();
}

double smallest_positive_eigenvalue(const Spectrum& spectrum, double tol) {
    if (tol < 0.0) {
        tol = 1e-9 * spectrum.energies.cwiseAbs().maxCoeff();
    }
    for (int k = 0; k < spectrum.size(); ++k) {
        if (spectrum.energies[k] > tol) {
            return spectrum.energies[k];
        }
    }
    throw std::runtime_error("smallest_positive_eigenvalue: no eigenvalue above tolerance");
}

}  // namespace spinchan
