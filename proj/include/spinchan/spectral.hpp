// spectral.hpp — eigensystems of the one-excitation Hamiltonians, analytic cross-checks

#pragma once

#include <Eigen/Dense>

namespace spinchan {

// Eigensystem in the convention used throughout: energies ascending, and
// row k of `modes` holds the coefficients of eigenvector k over the sites.
// Sign fixed per row: the (first) entry of largest magnitude is positive.
struct Spectrum {
    Eigen::VectorXd energies;
    Eigen::MatrixXd modes;

    int size() const { return static_cast<int>(energies.size()); }
};

// Dense symmetric eigensolve; throws if the input is not symmetric.
// Deterministic: identical input yields identical output.
Spectrum diagonalize(const Eigen::MatrixXd& h);

// Closed-form spectrum of the uniform chain:
// E_k = 2 J cos(pi k / (N+1)), c_{k,n} = sqrt(2/(N+1)) sin(pi k n / (N+1)),
// re-sorted and sign-normalized to the Spectrum convention.
Spectrum analytic_uniform_spectrum(int n_sites, double j);

// Closed-form spectrum of the modulated chain: equally spaced energies
// (-N + 2k - 1) lambda with eigenvectors from the three-term recursion,
// normalized per row. The recursion loses accuracy for large N; refuses
// n_sites > 30 (use diagonalize for the general path).
Spectrum analytic_modulated_spectrum(int n_sites, double lambda);

// |c_{k,site}|^2 over k (ascending energy); sums to 1 by completeness.
Eigen::VectorXd eigenvector_population(const Spectrum& spectrum, int site);

// Smallest eigenvalue strictly above tol; tol < 0 selects the default
// 1e-9 * max|E|. Throws if no eigenvalue qualifies.
double smallest_positive_eigenvalue(const Spectrum& spectrum, double tol = -1.0);

}  // namespace spinchan
