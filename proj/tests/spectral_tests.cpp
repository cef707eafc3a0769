// spectral_tests.cpp — eigensolver conventions against the closed-form spectra

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "spinchan/channel.hpp"
#include "spinchan/spectral.hpp"

using namespace spinchan;

namespace {

double max_abs_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

// Mirror-symmetric chains have eigenvectors whose largest-magnitude entry is
// tied between two sites of opposite sign, so the sign pivot is a per-solver
// coin flip; compare rows up to an overall flip.
double max_mode_diff_up_to_sign(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    double worst = 0.0;
    for (Eigen::Index k = 0; k < a.rows(); ++k) {
        const double direct = (a.row(k) - b.row(k)).cwiseAbs().maxCoeff();
        const double flipped = (a.row(k) + b.row(k)).cwiseAbs().maxCoeff();
        worst = std::max(worst, std::min(direct, flipped));
    }
    return worst;
}

}  // namespace

TEST_CASE("diagonalize rejects bad input") {
    CHECK_THROWS_AS(diagonalize(Eigen::MatrixXd::Zero(2, 3)), std::invalid_argument);
    CHECK_THROWS_AS(diagonalize(Eigen::MatrixXd::Zero(0, 0)), std::invalid_argument);
    Eigen::MatrixXd skew(2, 2);
    skew << 0.0, 1.0, -1.0, 0.0;
    CHECK_THROWS_AS(diagonalize(skew), std::invalid_argument);
}

TEST_CASE("diagonalize returns ascending energies and orthonormal modes") {
    const Spectrum sp = diagonalize(build_hamiltonian(uniform_chain(7, 1.0),
                                                      Subspace::OneExcitation));
    for (int k = 1; k < sp.size(); ++k) {
        CHECK(sp.energies[k] >= sp.energies[k - 1]);
    }
    const Eigen::MatrixXd gram = sp.modes * sp.modes.transpose();
    CHECK(max_abs_diff(gram, Eigen::MatrixXd::Identity(7, 7)) < 1e-12);
    // sign convention: largest-magnitude entry of each row is positive
    for (int k = 0; k < sp.size(); ++k) {
        Eigen::Index pivot = 0;
        sp.modes.row(k).cwiseAbs().maxCoeff(&pivot);
        CHECK(sp.modes(k, pivot) > 0.0);
    }
}

TEST_CASE("diagonalize is deterministic") {
    const Eigen::MatrixXd h = build_hamiltonian(modulated_chain(9, 0.3),
                                                Subspace::OneExcitation);
    const Spectrum a = diagonalize(h);
    const Spectrum b = diagonalize(h);
    CHECK((a.energies - b.energies).cwiseAbs().maxCoeff() == 0.0);
    CHECK(max_abs_diff(a.modes, b.modes) == 0.0);
}

TEST_CASE("uniform spectrum matches 2J cos(pi k/(N+1)) with sine modes") {
    for (int n : {2, 3, 5, 8, 13, 20}) {
        const Spectrum numeric = diagonalize(
            build_hamiltonian(uniform_chain(n, 1.0), Subspace::OneExcitation));
        const Spectrum analytic = analytic_uniform_spectrum(n, 1.0);
        CHECK((numeric.energies - analytic.energies).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(max_mode_diff_up_to_sign(numeric.modes, analytic.modes) < 1e-8);
    }
    // a spot value: N = 3 has energies {-sqrt 2, 0, +sqrt 2}
    const Spectrum sp = analytic_uniform_spectrum(3, 1.0);
    CHECK(sp.energies[0] == doctest::Approx(-std::numbers::sqrt2).epsilon(1e-14));
    CHECK(sp.energies[1] == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(sp.energies[2] == doctest::Approx(std::numbers::sqrt2).epsilon(1e-14));
}

TEST_CASE("modulated spectrum is the equally spaced ladder (-N+2k-1) lambda") {
    for (int n : {2, 4, 7, 12, 20}) {
        const double lambda = 0.5;
        const Spectrum numeric = diagonalize(
            build_hamiltonian(modulated_chain(n, lambda), Subspace::OneExcitation));
        const Spectrum analytic = analytic_modulated_spectrum(n, lambda);
        for (int k = 1; k <= n; ++k) {
            const double expected = (-n + 2 * k - 1) * lambda;
            CHECK(numeric.energies[k - 1] == doctest::Approx(expected).epsilon(1e-9));
        }
        CHECK(max_mode_diff_up_to_sign(numeric.modes, analytic.modes) < 1e-8);
    }
    CHECK_THROWS_AS(analytic_modulated_spectrum(31, 1.0), std::out_of_range);
}

TEST_CASE("eigenvector populations per site sum to one") {
    const Spectrum sp = diagonalize(build_hamiltonian(modulated_chain(6, 1.0),
                                                      Subspace::OneExcitation));
    for (int site = 1; site <= 6; ++site) {
        const Eigen::VectorXd pop = eigenvector_population(sp, site);
        CHECK(pop.minCoeff() >= 0.0);
        CHECK(pop.sum() == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK_THROWS_AS(eigenvector_population(sp, 0), std::invalid_argument);
    CHECK_THROWS_AS(eigenvector_population(sp, 7), std::invalid_argument);
}

TEST_CASE("smallest positive eigenvalue picks out the weak-coupling splitting") {
    // modulated N=5: ladder {-4,-2,0,2,4}, smallest positive is 2 lambda
    const Spectrum sp = analytic_modulated_spectrum(5, 1.0);
    CHECK(smallest_positive_eigenvalue(sp) == doctest::Approx(2.0).epsilon(1e-12));

    const Spectrum weak = diagonalize(
        build_hamiltonian(modified_chain_a(7, 1.0, 0.01), Subspace::OneExcitation));
    const double e0 = smallest_positive_eigenvalue(weak);
    CHECK(e0 > 0.0);
    CHECK(e0 < 0.01);  // far below the interior scale

    Spectrum flat;
    flat.energies = Eigen::VectorXd::Zero(3);
    flat.modes = Eigen::MatrixXd::Identity(3, 3);
    CHECK_THROWS_AS(smallest_positive_eigenvalue(flat), std::runtime_error);
}
