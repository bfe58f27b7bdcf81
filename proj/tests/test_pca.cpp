#include "doctest.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>

#include "oracles.hpp"
#include "pursuitlab/errors.hpp"
#include "pursuitlab/pca.hpp"
#include "pursuitlab/rng.hpp"

using namespace pursuitlab;

namespace {

Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    Matrix m(rows.size(), rows.begin()->size());
    std::size_t r = 0;
    for (const auto& row : rows) {
        std::size_t c = 0;
        for (double v : row) m(r, c++) = v;
        ++r;
    }
    return m;
}

Matrix random_matrix(std::size_t n, std::size_t d, std::uint64_t seed) {
    Xoshiro256StarStar rng(seed);
    Matrix m(n, d);
    for (double& v : m.data()) v = rng.uniform(-1, 1);
    return m;
}

Matrix centered(const Matrix& x) {
    Matrix c = x;
    for (std::size_t j = 0; j < x.cols(); ++j) {
        double s = 0;
        for (std::size_t i = 0; i < x.rows(); ++i) s += x(i, j);
        s /= static_cast<double>(x.rows());
        for (std::size_t i = 0; i < x.rows(); ++i) c(i, j) -= s;
    }
    return c;
}

double frob_sq(const Matrix& m) {
    double s = 0;
    for (double v : m.data()) s += v * v;
    return s;
}

void check_orthonormal(const PcaModel& m) {
    const auto k = m.n_components();
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) {
            double dot = 0;
            for (std::size_t j = 0; j < m.dim(); ++j) dot += m.components(a, j) * m.components(b, j);
            REQUIRE(std::abs(dot - (a == b ? 1.0 : 0.0)) < 1e-8);
        }
}

}  // namespace

TEST_CASE("jacobi eigensolver diagonalizes a small symmetric matrix") {
    const auto a = from_rows({{2, 1, 0}, {1, 2, 0}, {0, 0, 5}});
    auto e = jacobi_eigen(a);
    std::sort(e.values.begin(), e.values.end());
    CHECK(e.values[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(e.values[1] == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(e.values[2] == doctest::Approx(5.0).epsilon(1e-14));
}

TEST_CASE("rank-1 data") {
    const auto m = fit_pca(from_rows({{1, 1}, {2, 2}, {3, 3}}));
    REQUIRE(m.n_components() == 2);
    CHECK(m.eigenvalues[0] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(std::abs(m.eigenvalues[1]) < 1e-12);
    CHECK(m.components(0, 0) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
    CHECK(m.components(0, 1) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
    const auto ratio = m.explained_variance_ratio();
    CHECK(ratio[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(ratio[1]) < 1e-12);
    const auto p = pareto(m, 1);
    REQUIRE(p.size() == 1);
    CHECK(p[0].component == 0);
    CHECK(p[0].ratio == doctest::Approx(1.0));
    CHECK(p[0].cumulative == doctest::Approx(1.0));
}

TEST_CASE("isotropic data") {
    const auto m = fit_pca(from_rows({{1, 0}, {-1, 0}, {0, 1}, {0, -1}}));
    const auto ratio = m.explained_variance_ratio();
    CHECK(ratio[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(ratio[1] == doctest::Approx(0.5).epsilon(1e-12));
    const auto p = pareto(m, 2);
    REQUIRE(p.size() == 2);
    CHECK(p[0].cumulative == doctest::Approx(0.5));
    CHECK(p[1].component == 1);
    CHECK(p[1].cumulative == doctest::Approx(1.0));
}

TEST_CASE("eigenvalues match a dense reference solver") {
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        const auto x = random_matrix(50, 10, seed);
        const auto m = fit_pca(x);
        const auto cov = oracle::covariance(x);

        Eigen::MatrixXd c(10, 10);
        for (int i = 0; i < 10; ++i)
            for (int j = 0; j < 10; ++j) c(i, j) = cov(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(c);
        Eigen::VectorXd ref = es.eigenvalues().reverse();

        REQUIRE(m.n_components() == 10);
        for (int i = 0; i < 10; ++i) {
            CHECK(oracle::relative_error(m.eigenvalues[static_cast<std::size_t>(i)], ref(i)) < 1e-8);
            // Directions agree up to sign.
            const Eigen::VectorXd v = es.eigenvectors().col(9 - i);
            double dot = 0;
            for (int j = 0; j < 10; ++j) dot += v(j) * m.components(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
            CHECK(std::abs(std::abs(dot) - 1.0) < 1e-8);
        }
    }
}

TEST_CASE("variance, energy and orthonormality on both solver routes") {
    // 60 x 8 uses the covariance route, 12 x 40 the Gram route.
    for (const auto& [n, d] : {std::pair<std::size_t, std::size_t>{60, 8}, {12, 40}}) {
        CAPTURE(n);
        const auto x = random_matrix(n, d, 99 + n);
        const auto m = fit_pca(x);
        check_orthonormal(m);

        const auto cov = oracle::covariance(x);
        double trace = 0;
        for (std::size_t j = 0; j < d; ++j) trace += cov(j, j);
        double sum = 0;
        for (double l : m.eigenvalues) sum += l;
        CHECK(oracle::relative_error(sum, trace) < 1e-8);
        CHECK(std::is_sorted(m.eigenvalues.begin(), m.eigenvalues.end(), std::greater<>()));
        for (double l : m.eigenvalues) CHECK(l >= -1e-10);

        const auto proj = project(m, x, m.n_components());
        CHECK(oracle::relative_error(frob_sq(proj), frob_sq(centered(x))) < 1e-8);

        // Reconstruction from every component recovers the centered data.
        const auto xc = centered(x);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                double r = 0;
                for (std::size_t k = 0; k < m.n_components(); ++k) r += proj(i, k) * m.components(k, j);
                REQUIRE(std::abs(r - xc(i, j)) < 1e-8);
            }

        const auto ratio = m.explained_variance_ratio();
        double total = 0;
        for (double r : ratio) total += r;
        CHECK(std::abs(total - 1.0) < 1e-10);
        const auto p = pareto(m, m.n_components());
        CHECK(p.back().cumulative <= 1.0 + 1e-10);
    }
}

TEST_CASE("gram route agrees with the covariance route") {
    const auto x = random_matrix(10, 30, 5);
    const auto m = fit_pca(x);
    const auto cov = oracle::covariance(x);
    Eigen::MatrixXd c(30, 30);
    for (int i = 0; i < 30; ++i)
        for (int j = 0; j < 30; ++j) c(i, j) = cov(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(c);
    Eigen::VectorXd ref = es.eigenvalues().reverse();
    REQUIRE(m.n_components() == 9);  // rank N - 1 after centering
    for (std::size_t i = 0; i < 9; ++i) CHECK(oracle::relative_error(m.eigenvalues[i], ref(static_cast<Eigen::Index>(i))) < 1e-8);
}

TEST_CASE("sign convention and projection of the mean") {
    const auto x = random_matrix(30, 6, 11);
    const auto m = fit_pca(x);
    for (std::size_t k = 0; k < m.n_components(); ++k) {
        std::size_t arg = 0;
        for (std::size_t j = 1; j < m.dim(); ++j)
            if (std::abs(m.components(k, j)) > std::abs(m.components(k, arg))) arg = j;
        CHECK(m.components(k, arg) > 0);
    }
    Matrix mean_row(1, 6);
    for (std::size_t j = 0; j < 6; ++j) mean_row(0, j) = m.mean[j];
    const auto p = project(m, mean_row, 3);
    for (double v : p.data()) CHECK(std::abs(v) < 1e-10);
}

TEST_CASE("errors") {
    CHECK_THROWS_AS(fit_pca(Matrix(1, 3)), InsufficientDataError);
    CHECK_THROWS_AS(fit_pca(Matrix(5, 3, 2.0)), ZeroVarianceError);
    auto bad = random_matrix(5, 3, 1);
    bad(2, 1) = std::nan("");
    CHECK_THROWS_AS(fit_pca(bad), NumericError);

    const auto m = fit_pca(random_matrix(20, 4, 2));
    CHECK_THROWS_AS(project(m, Matrix(3, 5), 2), DataFormatError);
    CHECK_THROWS_AS(project(m, Matrix(3, 4), 0), ConfigError);
    CHECK_THROWS_AS(project(m, Matrix(3, 4), 5), ConfigError);
}

TEST_CASE("fitting is deterministic") {
    const auto x = random_matrix(40, 12, 8);
    const auto a = fit_pca(x);
    const auto b = fit_pca(x);
    CHECK(a.components == b.components);
    CHECK(a.eigenvalues == b.eigenvalues);
    CHECK(a.mean == b.mean);
}
