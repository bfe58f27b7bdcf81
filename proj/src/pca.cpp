#include "pursuitlab/pca.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "pursuitlab/errors.hpp"

namespace pursuitlab {

namespace {

double off_diagonal_norm_sq(const Matrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) s += a(i, j) * a(i, j);
    return s;
}

double frobenius_sq(const Matrix& a) {
    double s = 0.0;
    for (const double v : a.data()) s += v * v;
    return s;
}

Matrix centered(const Matrix& data, const std::vector<double>& mean) {
    Matrix xc(data.rows(), data.cols());
    for (std::size_t r = 0; r < data.rows(); ++r) {
        const auto src = data.row(r);
        auto dst = xc.row(r);
        for (std::size_t c = 0; c < data.cols(); ++c) dst[c] = src[c] - mean[c];
    }
    return xc;
}

// Largest-magnitude entry (first on ties) made positive.
void fix_sign(std::span<double> v) {
    std::size_t arg = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
        if (std::abs(v[i]) > std::abs(v[arg])) arg = i;
    if (v[arg] < 0.0)
        for (double& x : v) x = -x;
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Indices of `values` sorted descending; equal values keep their original order.
std::vector<std::size_t> descending_order(const std::vector<double>& values) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
    return order;
}

PcaModel assemble(std::vector<double> mean, const Matrix& directions,
                  const std::vector<double>& eigenvalues) {
    PcaModel model;
    model.mean = std::move(mean);
    const auto order = descending_order(eigenvalues);
    model.components = Matrix(order.size(), directions.cols());
    for (std::size_t k = 0; k < order.size(); ++k) {
        auto dst = model.components.row(k);
        const auto src = directions.row(order[k]);
        std::copy(src.begin(), src.end(), dst.begin());
        fix_sign(dst);
        model.eigenvalues.push_back(eigenvalues[order[k]]);
    }
    return model;
}

PcaModel fit_from_covariance(const Matrix& xc, std::vector<double> mean) {
    const std::size_t n = xc.rows();
    const std::size_t d = xc.cols();
    Matrix cov(d, d);
    for (std::size_t r = 0; r < n; ++r) {
        const auto x = xc.row(r);
        for (std::size_t i = 0; i < d; ++i) {
            const double xi = x[i];
            if (xi == 0.0) continue;
            auto ci = cov.row(i);
            for (std::size_t j = i; j < d; ++j) ci[j] += xi * x[j];
        }
    }
    const double scale = 1.0 / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i; j < d; ++j) {
            cov(i, j) *= scale;
            cov(j, i) = cov(i, j);
        }
    const SymmetricEigen eig = jacobi_eigen(std::move(cov));
    return assemble(std::move(mean), eig.vectors, eig.values);
}

PcaModel fit_from_gram(const Matrix& xc, std::vector<double> mean) {
    const std::size_t n = xc.rows();
    const std::size_t d = xc.cols();
    Matrix gram(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            gram(i, j) = dot(xc.row(i), xc.row(j));
            gram(j, i) = gram(i, j);
        }
    const SymmetricEigen eig = jacobi_eigen(std::move(gram));
    const auto order = descending_order(eig.values);
    const double top = std::max(0.0, eig.values[order.front()]);

    // Directions X_c^T u for the numerically nonzero eigenvalues, then a modified
    // Gram-Schmidt pass (in descending order) to restore exact orthonormality.
    std::vector<std::vector<double>> dirs;
    for (const std::size_t idx : order) {
        if (!(eig.values[idx] > 1e-12 * top)) break;
        std::vector<double> w(d, 0.0);
        const auto u = eig.vectors.row(idx);
        for (std::size_t r = 0; r < n; ++r) {
            const double ur = u[r];
            const auto x = xc.row(r);
            for (std::size_t c = 0; c < d; ++c) w[c] += ur * x[c];
        }
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& prev : dirs) {
                const double proj = dot(w, prev);
                for (std::size_t c = 0; c < d; ++c) w[c] -= proj * prev[c];
            }
        const double norm = std::sqrt(dot(w, w));
        if (!(norm > 0.0)) continue;
        for (double& v : w) v /= norm;
        dirs.push_back(std::move(w));
    }

    // Eigenvalues as Rayleigh quotients ||X_c w||^2 / (N-1) of the final directions.
    Matrix directions(dirs.size(), d);
    std::vector<double> values(dirs.size());
    for (std::size_t k = 0; k < dirs.size(); ++k) {
        std::copy(dirs[k].begin(), dirs[k].end(), directions.row(k).begin());
        double energy = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
            const double p = dot(xc.row(r), dirs[k]);
            energy += p * p;
        }
        values[k] = energy / static_cast<double>(n - 1);
    }
    return assemble(std::move(mean), directions, values);
}

}  // namespace

SymmetricEigen jacobi_eigen(Matrix a, int max_sweeps) {
    const std::size_t n = a.rows();
    if (a.cols() != n) throw NumericError("jacobi_eigen needs a square matrix");

    SymmetricEigen out;
    out.vectors = Matrix(n, n);
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, i) = 1.0;

    const double total = frobenius_sq(a);
    if (total == 0.0 || n == 1) {
        for (std::size_t i = 0; i < n; ++i) out.values.push_back(a(i, i));
        return out;
    }
    const double tol = 1e-30 * total;

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        if (off_diagonal_norm_sq(a) <= tol) break;
        out.sweeps = sweep + 1;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double app = a(p, p);
                const double aqq = a(q, q);
                // Negligible relative to both diagonal entries: annihilate without rotating.
                if (sweep > 3 && std::abs(apq) < 1e-18 * std::abs(app) &&
                    std::abs(apq) < 1e-18 * std::abs(aqq)) {
                    a(p, q) = a(q, p) = 0.0;
                    continue;
                }
                const double tau = (aqq - app) / (2.0 * apq);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::hypot(1.0, tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                auto row_p = a.row(p);
                auto row_q = a.row(q);
                for (std::size_t k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    const double akp = row_p[k];
                    const double akq = row_q[k];
                    row_p[k] = c * akp - s * akq;
                    row_q[k] = s * akp + c * akq;
                    a(k, p) = row_p[k];
                    a(k, q) = row_q[k];
                }
                a(p, p) = app - t * apq;
                a(q, q) = aqq + t * apq;
                a(p, q) = a(q, p) = 0.0;

                auto vp = out.vectors.row(p);
                auto vq = out.vectors.row(q);
                for (std::size_t k = 0; k < n; ++k) {
                    const double x = vp[k];
                    const double y = vq[k];
                    vp[k] = c * x - s * y;
                    vq[k] = s * x + c * y;
                }
            }
        }
    }
    if (off_diagonal_norm_sq(a) > tol * 1e6)
        throw NumericError("Jacobi eigensolver did not converge in " + std::to_string(max_sweeps) +
                           " sweeps");
    for (std::size_t i = 0; i < n; ++i) out.values.push_back(a(i, i));
    return out;
}

std::vector<double> PcaModel::explained_variance_ratio() const {
    double total = 0.0;
    for (const double v : eigenvalues) total += std::max(0.0, v);
    std::vector<double> ratios;
    ratios.reserve(eigenvalues.size());
    for (const double v : eigenvalues) ratios.push_back(total > 0.0 ? std::max(0.0, v) / total : 0.0);
    return ratios;
}

PcaModel fit_pca(const Matrix& data) {
    const std::size_t n = data.rows();
    const std::size_t d = data.cols();
    if (n < 2) throw InsufficientDataError("PCA needs at least 2 rows, got " + std::to_string(n));
    if (d < 1) throw InsufficientDataError("PCA needs at least 1 column");
    for (const double v : data.data())
        if (!std::isfinite(v)) throw NumericError("PCA input contains non-finite values");

    bool identical = true;
    for (std::size_t r = 1; r < n && identical; ++r)
        identical = std::equal(data.row(r).begin(), data.row(r).end(), data.row(0).begin());
    if (identical) throw ZeroVarianceError("PCA input has zero variance (all rows identical)");

    std::vector<double> mean(d, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
        const auto x = data.row(r);
        for (std::size_t c = 0; c < d; ++c) mean[c] += x[c];
    }
    for (double& m : mean) m /= static_cast<double>(n);

    const Matrix xc = centered(data, mean);
    return d <= n ? fit_from_covariance(xc, std::move(mean)) : fit_from_gram(xc, std::move(mean));
}

Matrix project(const PcaModel& model, const Matrix& data, std::size_t k) {
    if (data.cols() != model.dim())
        throw DataFormatError("projection input has " + std::to_string(data.cols()) +
                              " columns, model expects " + std::to_string(model.dim()));
    if (k < 1 || k > model.n_components())
        throw ConfigError("component count must lie in [1, " + std::to_string(model.n_components()) +
                          "], got " + std::to_string(k));
    Matrix out(data.rows(), k);
    std::vector<double> centered_row(model.dim());
    for (std::size_t r = 0; r < data.rows(); ++r) {
        const auto x = data.row(r);
        for (std::size_t c = 0; c < model.dim(); ++c) centered_row[c] = x[c] - model.mean[c];
        for (std::size_t j = 0; j < k; ++j) out(r, j) = dot(centered_row, model.components.row(j));
    }
    return out;
}

std::vector<ParetoEntry> pareto(const PcaModel& model, std::size_t k) {
    const auto ratios = model.explained_variance_ratio();
    k = std::min(k, ratios.size());
    std::vector<ParetoEntry> out;
    double cumulative = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        cumulative += ratios[i];
        out.push_back({i, ratios[i], cumulative});
    }
    return out;
}

}  // namespace pursuitlab
