#pragma once

// Principal component analysis on mean-centered data (no feature scaling).
//
// When D <= N the D x D sample covariance (divisor N-1) is diagonalized; when
// D > N the N x N Gram matrix of the centered data is diagonalized instead and
// the principal directions are recovered as X_c^T u. Both routes use the same
// cyclic Jacobi eigensolver, so results are bit-reproducible.

#include <cstddef>
#include <vector>

#include "pursuitlab/matrix.hpp"

namespace pursuitlab {

struct SymmetricEigen {
    std::vector<double> values;  ///< unsorted, in diagonal order
    Matrix vectors;              ///< row i is the eigenvector of values[i]
    int sweeps = 0;
};

/// Cyclic-by-row Jacobi eigendecomposition of a symmetric matrix.
SymmetricEigen jacobi_eigen(Matrix a, int max_sweeps = 100);

struct PcaModel {
    std::vector<double> mean;         ///< length D
    Matrix components;                ///< K x D, orthonormal rows, descending eigenvalue
    std::vector<double> eigenvalues;  ///< length K, non-increasing

    std::size_t dim() const { return mean.size(); }
    std::size_t n_components() const { return eigenvalues.size(); }

    /// lambda_i / sum(lambda), with tiny negative eigenvalues treated as zero.
    std::vector<double> explained_variance_ratio() const;
};

/// Throws InsufficientDataError for N < 2 and ZeroVarianceError when every row is identical.
PcaModel fit_pca(const Matrix& data);

/// (data - mean) * components[0..k)^T, an N x k matrix.
Matrix project(const PcaModel& model, const Matrix& data, std::size_t k);

struct ParetoEntry {
    std::size_t component = 0;
    double ratio = 0.0;
    double cumulative = 0.0;
};

std::vector<ParetoEntry> pareto(const PcaModel& model, std::size_t k);

}  // namespace pursuitlab
