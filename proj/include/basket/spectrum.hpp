#pragma once

#include <span>
#include <vector>

#include "basket/errors.hpp"

namespace basket {

enum class ColumnClass { AllPositive, Mixed };

/// Eigendecomposition of a covariance matrix with a deterministic ordering:
/// eigenvalues descending, each eigenvector flipped so its largest-magnitude
/// entry is positive, ties among (near-)equal eigenvalues broken by
/// lexicographic comparison of the normalised columns.
struct Spectrum {
    int d = 0;
    std::vector<double> eigenvalues;   // descending, tiny negatives clamped to 0
    std::vector<double> eigenvectors;  // d x d row-major, column k <-> eigenvalues[k]
    std::vector<ColumnClass> column_class;  // empty when no classification exists

    double q(int i, int k) const { return eigenvectors[static_cast<size_t>(i) * d + k]; }
};

/// Sign tolerance separating genuine zero entries from rounding noise in
/// unit-norm eigenvectors.
inline constexpr double kSignTolerance = 1e-10;

/// Classifies each column of a d x d orthogonal matrix: AllPositive when every
/// entry exceeds +tau, Mixed when entries of both signs (beyond tau) occur.
/// Throws AssumptionViolation for any column that is neither.
std::vector<ColumnClass> classify_columns(std::span<const double> q, int d,
                                          double tau = kSignTolerance);

/// Full decomposition of a symmetric d x d matrix (cyclic Jacobi sweeps).
/// Throws ConvergenceError if the off-diagonal norm does not fall below
/// 1e-14 * ||Sigma|| in the sweep budget, DomainError if an eigenvalue is more
/// negative than -1e-10 * lambda_1.
Spectrum eigendecompose(std::span<const double> sigma_mat, int d);

/// Spectrum of the rank-one matrix xi xi^T: single eigenvalue |xi|^2 with unit
/// eigenvector xi/|xi| (required strictly positive, hence AllPositive), padded
/// with an orthonormal completion for the zero eigenvalues.  The completion
/// columns are never active in a reduced solve; they are labelled Mixed.
Spectrum rank_one_spectrum(std::span<const double> xi);

namespace detail {
/// Cyclic Jacobi on a copy of `a` (row-major d x d); accumulates rotations in
/// `q`. Returns the number of sweeps used. Exposed for the sweep-budget test.
int jacobi_eigen(std::vector<double>& a, std::vector<double>& q, int d, int max_sweeps);
}  // namespace detail

}  // namespace basket
