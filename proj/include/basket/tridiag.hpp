#pragma once

#include <span>
#include <vector>

#include "basket/errors.hpp"

namespace basket {

/// How batched kernels run. Serial is the reference implementation kept for
/// testing; Parallel uses OpenMP across independent grid lines and must give
/// bitwise-identical results regardless of the thread count.
enum class Exec { Serial, Parallel };

struct Tridiagonal {
    std::vector<double> sub;   // sub[0] unused
    std::vector<double> diag;
    std::vector<double> sup;   // sup[n-1] unused

    int size() const { return static_cast<int>(diag.size()); }
    static Tridiagonal zero(int n) {
        return {std::vector<double>(n, 0.0), std::vector<double>(n, 0.0),
                std::vector<double>(n, 0.0)};
    }
};

/// y = M x for a single vector.
void tridiag_apply(const Tridiagonal& m, std::span<const double> x, std::span<double> y);

/// LU factors of a tridiagonal matrix (Thomas, no pivoting).
/// lower holds the elimination multipliers, pivot the U diagonal; the U
/// superdiagonal equals the original sup.
struct TriLU {
    std::vector<double> lower;
    std::vector<double> pivot;
    std::vector<double> sup;

    int size() const { return static_cast<int>(pivot.size()); }
};

/// Throws SingularMatrixError on a (numerically) zero pivot.
TriLU lu_tridiagonal(const Tridiagonal& m);

/// Solves M x = rhs in place using precomputed factors.
void lu_solve_inplace(const TriLU& lu, std::span<double> x);

// ---------------------------------------------------------------------------
// Batched kernels on an m1 x ml plane stored as plane[j * m1 + i]:
// axis 0 is the contiguous index i, axis 1 the strided index j. Every system
// in a batch shares the same matrix/factors. These are the parallel core;
// each (i,j) output is computed independently, so the Parallel path is
// bitwise-identical to Serial.
// ---------------------------------------------------------------------------

/// out = M applied along axis 0 (one tridiagonal matvec per j-line).
void apply_axis0(const Tridiagonal& m, std::span<const double> plane, std::span<double> out,
                 int m1, int ml, Exec exec);

/// out = M applied along axis 1.
void apply_axis1(const Tridiagonal& m, std::span<const double> plane, std::span<double> out,
                 int m1, int ml, Exec exec);

/// In-place solve along axis 0 for all ml lines; lu.size() == m1.
void solve_axis0_inplace(const TriLU& lu, std::span<double> plane, int m1, int ml, Exec exec);

/// In-place solve along axis 1 for all m1 lines; lu.size() == ml.
/// Implemented as vectorised forward/backward sweeps over contiguous rows.
void solve_axis1_inplace(const TriLU& lu, std::span<double> plane, int m1, int ml, Exec exec);

}  // namespace basket
