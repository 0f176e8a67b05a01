#include "basket/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace basket {

void tridiag_apply(const Tridiagonal& m, std::span<const double> x, std::span<double> y) {
    const int n = m.size();
    if (n == 1) {
        y[0] = m.diag[0] * x[0];
        return;
    }
    y[0] = m.diag[0] * x[0] + m.sup[0] * x[1];
    for (int i = 1; i < n - 1; ++i)
        y[i] = m.sub[i] * x[i - 1] + m.diag[i] * x[i] + m.sup[i] * x[i + 1];
    y[n - 1] = m.sub[n - 1] * x[n - 2] + m.diag[n - 1] * x[n - 1];
}

TriLU lu_tridiagonal(const Tridiagonal& m) {
    const int n = m.size();
    TriLU lu;
    lu.lower.assign(n, 0.0);
    lu.pivot.assign(n, 0.0);
    lu.sup = m.sup;

    double piv = m.diag[0];
    if (std::fabs(piv) < 1e-300) throw SingularMatrixError("zero pivot at row 0");
    lu.pivot[0] = piv;
    for (int i = 1; i < n; ++i) {
        const double l = m.sub[i] / lu.pivot[i - 1];
        lu.lower[i] = l;
        piv = m.diag[i] - l * m.sup[i - 1];
        if (std::fabs(piv) < 1e-300)
            throw SingularMatrixError("zero pivot at row " + std::to_string(i));
        lu.pivot[i] = piv;
    }
    return lu;
}

void lu_solve_inplace(const TriLU& lu, std::span<double> x) {
    const int n = lu.size();
    for (int i = 1; i < n; ++i) x[i] -= lu.lower[i] * x[i - 1];
    x[n - 1] /= lu.pivot[n - 1];
    for (int i = n - 2; i >= 0; --i) x[i] = (x[i] - lu.sup[i] * x[i + 1]) / lu.pivot[i];
}

// --------------------------------------------------------------------------
// axis 0: each of the ml lines is contiguous; one scalar kernel per line
// --------------------------------------------------------------------------

void apply_axis0(const Tridiagonal& m, std::span<const double> plane, std::span<double> out,
                 int m1, int ml, Exec exec) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (exec == Exec::Parallel)
#else
    (void)exec;
#endif
    for (int j = 0; j < ml; ++j)
        tridiag_apply(m, plane.subspan(static_cast<size_t>(j) * m1, m1),
                      out.subspan(static_cast<size_t>(j) * m1, m1));
}

void solve_axis0_inplace(const TriLU& lu, std::span<double> plane, int m1, int ml, Exec exec) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (exec == Exec::Parallel)
#else
    (void)exec;
#endif
    for (int j = 0; j < ml; ++j)
        lu_solve_inplace(lu, plane.subspan(static_cast<size_t>(j) * m1, m1));
}

// --------------------------------------------------------------------------
// axis 1: systems are strided; sweeps run over contiguous rows so the inner
// i-loop vectorises. Threads own disjoint i-ranges, every (i,j) is computed
// by the same arithmetic, hence bitwise equality with the serial path.
// --------------------------------------------------------------------------

namespace {

void apply_axis1_range(const Tridiagonal& m, const double* w, double* out, int m1, int ml,
                       int i0, int i1) {
    for (int j = 0; j < ml; ++j) {
        const double* row = w + static_cast<size_t>(j) * m1;
        const double* prev = row - m1;
        const double* next = row + m1;
        double* o = out + static_cast<size_t>(j) * m1;
        const double a = (j > 0) ? m.sub[j] : 0.0;
        const double b = m.diag[j];
        const double c = (j < ml - 1) ? m.sup[j] : 0.0;
        if (j == 0 && j == ml - 1) {
            for (int i = i0; i < i1; ++i) o[i] = b * row[i];
        } else if (j == 0) {
            for (int i = i0; i < i1; ++i) o[i] = b * row[i] + c * next[i];
        } else if (j == ml - 1) {
            for (int i = i0; i < i1; ++i) o[i] = a * prev[i] + b * row[i];
        } else {
            for (int i = i0; i < i1; ++i) o[i] = a * prev[i] + b * row[i] + c * next[i];
        }
    }
}

void solve_axis1_range(const TriLU& lu, double* w, int m1, int ml, int i0, int i1) {
    for (int j = 1; j < ml; ++j) {
        double* row = w + static_cast<size_t>(j) * m1;
        const double* prev = row - m1;
        const double l = lu.lower[j];
        for (int i = i0; i < i1; ++i) row[i] -= l * prev[i];
    }
    {
        double* row = w + static_cast<size_t>(ml - 1) * m1;
        const double piv = lu.pivot[ml - 1];
        for (int i = i0; i < i1; ++i) row[i] /= piv;
    }
    for (int j = ml - 2; j >= 0; --j) {
        double* row = w + static_cast<size_t>(j) * m1;
        const double* next = row + m1;
        const double c = lu.sup[j];
        const double piv = lu.pivot[j];
        for (int i = i0; i < i1; ++i) row[i] = (row[i] - c * next[i]) / piv;
    }
}

}  // namespace

void apply_axis1(const Tridiagonal& m, std::span<const double> plane, std::span<double> out,
                 int m1, int ml, Exec exec) {
#ifdef _OPENMP
    if (exec == Exec::Parallel) {
#pragma omp parallel
        {
            const int nt = omp_get_num_threads();
            const int tid = omp_get_thread_num();
            const int chunk = (m1 + nt - 1) / nt;
            const int i0 = std::min(tid * chunk, m1);
            const int i1 = std::min(i0 + chunk, m1);
            if (i0 < i1) apply_axis1_range(m, plane.data(), out.data(), m1, ml, i0, i1);
        }
        return;
    }
#else
    (void)exec;
#endif
    apply_axis1_range(m, plane.data(), out.data(), m1, ml, 0, m1);
}

void solve_axis1_inplace(const TriLU& lu, std::span<double> plane, int m1, int ml, Exec exec) {
#ifdef _OPENMP
    if (exec == Exec::Parallel) {
#pragma omp parallel
        {
            const int nt = omp_get_num_threads();
            const int tid = omp_get_thread_num();
            const int chunk = (m1 + nt - 1) / nt;
            const int i0 = std::min(tid * chunk, m1);
            const int i1 = std::min(i0 + chunk, m1);
            if (i0 < i1) solve_axis1_range(lu, plane.data(), m1, ml, i0, i1);
        }
        return;
    }
#else
    (void)exec;
#endif
    solve_axis1_range(lu, plane.data(), m1, ml, 0, m1);
}

}  // namespace basket
