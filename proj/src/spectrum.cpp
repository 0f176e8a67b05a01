#include "basket/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace basket {

namespace detail {

int jacobi_eigen(std::vector<double>& a, std::vector<double>& q, int d, int max_sweeps) {
    const auto nd = static_cast<size_t>(d);
    auto at = [&](int i, int j) -> double& { return a[static_cast<size_t>(i) * d + j]; };
    auto qt = [&](int i, int j) -> double& { return q[static_cast<size_t>(i) * d + j]; };

    double frob0 = 0.0;
    for (size_t k = 0; k < nd * nd; ++k) frob0 += a[k] * a[k];
    frob0 = std::sqrt(frob0);
    const double target = 1e-14 * frob0;

    for (int sweep = 1; sweep <= max_sweeps; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < d; ++i)
            for (int j = i + 1; j < d; ++j) off += 2.0 * at(i, j) * at(i, j);
        if (std::sqrt(off) <= target) return sweep - 1;

        for (int p = 0; p < d - 1; ++p) {
            for (int r = p + 1; r < d; ++r) {
                const double apr = at(p, r);
                if (apr == 0.0) continue;
                const double theta = (at(r, r) - at(p, p)) / (2.0 * apr);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double tau = s / (1.0 + c);

                const double app = at(p, p);
                const double arr = at(r, r);
                at(p, p) = app - t * apr;
                at(r, r) = arr + t * apr;
                at(p, r) = 0.0;
                at(r, p) = 0.0;
                for (int k = 0; k < d; ++k) {
                    if (k == p || k == r) continue;
                    const double akp = at(k, p);
                    const double akr = at(k, r);
                    at(k, p) = akp - s * (akr + tau * akp);
                    at(k, r) = akr + s * (akp - tau * akr);
                    at(p, k) = at(k, p);
                    at(r, k) = at(k, r);
                }
                for (int k = 0; k < d; ++k) {
                    const double qkp = qt(k, p);
                    const double qkr = qt(k, r);
                    qt(k, p) = qkp - s * (qkr + tau * qkp);
                    qt(k, r) = qkr + s * (qkp - tau * qkr);
                }
            }
        }
    }

    // final check after the last sweep
    double off = 0.0;
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) off += 2.0 * at(i, j) * at(i, j);
    if (std::sqrt(off) <= target) return max_sweeps;
    throw ConvergenceError("Jacobi eigensolver: off-diagonal norm not reduced in " +
                           std::to_string(max_sweeps) + " sweeps");
}

}  // namespace detail

namespace {

void normalise_column_sign(std::vector<double>& q, int d, int col) {
    int arg = 0;
    double best = -1.0;
    for (int i = 0; i < d; ++i) {
        const double v = std::fabs(q[static_cast<size_t>(i) * d + col]);
        if (v > best) {  // ties keep the lowest index
            best = v;
            arg = i;
        }
    }
    if (q[static_cast<size_t>(arg) * d + col] < 0.0)
        for (int i = 0; i < d; ++i) q[static_cast<size_t>(i) * d + col] *= -1.0;
}

bool column_lex_less(const std::vector<double>& q, int d, int ca, int cb) {
    for (int i = 0; i < d; ++i) {
        const double a = q[static_cast<size_t>(i) * d + ca];
        const double b = q[static_cast<size_t>(i) * d + cb];
        if (a != b) return a < b;
    }
    return false;
}

}  // namespace

std::vector<ColumnClass> classify_columns(std::span<const double> q, int d, double tau) {
    std::vector<ColumnClass> out(d);
    for (int k = 0; k < d; ++k) {
        bool all_pos = true, has_pos = false, has_neg = false;
        for (int i = 0; i < d; ++i) {
            const double v = q[static_cast<size_t>(i) * d + k];
            if (v > tau)
                has_pos = true;
            else
                all_pos = false;
            if (v < -tau) has_neg = true;
        }
        if (all_pos)
            out[k] = ColumnClass::AllPositive;
        else if (has_pos && has_neg)
            out[k] = ColumnClass::Mixed;
        else
            throw AssumptionViolation("eigenvector column " + std::to_string(k + 1) +
                                      " is neither strictly positive nor sign-mixed");
    }
    return out;
}

Spectrum eigendecompose(std::span<const double> sigma_mat, int d) {
    const auto nd = static_cast<size_t>(d);
    std::vector<double> a(sigma_mat.begin(), sigma_mat.end());
    std::vector<double> q(nd * nd, 0.0);
    for (int i = 0; i < d; ++i) q[nd * i + i] = 1.0;

    detail::jacobi_eigen(a, q, d, 50);

    std::vector<double> lambda(nd);
    for (int i = 0; i < d; ++i) lambda[i] = a[nd * i + i];

    for (int k = 0; k < d; ++k) normalise_column_sign(q, d, k);

    // order by eigenvalue descending, then snap each tie group (relative to
    // the largest eigenvalue) to its mean and sort it lexicographically by
    // column: degenerate eigenvalues come out exactly equal and the basis
    // within an eigenspace is deterministic
    const double lmax = *std::max_element(lambda.begin(), lambda.end());
    const double tie_tol = 1e-10 * std::max(1.0, std::fabs(lmax));
    std::vector<int> order(nd);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int ca, int cb) { return lambda[ca] > lambda[cb]; });
    for (size_t lo = 0; lo < nd;) {
        size_t hi = lo + 1;
        while (hi < nd && lambda[order[lo]] - lambda[order[hi]] <= tie_tol) ++hi;
        if (hi - lo > 1) {
            double mean = 0.0;
            for (size_t g = lo; g < hi; ++g) mean += lambda[order[g]];
            mean /= static_cast<double>(hi - lo);
            for (size_t g = lo; g < hi; ++g) lambda[order[g]] = mean;
            std::sort(order.begin() + lo, order.begin() + hi,
                      [&](int ca, int cb) { return column_lex_less(q, d, ca, cb); });
        }
        lo = hi;
    }

    Spectrum sp;
    sp.d = d;
    sp.eigenvalues.resize(nd);
    sp.eigenvectors.resize(nd * nd);
    for (int k = 0; k < d; ++k) {
        sp.eigenvalues[k] = lambda[order[k]];
        for (int i = 0; i < d; ++i)
            sp.eigenvectors[nd * i + k] = q[nd * i + order[k]];
    }

    const double l1 = sp.eigenvalues[0];
    for (double& ev : sp.eigenvalues) {
        if (ev < 0.0) {
            if (ev < -kSignTolerance * std::fabs(l1))
                throw DomainError("matrix has a significantly negative eigenvalue");
            ev = 0.0;
        }
    }

    // Classification can legitimately fail (zero entries, e.g. Sigma = I);
    // consumers that need boundary classes classify on demand and surface the
    // violation there.
    try {
        sp.column_class = classify_columns(sp.eigenvectors, d);
    } catch (const AssumptionViolation&) {
        sp.column_class.clear();
    }
    return sp;
}

Spectrum rank_one_spectrum(std::span<const double> xi) {
    const int d = static_cast<int>(xi.size());
    const auto nd = static_cast<size_t>(d);
    double nrm2 = 0.0;
    for (double v : xi) {
        if (!(v > 0.0)) throw DomainError("rank-one direction must be strictly positive");
        nrm2 += v * v;
    }
    const double nrm = std::sqrt(nrm2);

    Spectrum sp;
    sp.d = d;
    sp.eigenvalues.assign(nd, 0.0);
    sp.eigenvalues[0] = nrm2;
    sp.eigenvectors.assign(nd * nd, 0.0);

    // Householder reflection mapping e_1 to xi/|xi|: its columns are an
    // orthonormal basis whose first column is the eigenvector. The result of
    // a reduced solve depends on the completion only through I - q q^T.
    std::vector<double> u(nd);
    for (int i = 0; i < d; ++i) u[i] = xi[i] / nrm;
    u[0] -= 1.0;
    double un2 = 0.0;
    for (double v : u) un2 += v * v;
    if (un2 < 1e-30) {
        for (int i = 0; i < d; ++i) sp.eigenvectors[nd * i + i] = 1.0;
    } else {
        for (int i = 0; i < d; ++i)
            for (int k = 0; k < d; ++k)
                sp.eigenvectors[nd * i + k] = (i == k ? 1.0 : 0.0) - 2.0 * u[i] * u[k] / un2;
    }

    sp.column_class.assign(nd, ColumnClass::Mixed);  // completion columns are never active
    sp.column_class[0] = ColumnClass::AllPositive;
    return sp;
}

}  // namespace basket
