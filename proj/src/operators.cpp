#include "basket/operators.hpp"

namespace basket {

std::vector<double> AxisOperator::boundary_source(double t) const {
    std::vector<double> g(size(), 0.0);
    g[0] = lower_coupling * lower_face_value(t);
    g[size() - 1] = upper_coupling * 0.0;
    return g;
}

AxisOperator assemble_axis_operator(const AxisGrid& grid, double lambda, double share_r,
                                    const TransformContext& ctx, ExerciseStyle style,
                                    int axis_column) {
    if (lambda < 0.0) throw DomainError("axis operator needs a nonnegative eigenvalue");
    if (ctx.spectrum.column_class.empty())
        throw AssumptionViolation("axis operator needs classified eigenvector columns");
    const int m = grid.size();

    AxisOperator op;
    op.matrix = Tridiagonal::zero(m);
    op.style = style;
    op.strike = ctx.strike;
    op.rate = ctx.rate;
    op.cls = ctx.spectrum.column_class[axis_column];

    for (int j = 0; j < m; ++j) {
        const double y = grid.nodes[j];
        const auto c = fd_coefficients(grid.gap(j), grid.gap(j + 1));
        const double diff = lambda * diffusion_profile(y);
        const double conv = lambda * convection_profile(y);

        const double lo = diff * c.second.lo + conv * c.first.lo;
        const double mid = diff * c.second.mid + conv * c.first.mid - share_r;
        const double hi = diff * c.second.hi + conv * c.first.hi;

        op.matrix.diag[j] = mid;
        if (j > 0) op.matrix.sub[j] = lo;
        if (j < m - 1) op.matrix.sup[j] = hi;
        if (j == 0) op.lower_coupling = lo;
        if (j == m - 1) op.upper_coupling = hi;
    }
    return op;
}

}  // namespace basket
