#include <doctest.h>

#include <cmath>
#include <vector>

#include "basket/operators.hpp"
#include "basket/presets.hpp"

using namespace basket;

namespace {

TransformContext context_for(const BasketSpec& spec) {
    return make_context(spec, eigendecompose(covariance(spec), spec.d));
}

// dense m^2 x m^2 product of the two structured Kronecker factors
std::vector<double> kron_product(const Tridiagonal& t1, const Tridiagonal& tl, bool axis0_first) {
    const int m = t1.size();
    const int n = m * m;
    auto entry1 = [&](int i, int k) {
        if (i == k) return t1.diag[i];
        if (k == i - 1) return t1.sub[i];
        if (k == i + 1) return t1.sup[i];
        return 0.0;
    };
    auto entryl = [&](int j, int k) {
        if (j == k) return tl.diag[j];
        if (k == j - 1) return tl.sub[j];
        if (k == j + 1) return tl.sup[j];
        return 0.0;
    };
    // A1 = I (x) T1 acts on i, Al = Tl (x) I acts on j; their product has
    // entry ((i,j),(i',j')) = T1[i,i'] * Tl[j,j'] in either order
    std::vector<double> out(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int ip = 0; ip < m; ++ip)
                for (int jp = 0; jp < m; ++jp) {
                    const int row = j * m + i, col = jp * m + ip;
                    out[static_cast<size_t>(row) * n + col] =
                        axis0_first ? entry1(i, ip) * entryl(j, jp)
                                    : entryl(j, jp) * entry1(i, ip);
                }
    return out;
}

}  // namespace

TEST_SUITE("operators") {

TEST_CASE("zero eigenvalue and zero reaction give a zero operator") {
    const BasketSpec spec = make_preset("A", ExerciseStyle::European);
    const auto ctx = context_for(spec);
    const AxisGrid grid = build_axis_grid(21, 0.5);
    const auto op = assemble_axis_operator(grid, 0.0, 0.0, ctx, ExerciseStyle::European, 0);
    for (int j = 0; j < op.size(); ++j) {
        CHECK(op.matrix.diag[j] == 0.0);
        CHECK(op.matrix.sub[j] == 0.0);
        CHECK(op.matrix.sup[j] == 0.0);
    }
    CHECK(op.lower_coupling == 0.0);
    CHECK(op.upper_coupling == 0.0);
    const auto g = op.boundary_source(0.3);
    for (double v : g) CHECK(v == 0.0);
}

TEST_CASE("rows annihilate constants when the reaction share is zero") {
    const BasketSpec spec = make_preset("A", ExerciseStyle::European);
    const auto ctx = context_for(spec);
    const AxisGrid grid = build_axis_grid(33, 0.47);
    const auto op = assemble_axis_operator(grid, 0.7, 0.0, ctx, ExerciseStyle::European, 0);
    const int m = op.size();
    for (int j = 0; j < m; ++j) {
        double row = op.matrix.diag[j];
        row += (j > 0) ? op.matrix.sub[j] : op.lower_coupling;
        row += (j < m - 1) ? op.matrix.sup[j] : op.upper_coupling;
        CHECK(std::fabs(row) < 1e-7);  // derivative of a constant, scaled by 1/h^2
    }
}

TEST_CASE("set A axis 1 boundary source: lower-face row only, stencil weight times K e^{-rt}") {
    const BasketSpec spec = make_preset("A", ExerciseStyle::European);
    const auto ctx = context_for(spec);
    const auto y0 = s_to_y(spec.spot, spec.maturity, ctx);
    const AxisGrid grid = build_axis_grid(51, y0[0]);
    const double lambda1 = ctx.spectrum.eigenvalues[0];
    const auto op =
        assemble_axis_operator(grid, lambda1, spec.rate, ctx, ExerciseStyle::European, 0);

    // independent stencil evaluation at the first interior node
    const double y = grid.nodes[0];
    const auto c = fd_coefficients(grid.gap(0), grid.gap(1));
    const double want_coupling =
        lambda1 * (diffusion_profile(y) * c.second.lo + convection_profile(y) * c.first.lo);
    CHECK(op.lower_coupling == doctest::Approx(want_coupling).epsilon(1e-14));

    for (double t : {0.0, 0.4, 1.0}) {
        const auto g = op.boundary_source(t);
        CHECK(g[0] == doctest::Approx(want_coupling * spec.strike * std::exp(-spec.rate * t))
                          .epsilon(1e-14));
        for (int j = 1; j < op.size(); ++j) CHECK(g[j] == 0.0);
    }
}

TEST_CASE("quadratic exactness of the assembled rows") {
    const BasketSpec spec = make_preset("D", ExerciseStyle::European);
    const auto ctx = context_for(spec);
    const AxisGrid grid = build_axis_grid(40, 0.52);
    const double lambda = 0.31, share_r = 0.5 * spec.rate;
    const auto op =
        assemble_axis_operator(grid, lambda, share_r, ctx, ExerciseStyle::European, 0);

    const double c0 = 0.3, c1 = -1.1, c2 = 2.4;
    auto f = [&](double y) { return c0 + c1 * y + c2 * y * y; };
    const int m = op.size();
    std::vector<double> w(m);
    for (int j = 0; j < m; ++j) w[j] = f(grid.nodes[j]);
    std::vector<double> aw(m);
    tridiag_apply(op.matrix, w, aw);
    aw[0] += op.lower_coupling * f(0.0);
    aw[m - 1] += op.upper_coupling * f(1.0);

    for (int j = 0; j < m; ++j) {
        const double y = grid.nodes[j];
        const double want = lambda * (diffusion_profile(y) * 2.0 * c2 +
                                      convection_profile(y) * (c1 + 2.0 * c2 * y)) -
                            share_r * f(y);
        CHECK(aw[j] == doctest::Approx(want).epsilon(1e-10));
    }
}

TEST_CASE("American boundary source is constant in time") {
    const BasketSpec spec = make_preset("A", ExerciseStyle::American);
    const auto ctx = context_for(spec);
    const AxisGrid grid = build_axis_grid(25, 0.5);
    const auto op = assemble_axis_operator(grid, ctx.spectrum.eigenvalues[0], spec.rate, ctx,
                                           ExerciseStyle::American, 0);
    const auto g0 = op.boundary_source(0.0);
    for (double t : {0.1, 0.5, 1.0}) CHECK(op.boundary_source(t) == g0);
    CHECK(g0[0] == op.lower_coupling * spec.strike);
}

TEST_CASE("structured 2D factors commute exactly") {
    const BasketSpec spec = make_preset("A", ExerciseStyle::European);
    const auto ctx = context_for(spec);
    const AxisGrid g1 = build_axis_grid(6, 0.5);
    const AxisGrid gl = build_axis_grid(6, 0.45);
    const auto op1 = assemble_axis_operator(g1, ctx.spectrum.eigenvalues[0], 0.5 * spec.rate, ctx,
                                            ExerciseStyle::European, 0);
    const auto opl = assemble_axis_operator(gl, ctx.spectrum.eigenvalues[1], 0.5 * spec.rate, ctx,
                                            ExerciseStyle::European, 1);
    const auto ab = kron_product(op1.matrix, opl.matrix, true);
    const auto ba = kron_product(op1.matrix, opl.matrix, false);
    double max_diff = 0.0;
    for (size_t k = 0; k < ab.size(); ++k) max_diff = std::max(max_diff, std::fabs(ab[k] - ba[k]));
    CHECK(max_diff == 0.0);
}

TEST_CASE("classification is required for assembly") {
    const std::vector<double> eye = {1, 0, 0, 0, 1, 0, 0, 0, 1};
    Spectrum sp = eigendecompose(eye, 3);
    REQUIRE(sp.column_class.empty());
    BasketSpec spec;
    spec.d = 3;
    spec.strike = 1.0;
    spec.rate = 0.0;
    spec.maturity = 1.0;
    spec.sigmas = {0.1, 0.1, 0.1};
    spec.weights = {0.4, 0.3, 0.3};
    spec.spot = {1.0, 1.0, 1.0};
    const auto ctx = make_context(spec, std::move(sp));
    const AxisGrid grid = build_axis_grid(5, 0.5);
    CHECK_THROWS_AS(assemble_axis_operator(grid, 1.0, 0.0, ctx, ExerciseStyle::European, 0),
                    AssumptionViolation);
}

}  // TEST_SUITE
