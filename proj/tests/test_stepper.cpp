#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "basket/presets.hpp"
#include "basket/sampler.hpp"
#include "basket/stepper.hpp"

using namespace basket;

namespace {

struct ConstObstacle : ObstacleSource {
    int n1, nl;
    double value;
    ConstObstacle(int n1_, int nl_, double v) : n1(n1_), nl(nl_), value(v) {}
    int m1() const override { return n1; }
    int ml() const override { return nl; }
    void obstacle_into(std::span<double> out, double, Exec) const override {
        for (auto& v : out) v = value;
    }
};

AxisOperator plain_operator(Tridiagonal m) {
    AxisOperator op;
    op.matrix = std::move(m);
    op.cls = ColumnClass::Mixed;  // homogeneous boundary data
    op.style = ExerciseStyle::European;
    op.strike = 1.0;
    op.rate = 0.0;
    return op;
}

// lambda * second difference on the uniform interior grid of (0,1)
AxisOperator uniform_diffusion(int m, double lambda) {
    const double h = 1.0 / (m + 1);
    Tridiagonal t = Tridiagonal::zero(m);
    for (int i = 0; i < m; ++i) {
        t.diag[i] = -2.0 * lambda / (h * h);
        if (i > 0) t.sub[i] = lambda / (h * h);
        if (i < m - 1) t.sup[i] = lambda / (h * h);
    }
    return plain_operator(std::move(t));
}

// first sine mode: eigenvector of the uniform second difference
std::vector<double> sine_mode(int m) {
    const double h = 1.0 / (m + 1);
    std::vector<double> w(m);
    for (int i = 0; i < m; ++i) w[i] = std::sin(std::numbers::pi * (i + 1) * h);
    return w;
}

double sine_mode_rate(int m, double lambda) {
    const double h = 1.0 / (m + 1);
    const double s = std::sin(0.5 * std::numbers::pi * h);
    return -4.0 * lambda / (h * h) * s * s;
}

std::vector<double> dense_solve(std::vector<double> a, std::vector<double> b) {
    const int n = static_cast<int>(b.size());
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::fabs(a[static_cast<size_t>(r) * n + col]) >
                std::fabs(a[static_cast<size_t>(piv) * n + col]))
                piv = r;
        for (int c = 0; c < n; ++c)
            std::swap(a[static_cast<size_t>(col) * n + c], a[static_cast<size_t>(piv) * n + c]);
        std::swap(b[col], b[piv]);
        for (int r = col + 1; r < n; ++r) {
            const double f =
                a[static_cast<size_t>(r) * n + col] / a[static_cast<size_t>(col) * n + col];
            for (int c = col; c < n; ++c)
                a[static_cast<size_t>(r) * n + c] -= f * a[static_cast<size_t>(col) * n + c];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n);
    for (int r = n - 1; r >= 0; --r) {
        double acc = b[r];
        for (int c = r + 1; c < n; ++c) acc -= a[static_cast<size_t>(r) * n + c] * x[c];
        x[r] = acc / a[static_cast<size_t>(r) * n + r];
    }
    return x;
}

double fit_order(const std::vector<double>& hs, const std::vector<double>& errs) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const auto n = static_cast<double>(hs.size());
    for (size_t i = 0; i < hs.size(); ++i) {
        const double x = std::log(hs[i]), y = std::log(errs[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// a real constrained plane problem: one 2D sub-problem of set A
struct PlaneFixture {
    BasketSpec spec = make_preset("A", ExerciseStyle::American);
    TransformContext ctx = make_context(spec, eigendecompose(covariance(spec), spec.d));
    std::vector<double> y0 = s_to_y(spec.spot, spec.maturity, ctx);
    AxisGrid g1, gl;
    PlaneSampler sampler;
    DiscreteProblem prob;

    explicit PlaneFixture(int m)
        : g1(build_axis_grid(m, y0[0])),
          gl(build_axis_grid(m, y0[1])),
          sampler(ctx, spec, y0, 0, 1, g1, &gl) {
        const double share = 0.5 * spec.rate;
        prob.op1 = assemble_axis_operator(g1, ctx.spectrum.eigenvalues[0], share, ctx,
                                          ExerciseStyle::American, 0);
        prob.op_l = assemble_axis_operator(gl, ctx.spectrum.eigenvalues[1], share, ctx,
                                           ExerciseStyle::American, 1);
        prob.w0 = sampler.initial_vector();
        prob.obstacle = &sampler;
        prob.maturity = spec.maturity;
    }
};

}  // namespace

TEST_SUITE("stepper") {

TEST_CASE("zero operators leave the state unchanged") {
    DiscreteProblem p;
    p.op1 = plain_operator(Tridiagonal::zero(4));
    p.op_l = plain_operator(Tridiagonal::zero(4));
    p.w0 = {1.0, -2.0, 0.5, 3.0, 1.5, 0.0, -1.0, 2.0, 0.25, 4.0, -0.5, 1.0, 2.5, -3.0, 0.75, 9.0};
    p.maturity = 1.0;

    SUBCASE("regular step") {
        AdiStepper st(p, 4, ConstraintMode::None, Exec::Serial);
        st.douglas_step(0.0);
        for (size_t i = 0; i < p.w0.size(); ++i) CHECK(st.w()[i] == p.w0[i]);
    }
    SUBCASE("damped step") {
        AdiStepper st(p, 4, ConstraintMode::None, Exec::Serial);
        st.rannacher_start();
        for (size_t i = 0; i < p.w0.size(); ++i) CHECK(st.w()[i] == p.w0[i]);
    }
}

TEST_CASE("with A_l = 0 a Douglas step is a Crank-Nicolson step") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const int m = 9;
    Tridiagonal t = Tridiagonal::zero(m);
    for (int i = 0; i < m; ++i) {
        t.diag[i] = -2.0 + 0.3 * u(rng);
        if (i > 0) t.sub[i] = 0.9 + 0.2 * u(rng);
        if (i < m - 1) t.sup[i] = 0.9 + 0.2 * u(rng);
    }
    AxisOperator op;
    op.matrix = t;
    op.lower_coupling = 1.1;  // time-dependent boundary source
    op.upper_coupling = 0.7;
    op.cls = ColumnClass::AllPositive;
    op.style = ExerciseStyle::European;
    op.strike = 1.0;
    op.rate = 0.05;

    DiscreteProblem p;
    p.op1 = op;
    p.w0.resize(m);
    for (auto& v : p.w0) v = u(rng);
    p.maturity = 0.8;

    const int n_steps = 4;
    const double dt = p.maturity / n_steps;
    const double t0 = 0.3 * dt, t1 = t0 + dt;

    AdiStepper st(p, n_steps, ConstraintMode::None, Exec::Serial);
    st.douglas_step(t0);

    // reference Crank-Nicolson with dense linear algebra
    std::vector<double> rhs(m), dense(static_cast<size_t>(m) * m, 0.0);
    const auto g0 = op.boundary_source(t0), g1 = op.boundary_source(t1);
    tridiag_apply(op.matrix, p.w0, rhs);
    for (int i = 0; i < m; ++i) rhs[i] = p.w0[i] + 0.5 * dt * rhs[i] + 0.5 * dt * (g0[i] + g1[i]);
    for (int i = 0; i < m; ++i) {
        dense[static_cast<size_t>(i) * m + i] = 1.0 - 0.5 * dt * t.diag[i];
        if (i > 0) dense[static_cast<size_t>(i) * m + i - 1] = -0.5 * dt * t.sub[i];
        if (i < m - 1) dense[static_cast<size_t>(i) * m + i + 1] = -0.5 * dt * t.sup[i];
    }
    const auto want = dense_solve(dense, rhs);
    for (int i = 0; i < m; ++i) CHECK(std::fabs(st.w()[i] - want[i]) <= 1e-14);
}

TEST_CASE("scalar Douglas step matches the closed form") {
    const double a = -1.3, b = -0.7, w0 = 1.9, dt = 0.25;
    DiscreteProblem p;
    Tridiagonal ta = Tridiagonal::zero(1), tb = Tridiagonal::zero(1);
    ta.diag[0] = a;
    tb.diag[0] = b;
    p.op1 = plain_operator(ta);
    p.op_l = plain_operator(tb);
    p.w0 = {w0};
    p.maturity = dt;

    AdiStepper st(p, 1, ConstraintMode::None, Exec::Serial);
    st.douglas_step(0.0);

    const double z0 = w0 + dt * (a + b) * w0;
    const double z1 = (z0 - 0.5 * dt * a * w0) / (1.0 - 0.5 * dt * a);
    const double z2 = (z1 - 0.5 * dt * b * w0) / (1.0 - 0.5 * dt * b);
    CHECK(st.w()[0] == doctest::Approx(z2).epsilon(1e-15));
}

TEST_CASE("damped start tracks the exact exponential under refinement") {
    const int m = 51;
    const double lambda = 0.1;
    const auto w0 = sine_mode(m);
    const double mu = sine_mode_rate(m, lambda);

    std::vector<double> hs, errs;
    for (double dt : {0.4, 0.2, 0.1, 0.05, 0.025}) {
        DiscreteProblem p;
        p.op1 = uniform_diffusion(m, lambda);
        p.w0 = w0;
        p.maturity = dt;
        AdiStepper st(p, 1, ConstraintMode::None, Exec::Serial);
        st.rannacher_start();
        double err = 0.0;
        const double growth = std::exp(mu * dt);
        for (int i = 0; i < m; ++i) err = std::max(err, std::fabs(st.w()[i] - growth * w0[i]));
        hs.push_back(dt);
        errs.push_back(err);
    }
    // two backward Euler half steps: first-order agreement (observed ~2 locally)
    CHECK(fit_order(hs, errs) >= 1.0);
}

TEST_CASE("unconstrained Crank-Nicolson reaches second order on smooth data") {
    const int m = 51;
    const double lambda = 0.1, horizon = 1.0;
    const auto w0 = sine_mode(m);
    const double mu = sine_mode_rate(m, lambda);
    std::vector<double> hs, errs;
    for (int n : {8, 16, 32, 64}) {
        DiscreteProblem p;
        p.op1 = uniform_diffusion(m, lambda);
        p.w0 = w0;
        p.maturity = horizon;
        AdiStepper st(p, n, ConstraintMode::None, Exec::Serial);
        const double dt = horizon / n;
        for (int k = 0; k < n; ++k) st.douglas_step(k * dt);  // no damping
        double err = 0.0;
        const double growth = std::exp(mu * horizon);
        for (int i = 0; i < m; ++i) err = std::max(err, std::fabs(st.w()[i] - growth * w0[i]));
        hs.push_back(dt);
        errs.push_back(err);
    }
    CHECK(fit_order(hs, errs) >= 1.9);
}

TEST_CASE("EP and IT single-step formulas") {
    DiscreteProblem p;
    p.op1 = plain_operator(Tridiagonal::zero(1));
    p.w0 = {1.0};
    p.maturity = 1.0;

    SUBCASE("obstacle below: both modes keep the unconstrained value") {
        ConstObstacle obs(1, 1, 0.2);
        p.obstacle = &obs;
        AdiStepper ep(p, 1, ConstraintMode::EP, Exec::Serial);
        ep.douglas_step(0.0);
        CHECK(ep.w()[0] == 1.0);
        AdiStepper it(p, 1, ConstraintMode::IT, Exec::Serial);
        it.douglas_step(0.0);
        CHECK(it.w()[0] == 1.0);
        CHECK(it.multiplier()[0] == 0.0);
    }
    SUBCASE("dominating obstacle wins") {
        ConstObstacle obs(1, 1, 5.0);
        p.obstacle = &obs;
        AdiStepper ep(p, 1, ConstraintMode::EP, Exec::Serial);
        ep.douglas_step(0.0);
        CHECK(ep.w()[0] == 5.0);
    }
    SUBCASE("one-node toy: psi = 1.2 gives W = 1.2 and a positive multiplier") {
        ConstObstacle obs(1, 1, 1.2);
        p.obstacle = &obs;
        AdiStepper it(p, 1, ConstraintMode::IT, Exec::Serial);
        it.douglas_step(0.0);
        CHECK(it.w()[0] == doctest::Approx(1.2).epsilon(1e-15));
        CHECK(it.multiplier()[0] == doctest::Approx(0.2).epsilon(1e-12));
    }
}

TEST_CASE("a sunken obstacle reproduces the unconstrained damped step bitwise") {
    PlaneFixture fx(11);
    ConstObstacle low(fx.prob.m1(), fx.prob.ml(), -1e30);
    DiscreteProblem p = fx.prob;
    p.obstacle = &low;

    AdiStepper plain(fx.prob, 6, ConstraintMode::None, Exec::Serial);
    plain.rannacher_start();
    AdiStepper ep(p, 6, ConstraintMode::EP, Exec::Serial);
    ep.rannacher_start();
    AdiStepper it(p, 6, ConstraintMode::IT, Exec::Serial);
    it.rannacher_start();

    for (size_t i = 0; i < p.w0.size(); ++i) {
        CHECK(ep.w()[i] == plain.w()[i]);
        CHECK(it.w()[i] == plain.w()[i]);
        CHECK(it.multiplier()[i] == 0.0);
    }
}

TEST_CASE("obstacle feasibility is exact after every constrained step") {
    PlaneFixture fx(15);
    std::vector<double> psi(fx.prob.w0.size());
    int observed = 0;
    for (ConstraintMode mode : {ConstraintMode::EP, ConstraintMode::IT}) {
        StepObserver obs = [&](int, double t, std::span<const double> w,
                               std::span<const double> mu) {
            fx.sampler.obstacle_into(psi, t, Exec::Serial);
            for (size_t i = 0; i < psi.size(); ++i) {
                REQUIRE(w[i] >= psi[i]);
                if (!mu.empty()) REQUIRE(mu[i] >= 0.0);
            }
            ++observed;
        };
        integrate(fx.prob, 8, TimeScheme::Douglas, mode, Exec::Serial, &obs);
    }
    CHECK(observed == 16);
}

TEST_CASE("unconstrained integration is affine in the initial state") {
    PlaneFixture fx(9);
    DiscreteProblem p = fx.prob;
    p.obstacle = nullptr;
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(-1.0, 1.0);

    const size_t n = p.w0.size();
    std::vector<double> x(n), y(n);
    for (int trial = 0; trial < 3; ++trial) {
        for (size_t i = 0; i < n; ++i) {
            x[i] = u(rng);
            y[i] = u(rng);
        }
        auto run = [&](const std::vector<double>& w0) {
            DiscreteProblem q = p;
            q.w0 = w0;
            return integrate(q, 5, TimeScheme::Douglas, ConstraintMode::None, Exec::Serial).w;
        };
        std::vector<double> xy(n), zero(n, 0.0);
        for (size_t i = 0; i < n; ++i) xy[i] = x[i] + y[i];
        const auto fx_ = run(x);
        const auto fy = run(y);
        const auto fxy = run(xy);
        const auto f0 = run(zero);
        for (size_t i = 0; i < n; ++i)
            CHECK(std::fabs(fxy[i] - (fx_[i] + fy[i] - f0[i])) <= 1e-12);
    }
}

TEST_CASE("N = 1 integration is exactly the damped step") {
    PlaneFixture fx(11);
    DiscreteProblem p = fx.prob;
    p.obstacle = nullptr;
    const auto via_integrate = integrate(p, 1, TimeScheme::Douglas, ConstraintMode::None,
                                         Exec::Serial);
    AdiStepper st(p, 1, ConstraintMode::None, Exec::Serial);
    st.rannacher_start();
    for (size_t i = 0; i < p.w0.size(); ++i) CHECK(via_integrate.w[i] == st.w()[i]);
}

TEST_CASE("zero diffusion and zero rate preserve the initial vector") {
    DiscreteProblem p;
    p.op1 = plain_operator(Tridiagonal::zero(7));
    p.w0 = {0.1, 0.9, 0.3, 0.0, 0.7, 0.2, 0.5};
    p.maturity = 1.0;
    const auto res = integrate(p, 10, TimeScheme::CrankNicolson, ConstraintMode::None,
                               Exec::Serial);
    for (size_t i = 0; i < p.w0.size(); ++i) CHECK(res.w[i] == p.w0[i]);
}

TEST_CASE("2D solves are bitwise identical across Exec modes") {
    PlaneFixture fx(17);
    const auto serial = integrate(fx.prob, 6, TimeScheme::Douglas, ConstraintMode::IT,
                                  Exec::Serial);
    const auto parallel = integrate(fx.prob, 6, TimeScheme::Douglas, ConstraintMode::IT,
                                    Exec::Parallel);
    CHECK(serial.w == parallel.w);
    CHECK(serial.multiplier == parallel.multiplier);
}

}  // TEST_SUITE
