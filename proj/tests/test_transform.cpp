#include <doctest.h>

#include <cmath>
#include <random>

#include "basket/presets.hpp"
#include "basket/transform.hpp"

using namespace basket;

namespace {

TransformContext context_for(const BasketSpec& spec) {
    return make_context(spec, eigendecompose(covariance(spec), spec.d));
}

BasketSpec single_asset(double sigma, double rate) {
    BasketSpec s;
    s.d = 1;
    s.strike = 1.0;
    s.maturity = 1.0;
    s.rate = rate;
    s.weights = {1.0};
    s.sigmas = {sigma};
    s.spot = {1.0};
    s.corr = {1.0};
    return s;
}

}  // namespace

TEST_SUITE("transform") {

TEST_CASE("prices at K exp(b(t)) map to the cube centre") {
    const BasketSpec spec = make_preset("A", ExerciseStyle::European);
    const auto ctx = context_for(spec);
    const double t = 0.7;
    std::vector<double> s(spec.d);
    for (int i = 0; i < spec.d; ++i) s[i] = spec.strike * std::exp(ctx.drift(i, t));
    const auto y = s_to_y(s, t, ctx);
    for (int k = 0; k < spec.d; ++k) CHECK(y[k] == doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("d=1: y tends to 0 as the price tends to 0") {
    const BasketSpec spec = single_asset(0.3, 0.0);
    const auto ctx = context_for(spec);
    double prev = 1.0;
    for (double s1 : {1e-2, 1e-6, 1e-10, 1e-14}) {
        const double s[] = {s1};
        const double y = s_to_y(s, 0.5, ctx)[0];
        CHECK(y > 0.0);
        CHECK(y < prev);
        prev = y;
    }
    CHECK(prev < 1e-2);
    const double bad[] = {0.0};
    CHECK_THROWS_AS(s_to_y(bad, 0.5, ctx), DomainError);
}

TEST_CASE("set A anchor point: interior and inverts back to the spot") {
    const BasketSpec spec = make_preset("A", ExerciseStyle::European);
    const auto ctx = context_for(spec);
    const auto y0 = s_to_y(spec.spot, spec.maturity, ctx);
    for (double yk : y0) {
        CHECK(yk > 0.0);
        CHECK(yk < 1.0);
    }
    const auto s = y_to_s(y0, spec.maturity, ctx);
    for (int i = 0; i < spec.d; ++i)
        CHECK(s[i] == doctest::Approx(spec.spot[i]).epsilon(1e-12));
}

TEST_CASE("round trip on a compact interior set") {
    const BasketSpec spec = make_preset("D", ExerciseStyle::European);
    const auto ctx = context_for(spec);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.2, 0.8);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> y(spec.d);
        for (auto& v : y) v = u(rng);
        const double t = 0.25 + 0.5 * u(rng);
        const auto s = y_to_s(y, t, ctx);
        const auto back = s_to_y(s, t, ctx);
        for (int k = 0; k < spec.d; ++k)
            CHECK(std::fabs(back[k] - y[k]) <= 1e-12);
    }
}

TEST_CASE("psi at the centre at t=0 is the at-the-money payoff") {
    const BasketSpec spec = make_preset("A", ExerciseStyle::European);
    const auto ctx = context_for(spec);
    const std::vector<double> y(spec.d, 0.5);
    CHECK(psi(y, 0.0, ctx, spec) <= 1e-15);
}

TEST_CASE("psi tends to K on the lower face of the leading column") {
    const BasketSpec spec = make_preset("A", ExerciseStyle::European);
    const auto ctx = context_for(spec);
    REQUIRE(ctx.spectrum.column_class[0] == ColumnClass::AllPositive);
    std::vector<double> y(spec.d, 0.5);
    y[0] = 1e-12;
    CHECK(psi(y, 0.3, ctx, spec) == doctest::Approx(spec.strike).epsilon(1e-13));
}

TEST_CASE("d=1 psi equals the composed payoff") {
    const BasketSpec spec = single_asset(0.25, 0.03);
    const auto ctx = context_for(spec);
    for (double yv : {0.31, 0.47, 0.5, 0.55, 0.78}) {
        const std::vector<double> y = {yv};
        const double x = std::tan(std::numbers::pi * (yv - 0.5));
        const double direct = std::max(spec.strike - spec.strike * std::exp(x), 0.0);
        CHECK(psi(y, 0.0, ctx, spec) == doctest::Approx(direct).epsilon(1e-13));
    }
}

TEST_CASE("psi stays within [0, K]") {
    const BasketSpec spec = make_preset("B", ExerciseStyle::European);
    const auto ctx = context_for(spec);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(1e-6, 1.0 - 1e-6);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<double> y(spec.d);
        for (auto& v : y) v = u(rng);
        const double t = u(rng);
        const double p = psi(y, t, ctx, spec);
        CHECK(p >= 0.0);
        CHECK(p <= spec.strike);
    }
}

TEST_CASE("boundary values") {
    const double K = 42.0, r = 0.05;
    CHECK(boundary_value(ColumnClass::AllPositive, 0, 1.0, K, r, ExerciseStyle::European) ==
          doctest::Approx(K * std::exp(-0.05)).epsilon(1e-15));
    CHECK(boundary_value(ColumnClass::AllPositive, 0, 1.0, K, r, ExerciseStyle::American) == K);
    CHECK(boundary_value(ColumnClass::Mixed, 0, 1.0, K, r, ExerciseStyle::European) == 0.0);
    CHECK(boundary_value(ColumnClass::AllPositive, 1, 1.0, K, r, ExerciseStyle::European) == 0.0);
}

TEST_CASE("initial and boundary data meet at the lower face") {
    // European at t=0: face value K e^0 = K equals the psi limit there
    const BasketSpec spec = make_preset("A", ExerciseStyle::European);
    const auto ctx = context_for(spec);
    const double face = boundary_value(ColumnClass::AllPositive, 0, 0.0, spec.strike, spec.rate,
                                       ExerciseStyle::European);
    std::vector<double> y(spec.d, 0.5);
    y[0] = 1e-9;
    CHECK(face == doctest::Approx(psi(y, 0.0, ctx, spec)).epsilon(1e-9));
}

}  // TEST_SUITE
