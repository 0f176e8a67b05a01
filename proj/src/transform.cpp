#include "basket/transform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace basket {

namespace {
constexpr double kPi = std::numbers::pi;

double clamp_log(double e) { return std::clamp(e, -kMaxLogMoneyness, kMaxLogMoneyness); }
}  // namespace

TransformContext make_context(const BasketSpec& spec, Spectrum spectrum) {
    TransformContext ctx;
    ctx.spectrum = std::move(spectrum);
    ctx.strike = spec.strike;
    ctx.rate = spec.rate;
    ctx.maturity = spec.maturity;
    ctx.drift_coef.resize(spec.d);
    for (int i = 0; i < spec.d; ++i)
        ctx.drift_coef[i] = 0.5 * spec.sigmas[i] * spec.sigmas[i] - spec.rate;
    return ctx;
}

std::vector<double> s_to_y(std::span<const double> s, double t, const TransformContext& ctx) {
    const int d = ctx.d();
    std::vector<double> shifted(d);
    for (int i = 0; i < d; ++i) {
        if (!(s[i] > 0.0)) throw DomainError("s_to_y requires strictly positive prices");
        shifted[i] = std::log(s[i] / ctx.strike) - ctx.drift(i, t);
    }
    std::vector<double> y(d);
    for (int k = 0; k < d; ++k) {
        double xk = 0.0;
        for (int i = 0; i < d; ++i) xk += ctx.spectrum.q(i, k) * shifted[i];
        y[k] = std::atan(xk) / kPi + 0.5;
    }
    return y;
}

std::vector<double> y_to_s(std::span<const double> y, double t, const TransformContext& ctx) {
    const int d = ctx.d();
    std::vector<double> x(d);
    for (int k = 0; k < d; ++k) x[k] = std::tan(kPi * (y[k] - 0.5));
    std::vector<double> s(d);
    for (int i = 0; i < d; ++i) {
        double e = ctx.drift(i, t);
        for (int k = 0; k < d; ++k) e += ctx.spectrum.q(i, k) * x[k];
        s[i] = ctx.strike * std::exp(clamp_log(e));
    }
    return s;
}

double psi(std::span<const double> y, double t, const TransformContext& ctx,
           const BasketSpec& spec) {
    const auto s = y_to_s(y, t, ctx);
    return payoff(s, spec);
}

double boundary_value(ColumnClass cls, int side, double t, double strike, double rate,
                      ExerciseStyle style) {
    if (side != 0 || cls != ColumnClass::AllPositive) return 0.0;
    if (style == ExerciseStyle::American) return strike;
    return strike * std::exp(-rate * t);
}

}  // namespace basket
