#include "basket/engines.hpp"

#include <cmath>
#include <iostream>
#include <string>

#include "basket/grid.hpp"
#include "basket/operators.hpp"
#include "basket/sampler.hpp"
#include "basket/transform.hpp"

namespace basket {

namespace {

/// Integrates one reduced problem (line when axis_l < 0, plane otherwise)
/// and reads the solution at the anchor node.
double solve_reduced(const TransformContext& ctx, const BasketSpec& spec,
                     std::span<const double> y0, const AxisGrid& grid1, const AxisGrid* grid_l,
                     int axis_l, double lambda1, double lambda_l, const EngineConfig& cfg) {
    const bool twod = axis_l >= 0;
    const double share = twod ? 0.5 * spec.rate : spec.rate;

    PlaneSampler sampler(ctx, spec, y0, 0, axis_l, grid1, grid_l);

    DiscreteProblem prob;
    prob.op1 = assemble_axis_operator(grid1, lambda1, share, ctx, spec.style, 0);
    if (twod)
        prob.op_l = assemble_axis_operator(*grid_l, lambda_l, share, ctx, spec.style, axis_l);
    prob.w0 = sampler.initial_vector();
    prob.maturity = spec.maturity;

    const ConstraintMode mode =
        spec.style == ExerciseStyle::American ? cfg.mode : ConstraintMode::None;
    if (mode != ConstraintMode::None) prob.obstacle = &sampler;

    const auto scheme = twod ? TimeScheme::Douglas : TimeScheme::CrankNicolson;
    const auto result = integrate(prob, cfg.n_steps, scheme, mode, cfg.exec);

    if (!twod) return result.w[grid1.anchor_index];
    return result.w[static_cast<size_t>(grid_l->anchor_index) * grid1.size() +
                    grid1.anchor_index];
}

}  // namespace

PcaResult pca_price(const BasketSpec& raw, const EngineConfig& cfg) {
    const BasketSpec spec = validate(raw);
    Spectrum spectrum = eigendecompose(covariance(spec), spec.d);
    if (spectrum.column_class.empty())
        spectrum.column_class = classify_columns(spectrum.eigenvectors, spec.d);

    const TransformContext ctx = make_context(spec, std::move(spectrum));
    const auto y0 = s_to_y(spec.spot, spec.maturity, ctx);
    const AxisGrid grid1 = build_axis_grid(cfg.m, y0[0]);
    const double lambda1 = ctx.spectrum.eigenvalues[0];

    PcaResult out;
    out.w1 = solve_reduced(ctx, spec, y0, grid1, nullptr, -1, lambda1, 0.0, cfg);
    out.value = out.w1;
    out.plane_values.assign(spec.d > 1 ? spec.d - 1 : 0, out.w1);

    for (int l = 1; l < spec.d; ++l) {
        const double lambda_l = ctx.spectrum.eigenvalues[l];
        if (lambda_l == 0.0) continue;  // the correction term vanishes
        const AxisGrid grid_l = build_axis_grid(cfg.m, y0[l]);
        const double w1l =
            solve_reduced(ctx, spec, y0, grid1, &grid_l, l, lambda1, lambda_l, cfg);
        out.plane_values[l - 1] = w1l;
        out.value += w1l - out.w1;
    }
    return out;
}

ComonotonicWeights comonotonic_weights(const BasketSpec& raw) {
    const BasketSpec spec = validate(raw);
    const int d = spec.d;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            if (spec.corr_at(i, j) < 0.0)
                throw NegativeCorrelationError(
                    "comonotonic bounds require nonnegative correlations");

    ComonotonicWeights cw;
    double denom2 = 0.0;
    for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k)
            denom2 += spec.weights[j] * spec.weights[k] * spec.spot[j] * spec.spot[k] *
                      spec.corr_at(j, k) * spec.sigmas[j] * spec.sigmas[k];
    const double denom = std::sqrt(denom2);

    cw.nu.resize(d);
    for (int i = 0; i < d; ++i) {
        double num = 0.0;
        for (int j = 0; j < d; ++j)
            num += spec.weights[j] * spec.spot[j] * spec.corr_at(i, j) * spec.sigmas[j];
        cw.nu[i] = num / denom;
    }

    for (int i = 0; i < d; ++i) {
        cw.lambda_low += cw.nu[i] * cw.nu[i] * spec.sigmas[i] * spec.sigmas[i];
        cw.lambda_up += spec.sigmas[i] * spec.sigmas[i];
    }

    const double t = spec.maturity;
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            const double wws = spec.weights[i] * spec.weights[j] * spec.spot[i] * spec.spot[j];
            const double ss = spec.sigmas[i] * spec.sigmas[j];
            cw.a += wws * std::expm1(cw.nu[i] * cw.nu[j] * ss * t);
            cw.b += wws * std::expm1(spec.corr_at(i, j) * ss * t);
            cw.c += wws * std::expm1(ss * t);
        }
    }
    if (cw.c - cw.a <= 1e-14 * cw.c)
        cw.z = 1.0;  // coincident bounds, any convex weight gives the same price
    else
        cw.z = (cw.c - cw.b) / (cw.c - cw.a);
    return cw;
}

namespace {

double solve_rank_one(const BasketSpec& spec, const std::vector<double>& sigma_tilde,
                      const EngineConfig& cfg) {
    BasketSpec reduced = spec;
    reduced.sigmas = sigma_tilde;

    Spectrum spectrum = rank_one_spectrum(sigma_tilde);
    const double lambda1 = spectrum.eigenvalues[0];
    const TransformContext ctx = make_context(reduced, std::move(spectrum));
    const auto y0 = s_to_y(reduced.spot, reduced.maturity, ctx);
    const AxisGrid grid1 = build_axis_grid(cfg.m, y0[0]);
    return solve_reduced(ctx, reduced, y0, grid1, nullptr, -1, lambda1, 0.0, cfg);
}

}  // namespace

ComonotonicResult comonotonic_price(const BasketSpec& raw, const EngineConfig& cfg) {
    const BasketSpec spec = validate(raw);
    ComonotonicResult out;
    out.weights = comonotonic_weights(spec);

    std::vector<double> nu_sigma(spec.d);
    for (int i = 0; i < spec.d; ++i) nu_sigma[i] = out.weights.nu[i] * spec.sigmas[i];

    out.u_low = solve_rank_one(spec, nu_sigma, cfg);
    out.u_up = solve_rank_one(spec, spec.sigmas, cfg);

    const double z = out.weights.z;
    if (z < 0.0 || z > 1.0)
        std::cerr << "warning: variance-matching weight z = " << z
                  << " outside [0,1]; the combination is not convex\n";
    out.u_app = z * out.u_low + (1.0 - z) * out.u_up;

    if (z >= 0.0 && z <= 1.0) {
        const double lo = std::min(out.u_low, out.u_up) - 1e-12 * spec.strike;
        const double hi = std::max(out.u_low, out.u_up) + 1e-12 * spec.strike;
        if (out.u_app < lo || out.u_app > hi)
            throw Error("convex bound combination left the bound interval");
    }
    return out;
}

}  // namespace basket
