#pragma once

#include <span>
#include <vector>

#include "basket/contract.hpp"
#include "basket/spectrum.hpp"

namespace basket {

/// Everything needed to move between price space and the unit-cube
/// coordinates: s -> x = Q^T(ln(s/K) - b(t)) -> y = arctan(x)/pi + 1/2,
/// with drift b_i(t) = (sigma_i^2/2 - r) t.
struct TransformContext {
    Spectrum spectrum;
    double strike = 0.0;
    double rate = 0.0;
    double maturity = 0.0;
    std::vector<double> drift_coef;  // b_i(t) = drift_coef[i] * t

    int d() const { return spectrum.d; }
    double drift(int i, double t) const { return drift_coef[i] * t; }
};

/// Per-asset log-price exponents are capped at this magnitude before
/// exponentiation so K*exp(.) stays inside double range near the faces.
inline constexpr double kMaxLogMoneyness = 700.0;

TransformContext make_context(const BasketSpec& spec, Spectrum spectrum);

/// Unit-cube image of a price vector (componentwise > 0).
std::vector<double> s_to_y(std::span<const double> s, double t, const TransformContext& ctx);

/// Explicit inverse of s_to_y; prices from unit-cube coordinates.
std::vector<double> y_to_s(std::span<const double> y, double t, const TransformContext& ctx);

/// Transformed payoff psi(y,t) = phi(K exp[Qx + b(t)]), x = tan(pi(y-1/2)).
double psi(std::span<const double> y, double t, const TransformContext& ctx,
           const BasketSpec& spec);

/// Dirichlet data on the face y_axis = side. Only the lower face of an
/// AllPositive column carries a value: K e^{-rt} for European exercise, K for
/// American. Every other face is homogeneous.
double boundary_value(ColumnClass cls, int side, double t, double strike, double rate,
                      ExerciseStyle style);

/// Coefficients of the unit-cube PDE: lambda * [p(y) w_yy + q(y) w_y] - r w.
inline double diffusion_profile(double eta);   // sin^4(pi eta) / (2 pi^2)
inline double convection_profile(double eta);  // sin^3(pi eta) cos(pi eta) / pi

}  // namespace basket

#include "basket/transform_inl.hpp"
