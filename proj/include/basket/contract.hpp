#pragma once

#include <span>
#include <vector>

#include "basket/errors.hpp"

namespace basket {

enum class ExerciseStyle { European, American };

/// Basket put contract plus the market data of the underlying assets.
/// Correlation is stored row-major, d x d.
struct BasketSpec {
    int d = 0;
    double strike = 0.0;
    double maturity = 0.0;
    double rate = 0.0;
    std::vector<double> weights;
    std::vector<double> sigmas;
    std::vector<double> corr;
    std::vector<double> spot;
    ExerciseStyle style = ExerciseStyle::European;

    double corr_at(int i, int j) const { return corr[static_cast<size_t>(i) * d + j]; }
};

/// Checks all contract invariants (weight sum, correlation matrix shape and
/// positive semidefiniteness, positive market data) and returns the spec.
/// Throws WeightSumError, CorrelationMatrixError or DomainError.
BasketSpec validate(BasketSpec spec);

/// max(K - sum_i w_i s_i, 0)
double payoff(std::span<const double> s, const BasketSpec& spec);

/// Covariance matrix, entries sigma_i rho_ij sigma_j. Bitwise symmetric.
std::vector<double> covariance(const BasketSpec& spec);

}  // namespace basket
