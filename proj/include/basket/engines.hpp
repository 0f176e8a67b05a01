#pragma once

#include <vector>

#include "basket/contract.hpp"
#include "basket/spectrum.hpp"
#include "basket/stepper.hpp"

namespace basket {

struct EngineConfig {
    int m = 1000;
    int n_steps = 1000;
    ConstraintMode mode = ConstraintMode::IT;  // American constraint handling
    Exec exec = Exec::Parallel;
};

/// Value approximation built from one line solve plus one plane solve per
/// non-leading eigenvalue:
///   u ~ w1 + sum_l (w1l - w1),  terms with lambda_l = 0 skipped.
struct PcaResult {
    double value = 0.0;
    double w1 = 0.0;
    std::vector<double> plane_values;  // w1l per l = 2..d; equals w1 where skipped
};

PcaResult pca_price(const BasketSpec& spec, const EngineConfig& cfg);

/// nu weights and the variance-matching data of the bound combination.
struct ComonotonicWeights {
    std::vector<double> nu;  // in (0,1]
    double lambda_low = 0.0;  // sum (nu_i sigma_i)^2
    double lambda_up = 0.0;   // sum sigma_i^2
    double a = 0.0, b = 0.0, c = 0.0;
    double z = 0.0;  // (c-b)/(c-a); 1 when the bounds coincide
};

/// Requires all correlations nonnegative (NegativeCorrelationError otherwise).
ComonotonicWeights comonotonic_weights(const BasketSpec& spec);

struct ComonotonicResult {
    double u_app = 0.0;  // z u_low + (1-z) u_up
    double u_low = 0.0;
    double u_up = 0.0;
    ComonotonicWeights weights;
};

/// Each bound is a rank-one-covariance instance of the same reduced-solve
/// machinery (a single line problem; the unit eigenvector is strictly
/// positive, so its lower face carries the strike value).
ComonotonicResult comonotonic_price(const BasketSpec& spec, const EngineConfig& cfg);

}  // namespace basket
