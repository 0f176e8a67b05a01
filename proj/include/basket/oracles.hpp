#pragma once

#include <cstdint>

#include "basket/contract.hpp"
#include "basket/tridiag.hpp"

namespace basket {

/// Standard normal CDF via erfc.
double normal_cdf(double x);

/// Closed-form European put.
double bs_put(double s, double k, double r, double sigma, double t);

/// Recombining binomial tree with early exercise at every node.
double crr_american_put(double s, double k, double r, double sigma, double t, int steps);

struct McResult {
    double price = 0.0;
    double std_error = 0.0;
    long paths = 0;
};

/// Exact terminal sampling of the correlated GBM system (factor Q sqrt(Lambda)
/// from the covariance spectrum), discounted payoff mean. Batches have
/// independent per-batch seeded generators and are reduced in a fixed pairwise
/// tree, so the estimate is reproducible for any thread count.
McResult mc_european_basket(const BasketSpec& spec, long paths, std::uint64_t seed,
                            Exec exec = Exec::Parallel);

}  // namespace basket
