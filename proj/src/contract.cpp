#include "basket/contract.hpp"

#include <cmath>
#include <string>

#include "basket/spectrum.hpp"

namespace basket {

namespace {

constexpr double kWeightSumTol = 1e-12;
constexpr double kCorrSymTol = 1e-12;
constexpr double kPsdRelTol = 1e-10;

double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::fabs(x));
    return m;
}

}  // namespace

BasketSpec validate(BasketSpec spec) {
    const int d = spec.d;
    if (d < 1) throw DomainError("asset count must be >= 1, got " + std::to_string(d));
    if (!(spec.strike > 0.0)) throw DomainError("strike must be positive");
    if (!(spec.maturity > 0.0)) throw DomainError("maturity must be positive");
    if (!(spec.rate >= 0.0)) throw DomainError("rate must be nonnegative");

    const auto nd = static_cast<size_t>(d);
    if (spec.weights.size() != nd || spec.sigmas.size() != nd || spec.spot.size() != nd)
        throw DomainError("weights/sigmas/spot must have d entries");
    if (spec.corr.size() != nd * nd) throw DomainError("corr must be d x d");

    double wsum = 0.0;
    for (int i = 0; i < d; ++i) {
        if (!(spec.weights[i] > 0.0)) throw DomainError("weights must be positive");
        if (!(spec.sigmas[i] > 0.0)) throw DomainError("sigmas must be positive");
        if (!(spec.spot[i] > 0.0)) throw DomainError("spot prices must be positive");
        wsum += spec.weights[i];
    }
    if (std::fabs(wsum - 1.0) > kWeightSumTol)
        throw WeightSumError("weights sum to " + std::to_string(wsum) + ", expected 1");

    for (int i = 0; i < d; ++i) {
        if (std::fabs(spec.corr_at(i, i) - 1.0) > 1e-14)
            throw CorrelationMatrixError("correlation diagonal must be 1");
        for (int j = 0; j < d; ++j) {
            const double r = spec.corr_at(i, j);
            if (!(r >= -1.0 && r <= 1.0))
                throw CorrelationMatrixError("correlation entries must lie in [-1, 1]");
            if (std::fabs(r - spec.corr_at(j, i)) > kCorrSymTol)
                throw CorrelationMatrixError("correlation matrix must be symmetric");
        }
    }

    // PSD check on the covariance, tolerant to rounding in user input.
    const auto cov = covariance(spec);
    const double scale = max_abs(cov);
    try {
        std::vector<double> a = cov;
        std::vector<double> q(nd * nd, 0.0);
        for (int i = 0; i < d; ++i) q[static_cast<size_t>(i) * d + i] = 1.0;
        detail::jacobi_eigen(a, q, d, 50);
        for (int i = 0; i < d; ++i) {
            const double ev = a[static_cast<size_t>(i) * d + i];
            if (ev < -kPsdRelTol * scale)
                throw CorrelationMatrixError("covariance is not positive semidefinite");
        }
    } catch (const ConvergenceError&) {
        throw CorrelationMatrixError("covariance eigendecomposition did not converge");
    }

    return spec;
}

double payoff(std::span<const double> s, const BasketSpec& spec) {
    double basket = 0.0;
    for (int i = 0; i < spec.d; ++i) basket += spec.weights[i] * s[i];
    const double v = spec.strike - basket;
    return v > 0.0 ? v : 0.0;
}

std::vector<double> covariance(const BasketSpec& spec) {
    const int d = spec.d;
    std::vector<double> cov(static_cast<size_t>(d) * d);
    for (int i = 0; i < d; ++i) {
        for (int j = i; j < d; ++j) {
            const double v = spec.sigmas[i] * spec.corr_at(i, j) * spec.sigmas[j];
            cov[static_cast<size_t>(i) * d + j] = v;
            cov[static_cast<size_t>(j) * d + i] = v;
        }
    }
    return cov;
}

}  // namespace basket
