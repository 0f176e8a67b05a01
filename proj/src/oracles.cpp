#include "basket/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "basket/spectrum.hpp"

namespace basket {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double bs_put(double s, double k, double r, double sigma, double t) {
    if (!(s > 0.0 && k > 0.0 && sigma > 0.0 && t > 0.0))
        throw DomainError("bs_put needs positive spot, strike, volatility, maturity");
    const double sq = sigma * std::sqrt(t);
    const double d1 = (std::log(s / k) + (r + 0.5 * sigma * sigma) * t) / sq;
    const double d2 = d1 - sq;
    return k * std::exp(-r * t) * normal_cdf(-d2) - s * normal_cdf(-d1);
}

double crr_american_put(double s, double k, double r, double sigma, double t, int steps) {
    if (steps < 1) throw DomainError("crr_american_put needs steps >= 1");
    const double dt = t / steps;
    const double up = std::exp(sigma * std::sqrt(dt));
    const double down = 1.0 / up;
    const double grow = std::exp(r * dt);
    const double disc = 1.0 / grow;
    const double p = (grow - down) / (up - down);
    const double q = 1.0 - p;

    std::vector<double> value(steps + 1);
    // terminal prices from the lowest node upward
    double price = s * std::pow(down, steps);
    const double up2 = up * up;
    for (int i = 0; i <= steps; ++i) {
        value[i] = std::max(k - price, 0.0);
        price *= up2;
    }
    for (int level = steps - 1; level >= 0; --level) {
        price = s * std::pow(down, level);
        for (int i = 0; i <= level; ++i) {
            const double cont = disc * (q * value[i] + p * value[i + 1]);
            value[i] = std::max(cont, k - price);
            price *= up2;
        }
    }
    return value[0];
}

namespace {

uint64_t mix_seed(uint64_t seed, uint64_t batch) {
    uint64_t z = seed + (batch + 1) * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace

McResult mc_european_basket(const BasketSpec& spec, long paths, uint64_t seed, Exec exec) {
    if (paths < 1) throw DomainError("mc_european_basket needs paths >= 1");
    const BasketSpec vspec = validate(spec);
    const int d = vspec.d;
    const Spectrum sp = eigendecompose(covariance(vspec), d);

    // factor Q sqrt(Lambda): exact one-step terminal sampling
    std::vector<double> factor(static_cast<size_t>(d) * d);
    for (int i = 0; i < d; ++i)
        for (int k = 0; k < d; ++k)
            factor[static_cast<size_t>(i) * d + k] = sp.q(i, k) * std::sqrt(sp.eigenvalues[k]);

    const double t = vspec.maturity;
    const double sqt = std::sqrt(t);
    const double disc = std::exp(-vspec.rate * t);
    std::vector<double> base(d);
    for (int i = 0; i < d; ++i)
        base[i] = std::log(vspec.spot[i]) +
                  (vspec.rate - 0.5 * vspec.sigmas[i] * vspec.sigmas[i]) * t;

    constexpr long kBatch = 8192;
    const long n_batches = (paths + kBatch - 1) / kBatch;
    std::vector<double> sums(n_batches, 0.0), sq_sums(n_batches, 0.0);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (exec == Exec::Parallel)
#else
    (void)exec;
#endif
    for (long b = 0; b < n_batches; ++b) {
        std::mt19937_64 rng(mix_seed(seed, static_cast<uint64_t>(b)));
        std::normal_distribution<double> normal(0.0, 1.0);
        const long lo = b * kBatch;
        const long hi = std::min(paths, lo + kBatch);
        std::vector<double> z(d), s(d);
        double acc = 0.0, acc2 = 0.0;
        for (long p = lo; p < hi; ++p) {
            for (int k = 0; k < d; ++k) z[k] = normal(rng);
            for (int i = 0; i < d; ++i) {
                double shock = 0.0;
                for (int k = 0; k < d; ++k) shock += factor[static_cast<size_t>(i) * d + k] * z[k];
                s[i] = std::exp(base[i] + sqt * shock);
            }
            const double v = disc * payoff(s, vspec);
            acc += v;
            acc2 += v * v;
        }
        sums[b] = acc;
        sq_sums[b] = acc2;
    }

    // fixed pairwise-tree reduction: result independent of thread count
    for (long stride = 1; stride < n_batches; stride *= 2)
        for (long b = 0; b + stride < n_batches; b += 2 * stride) {
            sums[b] += sums[b + stride];
            sq_sums[b] += sq_sums[b + stride];
        }

    const double n = static_cast<double>(paths);
    McResult r;
    r.paths = paths;
    r.price = sums[0] / n;
    if (paths > 1) {
        const double var = std::max(0.0, (sq_sums[0] - sums[0] * sums[0] / n) / (n - 1.0));
        r.std_error = std::sqrt(var / n);
    }
    return r;
}

}  // namespace basket
