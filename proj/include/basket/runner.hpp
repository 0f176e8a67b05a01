#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "basket/engines.hpp"
#include "basket/presets.hpp"

namespace basket {

enum class Method { Pca, Comonotonic, Both };

struct RunConfig {
    std::string preset;       // empty when config_file is used
    std::string config_file;  // empty when preset is used
    ExerciseStyle style = ExerciseStyle::European;
    Method method = Method::Both;
    ConstraintMode mode = ConstraintMode::IT;
    int m = 1000;
    int n_steps = 1000;
    std::string out_path;  // empty -> stdout only
    std::uint64_t seed = 1;
    Exec exec = Exec::Parallel;
};

BasketSpec resolve_spec(const RunConfig& cfg);

struct PriceReport {
    std::string preset;
    ExerciseStyle style;
    int m = 0, n_steps = 0;
    ConstraintMode mode = ConstraintMode::IT;
    std::optional<PcaResult> pca;
    std::optional<ComonotonicResult> comonotonic;
    double wall_seconds = 0.0;
};

PriceReport run_price(const RunConfig& cfg);
std::string price_csv(const PriceReport& report);

/// One row per preset of the requested table with deviations from the
/// embedded reference values. `failed` is set when any deviation exceeds the
/// table tolerance.
struct TableReport {
    std::string csv;
    bool failed = false;
    double max_deviation = 0.0;
};
TableReport run_tables(int which, int m, int n_steps, Exec exec);

/// Discretisation error against the reference value for m = N in m_list,
/// plus the fitted log-log slope (sign-change drop points excluded).
struct ConvergeReport {
    std::string csv;
    double slope_pca = 0.0;
    double slope_com = 0.0;
};
ConvergeReport run_converge(const RunConfig& cfg, const std::vector<int>& m_list);

/// EP vs IT temporal error at fixed m against the same-m IT run at N = 1000.
struct TemporalReport {
    std::string csv;
    double ep_order_pca = 0.0, it_order_pca = 0.0;
    double ep_order_com = 0.0, it_order_com = 0.0;
    bool it_below_ep = false;  // IT error < EP error at every N, both methods
};
TemporalReport run_temporal_study(const RunConfig& cfg, const std::vector<int>& n_list);

/// d = 1 closed-form / binomial equivalence and the rank-one Monte Carlo
/// check; failed when any deviation exceeds its tolerance.
struct OracleReport {
    std::string text;
    bool failed = false;
};
OracleReport run_oracle_check(const RunConfig& cfg);

/// Least-squares slope of log(err) vs log(1/x); drops nonpositive errors and
/// points below 1e-2 x both neighbours (sign-change dips).
double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& err);

std::string format_double(double v);  // 10 significant digits, C locale

}  // namespace basket
