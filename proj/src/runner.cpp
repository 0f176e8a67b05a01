#include "basket/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "basket/oracles.hpp"
#include "basket/reference.hpp"

namespace basket {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

namespace {

const char* style_name(ExerciseStyle s) {
    return s == ExerciseStyle::European ? "european" : "american";
}
const char* mode_name(ConstraintMode m) {
    switch (m) {
        case ConstraintMode::EP: return "ep";
        case ConstraintMode::IT: return "it";
        default: return "none";
    }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

BasketSpec resolve_spec(const RunConfig& cfg) {
    if (!cfg.preset.empty() && !cfg.config_file.empty())
        throw ConfigError("give either a preset or a config file, not both");
    if (!cfg.preset.empty()) return make_preset(cfg.preset, cfg.style);
    if (!cfg.config_file.empty()) {
        BasketSpec spec = parse_config_file(cfg.config_file);
        spec.style = cfg.style;
        return spec;
    }
    throw ConfigError("no spec source: use a preset id or a config file");
}

PriceReport run_price(const RunConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    const BasketSpec spec = resolve_spec(cfg);
    EngineConfig ec{cfg.m, cfg.n_steps, cfg.mode, cfg.exec};

    PriceReport rep;
    rep.preset = cfg.preset.empty() ? std::string("config:") + cfg.config_file : cfg.preset;
    rep.style = cfg.style;
    rep.m = cfg.m;
    rep.n_steps = cfg.n_steps;
    rep.mode = cfg.mode;
    if (cfg.method == Method::Pca || cfg.method == Method::Both) rep.pca = pca_price(spec, ec);
    if (cfg.method == Method::Comonotonic || cfg.method == Method::Both)
        rep.comonotonic = comonotonic_price(spec, ec);
    rep.wall_seconds = seconds_since(t0);
    return rep;
}

std::string price_csv(const PriceReport& rep) {
    std::ostringstream os;
    os << "preset,style,mode,m,n,u_tilde,u_app,u_low,u_up,z,wall_seconds\n";
    os << rep.preset << ',' << style_name(rep.style) << ',' << mode_name(rep.mode) << ','
       << rep.m << ',' << rep.n_steps << ',';
    os << (rep.pca ? format_double(rep.pca->value) : "") << ',';
    if (rep.comonotonic) {
        os << format_double(rep.comonotonic->u_app) << ',' << format_double(rep.comonotonic->u_low)
           << ',' << format_double(rep.comonotonic->u_up) << ','
           << format_double(rep.comonotonic->weights.z);
    } else {
        os << ",,,";
    }
    os << ',' << format_double(rep.wall_seconds) << '\n';
    return os.str();
}

TableReport run_tables(int which, int m, int n_steps, Exec exec) {
    const ExerciseStyle style =
        (which == 2 || which == 4) ? ExerciseStyle::American : ExerciseStyle::European;
    EngineConfig ec{m, n_steps, ConstraintMode::IT, exec};

    TableReport rep;
    std::ostringstream os;
    os << "preset,style,u_tilde,u_app,u_low,ref_u_tilde,ref_u_app,ref_u_low,"
          "dev_u_tilde,dev_u_app,dev_u_low\n";
    for (const auto& row : reference_table(which)) {
        const BasketSpec spec = make_preset(row.preset, style);
        const PcaResult pca = pca_price(spec, ec);
        const ComonotonicResult com = comonotonic_price(spec, ec);
        const double tol = table_tolerance(which, row);

        const double vals[3] = {pca.value, com.u_app, com.u_low};
        const double refs[3] = {row.u_tilde, row.u_app, row.u_low};
        double devs[3];
        for (int k = 0; k < 3; ++k) {
            devs[k] = std::fabs(vals[k] - refs[k]);
            if (std::isnan(refs[k])) continue;  // no embedded value to compare
            rep.max_deviation = std::max(rep.max_deviation, devs[k]);
            if (devs[k] > tol) rep.failed = true;
        }

        os << row.preset << ',' << style_name(style);
        for (double v : vals) os << ',' << format_double(v);
        for (double r : refs) os << ',' << (std::isnan(r) ? "" : format_double(r));
        for (int k = 0; k < 3; ++k)
            os << ',' << (std::isnan(refs[k]) ? "" : format_double(devs[k]));
        os << '\n';
    }
    rep.csv = os.str();
    return rep;
}

double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& err) {
    std::vector<double> lx, ly;
    const int n = static_cast<int>(x.size());
    for (int i = 0; i < n; ++i) {
        if (!(err[i] > 0.0)) continue;
        const double left = (i > 0) ? err[i - 1] : err[i];
        const double right = (i + 1 < n) ? err[i + 1] : err[i];
        if (err[i] < 1e-2 * std::min(left, right)) continue;  // sign-change dip
        lx.push_back(std::log(1.0 / x[i]));
        ly.push_back(std::log(err[i]));
    }
    const auto k = static_cast<double>(lx.size());
    if (k < 2) return 0.0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < lx.size(); ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

ConvergeReport run_converge(const RunConfig& cfg, const std::vector<int>& m_list) {
    const BasketSpec spec = resolve_spec(cfg);
    const auto ref = find_reference(cfg.preset, cfg.style);
    double ref_pca, ref_app;
    if (ref && !std::isnan(ref->u_tilde) && !std::isnan(ref->u_app)) {
        ref_pca = ref->u_tilde;
        ref_app = ref->u_app;
    } else {
        EngineConfig fine{1000, 1000, cfg.mode, cfg.exec};
        ref_pca = pca_price(spec, fine).value;
        ref_app = comonotonic_price(spec, fine).u_app;
    }

    const bool want_pca = cfg.method != Method::Comonotonic;
    const bool want_com = cfg.method != Method::Pca;

    std::ostringstream os;
    os << "m,u_tilde,err_u_tilde,u_app,err_u_app\n";
    std::vector<double> ms, err_pca, err_com;
    for (int m : m_list) {
        EngineConfig ec{m, m, cfg.mode, cfg.exec};
        os << m;
        ms.push_back(m);
        if (want_pca) {
            const double v = pca_price(spec, ec).value;
            err_pca.push_back(std::fabs(v - ref_pca));
            os << ',' << format_double(v) << ',' << format_double(err_pca.back());
        } else {
            os << ",,";
        }
        if (want_com) {
            const double v = comonotonic_price(spec, ec).u_app;
            err_com.push_back(std::fabs(v - ref_app));
            os << ',' << format_double(v) << ',' << format_double(err_com.back());
        } else {
            os << ",,";
        }
        os << '\n';
    }

    ConvergeReport rep;
    if (want_pca) rep.slope_pca = fit_loglog_slope(ms, err_pca);
    if (want_com) rep.slope_com = fit_loglog_slope(ms, err_com);
    os << "slope," << (want_pca ? format_double(rep.slope_pca) : "") << ",,"
       << (want_com ? format_double(rep.slope_com) : "") << ",\n";
    rep.csv = os.str();
    return rep;
}

TemporalReport run_temporal_study(const RunConfig& cfg, const std::vector<int>& n_list) {
    BasketSpec spec = resolve_spec(cfg);
    spec.style = ExerciseStyle::American;  // EP vs IT is an American comparison

    // temporal-only error: reference at the same m with N = 1000, IT stepping
    EngineConfig ref_ec{cfg.m, 1000, ConstraintMode::IT, cfg.exec};
    const double ref_pca = pca_price(spec, ref_ec).value;
    const double ref_app = comonotonic_price(spec, ref_ec).u_app;

    std::ostringstream os;
    os << "n,err_ep_u_tilde,err_it_u_tilde,err_ep_u_app,err_it_u_app\n";
    std::vector<double> ns, ep_pca, it_pca, ep_app, it_app;
    TemporalReport rep;
    rep.it_below_ep = true;
    for (int n : n_list) {
        EngineConfig ep{cfg.m, n, ConstraintMode::EP, cfg.exec};
        EngineConfig it{cfg.m, n, ConstraintMode::IT, cfg.exec};
        ns.push_back(n);
        ep_pca.push_back(std::fabs(pca_price(spec, ep).value - ref_pca));
        it_pca.push_back(std::fabs(pca_price(spec, it).value - ref_pca));
        ep_app.push_back(std::fabs(comonotonic_price(spec, ep).u_app - ref_app));
        it_app.push_back(std::fabs(comonotonic_price(spec, it).u_app - ref_app));
        if (it_pca.back() >= ep_pca.back() || it_app.back() >= ep_app.back())
            rep.it_below_ep = false;
        os << n << ',' << format_double(ep_pca.back()) << ',' << format_double(it_pca.back())
           << ',' << format_double(ep_app.back()) << ',' << format_double(it_app.back()) << '\n';
    }
    rep.ep_order_pca = fit_loglog_slope(ns, ep_pca);
    rep.it_order_pca = fit_loglog_slope(ns, it_pca);
    rep.ep_order_com = fit_loglog_slope(ns, ep_app);
    rep.it_order_com = fit_loglog_slope(ns, it_app);
    os << "order," << format_double(rep.ep_order_pca) << ',' << format_double(rep.it_order_pca)
       << ',' << format_double(rep.ep_order_com) << ',' << format_double(rep.it_order_com)
       << '\n';
    rep.csv = os.str();
    return rep;
}

OracleReport run_oracle_check(const RunConfig& cfg) {
    OracleReport rep;
    std::ostringstream os;
    auto check = [&](const std::string& name, double got, double want, double tol) {
        const double dev = std::fabs(got - want);
        const bool ok = dev <= tol;
        if (!ok) rep.failed = true;
        os << (ok ? "[ok]  " : "[FAIL] ") << name << ": engine " << format_double(got)
           << " vs oracle " << format_double(want) << " (|dev| " << format_double(dev)
           << ", tol " << format_double(tol) << ")\n";
    };

    // single-asset reduction against the closed form and the binomial tree
    BasketSpec one;
    one.d = 1;
    one.strike = 100.0;
    one.maturity = 1.0;
    one.rate = 0.05;
    one.weights = {1.0};
    one.sigmas = {0.2};
    one.spot = {100.0};
    one.corr = {1.0};

    EngineConfig ec{cfg.m, cfg.n_steps, ConstraintMode::IT, cfg.exec};
    one.style = ExerciseStyle::European;
    check("d=1 european vs closed form", pca_price(one, ec).value,
          bs_put(one.spot[0], one.strike, one.rate, one.sigmas[0], one.maturity),
          1e-4 * one.strike);
    one.style = ExerciseStyle::American;
    check("d=1 american vs binomial(1e4)", pca_price(one, ec).value,
          crr_american_put(one.spot[0], one.strike, one.rate, one.sigmas[0], one.maturity, 10000),
          2e-3 * one.strike);

    // rank-one lower-bound dynamics: engine PDE value vs Monte Carlo
    BasketSpec a = make_preset("A", ExerciseStyle::European);
    const auto cw = comonotonic_weights(a);
    BasketSpec low = a;
    for (int i = 0; i < a.d; ++i) low.sigmas[i] = cw.nu[i] * a.sigmas[i];
    for (int i = 0; i < a.d; ++i)
        for (int j = 0; j < a.d; ++j) low.corr[static_cast<size_t>(i) * a.d + j] = 1.0;
    const auto mc = mc_european_basket(low, 1000000, cfg.seed, cfg.exec);
    const double u_low = comonotonic_price(a, ec).u_low;
    check("set A u_low vs rank-one MC", u_low, mc.price,
          std::max(3.0 * mc.std_error, 2e-3));
    os << "      (MC std error " << format_double(mc.std_error) << ", paths " << mc.paths
       << ", seed " << cfg.seed << ")\n";

    rep.text = os.str();
    return rep;
}

}  // namespace basket
