#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "basket/runner.hpp"

using namespace basket;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& content) {
        path = std::string("/tmp/basket_cfg_") + std::to_string(rand()) + ".txt";
        std::ofstream out(path);
        out << content;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

const char* kPairConfig =
    "d = 2\n"
    "strike = 10\n"
    "maturity = 1\n"
    "rate = 0.02\n"
    "style = european\n"
    "weights = 0.5, 0.5\n"
    "sigmas = 0.2, 0.3\n"
    "spot = 10, 11\n"
    "corr.row.1 = 1, 0.5\n"
    "corr.row.2 = 0.5, 1\n";

}  // namespace

TEST_SUITE("runner") {

TEST_CASE("slope fit recovers a second-order synthetic sequence") {
    std::vector<double> m, err;
    for (int i = 10; i <= 100; i += 5) {
        m.push_back(i);
        err.push_back(3.7 / (static_cast<double>(i) * i));
    }
    CHECK(fit_loglog_slope(m, err) == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("slope fit drops sign-change dips and zero errors") {
    std::vector<double> m, err;
    for (int i = 10; i <= 60; i += 5) {
        m.push_back(i);
        err.push_back(1.0 / i);
    }
    err[4] = 1e-9;  // near-cancellation dip
    err[6] = 0.0;   // exact hit
    CHECK(fit_loglog_slope(m, err) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("config file parsing") {
    SUBCASE("valid config resolves and prices") {
        TempFile f(kPairConfig);
        RunConfig cfg;
        cfg.config_file = f.path;
        cfg.m = 50;
        cfg.n_steps = 30;
        const BasketSpec spec = resolve_spec(cfg);
        CHECK(spec.d == 2);
        CHECK(spec.strike == 10.0);
        const auto rep = run_price(cfg);
        REQUIRE(rep.pca.has_value());
        CHECK(rep.pca->value > 0.0);
    }
    SUBCASE("unknown key reports the line") {
        TempFile f("d = 2\nbogus = 1\n");
        try {
            parse_config_file(f.path);
            FAIL("expected ConfigError");
        } catch (const ConfigError& e) {
            CHECK(std::string(e.what()).find("line 2") != std::string::npos);
        }
    }
    SUBCASE("missing correlation row") {
        TempFile f(
            "d = 2\nstrike = 10\nmaturity = 1\nrate = 0\nweights = 0.5,0.5\n"
            "sigmas = 0.2,0.2\nspot = 10,10\ncorr.row.1 = 1,0.5\n");
        CHECK_THROWS_AS(parse_config_file(f.path), ConfigError);
    }
    SUBCASE("bad number diagnostics") {
        TempFile f("d = 2\nstrike = ten\n");
        CHECK_THROWS_AS(parse_config_file(f.path), ConfigError);
    }
    SUBCASE("no source set") {
        RunConfig cfg;
        CHECK_THROWS_AS(resolve_spec(cfg), ConfigError);
    }
}

TEST_CASE("price CSV is deterministic") {
    RunConfig cfg;
    cfg.preset = "A";
    cfg.m = 40;
    cfg.n_steps = 30;
    const auto a = price_csv(run_price(cfg));
    const auto b = price_csv(run_price(cfg));
    // strip the wall-time column (last field) before comparing
    const auto cut = [](const std::string& csv) { return csv.substr(0, csv.rfind(',')); };
    CHECK(cut(a) == cut(b));
    CHECK(a.find("A,european,it,40,30,") != std::string::npos);
}

TEST_CASE("converge CSV is byte-identical across runs") {
    RunConfig cfg;
    cfg.preset = "A";
    cfg.style = ExerciseStyle::European;
    cfg.method = Method::Both;
    const std::vector<int> ms = {20, 25, 30};
    const auto a = run_converge(cfg, ms);
    const auto b = run_converge(cfg, ms);
    CHECK(a.csv == b.csv);
    CHECK(a.csv.find("slope,") != std::string::npos);
}

TEST_CASE("format_double uses 10 significant digits") {
    CHECK(format_double(0.17576999) == "0.17576999");
    CHECK(format_double(1.0 / 3.0) == "0.3333333333");
    CHECK(format_double(12345.678901234) == "12345.6789");
}

}  // TEST_SUITE
