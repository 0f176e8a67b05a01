#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "basket/runner.hpp"

namespace {

int write_out(const std::string& content, const std::string& path) {
    if (path.empty()) return 0;
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot open output file '" << path << "'\n";
        return 2;
    }
    out << content;
    return 0;
}

std::vector<int> parse_int_list(const std::string& text) {
    // "20:100" (inclusive range, step 1), "20:100:5", or "20,30,50"
    std::vector<int> out;
    const auto colon = text.find(':');
    if (colon != std::string::npos) {
        const auto rest = text.substr(colon + 1);
        const auto colon2 = rest.find(':');
        const int lo = std::stoi(text.substr(0, colon));
        const int hi = std::stoi(colon2 == std::string::npos ? rest : rest.substr(0, colon2));
        const int step = colon2 == std::string::npos ? 1 : std::stoi(rest.substr(colon2 + 1));
        for (int v = lo; v <= hi; v += step) out.push_back(v);
        return out;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    using namespace basket;

    CLI::App app{"Basket put pricing by PCA and comonotonic dimension reduction"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string style_str = "european", method_str = "both", mode_str = "it";
    bool serial = false;

    auto add_common = [&](CLI::App* sub, bool with_spec) {
        if (with_spec) {
            sub->add_option("--preset", cfg.preset, "preset id (A..F, HL-T*-K*-V*)");
            sub->add_option("--config", cfg.config_file, "config file path");
            sub->add_option("--style", style_str, "european|american");
        }
        sub->add_option("--method", method_str, "pca|comonotonic|both");
        sub->add_option("--mode", mode_str, "ep|it (American constraint handling)");
        sub->add_option("--m", cfg.m, "spatial grid points per direction");
        sub->add_option("--n", cfg.n_steps, "time steps");
        sub->add_option("--out", cfg.out_path, "write CSV/report to this file");
        sub->add_option("--seed", cfg.seed, "random seed (Monte Carlo checks)");
        sub->add_flag("--serial", serial, "run the serial reference kernels");
    };

    auto* price = app.add_subcommand("price", "price one basket");
    add_common(price, true);

    auto* tables = app.add_subcommand("tables", "reproduce a reference table");
    int which = 1;
    tables->add_option("which", which, "table number 1..4")->required();
    add_common(tables, false);

    auto* converge = app.add_subcommand("converge", "spatial convergence study (N = m)");
    std::string m_list_str = "10:100";
    converge->add_option("--m-list", m_list_str, "m values, e.g. 20:100 or 10,20,40");
    add_common(converge, true);

    auto* temporal = app.add_subcommand("temporal-study", "EP vs IT temporal error at fixed m");
    std::string n_list_str = "10:100";
    temporal->add_option("--n-list", n_list_str, "N values, e.g. 10:100");
    add_common(temporal, true);

    auto* oracle = app.add_subcommand("oracle-check", "closed-form / binomial / MC checks");
    add_common(oracle, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (style_str == "european")
            cfg.style = ExerciseStyle::European;
        else if (style_str == "american")
            cfg.style = ExerciseStyle::American;
        else
            throw ConfigError("style must be european or american");

        if (method_str == "pca")
            cfg.method = Method::Pca;
        else if (method_str == "comonotonic")
            cfg.method = Method::Comonotonic;
        else if (method_str == "both")
            cfg.method = Method::Both;
        else
            throw ConfigError("method must be pca, comonotonic or both");

        if (mode_str == "ep")
            cfg.mode = ConstraintMode::EP;
        else if (mode_str == "it")
            cfg.mode = ConstraintMode::IT;
        else
            throw ConfigError("mode must be ep or it");

        cfg.exec = serial ? Exec::Serial : Exec::Parallel;

        if (price->parsed()) {
            const auto rep = run_price(cfg);
            const auto csv = price_csv(rep);
            std::cout << csv;
            return write_out(csv, cfg.out_path);
        }
        if (tables->parsed()) {
            const auto rep = run_tables(which, cfg.m, cfg.n_steps, cfg.exec);
            std::cout << rep.csv;
            if (int rc = write_out(rep.csv, cfg.out_path)) return rc;
            if (rep.failed) {
                std::cerr << "tolerance failure: max deviation " << rep.max_deviation << "\n";
                return 3;
            }
            return 0;
        }
        if (converge->parsed()) {
            const auto rep = run_converge(cfg, parse_int_list(m_list_str));
            std::cout << rep.csv;
            return write_out(rep.csv, cfg.out_path);
        }
        if (temporal->parsed()) {
            const auto rep = run_temporal_study(cfg, parse_int_list(n_list_str));
            std::cout << rep.csv;
            return write_out(rep.csv, cfg.out_path);
        }
        if (oracle->parsed()) {
            const auto rep = run_oracle_check(cfg);
            std::cout << rep.text;
            if (int rc = write_out(rep.text, cfg.out_path)) return rc;
            return rep.failed ? 3 : 0;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
