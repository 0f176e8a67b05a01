#include "basket/presets.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

namespace basket {

namespace {

BasketSpec uniform_basket(int d, double strike, double maturity, double rate, double sigma) {
    BasketSpec s;
    s.d = d;
    s.strike = strike;
    s.maturity = maturity;
    s.rate = rate;
    s.weights.assign(d, 1.0 / d);
    s.sigmas.assign(d, sigma);
    s.spot.assign(d, strike);
    s.corr.assign(static_cast<size_t>(d) * d, 0.0);
    return s;
}

void fill_constant_corr(BasketSpec& s, double rho) {
    for (int i = 0; i < s.d; ++i)
        for (int j = 0; j < s.d; ++j)
            s.corr[static_cast<size_t>(i) * s.d + j] = (i == j) ? 1.0 : rho;
}

BasketSpec make_set_a() {
    BasketSpec s;
    s.d = 5;
    s.strike = 1.0;
    s.maturity = 1.0;
    s.rate = 0.05;
    s.weights = {0.381, 0.065, 0.057, 0.270, 0.227};
    s.sigmas = {0.518, 0.648, 0.623, 0.570, 0.530};
    s.spot.assign(5, s.strike);
    s.corr = {1.00, 0.79, 0.82, 0.91, 0.84,  //
              0.79, 1.00, 0.73, 0.80, 0.76,  //
              0.82, 0.73, 1.00, 0.77, 0.72,  //
              0.91, 0.80, 0.77, 1.00, 0.90,  //
              0.84, 0.76, 0.72, 0.90, 1.00};
    return s;
}

BasketSpec make_set_bc(int d) {
    BasketSpec s = uniform_basket(d, 40.0, 1.0, 0.06, 0.20);
    fill_constant_corr(s, 0.25);
    return s;
}

BasketSpec make_set_def(int d) {
    BasketSpec s = uniform_basket(d, 100.0, 1.0, 0.04, 0.30);
    constexpr double mu = 0.0413;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            s.corr[static_cast<size_t>(i) * d + j] = std::exp(-mu * std::abs(i - j));
    return s;
}

BasketSpec make_hl(const HlKey& key) {
    BasketSpec s;
    s.d = 8;
    s.strike = key.strike;
    s.maturity = key.maturity;
    s.rate = 0.05;
    s.weights.assign(8, 1.0 / 8.0);
    s.sigmas = {key.sigma1, 0.6, 0.1, 0.9, 0.3, 0.7, 0.8, 0.2};
    s.spot.assign(8, 40.0);
    s.corr.assign(64, 0.0);
    fill_constant_corr(s, 0.8);
    return s;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string format_short(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

}  // namespace

std::string hl_id(const HlKey& key) {
    return "HL-T" + format_short(key.maturity) + "-K" + format_short(key.strike) + "-V" +
           format_short(key.sigma1);
}

std::vector<HlKey> hl_grid() {
    std::vector<HlKey> keys;
    for (double t : {0.5, 1.0, 2.0})
        for (double k : {35.0, 40.0, 45.0})
            for (double v : {0.3, 0.9}) keys.push_back({t, k, v});
    return keys;
}

std::vector<std::string> preset_ids() {
    std::vector<std::string> ids = {"A", "B", "C", "D", "E", "F"};
    for (const auto& key : hl_grid()) ids.push_back(hl_id(key));
    return ids;
}

bool is_preset(const std::string& id) {
    const auto ids = preset_ids();
    return std::find(ids.begin(), ids.end(), id) != ids.end();
}

BasketSpec make_preset(const std::string& id, ExerciseStyle style) {
    BasketSpec s;
    if (id == "A")
        s = make_set_a();
    else if (id == "B")
        s = make_set_bc(10);
    else if (id == "C")
        s = make_set_bc(15);
    else if (id == "D")
        s = make_set_def(5);
    else if (id == "E")
        s = make_set_def(10);
    else if (id == "F")
        s = make_set_def(15);
    else {
        bool found = false;
        for (const auto& key : hl_grid()) {
            if (hl_id(key) == id) {
                s = make_hl(key);
                found = true;
                break;
            }
        }
        if (!found) throw ConfigError("unknown preset '" + id + "'");
    }
    s.style = style;
    return validate(std::move(s));
}

namespace {

std::vector<double> parse_number_list(const std::string& value, const std::string& key, int line) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        try {
            size_t pos = 0;
            out.push_back(std::stod(item, &pos));
            if (pos != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ConfigError("line " + std::to_string(line) + ": key '" + key +
                              "': cannot parse number '" + item + "'");
        }
    }
    return out;
}

}  // namespace

BasketSpec parse_config_text(const std::string& text) {
    BasketSpec s;
    std::vector<std::pair<int, std::vector<double>>> corr_rows;  // (row index, values)
    bool have_d = false;

    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string stripped = trim(raw);
        if (stripped.empty()) continue;

        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line) + ": expected 'key = value'");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("line " + std::to_string(line) + ": empty key or value");

        if (key == "d") {
            s.d = static_cast<int>(parse_number_list(value, key, line).at(0));
            have_d = true;
        } else if (key == "strike") {
            s.strike = parse_number_list(value, key, line).at(0);
        } else if (key == "maturity") {
            s.maturity = parse_number_list(value, key, line).at(0);
        } else if (key == "rate") {
            s.rate = parse_number_list(value, key, line).at(0);
        } else if (key == "style") {
            if (value == "european")
                s.style = ExerciseStyle::European;
            else if (value == "american")
                s.style = ExerciseStyle::American;
            else
                throw ConfigError("line " + std::to_string(line) +
                                  ": style must be european or american");
        } else if (key == "weights") {
            s.weights = parse_number_list(value, key, line);
        } else if (key == "sigmas") {
            s.sigmas = parse_number_list(value, key, line);
        } else if (key == "spot") {
            s.spot = parse_number_list(value, key, line);
        } else if (key.rfind("corr.row.", 0) == 0) {
            int row = 0;
            try {
                row = std::stoi(key.substr(9));
            } catch (const std::exception&) {
                throw ConfigError("line " + std::to_string(line) + ": bad key '" + key + "'");
            }
            corr_rows.emplace_back(row, parse_number_list(value, key, line));
        } else {
            throw ConfigError("line " + std::to_string(line) + ": unknown key '" + key + "'");
        }
    }

    if (!have_d) throw ConfigError("missing key 'd'");
    s.corr.assign(static_cast<size_t>(s.d) * s.d, 0.0);
    std::vector<bool> seen(s.d, false);
    for (const auto& [row, values] : corr_rows) {
        if (row < 1 || row > s.d)
            throw ConfigError("corr.row." + std::to_string(row) + " out of range 1.." +
                              std::to_string(s.d));
        if (static_cast<int>(values.size()) != s.d)
            throw ConfigError("corr.row." + std::to_string(row) + " needs " +
                              std::to_string(s.d) + " entries");
        seen[row - 1] = true;
        for (int j = 0; j < s.d; ++j) s.corr[static_cast<size_t>(row - 1) * s.d + j] = values[j];
    }
    for (int i = 0; i < s.d; ++i)
        if (!seen[i]) throw ConfigError("missing corr.row." + std::to_string(i + 1));

    return validate(std::move(s));
}

BasketSpec parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

}  // namespace basket
