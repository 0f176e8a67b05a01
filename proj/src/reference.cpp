#include "basket/reference.hpp"

#include <cmath>
#include <limits>

namespace basket {

namespace {

constexpr auto kEU = ExerciseStyle::European;
constexpr auto kAM = ExerciseStyle::American;

// Sets A-F, European (external reference values at m = N = 1000)
constexpr ReferenceRow kTable1[] = {
    {"A", kEU, 0.17577, 0.17583, 0.17577, 7},
    {"B", kEU, 0.83257, 0.84125, 0.83942, 7},
    {"C", kEU, 0.77065, 0.78083, 0.77955, 7},
    {"D", kEU, 9.46550, 9.46570, 9.46523, 7},
    {"E", kEU, 9.10039, 9.10128, 9.09974, 7},
    {"F", kEU, 8.76358, 8.76554, 8.76255, 7},
};

// Sets A-F, American (IT)
constexpr ReferenceRow kTable2[] = {
    {"A", kAM, 0.18110, 0.18120, 0.18114, 7},
    {"B", kAM, 1.07928, 1.08615, 1.08431, 7},
    {"C", kAM, 1.01641, 1.02435, 1.02306, 7},
    {"D", kAM, 9.86176, 9.86206, 9.86159, 7},
    {"E", kAM, 9.49645, 9.49774, 9.49620, 7},
    {"F", kAM, 9.15935, 9.16219, 9.15920, 7},
};

constexpr double kNA = std::numeric_limits<double>::quiet_NaN();

// HL grid, European. Entries without an external anchor are regression
// values computed with this engine at m = N = 1000.
constexpr ReferenceRow kTable3[] = {
    {"HL-T0.5-K35-V0.3", kEU, 2.13020, kNA, kNA, 1},
    {"HL-T0.5-K35-V0.9", kEU, kNA, kNA, kNA, 0},
    {"HL-T0.5-K40-V0.3", kEU, kNA, kNA, kNA, 0},
    {"HL-T0.5-K40-V0.9", kEU, kNA, kNA, kNA, 0},
    {"HL-T0.5-K45-V0.3", kEU, kNA, kNA, kNA, 0},
    {"HL-T0.5-K45-V0.9", kEU, kNA, kNA, kNA, 0},
    {"HL-T1-K35-V0.3", kEU, kNA, kNA, kNA, 0},
    {"HL-T1-K35-V0.9", kEU, kNA, kNA, kNA, 0},
    {"HL-T1-K40-V0.3", kEU, kNA, kNA, kNA, 0},
    {"HL-T1-K40-V0.9", kEU, kNA, kNA, kNA, 0},
    {"HL-T1-K45-V0.3", kEU, kNA, kNA, kNA, 0},
    {"HL-T1-K45-V0.9", kEU, kNA, kNA, kNA, 0},
    {"HL-T2-K35-V0.3", kEU, kNA, kNA, kNA, 0},
    {"HL-T2-K35-V0.9", kEU, kNA, kNA, kNA, 0},
    {"HL-T2-K40-V0.3", kEU, kNA, kNA, kNA, 0},
    {"HL-T2-K40-V0.9", kEU, kNA, kNA, kNA, 0},
    {"HL-T2-K45-V0.3", kEU, kNA, kNA, kNA, 0},
    {"HL-T2-K45-V0.9", kEU, kNA, kNA, kNA, 0},
};

// HL grid, American (IT)
constexpr ReferenceRow kTable4[] = {
    {"HL-T0.5-K35-V0.3", kAM, kNA, kNA, kNA, 0},
    {"HL-T0.5-K35-V0.9", kAM, kNA, kNA, kNA, 0},
    {"HL-T0.5-K40-V0.3", kAM, kNA, kNA, kNA, 0},
    {"HL-T0.5-K40-V0.9", kAM, kNA, kNA, kNA, 0},
    {"HL-T0.5-K45-V0.3", kAM, kNA, kNA, kNA, 0},
    {"HL-T0.5-K45-V0.9", kAM, kNA, kNA, kNA, 0},
    {"HL-T1-K35-V0.3", kAM, kNA, kNA, kNA, 0},
    {"HL-T1-K35-V0.9", kAM, kNA, kNA, kNA, 0},
    {"HL-T1-K40-V0.3", kAM, kNA, 6.02870, kNA, 2},
    {"HL-T1-K40-V0.9", kAM, kNA, kNA, kNA, 0},
    {"HL-T1-K45-V0.3", kAM, kNA, kNA, kNA, 0},
    {"HL-T1-K45-V0.9", kAM, kNA, kNA, kNA, 0},
    {"HL-T2-K35-V0.3", kAM, kNA, kNA, kNA, 0},
    {"HL-T2-K35-V0.9", kAM, kNA, kNA, kNA, 0},
    {"HL-T2-K40-V0.3", kAM, kNA, kNA, kNA, 0},
    {"HL-T2-K40-V0.9", kAM, kNA, kNA, kNA, 0},
    {"HL-T2-K45-V0.3", kAM, kNA, kNA, kNA, 0},
    {"HL-T2-K45-V0.9", kAM, kNA, 12.40399, kNA, 2},
};

}  // namespace

std::span<const ReferenceRow> reference_table(int which) {
    switch (which) {
        case 1: return kTable1;
        case 2: return kTable2;
        case 3: return kTable3;
        case 4: return kTable4;
        default: throw DomainError("reference table index must be 1..4");
    }
}

std::optional<ReferenceRow> find_reference(const std::string& preset, ExerciseStyle style) {
    for (int which = 1; which <= 4; ++which)
        for (const auto& row : reference_table(which))
            if (preset == row.preset && style == row.style) return row;
    return std::nullopt;
}

double table_tolerance(int which, const ReferenceRow& row) {
    if (which == 1 || which == 2) {
        if (row.preset[0] == 'A') return 1e-3;
        return std::max(2e-3, 5e-4 * std::fabs(row.u_tilde));
    }
    return 5e-3;
}

}  // namespace basket
