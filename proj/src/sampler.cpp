#include "basket/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace basket {

namespace {

constexpr double kPi = std::numbers::pi;

constexpr int kGaussN = 10;
constexpr double kGaussX[kGaussN] = {
    -0.9739065285171717, -0.8650633666889845, -0.6794095682990244, -0.4333953941292472,
    -0.1488743389816312, 0.1488743389816312,  0.4333953941292472,  0.6794095682990244,
    0.8650633666889845,  0.9739065285171717};
constexpr double kGaussW[kGaussN] = {
    0.0666713443086881, 0.1494513491505806, 0.2190863625159820, 0.2692667193099963,
    0.2955242247147529, 0.2955242247147529, 0.2692667193099963, 0.2190863625159820,
    0.1494513491505806, 0.0666713443086881};

double clamp_log(double e) { return std::clamp(e, -kMaxLogMoneyness, kMaxLogMoneyness); }

double tan_of(double y) { return std::tan(kPi * (y - 0.5)); }

// dual-cell edges: midpoints between neighbours, faces as outer ghosts
std::vector<double> dual_edges(const std::vector<double>& nodes) {
    const int m = static_cast<int>(nodes.size());
    std::vector<double> mid(m + 1);
    mid[0] = 0.5 * nodes[0];
    for (int i = 1; i < m; ++i) mid[i] = 0.5 * (nodes[i - 1] + nodes[i]);
    mid[m] = 0.5 * (nodes[m - 1] + 1.0);
    return mid;
}

}  // namespace

PlaneSampler::PlaneSampler(const TransformContext& ctx, const BasketSpec& spec,
                           std::span<const double> anchor_y, int axis1, int axis_l,
                           const AxisGrid& grid1, const AxisGrid* grid_l) {
    d_ = spec.d;
    axis1_ = axis1;
    axis_l_ = axis_l;
    strike_ = spec.strike;
    weights_ = spec.weights;
    m1_ = grid1.size();
    ml_ = (axis_l >= 0) ? grid_l->size() : 1;
    nodes1_ = grid1.nodes;
    if (axis_l >= 0) nodesl_ = grid_l->nodes;
    mid1_ = dual_edges(nodes1_);
    if (axis_l >= 0) midl_ = dual_edges(nodesl_);

    std::vector<double> x0(d_);
    for (int k = 0; k < d_; ++k) x0[k] = tan_of(anchor_y[k]);

    coef1_.resize(d_);
    coefl_.assign(d_, 0.0);
    frozen_.assign(d_, 0.0);
    drift_.resize(d_);
    for (int a = 0; a < d_; ++a) {
        coef1_[a] = ctx.spectrum.q(a, axis1);
        if (axis_l >= 0) coefl_[a] = ctx.spectrum.q(a, axis_l);
        for (int k = 0; k < d_; ++k) {
            if (k == axis1 || k == axis_l) continue;
            frozen_[a] += ctx.spectrum.q(a, k) * x0[k];
        }
        drift_[a] = ctx.drift_coef[a];
    }

    f1_.resize(static_cast<size_t>(d_) * m1_);
    for (int a = 0; a < d_; ++a)
        for (int i = 0; i < m1_; ++i)
            f1_[static_cast<size_t>(a) * m1_ + i] = std::exp(clamp_log(coef1_[a] * tan_of(nodes1_[i])));
    fl_.assign(static_cast<size_t>(d_) * ml_, 1.0);
    if (axis_l >= 0)
        for (int a = 0; a < d_; ++a)
            for (int j = 0; j < ml_; ++j)
                fl_[static_cast<size_t>(a) * ml_ + j] =
                    std::exp(clamp_log(coefl_[a] * tan_of(nodesl_[j])));
}

double PlaneSampler::basket_point(double y1, double yl, double t) const {
    const double x1 = tan_of(y1);
    const double xl = (axis_l_ >= 0) ? tan_of(yl) : 0.0;
    double acc = 0.0;
    for (int a = 0; a < d_; ++a) {
        const double e = frozen_[a] + drift_[a] * t + coef1_[a] * x1 + coefl_[a] * xl;
        acc += weights_[a] * std::exp(clamp_log(e));
    }
    return strike_ * acc;
}

double PlaneSampler::psi_point(double y1, double yl, double t) const {
    const double v = strike_ - basket_point(y1, yl, t);
    return v > 0.0 ? v : 0.0;
}

void PlaneSampler::obstacle_into(std::span<double> out, double t, Exec exec) const {
    std::vector<double> scale(d_);
    for (int a = 0; a < d_; ++a)
        scale[a] = strike_ * weights_[a] * std::exp(clamp_log(frozen_[a] + drift_[a] * t));

    const double strike = strike_;
    const int m1 = m1_, ml = ml_, d = d_;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (exec == Exec::Parallel)
#else
    (void)exec;
#endif
    for (int j = 0; j < ml; ++j) {
        double* row = out.data() + static_cast<size_t>(j) * m1;
        for (int i = 0; i < m1; ++i) row[i] = 0.0;
        for (int a = 0; a < d; ++a) {
            const double gv = scale[a] * fl_[static_cast<size_t>(a) * ml + j];
            const double* f = f1_.data() + static_cast<size_t>(a) * m1;
            for (int i = 0; i < m1; ++i) row[i] += gv * f[i];
        }
        for (int i = 0; i < m1; ++i) {
            const double v = strike - row[i];
            row[i] = v > 0.0 ? v : 0.0;
        }
    }
}

std::vector<double> PlaneSampler::obstacle_vector(double t, Exec exec) const {
    std::vector<double> out(static_cast<size_t>(m1_) * ml_);
    obstacle_into(out, t, exec);
    return out;
}

std::vector<int> PlaneSampler::kink_cells() const {
    std::vector<double> scale(d_);
    for (int a = 0; a < d_; ++a)
        scale[a] = strike_ * weights_[a] * std::exp(clamp_log(frozen_[a]));  // t = 0

    // factor tables at the dual-cell edges
    std::vector<double> fm1(static_cast<size_t>(d_) * (m1_ + 1));
    for (int a = 0; a < d_; ++a)
        for (int i = 0; i <= m1_; ++i)
            fm1[static_cast<size_t>(a) * (m1_ + 1) + i] =
                std::exp(clamp_log(coef1_[a] * tan_of(mid1_[i])));

    std::vector<char> flagged(static_cast<size_t>(m1_) * ml_, 0);
    std::vector<double> edge(m1_ + 1);

    // crossings of the axis-1 restriction through each node line
    for (int j = 0; j < ml_; ++j) {
        std::fill(edge.begin(), edge.end(), 0.0);
        for (int a = 0; a < d_; ++a) {
            const double gv = scale[a] * fl_[static_cast<size_t>(a) * ml_ + j];
            const double* f = fm1.data() + static_cast<size_t>(a) * (m1_ + 1);
            for (int i = 0; i <= m1_; ++i) edge[i] += gv * f[i];
        }
        for (int i = 0; i < m1_; ++i) {
            const bool lo_in = strike_ - edge[i] > 0.0;
            const bool hi_in = strike_ - edge[i + 1] > 0.0;
            if (lo_in != hi_in) flagged[static_cast<size_t>(j) * m1_ + i] = 1;
        }
    }

    if (axis_l_ >= 0) {
        std::vector<double> fml(static_cast<size_t>(d_) * (ml_ + 1));
        for (int a = 0; a < d_; ++a)
            for (int j = 0; j <= ml_; ++j)
                fml[static_cast<size_t>(a) * (ml_ + 1) + j] =
                    std::exp(clamp_log(coefl_[a] * tan_of(midl_[j])));
        std::vector<double> col(ml_ + 1);
        for (int i = 0; i < m1_; ++i) {
            std::fill(col.begin(), col.end(), 0.0);
            for (int a = 0; a < d_; ++a) {
                const double gv = scale[a] * f1_[static_cast<size_t>(a) * m1_ + i];
                const double* f = fml.data() + static_cast<size_t>(a) * (ml_ + 1);
                for (int j = 0; j <= ml_; ++j) col[j] += gv * f[j];
            }
            for (int j = 0; j < ml_; ++j) {
                const bool lo_in = strike_ - col[j] > 0.0;
                const bool hi_in = strike_ - col[j + 1] > 0.0;
                if (lo_in != hi_in) flagged[static_cast<size_t>(j) * m1_ + i] = 1;
            }
        }
    }

    std::vector<int> cells;
    for (size_t idx = 0; idx < flagged.size(); ++idx)
        if (flagged[idx]) cells.push_back(static_cast<int>(idx));
    return cells;
}

double PlaneSampler::line_kink(double lo, double hi, double y_other, bool along_axis1,
                               double t) const {
    auto gap = [&](double y) {
        return along_axis1 ? strike_ - basket_point(y, y_other, t)
                           : strike_ - basket_point(y_other, y, t);
    };
    double flo = gap(lo);
    for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fmid = gap(mid);
        if ((flo > 0.0) == (fmid > 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

namespace {
template <typename F>
double gauss_segment(const F& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double acc = 0.0;
    for (int k = 0; k < kGaussN; ++k) acc += kGaussW[k] * f(mid + half * kGaussX[k]);
    return acc * half;
}
}  // namespace

double PlaneSampler::cell_average_1d(int i) const {
    const double lo = mid1_[i], hi = mid1_[i + 1];
    auto f = [&](double y) { return psi_point(y, 0.0, 0.0); };
    const bool lo_in = strike_ - basket_point(lo, 0.0, 0.0) > 0.0;
    const bool hi_in = strike_ - basket_point(hi, 0.0, 0.0) > 0.0;
    double integral;
    if (lo_in != hi_in) {
        const double c = line_kink(lo, hi, 0.0, true, 0.0);
        integral = gauss_segment(f, lo, c) + gauss_segment(f, c, hi);
    } else {
        integral = gauss_segment(f, lo, hi);
    }
    return integral / (hi - lo);
}

double PlaneSampler::cell_average_2d(int i, int j) const {
    const double a1 = mid1_[i], b1 = mid1_[i + 1];
    const double a2 = midl_[j], b2 = midl_[j + 1];

    auto inner_integral = [&](double yl) {
        auto f = [&](double y1) { return psi_point(y1, yl, 0.0); };
        const bool lo_in = strike_ - basket_point(a1, yl, 0.0) > 0.0;
        const bool hi_in = strike_ - basket_point(b1, yl, 0.0) > 0.0;
        if (lo_in != hi_in) {
            const double c = line_kink(a1, b1, yl, true, 0.0);
            return gauss_segment(f, a1, c) + gauss_segment(f, c, b1);
        }
        return gauss_segment(f, a1, b1);
    };

    // the inner integral loses smoothness in y_l where the kink curve crosses
    // the cell sides y1 = a1 or y1 = b1; split the outer integral there
    std::vector<double> cuts = {a2};
    for (double side : {a1, b1}) {
        const bool lo_in = strike_ - basket_point(side, a2, 0.0) > 0.0;
        const bool hi_in = strike_ - basket_point(side, b2, 0.0) > 0.0;
        if (lo_in != hi_in) cuts.push_back(line_kink(a2, b2, side, false, 0.0));
    }
    cuts.push_back(b2);
    std::sort(cuts.begin(), cuts.end());

    double acc = 0.0;
    for (size_t seg = 0; seg + 1 < cuts.size(); ++seg)
        acc += gauss_segment(inner_integral, cuts[seg], cuts[seg + 1]);
    return acc / ((b1 - a1) * (b2 - a2));
}

std::vector<double> PlaneSampler::initial_vector() const {
    std::vector<double> w0 = obstacle_vector(0.0, Exec::Parallel);
    for (int idx : kink_cells()) {
        const int i = idx % m1_;
        const int j = idx / m1_;
        w0[idx] = two_dimensional() ? cell_average_2d(i, j) : cell_average_1d(i);
    }
    return w0;
}

}  // namespace basket
