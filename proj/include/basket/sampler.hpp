#pragma once

#include <span>
#include <vector>

#include "basket/contract.hpp"
#include "basket/grid.hpp"
#include "basket/obstacle.hpp"
#include "basket/transform.hpp"
#include "basket/tridiag.hpp"

namespace basket {

/// Evaluates the transformed payoff on the line/plane of a reduced problem:
/// the active axes vary over their grids, every other coordinate is frozen at
/// the anchor. Per asset the log-price splits into (frozen + drift) +
/// axis-1 part + axis-l part, so nodal evaluation uses precomputed per-axis
/// factor tables instead of fresh exponentials; the quadrature path
/// (psi_point) uses the direct formula.
class PlaneSampler : public ObstacleSource {
public:
    /// axis_l < 0 builds a one-dimensional sampler (single line).
    PlaneSampler(const TransformContext& ctx, const BasketSpec& spec,
                 std::span<const double> anchor_y, int axis1, int axis_l,
                 const AxisGrid& grid1, const AxisGrid* grid_l);

    int m1() const override { return m1_; }
    int ml() const override { return ml_; }  // 1 for a line
    bool two_dimensional() const { return axis_l_ >= 0; }

    /// Basket value sum_i w_i s_i at in-cell coordinates (direct formula).
    double basket_point(double y1, double yl, double t) const;
    /// psi = max(K - basket, 0) at in-cell coordinates.
    double psi_point(double y1, double yl, double t) const;

    /// Pointwise psi at every node: the obstacle vector Psi(t).
    void obstacle_into(std::span<double> out, double t, Exec exec) const override;
    std::vector<double> obstacle_vector(double t, Exec exec = Exec::Serial) const;

    /// Nodal psi(.,0) with dual-cell averages (composite Gauss-Legendre split
    /// at the payoff kink) replacing the value in cells the kink crosses.
    std::vector<double> initial_vector() const;

    /// Node indices whose dual cell straddles the kink (exposed for tests).
    std::vector<int> kink_cells() const;

private:
    double line_kink(double lo, double hi, double y_other, bool along_axis1, double t) const;
    double cell_average_1d(int i) const;
    double cell_average_2d(int i, int j) const;

    int d_ = 0;
    int axis1_ = 0;
    int axis_l_ = -1;
    int m1_ = 0;
    int ml_ = 1;
    double strike_ = 0.0;
    std::vector<double> weights_;
    std::vector<double> coef1_;    // Q[a][axis1]
    std::vector<double> coefl_;    // Q[a][axis_l], 0 in 1D
    std::vector<double> frozen_;   // sum over inactive k of Q[a][k] * x0_k
    std::vector<double> drift_;    // b_a(t) = drift_[a] * t
    std::vector<double> f1_;       // d x m1: exp(coef1 * x(node_i)), weighted
    std::vector<double> fl_;       // d x ml: exp(coefl * x(node_j))
    std::vector<double> nodes1_, nodesl_;
    std::vector<double> mid1_, midl_;  // dual-cell edges (m+1 each)
};

}  // namespace basket
