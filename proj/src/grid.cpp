#include "basket/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace basket {

namespace {

// Total sinh-argument span of the map for a given stretch alpha.
double arg_span(double anchor, double alpha) {
    return std::asinh((1.0 - anchor) / alpha) + std::asinh(anchor / alpha);
}

}  // namespace

AxisGrid build_axis_grid(int m, double anchor) {
    if (m < 3) throw DomainError("grid needs at least 3 nodes");
    if (!(anchor > 0.0 && anchor < 1.0))
        throw DomainError("grid anchor must lie in (0,1), got " + std::to_string(anchor));

    const double dxi = 1.0 / (m + 1);
    // Consecutive interior widths satisfy h_{j+1}/h_j in [exp(-s), exp(s)]
    // with s = dphi * dxi, so capping s at log(ratio cap) bounds the ratio.
    const double span_cap = std::log(kGridMeshRatioCap) / dxi;

    double alpha = kGridFocusHalfWidth;
    if (arg_span(anchor, alpha) > span_cap) {
        double lo = alpha, hi = 1.0;
        while (arg_span(anchor, hi) > span_cap) hi *= 2.0;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            (arg_span(anchor, mid) > span_cap ? lo : hi) = mid;
        }
        alpha = hi;
    }

    const double phi0 = std::asinh(-anchor / alpha);
    const double dphi = arg_span(anchor, alpha);

    AxisGrid grid;
    grid.anchor = anchor;
    grid.nodes.resize(m);
    for (int j = 0; j < m; ++j)
        grid.nodes[j] = anchor + alpha * std::sinh(phi0 + (j + 1) * dxi * dphi);

    // shift every node by the (sub-cell) offset that puts the nearest one on
    // the anchor; interior widths and their ratios are unchanged
    int jstar = 0;
    for (int j = 1; j < m; ++j)
        if (std::fabs(grid.nodes[j] - anchor) < std::fabs(grid.nodes[jstar] - anchor)) jstar = j;
    const double shift = anchor - grid.nodes[jstar];
    for (double& y : grid.nodes) y += shift;
    grid.nodes[jstar] = anchor;
    grid.anchor_index = jstar;

    if (!(grid.nodes.front() > 0.0) || !(grid.nodes.back() < 1.0))
        throw DomainError("grid shift pushed a node outside (0,1)");
    return grid;
}

FdCoefficients fd_coefficients(double h_minus, double h_plus) {
    const double hm = h_minus, hp = h_plus;
    const double hs = hm + hp;
    FdCoefficients c;
    c.first.lo = -hp / (hm * hs);
    c.first.mid = (hp - hm) / (hm * hp);
    c.first.hi = hm / (hp * hs);
    c.second.lo = 2.0 / (hm * hs);
    c.second.mid = -2.0 / (hm * hp);
    c.second.hi = 2.0 / (hp * hs);
    return c;
}

}  // namespace basket
