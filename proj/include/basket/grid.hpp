#pragma once

#include <vector>

#include "basket/errors.hpp"

namespace basket {

/// Interior nodes of a nonuniform grid on (0,1), densified around the anchor
/// coordinate by a smooth sinh map. One node coincides with the anchor
/// exactly; ghost values at 0 and 1 come from the Dirichlet data.
struct AxisGrid {
    std::vector<double> nodes;  // strictly increasing, all in (0,1)
    int anchor_index = -1;      // nodes[anchor_index] == anchor
    double anchor = 0.0;

    int size() const { return static_cast<int>(nodes.size()); }
    // spacing with the face ghosts at 0 and 1 included; j in [0, m]
    double gap(int j) const {
        const int m = size();
        const double lo = (j == 0) ? 0.0 : nodes[j - 1];
        const double hi = (j == m) ? 1.0 : nodes[j];
        return hi - lo;
    }
};

/// Fraction of the unit interval around the anchor that the sinh map treats as
/// the focus window.
inline constexpr double kGridFocusHalfWidth = 0.15;
/// Bound on the ratio of consecutive interior mesh widths.
inline constexpr double kGridMeshRatioCap = 1.5;

/// Builds the m-node grid. The sinh stretching parameter is widened when m is
/// small so the mesh-ratio cap holds; afterwards all nodes are shifted by the
/// (sub-cell) distance that puts the nearest node exactly on the anchor.
AxisGrid build_axis_grid(int m, double anchor);

struct StencilWeights {
    double lo, mid, hi;
};

/// Central 3-point weights on spacings (h_minus, h_plus), exact for
/// quadratics. First: the first-derivative weights; second: the
/// second-derivative weights.
struct FdCoefficients {
    StencilWeights first;
    StencilWeights second;
};

FdCoefficients fd_coefficients(double h_minus, double h_plus);

}  // namespace basket
