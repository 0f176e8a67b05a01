#pragma once

#include <vector>

#include "basket/grid.hpp"
#include "basket/transform.hpp"
#include "basket/tridiag.hpp"

namespace basket {

/// Semidiscrete operator of one spatial direction:
/// row j of A encodes lambda*[p(y_j) D2 + q(y_j) D1] - share_r, and the
/// boundary source g(t) carries the Dirichlet value of each face times the
/// stencil weight reaching it.
struct AxisOperator {
    Tridiagonal matrix;
    double lower_coupling = 0.0;  // stencil weight of the y=0 ghost in row 0
    double upper_coupling = 0.0;  // stencil weight of the y=1 ghost in row m-1
    ColumnClass cls = ColumnClass::Mixed;
    ExerciseStyle style = ExerciseStyle::European;
    double strike = 0.0;
    double rate = 0.0;

    int size() const { return matrix.size(); }

    /// Dirichlet value on the lower face at time t (upper face is always 0).
    double lower_face_value(double t) const {
        return boundary_value(cls, 0, t, strike, rate, style);
    }
    /// g(t) materialised as a dense vector (rows away from the faces are 0).
    std::vector<double> boundary_source(double t) const;
    /// g contribution of row 0; the only nonzero entry in practice.
    double source_row0(double t) const { return lower_coupling * lower_face_value(t); }
};

/// share_r is the fraction of the reaction term -r carried by this axis
/// (times r): r in 1D, r/2 per axis in 2D.
AxisOperator assemble_axis_operator(const AxisGrid& grid, double lambda, double share_r,
                                    const TransformContext& ctx, ExerciseStyle style,
                                    int axis_column);

}  // namespace basket
