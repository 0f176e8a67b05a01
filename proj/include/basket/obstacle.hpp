#pragma once

#include <span>

#include "basket/tridiag.hpp"

namespace basket {

/// Supplier of the obstacle vector Psi(t) on the solve grid.
struct ObstacleSource {
    virtual ~ObstacleSource() = default;
    virtual int m1() const = 0;
    virtual int ml() const = 0;
    virtual void obstacle_into(std::span<double> out, double t, Exec exec) const = 0;
};

}  // namespace basket
