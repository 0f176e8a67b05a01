#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "basket/obstacle.hpp"
#include "basket/operators.hpp"
#include "basket/tridiag.hpp"

namespace basket {

enum class ConstraintMode { None, EP, IT };
enum class TimeScheme { CrankNicolson, Douglas };

/// A reduced problem in semidiscrete form: W'(t) = (A1 [+ Al]) W(t) + g(t),
/// optionally constrained by the obstacle sampler.
struct DiscreteProblem {
    AxisOperator op1;
    std::optional<AxisOperator> op_l;   // present for plane problems
    std::vector<double> w0;
    const ObstacleSource* obstacle = nullptr;  // required for EP/IT
    double maturity = 0.0;

    bool two_dimensional() const { return op_l.has_value(); }
    int m1() const { return op1.size(); }
    int ml() const { return op_l ? op_l->size() : 1; }
};

/// Called after the damped first step and after every full step; used by
/// tests to check feasibility along the way.
using StepObserver =
    std::function<void(int step, double t, std::span<const double> w, std::span<const double> mu)>;

/// Time integrator: Brian-Douglas ADI (Crank-Nicolson in 1D as its A_l = 0
/// special case) with backward-Euler damping of the first step, and the EP /
/// IT complementarity adaptations for American exercise. The two
/// unidirectional solve batches of a stage are the parallel kernels; results
/// do not depend on Exec.
class AdiStepper {
public:
    AdiStepper(const DiscreteProblem& problem, int n_steps, ConstraintMode mode, Exec exec);

    /// First step replaced by two backward-Euler half steps in ADI-factored
    /// form; the constraint update runs after each half step.
    void rannacher_start();

    /// One regular step t_{n-1} -> t_n of the scheme (predictor with the full
    /// operator and g(t_{n-1}), then two unidirectional corrections).
    void douglas_step(double t_prev);

    std::span<const double> w() const { return w_; }
    std::span<const double> multiplier() const { return mu_; }
    double dt() const { return dt_; }

private:
    void add_boundary_sources(std::vector<double>& z, double t, double scale) const;
    void add_axis_correction(std::vector<double>& z, const AxisOperator& op, bool axis0,
                             double t_prev, double t_new) const;
    void apply_constraint(double t, double delta);

    const DiscreteProblem& p_;
    ConstraintMode mode_;
    Exec exec_;
    int m1_, ml_;
    double dt_;
    TriLU lu1_, lul_;  // factors of I - dt/2 A_k (shared by stages and damping)
    std::vector<double> w_, mu_, u_, v_, z_, psi_;
};

struct IntegrateResult {
    std::vector<double> w;
    std::vector<double> multiplier;  // empty unless IT
};

/// Runs the damped first step followed by n_steps - 1 regular steps and
/// returns W at t = maturity. TimeScheme::CrankNicolson is only valid for
/// line problems (it is the A_l = 0 case of the Douglas scheme).
IntegrateResult integrate(const DiscreteProblem& problem, int n_steps, TimeScheme scheme,
                          ConstraintMode mode, Exec exec, const StepObserver* observer = nullptr);

}  // namespace basket
