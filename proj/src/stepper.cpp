#include "basket/stepper.hpp"

#include <cmath>

namespace basket {

namespace {

// I - coef * A
Tridiagonal implicit_matrix(const Tridiagonal& a, double coef) {
    const int n = a.size();
    Tridiagonal m = Tridiagonal::zero(n);
    for (int i = 0; i < n; ++i) {
        m.diag[i] = 1.0 - coef * a.diag[i];
        m.sub[i] = -coef * a.sub[i];
        m.sup[i] = -coef * a.sup[i];
    }
    return m;
}

}  // namespace

AdiStepper::AdiStepper(const DiscreteProblem& p, int n_steps, ConstraintMode mode, Exec exec)
    : p_(p), mode_(mode), exec_(exec) {
    if (n_steps < 1) throw DomainError("need at least one time step");
    if (mode != ConstraintMode::None && p.obstacle == nullptr)
        throw DomainError("constrained stepping needs an obstacle sampler");

    m1_ = p.m1();
    ml_ = p.two_dimensional() ? p.ml() : 1;
    dt_ = p.maturity / n_steps;

    // one factorisation per axis: the Douglas stages and both damping half
    // steps all solve (I - dt/2 A_k)
    lu1_ = lu_tridiagonal(implicit_matrix(p.op1.matrix, 0.5 * dt_));
    if (p.two_dimensional()) lul_ = lu_tridiagonal(implicit_matrix(p.op_l->matrix, 0.5 * dt_));

    w_ = p.w0;
    const size_t n = w_.size();
    u_.assign(n, 0.0);
    v_.assign(n, 0.0);
    z_.assign(n, 0.0);
    if (mode == ConstraintMode::IT) mu_.assign(n, 0.0);
    if (mode != ConstraintMode::None) psi_.assign(n, 0.0);
}

void AdiStepper::add_boundary_sources(std::vector<double>& z, double t, double scale) const {
    // only the lower faces carry data; the upper-face Dirichlet value is 0
    const double g1 = p_.op1.source_row0(t);
    if (g1 != 0.0) {
        const double add = scale * g1;
        for (int j = 0; j < ml_; ++j) z[static_cast<size_t>(j) * m1_] += add;
    }
    if (p_.two_dimensional()) {
        const double gl = p_.op_l->source_row0(t);
        if (gl != 0.0) {
            const double add = scale * gl;
            for (int i = 0; i < m1_; ++i) z[i] += add;
        }
    }
}

void AdiStepper::add_axis_correction(std::vector<double>& z, const AxisOperator& op, bool axis0,
                                     double t_prev, double t_new) const {
    const double dg = op.source_row0(t_new) - op.source_row0(t_prev);
    if (dg == 0.0) return;
    const double add = 0.5 * dt_ * dg;
    if (axis0) {
        for (int j = 0; j < ml_; ++j) z[static_cast<size_t>(j) * m1_] += add;
    } else {
        for (int i = 0; i < m1_; ++i) z[i] += add;
    }
}

void AdiStepper::apply_constraint(double t, double delta) {
    const auto n = static_cast<long long>(w_.size());
    p_.obstacle->obstacle_into(psi_, t, exec_);
    if (mode_ == ConstraintMode::EP) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (exec_ == Exec::Parallel)
#endif
        for (long long i = 0; i < n; ++i) w_[i] = std::max(z_[i], psi_[i]);
    } else {
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (exec_ == Exec::Parallel)
#endif
        for (long long i = 0; i < n; ++i) {
            const double unconstrained = z_[i] - delta * mu_[i];
            w_[i] = std::max(unconstrained, psi_[i]);
            mu_[i] = std::max(0.0, mu_[i] + (psi_[i] - z_[i]) / delta);
        }
    }
}

void AdiStepper::douglas_step(double t_prev) {
    const double t_new = t_prev + dt_;
    const auto n = static_cast<long long>(w_.size());
    const bool twod = p_.two_dimensional();
    const bool it = mode_ == ConstraintMode::IT;

    apply_axis0(p_.op1.matrix, w_, u_, m1_, ml_, exec_);
    if (twod) apply_axis1(p_.op_l->matrix, w_, v_, m1_, ml_, exec_);

    // predictor folded with the first-stage correction:
    // z = W + dt (A1 W / 2 + Al W + mu) ; boundary terms added separately
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (exec_ == Exec::Parallel)
#endif
    for (long long i = 0; i < n; ++i) {
        double acc = 0.5 * u_[i];
        if (twod) acc += v_[i];
        if (it) acc += mu_[i];
        z_[i] = w_[i] + dt_ * acc;
    }
    add_boundary_sources(z_, t_prev, dt_);
    add_axis_correction(z_, p_.op1, true, t_prev, t_new);
    solve_axis0_inplace(lu1_, z_, m1_, ml_, exec_);

    if (twod) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (exec_ == Exec::Parallel)
#endif
        for (long long i = 0; i < n; ++i) z_[i] -= 0.5 * dt_ * v_[i];
        add_axis_correction(z_, *p_.op_l, false, t_prev, t_new);
        solve_axis1_inplace(lul_, z_, m1_, ml_, exec_);
    }

    if (mode_ == ConstraintMode::None)
        w_.swap(z_);
    else
        apply_constraint(t_new, dt_);
}

void AdiStepper::rannacher_start() {
    const double half = 0.5 * dt_;
    const auto n = static_cast<long long>(w_.size());
    const bool it = mode_ == ConstraintMode::IT;

    for (int sub = 1; sub <= 2; ++sub) {
        const double t_new = sub * half;
        // fully implicit half step in factored form: no explicit operator
        // term, g evaluated at the new time
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (exec_ == Exec::Parallel)
#endif
        for (long long i = 0; i < n; ++i) z_[i] = it ? w_[i] + half * mu_[i] : w_[i];
        add_boundary_sources(z_, t_new, half);
        solve_axis0_inplace(lu1_, z_, m1_, ml_, exec_);
        if (p_.two_dimensional()) solve_axis1_inplace(lul_, z_, m1_, ml_, exec_);

        if (mode_ == ConstraintMode::None)
            w_.swap(z_);
        else
            apply_constraint(t_new, half);
    }
}

IntegrateResult integrate(const DiscreteProblem& problem, int n_steps, TimeScheme scheme,
                          ConstraintMode mode, Exec exec, const StepObserver* observer) {
    if (scheme == TimeScheme::CrankNicolson && problem.two_dimensional())
        throw DomainError("Crank-Nicolson integration is the line-problem case");
    if (mode != ConstraintMode::None && problem.obstacle != nullptr) {
        if (problem.obstacle->m1() != problem.m1() ||
            problem.obstacle->ml() != (problem.two_dimensional() ? problem.ml() : 1))
            throw DomainError("obstacle sampler does not match the problem grid");
    }

    AdiStepper stepper(problem, n_steps, mode, exec);
    stepper.rannacher_start();
    if (observer) (*observer)(1, stepper.dt(), stepper.w(), stepper.multiplier());
    for (int step = 2; step <= n_steps; ++step) {
        const double t_prev = (step - 1) * stepper.dt();
        stepper.douglas_step(t_prev);
        // t_prev + dt, not step * dt: bitwise the time the constraint saw
        if (observer)
            (*observer)(step, t_prev + stepper.dt(), stepper.w(), stepper.multiplier());
    }

    IntegrateResult out;
    out.w.assign(stepper.w().begin(), stepper.w().end());
    out.multiplier.assign(stepper.multiplier().begin(), stepper.multiplier().end());
    return out;
}

}  // namespace basket
