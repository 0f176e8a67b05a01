// Timings of the batched plane kernels, serial reference vs OpenMP, plus one
// full pricing run per mode. Usage: bench_kernels [m] [reps]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "basket/engines.hpp"
#include "basket/presets.hpp"
#include "basket/sampler.hpp"
#include "basket/stepper.hpp"
#include "basket/tridiag.hpp"

using namespace basket;

namespace {

double now() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

template <typename F>
double time_best(int reps, const F& f) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const double t0 = now();
        f();
        best = std::min(best, now() - t0);
    }
    return best;
}

double checksum(const std::vector<double>& v) {
    double acc = 0.0;
    for (size_t i = 0; i < v.size(); i += 97) acc += v[i];
    return acc;
}

}  // namespace

int main(int argc, char** argv) {
    const int m = argc > 1 ? std::atoi(argv[1]) : 1000;
    const int reps = argc > 2 ? std::atoi(argv[2]) : 5;
    const size_t n = static_cast<size_t>(m) * m;

#ifdef _OPENMP
    std::printf("m = %d, reps = %d, OpenMP threads = %d\n", m, reps, omp_get_max_threads());
#else
    std::printf("m = %d, reps = %d, OpenMP not enabled\n", m, reps);
#endif

    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Tridiagonal t1 = Tridiagonal::zero(m), tl = Tridiagonal::zero(m);
    for (int i = 0; i < m; ++i) {
        t1.diag[i] = 3.0 + u(rng);
        tl.diag[i] = 3.0 + u(rng);
        if (i > 0) {
            t1.sub[i] = u(rng);
            tl.sub[i] = u(rng);
        }
        if (i < m - 1) {
            t1.sup[i] = u(rng);
            tl.sup[i] = u(rng);
        }
    }
    const auto lu1 = lu_tridiagonal(t1);
    const auto lul = lu_tridiagonal(tl);
    std::vector<double> plane(n), out(n);
    for (auto& v : plane) v = u(rng);

    struct Row {
        const char* name;
        double serial, parallel;
        double check_serial, check_parallel;
    };
    std::vector<Row> rows;

    auto bench_pair = [&](const char* name, auto&& run) {
        Row row{name, 0.0, 0.0, 0.0, 0.0};
        row.serial = time_best(reps, [&] { run(Exec::Serial); });
        row.check_serial = checksum(out);
        row.parallel = time_best(reps, [&] { run(Exec::Parallel); });
        row.check_parallel = checksum(out);
        rows.push_back(row);
    };

    bench_pair("apply_axis0", [&](Exec e) { apply_axis0(t1, plane, out, m, m, e); });
    bench_pair("apply_axis1", [&](Exec e) { apply_axis1(tl, plane, out, m, m, e); });
    bench_pair("solve_axis0", [&](Exec e) {
        out = plane;
        solve_axis0_inplace(lu1, out, m, m, e);
    });
    bench_pair("solve_axis1", [&](Exec e) {
        out = plane;
        solve_axis1_inplace(lul, out, m, m, e);
    });

    // obstacle evaluation and one full constrained plane step on a real
    // sub-problem of set A
    {
        const BasketSpec spec = make_preset("A", ExerciseStyle::American);
        const auto ctx = make_context(spec, eigendecompose(covariance(spec), spec.d));
        const auto y0 = s_to_y(spec.spot, spec.maturity, ctx);
        const AxisGrid g1 = build_axis_grid(m, y0[0]);
        const AxisGrid gl = build_axis_grid(m, y0[1]);
        const PlaneSampler sampler(ctx, spec, y0, 0, 1, g1, &gl);
        bench_pair("obstacle_eval", [&](Exec e) { sampler.obstacle_into(out, 0.5, e); });

        DiscreteProblem prob;
        prob.op1 = assemble_axis_operator(g1, ctx.spectrum.eigenvalues[0], 0.5 * spec.rate, ctx,
                                          ExerciseStyle::American, 0);
        prob.op_l = assemble_axis_operator(gl, ctx.spectrum.eigenvalues[1], 0.5 * spec.rate, ctx,
                                           ExerciseStyle::American, 1);
        prob.w0 = sampler.initial_vector();
        prob.obstacle = &sampler;
        prob.maturity = spec.maturity;
        Row row{"it_step(2D)", 0.0, 0.0, 0.0, 0.0};
        {
            AdiStepper st(prob, 100, ConstraintMode::IT, Exec::Serial);
            row.serial = time_best(reps, [&] { st.douglas_step(0.5); });
            row.check_serial = 0.0;
        }
        {
            AdiStepper st(prob, 100, ConstraintMode::IT, Exec::Parallel);
            row.parallel = time_best(reps, [&] { st.douglas_step(0.5); });
            row.check_parallel = 0.0;
        }
        rows.push_back(row);
    }

    std::printf("%-14s %12s %12s %9s  %s\n", "kernel", "serial [ms]", "openmp [ms]", "speedup",
                "bitwise");
    for (const auto& r : rows) {
        const bool same = r.check_serial == r.check_parallel;
        std::printf("%-14s %12.3f %12.3f %8.2fx  %s\n", r.name, 1e3 * r.serial, 1e3 * r.parallel,
                    r.serial / r.parallel, same ? "yes" : "MISMATCH");
    }

    // end-to-end: one full set A American pricing at moderate resolution
    EngineConfig serial_cfg{250, 250, ConstraintMode::IT, Exec::Serial};
    EngineConfig parallel_cfg{250, 250, ConstraintMode::IT, Exec::Parallel};
    const BasketSpec a = make_preset("A", ExerciseStyle::American);
    const double t_serial = time_best(1, [&] { pca_price(a, serial_cfg); });
    const double t_parallel = time_best(1, [&] { pca_price(a, parallel_cfg); });
    std::printf("%-14s %12.3f %12.3f %8.2fx  (m = N = 250)\n", "pca_price(A)", 1e3 * t_serial,
                1e3 * t_parallel, t_serial / t_parallel);
    return 0;
}
