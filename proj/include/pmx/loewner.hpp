#pragma once

#include <functional>

#include "pmx/pmatrix.hpp"
#include "pmx/series.hpp"
#include "pmx/witt.hpp"

namespace pmx {

enum class Kind { Pde, Ode };

inline const char* kind_name(Kind k) { return k == Kind::Pde ? "pde" : "ode"; }

/// Coefficient-evolution problem with a constant generator.
///
/// PDE kind evolves d f_t / dt = h f_t' from f_a, realized as
/// [f_t] = [f_a] exp((t - a) <h>).  ODE kind evolves d w_t / dt = -h(w_t)
/// from w_a, realized as [w_t] = exp(-(t - a) <h>) [w_a].
struct LoewnerProblem {
    Kind kind = Kind::Pde;
    FormalSeries generator;
    FormalSeries initial;
    double a = 0.0;
    Window window;
};

/// Validates centers, the generator's index range and the initial map.
LoewnerProblem make_problem(Kind kind, FormalSeries generator,
                            FormalSeries initial, double a, Window window);

PowerMatrixBlock evolve_pde_const(const LoewnerProblem& prob, double t);
PowerMatrixBlock evolve_ode_const(const LoewnerProblem& prob, double t);

struct ApproxPlan {
    long q = 0;
    double horizon = 0.0;
    double eps = 0.0;
    double bound_achieved = 0.0;
};

/// Smallest Taylor degree q whose certified remainder bound on
/// ||exp(t <h>) - T_q||, uniform over |t| <= T on an n-row block, is <= eps.
/// The bound sums exact block power norms past q and closes the tail with
/// the coarse coefficient estimate of ||<h>||.
ApproxPlan taylor_degree_for_tolerance(const FormalSeries& h, long n, double T,
                                       double eps);

/// The coarse remainder bound (1/n)(exp(T n ||<h>||) - partial sum through q)
/// with ||<h>|| estimated as n * max |h_l| over the first n coefficients.
double taylor_tail_bound_coarse(const FormalSeries& h, long n, double T, long q);

/// evolve_*_const with mexp replaced by the degree-q Taylor partial sum
/// (evaluated at -(t - a) <h> for the ODE kind).
PowerMatrixBlock evolve_truncated_polynomial(const LoewnerProblem& prob, double t,
                                             long q);

/// h with f_dot = h f' through f's order (PDE-side generator recovery).
FormalSeries recover_pde_generator(const FormalSeries& f, const FormalSeries& f_dot);

/// h~ = f_dot o f^(-1) (ODE-side generator recovery, plain sign).
FormalSeries recover_ode_generator(const FormalSeries& f, const FormalSeries& f_dot);

/// Classical fixed-step 4th-order integration of the closed finite system for
/// the window's coefficients; the independent check on the exponential
/// solutions.  The callback overload supplies the generator at time t.
FormalSeries integrate_coefficient_ode(const LoewnerProblem& prob, double t_end,
                                       long steps);
FormalSeries integrate_coefficient_ode(
    const LoewnerProblem& prob, double t_end, long steps,
    const std::function<FormalSeries(double)>& generator_at);

}  // namespace pmx
