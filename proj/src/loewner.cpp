#include "pmx/loewner.hpp"

#include <algorithm>
#include <cmath>

namespace pmx {

namespace {

constexpr long kMaxTailTerms = 4000;

Block taylor_partial_sum(const Block& b, long q) {
    const Eigen::Index n = b.rows();
    Block sum = Block::Identity(n, n);
    Block term = Block::Identity(n, n);
    for (long m = 1; m <= q; ++m) {
        term = (term * b).eval();
        term /= double(m);
        sum += term;
    }
    return sum;
}

// n * max |h_l| over the window's coefficient indices: the coefficient
// estimate of ||<h>|| on an n-row block.
double generator_norm_estimate(const FormalSeries& h, long n) {
    double m = 0.0;
    long d = direction(h.center());
    for (long j = 1; std::labs(j - 1) < n; j += d)
        m = std::max(m, std::abs(h.coeff(j)));
    return double(n) * m;
}

}  // namespace

LoewnerProblem make_problem(Kind kind, FormalSeries generator, FormalSeries initial,
                            double a, Window window) {
    validate_window(window);
    if (generator.center() != window.center)
        fail("CenterMismatch", "generator and window centers differ");
    if (initial.center() != window.center)
        fail("CenterMismatch", "initial series and window centers differ");
    if (!is_generator(generator))
        fail("BadGeneratorIndex",
             "generator must lead at index >= 1 at 0 (<= 1 at infinity)");
    if (!is_map(initial))
        fail("NotComposable", "initial series must have leading index 1");
    return LoewnerProblem{kind, std::move(generator), std::move(initial), a, window};
}

PowerMatrixBlock evolve_pde_const(const LoewnerProblem& prob, double t) {
    if (prob.kind != Kind::Pde)
        fail("KindMismatch", "problem is not of PDE kind");
    PowerMatrixBlock f = power_matrix(prob.initial, prob.window);
    PowerMatrixBlock e =
        mexp(infinitesimal_matrix(prob.generator, prob.window), t - prob.a);
    return mat_mul(f, e);
}

PowerMatrixBlock evolve_ode_const(const LoewnerProblem& prob, double t) {
    if (prob.kind != Kind::Ode)
        fail("KindMismatch", "problem is not of ODE kind");
    PowerMatrixBlock e =
        mexp(infinitesimal_matrix(prob.generator, prob.window), -(t - prob.a));
    PowerMatrixBlock w = power_matrix(prob.initial, prob.window);
    return mat_mul(e, w);
}

double taylor_tail_bound_coarse(const FormalSeries& h, long n, double T, long q) {
    double x = T * double(n) * generator_norm_estimate(h, n);
    // exp(x) minus its partial sum through q, with terms built iteratively.
    double tail = 0.0;
    double term = 1.0;
    for (long m = 1; m <= q; ++m) term *= x / double(m);
    for (long m = q + 1; m <= kMaxTailTerms; ++m) {
        term *= x / double(m);
        tail += term;
        if (term < tail * 1e-18 && double(m) > x) break;
    }
    return tail / double(n);
}

ApproxPlan taylor_degree_for_tolerance(const FormalSeries& h, long n, double T,
                                       double eps) {
    if (eps <= 0.0 || T <= 0.0)
        fail("NonPositiveTolerance", "horizon and tolerance must be positive");
    if (n < 1) fail("WindowMismatch", "block size must be >= 1");
    Window w = Window::principal(h.center(), n);
    Block a = infinitesimal_matrix(h, w).entries();
    double est = generator_norm_estimate(h, n);
    double x = T * double(n) * est;

    // crude_term = x^m / m! and p = A^m / (n est)^m, so the summand
    // T^m ||A^m|| / m! equals max_norm(p) * crude_term without overflow.
    std::vector<double> sharp;  // sharp[m-1] = T^m ||A^m|| / m!
    double crude_term = 1.0;
    Block p = Block::Identity(n, n);
    long j_cap = 0;
    double crude_remainder = 0.0;
    for (long m = 1; m <= kMaxTailTerms; ++m) {
        crude_term *= x / double(m);
        if (est > 0.0) {
            p = (p * a).eval();
            p /= double(n) * est;
        } else {
            p.setZero();
        }
        sharp.push_back(max_norm(p) * crude_term);
        j_cap = m;
        // Past m > x the crude series is dominated by a geometric tail; stop
        // once that certified remainder is negligible next to eps.
        double r = x / double(m + 1);
        if (r < 1.0) {
            crude_remainder = crude_term * r / (1.0 - r) / double(n);
            if (crude_remainder <= eps * 0.01) break;
        }
    }

    // bound(q) = sum_{m=q+1..J} T^m ||A^m|| / m!  +  coarse remainder past J.
    std::vector<double> bound(static_cast<std::size_t>(j_cap) + 1, crude_remainder);
    for (long q = j_cap - 1; q >= 0; --q)
        bound[static_cast<std::size_t>(q)] =
            bound[static_cast<std::size_t>(q) + 1] +
            sharp[static_cast<std::size_t>(q)];
    ApproxPlan plan;
    plan.horizon = T;
    plan.eps = eps;
    long q = 0;
    while (q < j_cap && bound[static_cast<std::size_t>(q)] > eps) ++q;
    plan.q = q;
    plan.bound_achieved = bound[static_cast<std::size_t>(q)];
    if (plan.bound_achieved > eps)
        fail("PlanUnreachable",
             "no degree within the term cap certifies the requested tolerance");
    return plan;
}

PowerMatrixBlock evolve_truncated_polynomial(const LoewnerProblem& prob, double t,
                                             long q) {
    if (q < 0) fail("WindowMismatch", "degree must be >= 0");
    double s = t - prob.a;
    Block a = infinitesimal_matrix(prob.generator, prob.window).entries();
    PowerMatrixBlock init = power_matrix(prob.initial, prob.window);
    if (prob.kind == Kind::Pde) {
        PowerMatrixBlock tq(prob.window, taylor_partial_sum(s * a, q), 1);
        return mat_mul(init, tq);
    }
    PowerMatrixBlock tq(prob.window, taylor_partial_sum(-s * a, q), 1);
    return mat_mul(tq, init);
}

FormalSeries recover_pde_generator(const FormalSeries& f, const FormalSeries& f_dot) {
    if (f.is_zero() || !is_map(f))
        fail("NotComposable", "f must have leading index 1");
    if (f_dot.is_zero()) return FormalSeries::zero(f.center());
    if (f_dot.center() != f.center())
        fail("CenterMismatch", "f and f_dot centers differ");
    long N = f.order();
    // the product needs the reciprocal only down to N minus f_dot's valence
    FormalSeries r = reciprocal(derivative(f), N - f_dot.leading_index());
    return truncate(multiply(f_dot, r), N);
}

FormalSeries recover_ode_generator(const FormalSeries& f, const FormalSeries& f_dot) {
    if (f.is_zero() || !is_map(f))
        fail("NotComposable", "f must have leading index 1");
    if (f_dot.is_zero()) return FormalSeries::zero(f.center());
    if (f_dot.center() != f.center())
        fail("CenterMismatch", "f and f_dot centers differ");
    long N = f.order();
    return compose(f_dot, comp_inverse(f, N), N);
}

namespace {

using State = Eigen::VectorXcd;

State series_to_state(const FormalSeries& f, const Window& w) {
    State c(w.size());
    for (long j = 0; j < w.size(); ++j) c(j) = f.coeff(w.lo + j);
    return c;
}

FormalSeries state_to_series(const State& c, const Window& w) {
    long n = w.size();
    long d = direction(w.center);
    long head = w.center == Center::Zero ? w.lo : w.hi;
    std::vector<Complex> coeffs(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i)
        coeffs[static_cast<std::size_t>(i)] = c(head + d * i - w.lo);
    return FormalSeries::from_coefficients(w.center, head, std::move(coeffs));
}

}  // namespace

FormalSeries integrate_coefficient_ode(
    const LoewnerProblem& prob, double t_end, long steps,
    const std::function<FormalSeries(double)>& generator_at) {
    if (steps < 1) fail("NonPositiveSteps", "need at least one step");
    const Window& w = prob.window;
    long trunc = w.center == Center::Zero ? w.hi : w.lo;
    auto rhs = [&](double t, const State& c) -> State {
        FormalSeries f = state_to_series(c, w);
        FormalSeries h = generator_at(t);
        FormalSeries d = prob.kind == Kind::Pde
                             ? truncate(multiply(h, derivative(f)), trunc)
                             : negate(compose(h, f, trunc));
        return series_to_state(d, w);
    };
    State c = series_to_state(prob.initial, w);
    double dt = (t_end - prob.a) / double(steps);
    double t = prob.a;
    for (long i = 0; i < steps; ++i) {
        State k1 = rhs(t, c);
        State k2 = rhs(t + dt / 2, c + (dt / 2) * k1);
        State k3 = rhs(t + dt / 2, c + (dt / 2) * k2);
        State k4 = rhs(t + dt, c + dt * k3);
        c += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        t = prob.a + dt * double(i + 1);
    }
    return state_to_series(c, w);
}

FormalSeries integrate_coefficient_ode(const LoewnerProblem& prob, double t_end,
                                       long steps) {
    return integrate_coefficient_ode(
        prob, t_end, steps, [&](double) { return prob.generator; });
}

}  // namespace pmx
