#include "pmx/witt.hpp"

#include <algorithm>
#include <cmath>

namespace pmx {

namespace {

constexpr int kMaxExpPasses = 400;
constexpr double kPi = 3.14159265358979323846;

// exp of a full triangular block by scaling and squaring.  The series on the
// scaled block is summed until a whole pass leaves the accumulator bit-for-bit
// unchanged and the pass count has passed the block size (so nilpotent parts
// are summed in full).
Block exp_dense(const Block& m) {
    const Eigen::Index n = m.rows();
    double nrm = max_norm(m);
    int s = 0;
    if (nrm * double(n) > 1.0)
        s = static_cast<int>(std::ceil(std::log2(nrm * double(n))));
    Block a = m * std::ldexp(1.0, -s);
    Block sum = Block::Identity(n, n);
    Block term = Block::Identity(n, n);
    for (int j = 1;; ++j) {
        if (j > kMaxExpPasses)
            throw std::runtime_error("matrix exponential failed to settle");
        term = (term * a).eval();
        term /= double(j);
        Block next = sum + term;
        if (j > n && max_norm(next - sum) == 0.0) break;
        sum.swap(next);
    }
    for (int i = 0; i < s; ++i) sum = (sum * sum).eval();
    return sum;
}

// Window index of storage offset j.
long window_index(const Window& w, Eigen::Index j) {
    return w.lo + static_cast<long>(j);
}

}  // namespace

InfMatrixBlock::InfMatrixBlock(FormalSeries generator, Window w)
    : window_(w), generator_(std::move(generator)) {
    validate_window(window_);
    if (generator_.center() != window_.center)
        fail("CenterMismatch", "generator and window centers differ");
    if (!is_generator(generator_))
        fail("BadGeneratorIndex",
             "generator must lead at index >= 1 at 0 (<= 1 at infinity)");
    long n = window_.size();
    entries_ = Block::Zero(n, n);
    for (long i = 0; i < n; ++i) {
        long row = window_index(window_, i);
        for (long j = 0; j < n; ++j) {
            long col = window_index(window_, j);
            Complex c = generator_.coeff(col - row + 1);
            if (c != Complex(0.0)) entries_(i, j) = double(row) * c;
        }
    }
}

InfMatrixBlock infinitesimal_matrix(const FormalSeries& h, const Window& w) {
    return InfMatrixBlock(h, w);
}

InfMatrixBlock basis_element(long k, const Window& w) {
    if (direction(w.center) * k < 0)
        fail("BadGeneratorIndex", "k must be >= 0 at 0 and <= 0 at infinity");
    return InfMatrixBlock(FormalSeries::monomial(w.center, k + 1), w);
}

Block bracket_matrix(const InfMatrixBlock& a, const InfMatrixBlock& b) {
    if (a.window() != b.window())
        fail("WindowMismatch", "bracket needs identical windows");
    // The commutator ordered so that brackets of basis elements come out as
    // bracket_matrix(e_k, e_l) = (l - k) e_(k+l), matching the series bracket.
    return b.entries() * a.entries() - a.entries() * b.entries();
}

FormalSeries bracket_series(const FormalSeries& h1, const FormalSeries& h2) {
    if (h1.center() != h2.center())
        fail("CenterMismatch", "bracket needs generators at the same center");
    return subtract(multiply(h1, derivative(h2)), multiply(derivative(h1), h2));
}

PowerMatrixBlock mexp(const InfMatrixBlock& a, double t) {
    const Window& w = a.window();
    long n = w.size();
    Block b = t * a.entries();
    Block r = Block::Zero(n, n);
    if (w.center == Center::Zero) {
        for (long j = 0; j < n; ++j)
            r.col(j).head(j + 1) = exp_dense(b.topLeftCorner(j + 1, j + 1)).col(j);
    } else {
        for (long j = 0; j < n; ++j)
            r.col(j).tail(n - j) =
                exp_dense(b.bottomRightCorner(n - j, n - j)).col(0);
    }
    return PowerMatrixBlock(w, std::move(r), 1);
}

namespace {

// Product of triangular blocks with the summation index clamped to the
// triangular support, so an entry touches exactly the sub-block it lives in.
Block triangular_product(const Block& x, const Block& y, Center c) {
    const Eigen::Index n = x.rows();
    Block out = Block::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            Eigen::Index k_lo = c == Center::Zero ? i : j;
            Eigen::Index k_hi = c == Center::Zero ? j : i;
            Complex acc = 0.0;
            for (Eigen::Index k = k_lo; k <= k_hi; ++k) acc += x(i, k) * y(k, j);
            out(i, j) = acc;
        }
    return out;
}

}  // namespace

InfMatrixBlock mlog(const PowerMatrixBlock& m, const Tolerance& tol) {
    const Window& w = m.window();
    if (!w.contains(1))
        fail("WindowMismatch", "logarithm needs row 1 in the window");
    Complex m11 = m.entry(1, 1);
    if (std::abs(m11 - 1.0) > tol.abs_tol + tol.rel_tol)
        fail("NotUnipotent", "entry (1,1) must equal 1");
    long n = w.size();
    Block x = m.entries() - Block::Identity(n, n);
    Block sum = Block::Zero(n, n);
    Block pw = x;
    for (long k = 1; k <= n - 1; ++k) {
        double c = (k % 2 == 1 ? 1.0 : -1.0) / double(k);
        sum += c * pw;
        if (k < n - 1) pw = triangular_product(pw, x, w.center);
    }
    // Row 1 of the sum is the generator itself.
    long d = direction(w.center);
    long head = w.center == Center::Zero ? w.lo : w.hi;
    std::vector<Complex> coeffs(static_cast<std::size_t>(n));
    long row_off = 1 - w.lo;
    for (long i = 0; i < n; ++i)
        coeffs[static_cast<std::size_t>(i)] =
            sum(row_off, head + d * i - w.lo);
    FormalSeries h =
        FormalSeries::from_coefficients(w.center, head, std::move(coeffs));
    return InfMatrixBlock(h, w);
}

namespace {

// (e^x - 1) / x, stable near x = 0.
Complex phi1(Complex x) {
    if (std::abs(x) < 1e-3)
        return 1.0 + x * (0.5 + x * (1.0 / 6.0 + x * (1.0 / 24.0 + x / 120.0)));
    return (std::exp(x) - 1.0) / x;
}

// Coefficient of h_k in [exp <h>]^1_k: the weighted path sum
// sum_n h_1^(n-1) (k^(n-1) + ... + 1) / n! = e^(h_1) phi1((k - 1) h_1).
Complex exp_linear_factor(Complex h1, long k) {
    return std::exp(h1) * phi1(double(k - 1) * h1);
}

}  // namespace

FormalSeries exp_inverse(const PowerMatrixBlock& m, long branch_k) {
    const Window& w = m.window();
    if (!w.contains(1))
        fail("WindowMismatch", "inversion needs row 1 in the window");
    Complex m11 = m.entry(1, 1);
    if (m11 == Complex(0.0))
        fail("SingularLeading", "entry (1,1) must be nonzero");
    Center c = w.center;
    long d = direction(c);
    long span = c == Center::Zero ? w.hi : 2 - w.lo;  // generator indices 1 .. 1+d(span-1)
    Complex h1 = std::log(m11) + Complex(0.0, 2.0 * kPi * double(branch_k));
    std::vector<Complex> hc(static_cast<std::size_t>(span), 0.0);
    hc[0] = h1;
    for (long j = 1; j < span; ++j) {
        long k = 1 + d * j;  // coefficient index being solved
        std::vector<Complex> known(hc.begin(), hc.begin() + j);
        FormalSeries partial = FormalSeries::from_coefficients(c, 1, std::move(known));
        Window sub = c == Center::Zero ? Window{c, 1, k} : Window{c, k, 1};
        PowerMatrixBlock e = mexp(infinitesimal_matrix(partial, sub), 1.0);
        Complex psi = e.entry(1, k);
        Complex factor = exp_linear_factor(h1, k);
        if (std::abs(factor) == 0.0)
            fail("ResonantBranch",
                 "(k-1) h_1 is a multiple of 2 pi i; this branch does not "
                 "determine coefficient " + std::to_string(k));
        hc[static_cast<std::size_t>(j)] = (m.entry(1, k) - psi) / factor;
    }
    return FormalSeries::from_coefficients(c, 1, std::move(hc));
}

FormalSeries exp_derivation(const FormalSeries& h, const FormalSeries& g,
                            const Window& w) {
    validate_window(w);
    if (h.center() != w.center || (!g.is_zero() && g.center() != w.center))
        fail("CenterMismatch", "generator, series and window centers differ");
    if (g.is_zero()) return g;
    long p = g.leading_index();
    Window ext = w;
    if (w.center == Center::Zero)
        ext.lo = std::min(ext.lo, p);
    else
        ext.hi = std::max(ext.hi, p);
    PowerMatrixBlock e = mexp(infinitesimal_matrix(h, ext), 1.0);
    long n = ext.size();
    Eigen::RowVectorXcd row(n);
    for (long j = 0; j < n; ++j) row(j) = g.coeff(window_index(ext, j));
    Eigen::RowVectorXcd out = row * e.entries();
    long d = direction(ext.center);
    long head = ext.center == Center::Zero ? ext.lo : ext.hi;
    std::vector<Complex> coeffs(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i)
        coeffs[static_cast<std::size_t>(i)] = out(d > 0 ? i : n - 1 - i);
    return FormalSeries::from_coefficients(ext.center, head, std::move(coeffs));
}

double coefficient_growth_scale(const FormalSeries& h, long k) {
    double m = 0.0;
    long d = direction(h.center());
    for (long j = 1; d * (k - j) >= 0; j += d) {
        if (j == 0) continue;  // |h_0|^(1/0) is not defined
        double a = std::abs(h.coeff(j));
        if (a > 0.0) m = std::max(m, std::pow(a, 1.0 / double(j)));
    }
    return m;
}

PowerBound power_bound(const FormalSeries& h, long n, long k) {
    if (n < 1) fail("WindowMismatch", "power must be >= 1");
    Center c = h.center();
    if (direction(c) * (k - 1) < 0)
        fail("BadGeneratorIndex", "k is outside the generator's index range");
    Window w = c == Center::Zero ? Window{c, 1, std::max(k, 1L)}
                                 : Window{c, std::min(k, 1L), 1};
    Block a = infinitesimal_matrix(h, w).entries();
    Block pw = a;
    for (long i = 1; i < n; ++i) pw = (pw * a).eval();
    PowerBound out;
    out.value = std::abs(pw(1 - w.lo, k - w.lo));
    double mk = coefficient_growth_scale(h, k);
    out.bound = std::pow(double(k), 2.0 * double(n)) *
                std::pow(mk, double(n + k - 1));
    return out;
}

double exp_first_row_bound(const FormalSeries& h, long k) {
    double mk = coefficient_growth_scale(h, k);
    return std::pow(mk, double(k - 1)) *
           std::exp(double(k) * double(k) * mk);
}

}  // namespace pmx
