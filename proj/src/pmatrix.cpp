#include "pmx/pmatrix.hpp"

#include <algorithm>

#include "pmx/witt.hpp"

namespace pmx {

Window Window::principal(Center c, long n) {
    if (n < 1) fail("WindowMismatch", "window needs at least one row");
    return c == Center::Zero ? Window{c, 1, n} : Window{c, 2 - n, 1};
}

void validate_window(const Window& w) {
    if (w.lo > w.hi) fail("WindowMismatch", "window lo exceeds hi");
}

double max_norm(const Block& b) {
    return b.size() == 0 ? 0.0 : b.cwiseAbs().maxCoeff();
}

namespace {

// Column exponent at storage offset j (same as the row index at offset j).
long window_index(const Window& w, Eigen::Index j) {
    return w.lo + static_cast<long>(j);
}

// True when the block has exact zeros outside the triangular support of its
// center (below the diagonal at 0, above it at infinity).
bool triangular_clean(const PowerMatrixBlock& m) {
    const Block& e = m.entries();
    for (Eigen::Index i = 0; i < e.rows(); ++i)
        for (Eigen::Index j = 0; j < e.cols(); ++j) {
            bool outside = m.window().center == Center::Zero ? j < i : j > i;
            if (outside && e(i, j) != Complex(0.0)) return false;
        }
    return true;
}

}  // namespace

PowerMatrixBlock::PowerMatrixBlock(Window w, Block entries, long source_p)
    : window_(w), entries_(std::move(entries)), source_p_(source_p) {
    validate_window(window_);
    if (entries_.rows() != window_.size() || entries_.cols() != window_.size())
        fail("WindowMismatch", "entry array does not match the window size");
}

PowerMatrixBlock power_matrix(const FormalSeries& f, const Window& w) {
    validate_window(w);
    if (f.is_zero()) fail("ZeroSeries", "the zero series has no power matrix");
    if (f.center() != w.center)
        fail("CenterMismatch", "series and window centers differ");
    long n = w.size();
    long trunc = f.center() == Center::Zero ? w.hi : w.lo;
    Block entries = Block::Zero(n, n);
    for (long i = 0; i < n; ++i) {
        long m = window_index(w, i);
        FormalSeries fm = power_truncated(f, m, trunc);
        for (long j = 0; j < n; ++j)
            entries(i, j) = fm.coeff(window_index(w, j));
    }
    return PowerMatrixBlock(w, std::move(entries), f.leading_index());
}

PowerMatrixBlock identity_block(const Window& w) {
    validate_window(w);
    return PowerMatrixBlock(w, Block::Identity(w.size(), w.size()), 1);
}

FormalSeries first_row_series(const PowerMatrixBlock& m) {
    const Window& w = m.window();
    if (!w.contains(1))
        fail("WindowMismatch", "window does not contain row 1");
    long n = w.size();
    long d = direction(w.center);
    std::vector<Complex> coeffs(static_cast<std::size_t>(n));
    // Stored from the leading exponent toward the truncation order.
    long head = w.center == Center::Zero ? w.lo : w.hi;
    for (long i = 0; i < n; ++i)
        coeffs[static_cast<std::size_t>(i)] = m.entry(1, head + d * i);
    return FormalSeries::from_coefficients(w.center, head, std::move(coeffs));
}

PowerMatrixBlock mat_mul(const PowerMatrixBlock& a, const PowerMatrixBlock& b) {
    if (a.window() != b.window())
        fail("WindowMismatch", "block product needs identical windows");
    if (!triangular_clean(a) || !triangular_clean(b))
        fail("OrientationMismatch",
             "operands are not triangular in the window's orientation");
    Block prod = a.entries() * b.entries();
    return PowerMatrixBlock(a.window(), std::move(prod),
                            a.source_p() * b.source_p());
}

RowRelationReport verify_row_relations(const PowerMatrixBlock& mat,
                                       const Tolerance& tol) {
    const Window& w = mat.window();
    RowRelationReport rep;
    if (!w.contains(1)) return rep;  // relations reference row 1
    bool at_zero = w.center == Center::Zero;
    for (long m = w.lo + 1; m <= w.hi; ++m) {
        long n_lo = at_zero ? m : w.lo + 1;
        long n_hi = at_zero ? w.hi : m;
        for (long n = n_lo; n <= n_hi; ++n) {
            // All referenced entries must stay inside the window.
            long l_lo = at_zero ? m - 1 : n - 1;
            long l_hi = at_zero ? n - 1 : m - 1;
            if (l_lo < w.lo || l_hi > w.hi) continue;
            bool in_range = true;
            for (long l = l_lo; l <= l_hi && in_range; ++l)
                if (!w.contains(n - l)) in_range = false;
            if (!in_range) continue;
            Complex lhs = double(n) * mat.entry(m, n);
            Complex rhs = 0.0;
            double scale = std::abs(lhs);
            for (long l = l_lo; l <= l_hi; ++l) {
                Complex term = double(m) * double(n - l) * mat.entry(m - 1, l) *
                               mat.entry(1, n - l);
                rhs += term;
                scale = std::max(scale, std::abs(term));
            }
            double residual = std::abs(lhs - rhs);
            rep.max_residual = std::max(rep.max_residual, residual);
            ++rep.checked;
            if (residual > tol.abs_tol + tol.rel_tol * scale) rep.pass = false;
        }
    }
    return rep;
}

bool sandwich_identity_check(const FormalSeries& g, const FormalSeries& h,
                             const FormalSeries& f, long m, const Window& w,
                             const Tolerance& tol) {
    validate_window(w);
    if (g.is_zero() || f.is_zero())
        fail("NotComposable", "sandwich check needs nonzero g and f");
    if (g.center() != w.center || h.center() != w.center || f.center() != w.center)
        fail("NotComposable", "sandwich check needs a single common center");
    if (!is_map(f)) fail("NotComposable", "f must have leading index 1");
    if (!is_generator(h)) fail("NotComposable", "h must be a valid generator");
    if (!w.contains(m)) fail("WindowMismatch", "row m is outside the window");
    long d = direction(w.center);
    if (d * (g.leading_index() - 1) < 0)
        fail("NotComposable",
             "g must lead at index >= 1 at 0 (<= 1 at infinity) for block products");

    // Right side: row m of [g] <h> [f] on the window.
    Block triple = power_matrix(g, w).entries() *
                   infinitesimal_matrix(h, w).entries() *
                   power_matrix(f, w).entries();
    long row_off = m - w.lo;

    // Left side: the series m g^(m-1)(f) g'(f) h(f).  Every factor is
    // composed to a working depth past the window; a factor with leading
    // exponent above the cut would otherwise poison the product's deepest
    // retained coefficients.
    long trunc = w.center == Center::Zero ? w.hi : w.lo;
    long pg = std::labs(g.leading_index());
    long deep = trunc + d * ((std::labs(m) + 2) * (pg + 1) + 2);
    long deeper = deep + d * (std::labs(m) + 2) * (pg + 1);
    FormalSeries lhs = FormalSeries::zero(w.center);
    if (m != 0 && !h.is_zero()) {
        FormalSeries gf = compose(g, f, deeper);
        FormalSeries part = power_truncated(gf, m - 1, deep);
        part = multiply(part, compose(derivative(g), f, deep));
        part = multiply(part, compose(h, f, deep));
        lhs = truncate(scale(part, double(m)), trunc);
    }

    for (long j = 0; j < w.size(); ++j) {
        long col = w.lo + j;
        Complex want = lhs.coeff(col);
        Complex got = triple(row_off, j);
        double scl = std::max(std::abs(want), std::abs(got));
        if (std::abs(want - got) > tol.abs_tol + tol.rel_tol * scl) return false;
    }
    return true;
}

}  // namespace pmx
