#include "pmx/series.hpp"

#include <algorithm>
#include <cstdlib>

namespace pmx {

namespace {

void require_same_center(const FormalSeries& f, const FormalSeries& g,
                         const char* op) {
    if (f.center() != g.center())
        fail("CenterMismatch", std::string(op) + " needs operands at the same center");
}

// Offset of exponent e from the leading exponent p, nonnegative inside the
// stored range regardless of center.
long offset_of(Center c, long p, long e) { return direction(c) * (e - p); }

}  // namespace

FormalSeries FormalSeries::monomial(Center c, long exponent, Complex a) {
    if (a == Complex(0.0)) return zero(c);
    FormalSeries s;
    s.center_ = c;
    s.leading_ = exponent;
    s.coeffs_ = {a};
    return s;
}

FormalSeries FormalSeries::from_coefficients(Center c, long leading,
                                             std::vector<Complex> coeffs) {
    std::size_t skip = 0;
    while (skip < coeffs.size() && coeffs[skip] == Complex(0.0)) ++skip;
    if (skip == coeffs.size()) return zero(c);
    FormalSeries s;
    s.center_ = c;
    s.leading_ = leading + direction(c) * static_cast<long>(skip);
    s.coeffs_.assign(coeffs.begin() + static_cast<long>(skip), coeffs.end());
    return s;
}

long FormalSeries::leading_index() const {
    if (is_zero()) fail("ZeroSeries", "the zero series has no leading index");
    return leading_;
}

long FormalSeries::order() const {
    if (is_zero()) fail("ZeroSeries", "the zero series has no order");
    return leading_ + direction(center_) * (length() - 1);
}

Complex FormalSeries::coeff(long exponent) const {
    if (is_zero()) return 0.0;
    long off = offset_of(center_, leading_, exponent);
    if (off < 0 || off >= length()) return 0.0;
    return coeffs_[static_cast<std::size_t>(off)];
}

FormalSeries make_series(Center center, long p, const std::vector<Complex>& coeffs,
                         long N) {
    if (coeffs.empty()) return FormalSeries::zero(center);
    if (coeffs.front() == Complex(0.0))
        fail("LeadingCoefficientZero", "coefficient at the leading index is zero");
    long span = direction(center) * (N - p);
    if (span < 0 || span + 1 != static_cast<long>(coeffs.size()))
        fail("WindowMismatch", "coefficient count does not match the index range");
    FormalSeries s = FormalSeries::from_coefficients(center, p, coeffs);
    return s;
}

FormalSeries add(const FormalSeries& f, const FormalSeries& g) {
    require_same_center(f, g, "add");
    if (f.is_zero()) return g;
    if (g.is_zero()) return f;
    Center c = f.center();
    long d = direction(c);
    long p = d > 0 ? std::min(f.leading_index(), g.leading_index())
                   : std::max(f.leading_index(), g.leading_index());
    long end = d > 0 ? std::max(f.order(), g.order()) : std::min(f.order(), g.order());
    long len = d * (end - p) + 1;
    std::vector<Complex> out(static_cast<std::size_t>(len), 0.0);
    for (long i = 0; i < len; ++i) {
        long e = p + d * i;
        out[static_cast<std::size_t>(i)] = f.coeff(e) + g.coeff(e);
    }
    return FormalSeries::from_coefficients(c, p, std::move(out));
}

FormalSeries subtract(const FormalSeries& f, const FormalSeries& g) {
    return add(f, negate(g));
}

FormalSeries negate(const FormalSeries& f) { return scale(f, -1.0); }

FormalSeries scale(const FormalSeries& f, Complex a) {
    if (f.is_zero() || a == Complex(0.0)) return FormalSeries::zero(f.center());
    std::vector<Complex> out = f.coefficients();
    for (auto& x : out) x *= a;
    return FormalSeries::from_coefficients(f.center(), f.leading_index(),
                                           std::move(out));
}

FormalSeries multiply(const FormalSeries& f, const FormalSeries& g) {
    require_same_center(f, g, "multiply");
    if (f.is_zero() || g.is_zero()) return FormalSeries::zero(f.center());
    const auto& a = f.coefficients();
    const auto& b = g.coefficients();
    std::vector<Complex> out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return FormalSeries::from_coefficients(
        f.center(), f.leading_index() + g.leading_index(), std::move(out));
}

FormalSeries truncate(const FormalSeries& f, long N) {
    if (f.is_zero()) return f;
    long keep = offset_of(f.center(), f.leading_index(), N) + 1;
    if (keep <= 0) return FormalSeries::zero(f.center());
    if (keep >= f.length()) return f;
    std::vector<Complex> out(f.coefficients().begin(),
                             f.coefficients().begin() + keep);
    return FormalSeries::from_coefficients(f.center(), f.leading_index(),
                                           std::move(out));
}

FormalSeries derivative(const FormalSeries& f) {
    if (f.is_zero()) return f;
    long d = direction(f.center());
    long p = f.leading_index();
    std::vector<Complex> out(f.coefficients().size(), 0.0);
    for (long i = 0; i < f.length(); ++i) {
        long e = p + d * i;
        out[static_cast<std::size_t>(i)] =
            f.coefficients()[static_cast<std::size_t>(i)] * double(e);
    }
    return FormalSeries::from_coefficients(f.center(), p - 1, std::move(out));
}

FormalSeries reciprocal(const FormalSeries& f, long N) {
    if (f.is_zero()) fail("ZeroSeries", "reciprocal of the zero series");
    Center c = f.center();
    long q = -f.leading_index();
    long len = offset_of(c, q, N) + 1;
    if (len < 1)
        fail("WindowMismatch", "requested order precedes the reciprocal's leading index");
    const auto& a = f.coefficients();
    std::vector<Complex> r(static_cast<std::size_t>(len), 0.0);
    r[0] = 1.0 / a[0];
    for (long j = 1; j < len; ++j) {
        Complex acc = 0.0;
        long imax = std::min<long>(j, f.length() - 1);
        for (long i = 1; i <= imax; ++i)
            acc += a[static_cast<std::size_t>(i)] * r[static_cast<std::size_t>(j - i)];
        r[static_cast<std::size_t>(j)] = -acc / a[0];
    }
    return FormalSeries::from_coefficients(c, q, std::move(r));
}

FormalSeries power(const FormalSeries& f, long k) {
    if (k < 0) fail("WindowMismatch", "exact power requires k >= 0");
    Center c = f.center();
    if (k == 0) return FormalSeries::monomial(c, 0);
    if (f.is_zero()) return f;
    FormalSeries acc = f;
    for (long i = 1; i < k; ++i) acc = multiply(acc, f);
    return acc;
}

FormalSeries power_truncated(const FormalSeries& f, long k, long N) {
    Center c = f.center();
    if (k == 0) return truncate(FormalSeries::monomial(c, 0), N);
    if (f.is_zero()) return f;
    if (k > 0) return truncate(power(f, k), N);
    // Negative powers: the reciprocal is known through a working order deep
    // enough that its |k|-th power is still exact through N.
    long margin = (std::labs(k) - 1) * std::labs(f.leading_index());
    FormalSeries r = reciprocal(f, N + direction(c) * margin);
    return truncate(power(r, -k), N);
}

namespace {

// a^k for integer k by repeated multiplication.
Complex cpow_int(Complex a, long k) {
    Complex base = k < 0 ? 1.0 / a : a;
    Complex out = 1.0;
    for (long i = 0; i < std::labs(k); ++i) out *= base;
    return out;
}

}  // namespace

FormalSeries compose(const FormalSeries& g, const FormalSeries& f) {
    require_same_center(g, f, "compose");
    if (g.is_zero()) return g;
    if (f.is_zero() || !is_map(f))
        fail("NotComposable", "right factor must have leading index 1");
    long d = direction(g.center());
    long kmin = d > 0 ? g.leading_index() : g.order();
    // negative powers of f are finite expansions only when f is a monomial
    if (kmin < 0 && f.length() > 1)
        fail("NotComposable",
             "expansion is not finite; pass a truncation order");
    FormalSeries acc = FormalSeries::zero(g.center());
    for (long i = 0; i < g.length(); ++i) {
        long k = g.leading_index() + d * i;
        Complex gk = g.coefficients()[static_cast<std::size_t>(i)];
        if (gk == Complex(0.0)) continue;
        FormalSeries fk =
            k >= 0 ? power(f, k)
                   : FormalSeries::monomial(g.center(), k,
                                            cpow_int(f.coefficients()[0], k));
        acc = add(acc, scale(fk, gk));
    }
    return acc;
}

FormalSeries compose(const FormalSeries& g, const FormalSeries& f, long N) {
    require_same_center(g, f, "compose");
    if (g.is_zero()) return g;
    if (f.is_zero() || !is_map(f))
        fail("NotComposable", "right factor must have leading index 1");
    long d = direction(g.center());
    FormalSeries acc = FormalSeries::zero(g.center());
    for (long i = 0; i < g.length(); ++i) {
        long k = g.leading_index() + d * i;
        Complex gk = g.coefficients()[static_cast<std::size_t>(i)];
        if (gk == Complex(0.0)) continue;
        acc = add(acc, scale(power_truncated(f, k, N), gk));
    }
    return truncate(acc, N);
}

FormalSeries comp_inverse(const FormalSeries& f) {
    if (f.is_zero() || !is_map(f))
        fail("NotComposable", "compositional inverse requires leading index 1");
    return comp_inverse(f, f.order());
}

FormalSeries comp_inverse(const FormalSeries& f, long N) {
    if (f.is_zero() || !is_map(f))
        fail("NotComposable", "compositional inverse requires leading index 1");
    Center c = f.center();
    long d = direction(c);
    long len = d * (N - 1) + 1;
    if (len < 1) fail("WindowMismatch", "order must reach the leading index 1");
    // Powers of f through order N; row i holds f^(1 + d*i).
    std::vector<FormalSeries> pw(static_cast<std::size_t>(len));
    for (long i = 0; i < len; ++i)
        pw[static_cast<std::size_t>(i)] = power_truncated(f, 1 + d * i, N);
    // Triangular solve of compose(g, f) = z, one exponent at a time.
    std::vector<Complex> gc(static_cast<std::size_t>(len), 0.0);
    gc[0] = 1.0 / f.coefficients()[0];
    for (long j = 1; j < len; ++j) {
        long n = 1 + d * j;  // exponent being matched
        Complex acc = 0.0;
        for (long i = 0; i < j; ++i)
            acc += gc[static_cast<std::size_t>(i)]
                   * pw[static_cast<std::size_t>(i)].coeff(n);
        Complex diag = pw[static_cast<std::size_t>(j)].coeff(n);  // = f1^n
        gc[static_cast<std::size_t>(j)] = -acc / diag;
    }
    return FormalSeries::from_coefficients(c, 1, std::move(gc));
}

FormalSeries transform_zero_infinity(const FormalSeries& f, TransformKind kind,
                                     std::optional<long> N_out) {
    Center from = f.center();
    Center to = from == Center::Zero ? Center::Infinity : Center::Zero;
    if (kind == TransformKind::Generator) {
        if (!is_generator(f))
            fail("NotComposable", "generator transform needs a valid generator");
        if (f.is_zero()) return FormalSeries::zero(to);
        // -z^2 h(1/z): exponent e maps to 2 - e, coefficients negated.
        std::vector<Complex> out = f.coefficients();
        for (auto& x : out) x = -x;
        FormalSeries r =
            FormalSeries::from_coefficients(to, 2 - f.leading_index(), std::move(out));
        return N_out ? truncate(r, *N_out) : r;
    }
    if (f.is_zero() || !is_map(f))
        fail("NotComposable", "map transform needs leading index 1");
    // 1/f(1/z): reflect the exponents, then invert multiplicatively.
    std::vector<Complex> refl = f.coefficients();
    FormalSeries reflected =
        FormalSeries::from_coefficients(to, -1, std::move(refl));
    long depth = N_out ? *N_out : 1 + direction(to) * (f.length() - 1);
    return reciprocal(reflected, depth);
}

bool is_generator(const FormalSeries& h) {
    if (h.is_zero()) return true;
    return direction(h.center()) * (h.leading_index() - 1) >= 0;
}

bool is_map(const FormalSeries& f) {
    return !f.is_zero() && f.leading_index() == 1;
}

namespace {

template <typename Fn>
void for_union_exponents(const FormalSeries& f, const FormalSeries& g, Fn&& fn) {
    if (f.is_zero() && g.is_zero()) return;
    long d = direction(f.center());
    long lo, hi;
    if (f.is_zero()) {
        lo = g.leading_index();
        hi = g.order();
    } else if (g.is_zero()) {
        lo = f.leading_index();
        hi = f.order();
    } else {
        lo = d > 0 ? std::min(f.leading_index(), g.leading_index())
                   : std::max(f.leading_index(), g.leading_index());
        hi = d > 0 ? std::max(f.order(), g.order()) : std::min(f.order(), g.order());
    }
    for (long e = lo; d * (hi - e) >= 0; e += d) fn(e);
}

}  // namespace

double max_coeff_distance(const FormalSeries& f, const FormalSeries& g) {
    double m = 0.0;
    for_union_exponents(f, g, [&](long e) {
        m = std::max(m, std::abs(f.coeff(e) - g.coeff(e)));
    });
    return m;
}

double coeff_scale(const FormalSeries& f, const FormalSeries& g) {
    double m = 0.0;
    for_union_exponents(f, g, [&](long e) {
        m = std::max({m, std::abs(f.coeff(e)), std::abs(g.coeff(e))});
    });
    return m;
}

bool approx_equal(const FormalSeries& f, const FormalSeries& g,
                  const Tolerance& tol) {
    if (f.center() != g.center()) return false;
    bool ok = true;
    for_union_exponents(f, g, [&](long e) {
        double dev = std::abs(f.coeff(e) - g.coeff(e));
        double scl = std::max(std::abs(f.coeff(e)), std::abs(g.coeff(e)));
        if (dev > tol.abs_tol + tol.rel_tol * scl) ok = false;
    });
    return ok;
}

}  // namespace pmx
