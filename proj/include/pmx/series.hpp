#pragma once

#include <optional>
#include <vector>

#include "pmx/types.hpp"

namespace pmx {

/// A truncated formal power series at 0 or at infinity.
///
/// Coefficients are stored from the leading exponent toward the truncation
/// order: ascending exponents at 0, descending at infinity.  The leading
/// coefficient is nonzero; the zero series is the one with no coefficients.
/// Values are immutable after construction and safe to share across threads.
class FormalSeries {
public:
    FormalSeries() : center_(Center::Zero) {}

    static FormalSeries zero(Center c) {
        FormalSeries s;
        s.center_ = c;
        return s;
    }

    /// a * z^exponent (zero series when a == 0).
    static FormalSeries monomial(Center c, long exponent, Complex a = 1.0);

    /// The series z.
    static FormalSeries identity(Center c) { return monomial(c, 1); }

    /// Builds a series from raw coefficients, dropping exact-zero leading
    /// coefficients (an all-zero list yields the zero series).
    static FormalSeries from_coefficients(Center c, long leading,
                                          std::vector<Complex> coeffs);

    Center center() const { return center_; }
    bool is_zero() const { return coeffs_.empty(); }

    /// Exponent of the first (nonzero) coefficient.  Zero series has none.
    long leading_index() const;

    /// Last stored exponent: highest at 0, lowest at infinity.
    long order() const;

    long length() const { return static_cast<long>(coeffs_.size()); }

    /// Coefficient of z^exponent; zero outside the stored range.
    Complex coeff(long exponent) const;

    /// Stored coefficients, from the leading index toward the order.
    const std::vector<Complex>& coefficients() const { return coeffs_; }

private:
    Center center_;
    long leading_ = 0;
    std::vector<Complex> coeffs_;
};

/// Validating constructor: requires coeffs[0] != 0 (LeadingCoefficientZero)
/// and |N - p| + 1 == coeffs.size() on the correct side of p (WindowMismatch).
/// The zero series is requested with an empty coefficient list.
FormalSeries make_series(Center center, long p, const std::vector<Complex>& coeffs,
                         long N);

FormalSeries add(const FormalSeries& f, const FormalSeries& g);
FormalSeries subtract(const FormalSeries& f, const FormalSeries& g);
FormalSeries negate(const FormalSeries& f);
FormalSeries scale(const FormalSeries& f, Complex a);

/// Exact product of the stored coefficient ranges (Cauchy convolution).
FormalSeries multiply(const FormalSeries& f, const FormalSeries& g);

/// Drops exponents beyond N (above N at 0, below N at infinity).
FormalSeries truncate(const FormalSeries& f, long N);

/// Term-by-term derivative; the truncation order drops by one.
FormalSeries derivative(const FormalSeries& f);

/// Series r with multiply(f, r) == 1 through order N; leading index -p.
FormalSeries reciprocal(const FormalSeries& f, long N);

/// Exact k-th power, k >= 0.
FormalSeries power(const FormalSeries& f, long k);

/// k-th power truncated at order N; negative k goes through reciprocal with
/// enough working depth that the result is exact through N.
FormalSeries power_truncated(const FormalSeries& f, long k, long N);

/// g(f(z)) for f with leading index 1.  This overload is exact and requires
/// every needed power of f to be a finite expansion (no exponent of g below
/// zero at 0, none above zero at infinity); otherwise pass a truncation order.
FormalSeries compose(const FormalSeries& g, const FormalSeries& f);

/// g(f(z)) truncated at order N; supports negative powers of f.
FormalSeries compose(const FormalSeries& g, const FormalSeries& f, long N);

/// Compositional inverse through order N: compose(g, f) == z == compose(f, g).
FormalSeries comp_inverse(const FormalSeries& f, long N);
FormalSeries comp_inverse(const FormalSeries& f);

enum class TransformKind { Map, Generator };

/// The natural swap between series at 0 and at infinity:
///   Map:       f |-> 1/f(1/z)   (leading index must be 1)
///   Generator: h |-> -z^2 h(1/z)
/// The generator transform is exact; the map transform keeps as many
/// coefficients as the input unless N_out is given.
FormalSeries transform_zero_infinity(const FormalSeries& f, TransformKind kind,
                                     std::optional<long> N_out = std::nullopt);

/// True when h may generate flows at its center: zero, or leading index
/// >= 1 at 0, <= 1 at infinity.
bool is_generator(const FormalSeries& h);

/// True when f has leading index 1 (composition group member).
bool is_map(const FormalSeries& f);

/// sup over the union of exponent ranges of |f_n - g_n|.
double max_coeff_distance(const FormalSeries& f, const FormalSeries& g);

/// Largest coefficient magnitude appearing in either operand.
double coeff_scale(const FormalSeries& f, const FormalSeries& g);

/// Per-coefficient |f_n - g_n| <= abs_tol + rel_tol * max(|f_n|, |g_n|).
bool approx_equal(const FormalSeries& f, const FormalSeries& g,
                  const Tolerance& tol);

inline FormalSeries operator+(const FormalSeries& f, const FormalSeries& g) {
    return add(f, g);
}
inline FormalSeries operator-(const FormalSeries& f, const FormalSeries& g) {
    return subtract(f, g);
}
inline FormalSeries operator-(const FormalSeries& f) { return negate(f); }
inline FormalSeries operator*(const FormalSeries& f, const FormalSeries& g) {
    return multiply(f, g);
}
inline FormalSeries operator*(Complex a, const FormalSeries& f) {
    return scale(f, a);
}

}  // namespace pmx
