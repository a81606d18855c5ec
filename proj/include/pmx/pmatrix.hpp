#pragma once

#include <Eigen/Dense>

#include "pmx/series.hpp"
#include "pmx/types.hpp"

namespace pmx {

using Block = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;

/// Index range of a principal block plus its center.  The canonical window
/// is (1, N) at 0 and (K, 1) at infinity.
struct Window {
    Center center = Center::Zero;
    long lo = 1;
    long hi = 1;

    long size() const { return hi - lo + 1; }
    bool contains(long idx) const { return lo <= idx && idx <= hi; }

    /// Canonical window of n rows: (1, n) at 0, (2 - n, 1) at infinity.
    static Window principal(Center c, long n);
};

inline bool operator==(const Window& a, const Window& b) {
    return a.center == b.center && a.lo == b.lo && a.hi == b.hi;
}
inline bool operator!=(const Window& a, const Window& b) { return !(a == b); }

void validate_window(const Window& w);

/// sup |entries|.
double max_norm(const Block& b);

/// The (lo, hi) principal block of a power matrix: row m holds the
/// coefficients of f^m over the window's exponents.  Upper triangular at 0,
/// lower triangular at infinity; immutable once built.
class PowerMatrixBlock {
public:
    PowerMatrixBlock(Window w, Block entries, long source_p);

    const Window& window() const { return window_; }
    const Block& entries() const { return entries_; }

    /// Leading index of the generating series (1 for group elements).
    long source_p() const { return source_p_; }

    /// Entry addressed by window indices.
    Complex entry(long row, long col) const {
        return entries_(row - window_.lo, col - window_.lo);
    }

private:
    Window window_;
    Block entries_;
    long source_p_;
};

/// Builds the principal block of [f] by truncated powers of f.
PowerMatrixBlock power_matrix(const FormalSeries& f, const Window& w);

/// Identity block (the power matrix of z).
PowerMatrixBlock identity_block(const Window& w);

/// The series stored in row 1 of the block.
FormalSeries first_row_series(const PowerMatrixBlock& m);

/// Exact finite block product; requires identical windows and clean
/// triangular support on both operands.
PowerMatrixBlock mat_mul(const PowerMatrixBlock& a, const PowerMatrixBlock& b);

struct RowRelationReport {
    bool pass = true;
    double max_residual = 0.0;
    long checked = 0;
};

/// Checks n [f]^m_n = sum_l m (n - l) [f]^(m-1)_l [f]^1_(n-l) for every
/// in-window pair whose terms all lie in the window.  Report-only.
RowRelationReport verify_row_relations(const PowerMatrixBlock& m,
                                       const Tolerance& tol);

/// Compares the series m g^(m-1)(f) g'(f) h(f) against row m of the block
/// product [g] <h> [f] over the window.
bool sandwich_identity_check(const FormalSeries& g, const FormalSeries& h,
                             const FormalSeries& f, long m, const Window& w,
                             const Tolerance& tol);

}  // namespace pmx
