#pragma once

#include "pmx/pmatrix.hpp"
#include "pmx/series.hpp"
#include "pmx/types.hpp"

namespace pmx {

/// Principal block of an infinitesimal power matrix: entry (m, n) is
/// m * h_(n - m + 1) for the stored generator h.  The generator is the
/// authoritative data; the entries are derived from it.
class InfMatrixBlock {
public:
    InfMatrixBlock(FormalSeries generator, Window w);

    const Window& window() const { return window_; }
    const FormalSeries& generator() const { return generator_; }
    const Block& entries() const { return entries_; }

    Complex entry(long row, long col) const {
        return entries_(row - window_.lo, col - window_.lo);
    }

private:
    Window window_;
    FormalSeries generator_;
    Block entries_;
};

/// Block of <h> over the window; h must vanish appropriately at the center
/// (leading index >= 1 at 0, <= 1 at infinity; the zero series is allowed).
InfMatrixBlock infinitesimal_matrix(const FormalSeries& h, const Window& w);

/// e_k = <z^(k+1)>, the k-diagonal basis element; k >= 0 at 0, k <= 0 at
/// infinity.
InfMatrixBlock basis_element(long k, const Window& w);

/// Matrix commutator representing the derivation bracket: satisfies
/// bracket_matrix(e_k, e_l) = (l - k) e_(k+l) and, on the window, equals
/// infinitesimal_matrix(bracket_series(h_a, h_b)).
Block bracket_matrix(const InfMatrixBlock& a, const InfMatrixBlock& b);

/// h1 h2' - h1' h2.
FormalSeries bracket_series(const FormalSeries& h1, const FormalSeries& h2);

/// Block exponential of t * <h>.  Column k is computed from the principal
/// sub-block spanning indices up to k only, so every entry depends on
/// exactly the generator coefficients it mathematically depends on
/// (bit-for-bit; later coefficients never enter).
PowerMatrixBlock mexp(const InfMatrixBlock& a, double t = 1.0);

/// Matrix logarithm of a unipotent block: the alternating nilpotent sum,
/// exactly blocksize - 1 terms.  The result's generator has h_1 = 0.
InfMatrixBlock mlog(const PowerMatrixBlock& m, const Tolerance& tol = Tolerance{});

/// The generator h with mexp(<h>, 1) == m, h_1 = Log(m^1_1) + 2*pi*i*branch_k,
/// solved coefficient by coefficient through re-exponentiation of the
/// truncated generator.
FormalSeries exp_inverse(const PowerMatrixBlock& m, long branch_k = 0);

/// Action of exp(h d/dz) on g: the series of row 1 of [g] mexp(<h>, 1),
/// computed over a window extended to cover g's leading index.
FormalSeries exp_derivation(const FormalSeries& h, const FormalSeries& g,
                            const Window& w);

struct PowerBound {
    double value = 0.0;  // |[<h>^n]^1_k|
    double bound = 0.0;  // k^(2n) M_k^(n+k-1)
};

/// First-row entry of <h>^n against its a-priori growth bound, where
/// M_k = sup |h_j|^(1/j) over the first k generator indices.
PowerBound power_bound(const FormalSeries& h, long n, long k);

/// M_k itself.
double coefficient_growth_scale(const FormalSeries& h, long k);

/// A-priori bound M_k^(k-1) exp(k^2 M_k) on |[exp <h>]^1_k|.
double exp_first_row_bound(const FormalSeries& h, long k);

}  // namespace pmx
