#pragma once

#include <random>
#include <vector>

#include "pmx/pmatrix.hpp"
#include "pmx/series.hpp"

namespace pmx::testing {

inline FormalSeries series0(std::initializer_list<Complex> coeffs, long p = 1) {
    return FormalSeries::from_coefficients(Center::Zero, p,
                                           std::vector<Complex>(coeffs));
}

inline FormalSeries series_inf(std::initializer_list<Complex> coeffs, long p = 1) {
    return FormalSeries::from_coefficients(Center::Infinity, p,
                                           std::vector<Complex>(coeffs));
}

struct Rng {
    std::mt19937_64 gen;
    explicit Rng(std::uint64_t seed) : gen(seed) {}

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(gen);
    }

    /// Uniform over the closed disc of the given radius.
    Complex disc(double radius = 1.0) {
        double r = radius * std::sqrt(uniform(0.0, 1.0));
        double phi = uniform(0.0, 2.0 * 3.14159265358979323846);
        return Complex(r * std::cos(phi), r * std::sin(phi));
    }

    /// Random series with `len` coefficients in the disc and a leading
    /// coefficient kept away from zero.
    FormalSeries series(Center c, long leading, long len, double radius = 1.0) {
        std::vector<Complex> coeffs(static_cast<std::size_t>(len));
        for (auto& x : coeffs) x = disc(radius);
        while (std::abs(coeffs[0]) < 0.1 * radius) coeffs[0] = disc(radius);
        return FormalSeries::from_coefficients(c, leading, std::move(coeffs));
    }

    /// Random generator at the given center with `len` coefficients.
    FormalSeries generator(Center c, long len, double radius = 1.0) {
        return series(c, 1, len, radius);
    }

    /// Random map (leading index 1).  The leading coefficient keeps modulus
    /// in [radius/2, radius] so reversion stays well conditioned.
    FormalSeries map(Center c, long len, double radius = 1.0) {
        std::vector<Complex> coeffs(static_cast<std::size_t>(len));
        for (auto& x : coeffs) x = disc(radius);
        double r = uniform(radius * 0.5, radius);
        double phi = uniform(0.0, 2.0 * 3.14159265358979323846);
        coeffs[0] = Complex(r * std::cos(phi), r * std::sin(phi));
        return FormalSeries::from_coefficients(c, 1, std::move(coeffs));
    }
};

inline double block_distance(const Block& a, const Block& b) {
    return max_norm(a - b);
}

/// Deviation scaled the way the acceptance suite reads bare tolerances:
/// a comparison passes at tol when distance <= tol * (1 + scale of operands).
inline bool blocks_close(const Block& a, const Block& b, double tol) {
    return block_distance(a, b) <= tol * (1.0 + std::max(max_norm(a), max_norm(b)));
}

inline bool series_close(const FormalSeries& a, const FormalSeries& b, double tol) {
    return max_coeff_distance(a, b) <= tol * (1.0 + coeff_scale(a, b));
}

}  // namespace pmx::testing
