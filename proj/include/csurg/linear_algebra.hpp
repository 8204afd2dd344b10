#pragma once

#include "csurg/int_matrix.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace csurg {

/// left * input * right == diagonal, with left/right unimodular and the
/// diagonal entries d_0 | d_1 | ... nonnegative (zeros last).
struct SmithForm {
    IntMatrix left;
    IntMatrix diagonal;
    IntMatrix right;

    /// The min(rows, cols) diagonal entries.
    IntVector invariant_factors() const;
    std::size_t rank() const;
};

SmithForm smith_normal_form(const IntMatrix& a);

/// Fraction-free (Bareiss) determinant of a square matrix.
Integer determinant(const IntMatrix& a);

struct Inertia {
    std::size_t positive = 0;
    std::size_t negative = 0;
    std::size_t zero = 0;

    long signature() const { return static_cast<long>(positive) - static_cast<long>(negative); }
    friend bool operator==(const Inertia&, const Inertia&) = default;
};

/// Sylvester inertia of a symmetric integer matrix by exact congruence
/// diagonalization over the rationals.
Inertia inertia(const IntMatrix& symmetric);

/// Unique rational solution of a x = b; nullopt when a is singular.
std::optional<std::vector<Rational>> solve_rational(const IntMatrix& a, const IntVector& b);

/// Some integer solution of a x = b, or nullopt when none exists.
std::optional<IntVector> solve_integer(const IntMatrix& a, const IntVector& b);

using Bits = std::vector<std::uint8_t>;

/// Affine solution space of a x = b over GF(2).
struct Mod2Solution {
    std::optional<Bits> particular;
    std::vector<Bits> kernel_basis;
};

Mod2Solution solve_mod2(const IntMatrix& a, const IntVector& b);
std::size_t rank_mod2(const IntMatrix& a);

}  // namespace csurg
