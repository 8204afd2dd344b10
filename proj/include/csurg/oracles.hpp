#pragma once

// Independent reference computations used by the verification suites.
// Deliberately naive: none of them shares code with the library kernels.

#include "csurg/diagram.hpp"
#include "csurg/int_matrix.hpp"

#include <optional>
#include <vector>

namespace csurg::oracle {

/// Cofactor expansion.
Integer determinant(const IntMatrix& a);

/// Invariant factors from determinantal divisors: d_k = D_k / D_{k-1},
/// D_k the gcd of all k x k minors (0 when all vanish).
IntVector invariant_factors(const IntMatrix& a);

/// Signature from the characteristic polynomial (Faddeev-LeVerrier) and
/// Descartes' rule of signs, exact for real-rooted polynomials.
struct SignatureCount {
    std::size_t positive = 0;
    std::size_t negative = 0;
    std::size_t zero = 0;
};
SignatureCount signature(const IntMatrix& symmetric);

/// Monic characteristic polynomial coefficients, highest degree first.
std::vector<Rational> characteristic_polynomial(const IntMatrix& a);

/// Every subset J (bitmask over canonical order) with sum_{j in J} Q_ij = Q_ii mod 2.
std::vector<std::uint32_t> characteristic_subsets(const IntMatrix& q);

/// GF(2) rank by elimination on bit rows.
std::size_t rank_mod2(const IntMatrix& a);

/// d3 via Cramer's rule and the oracle signature; nullopt when det Q = 0.
std::optional<Rational> d3(const SurgeryDiagram& d);

/// All two-component unknot diagrams with tb in [-6,-1], |rot| <= |tb|-1,
/// tb + rot odd, lk in [-3,3], |det Q| = 1, and d3 equal to `target`.
std::vector<SurgeryDiagram> search_two_component(const Rational& target);

}  // namespace csurg::oracle
