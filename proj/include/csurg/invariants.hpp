#pragma once

#include "csurg/diagram.hpp"
#include "csurg/int_matrix.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace csurg {

/// First homology of the surgered manifold: the cokernel of the extended
/// linking matrix in Smith normal form, remembering where each meridian goes.
class AbelianGroup {
public:
    AbelianGroup(IntVector torsion, std::size_t free_rank, std::vector<ComponentId> meridian_ids,
                 IntMatrix meridian_map);

    /// d_1 | d_2 | ... | d_k, each >= 2.
    const IntVector& torsion() const noexcept { return torsion_; }
    std::size_t free_rank() const noexcept { return free_rank_; }

    /// Meridians in canonical (lexicographic id) order.
    const std::vector<ComponentId>& meridian_ids() const noexcept { return meridian_ids_; }
    std::size_t meridian_count() const noexcept { return meridian_ids_.size(); }

    /// Column i holds the coordinates of the i-th meridian: torsion
    /// coordinates first (reduced mod d_k), then free coordinates.
    const IntMatrix& meridian_map() const noexcept { return meridian_map_; }
    std::size_t coordinate_count() const noexcept { return torsion_.size() + free_rank_; }

    bool is_trivial() const noexcept { return torsion_.empty() && free_rank_ == 0; }
    bool is_finite() const noexcept { return free_rank_ == 0; }
    /// Group order, or 0 when infinite.
    Integer order() const;

    /// Reduced coordinates of sum_i c_i mu_i.
    IntVector reduce(std::span<const Integer> meridian_coefficients) const;
    bool is_zero(std::span<const Integer> meridian_coefficients) const;
    /// Order of sum_i c_i mu_i; 0 when of infinite order.
    Integer element_order(std::span<const Integer> meridian_coefficients) const;

    /// "0", "Z/5", "Z/2 + Z/4 + Z^2", ...
    std::string summary() const;

    friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;

private:
    IntVector torsion_;
    std::size_t free_rank_;
    std::vector<ComponentId> meridian_ids_;
    IntMatrix meridian_map_;
};

bool same_isomorphism_type(const AbelianGroup& a, const AbelianGroup& b);

/// Element of an AbelianGroup written in meridian coordinates.
class HomologyClass {
public:
    HomologyClass(std::shared_ptr<const AbelianGroup> group, IntVector coefficients);

    const AbelianGroup& group() const noexcept { return *group_; }
    std::shared_ptr<const AbelianGroup> group_ptr() const noexcept { return group_; }
    const IntVector& coefficients() const noexcept { return coefficients_; }

    IntVector coordinates() const { return group_->reduce(coefficients_); }
    bool is_zero() const { return group_->is_zero(coefficients_); }
    Integer order() const { return group_->element_order(coefficients_); }

    /// Same group and same reduced coordinates.
    friend bool operator==(const HomologyClass& a, const HomologyClass& b);

private:
    std::shared_ptr<const AbelianGroup> group_;
    IntVector coefficients_;
};

struct CharacteristicSublink {
    std::vector<ComponentId> ids;  // sorted

    friend bool operator==(const CharacteristicSublink&, const CharacteristicSublink&) = default;
};

struct D3Value {
    Rational value;

    bool is_integral() const { return value.get_den() == 1; }
    std::string str() const { return to_string(value); }
    friend bool operator==(const D3Value& a, const D3Value& b) { return a.value == b.value; }
};

inline constexpr std::size_t kMaxCharacteristicSublinks = std::size_t{1} << 20;

AbelianGroup homology(const SurgeryDiagram& diagram);

/// Poincare dual of the Euler class: sum rot_i mu_i.
HomologyClass euler_class(const SurgeryDiagram& diagram);

/// Normalized d3: (c^2 - 3 sigma(Q) - 2(1+n))/4 + q + 1/2, where q counts
/// (+1)-components and c^2 = x.rot for Q x = rot. Throws
/// undefined_invariant when det Q = 0.
D3Value d3(const SurgeryDiagram& diagram);
std::optional<D3Value> try_d3(const SurgeryDiagram& diagram);

/// All J with sum_{j in J} Q_ij = Q_ii (mod 2), ordered by size then ids.
std::vector<CharacteristicSublink> characteristic_sublinks(const SurgeryDiagram& diagram,
                                                           std::size_t cap = kMaxCharacteristicSublinks);

bool is_characteristic(const SurgeryDiagram& diagram, const CharacteristicSublink& sublink);

/// The class (1/2)(sum r_i mu_i + sum_{j in J} (Q mu)_j); the halving is
/// done on meridian coefficients, where the vector is always even.
HomologyClass gamma_class(const SurgeryDiagram& diagram, const CharacteristicSublink& sublink);

/// Difference of the Gompf classes after adding `extra` to `base`,
/// expressed in the homology of `base`. An unlinked extra component of
/// odd framing is added to the sublink; otherwise the sublink must stay
/// characteristic unchanged.
HomologyClass gamma_difference(const SurgeryDiagram& base, const SurgeryComponent& extra,
                               const std::vector<std::pair<ComponentId, std::int64_t>>& linking_row,
                               const CharacteristicSublink& sublink);

/// For diagrams with identical extended matrices: do the Gompf classes
/// agree for every characteristic sublink?
bool spinc_equal(const SurgeryDiagram& d1, const SurgeryDiagram& d2);

// Tracked comparison of two diagrams presenting the same manifold.

/// Hom from H_1(b) to H_1(a) on meridians: column k expresses the k-th
/// canonical meridian of b in a's canonical meridian coordinates.
using MeridianTransfer = IntMatrix;

/// Builds a transfer for b -> a. A meridian of b listed in `images` maps to
/// the given combination of a's meridians; one whose id also exists in a
/// maps to that meridian; any other is first rewritten in H_1(b) in terms
/// of the shared meridians. Throws a precondition error if impossible.
MeridianTransfer meridian_transfer(const SurgeryDiagram& a, const SurgeryDiagram& b,
                                   const std::map<ComponentId, std::map<ComponentId, std::int64_t>>& images = {});

struct InvariantComparison {
    bool homology = false;
    bool euler = false;
    bool d3 = false;
    bool spinc = false;
    std::vector<std::string> failures;

    bool ok() const { return homology && euler && d3 && spinc; }
};

/// Checks that `transfer` induces an isomorphism H_1(b) -> H_1(a) carrying
/// Euler class and every Gompf class of b onto those of a, and that d3
/// agrees (or is undefined on both sides).
InvariantComparison compare_invariants(const SurgeryDiagram& a, const SurgeryDiagram& b,
                                       const MeridianTransfer& transfer);

}  // namespace csurg
