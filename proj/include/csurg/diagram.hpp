#pragma once

#include "csurg/int_matrix.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace csurg {

using ComponentId = std::string;

/// One Legendrian surgery component in the standard contact 3-sphere.
///
/// `sign` is the contact surgery coefficient. It is stored as a plain
/// integer so that malformed input can still be represented and reported
/// by validate(); every operation other than validate() requires +1 or -1.
struct SurgeryComponent {
    ComponentId id;
    std::int64_t tb = 0;
    std::int64_t rot = 0;
    int sign = 1;

    /// Smooth framing tb + sign; never stored.
    std::int64_t framing() const { return tb + sign; }

    friend bool operator==(const SurgeryComponent&, const SurgeryComponent&) = default;
};

struct LinkingEntry {
    ComponentId a;
    ComponentId b;
    std::int64_t lk = 0;

    friend bool operator==(const LinkingEntry&, const LinkingEntry&) = default;
};

/// Finite collection of surgery components with their pairwise linking
/// numbers. Immutable once built.
///
/// Components are kept in the order given. The linking table is dense
/// and indexed by that order; its diagonal is ignored because the
/// self-linking lives in the framing.
class SurgeryDiagram {
public:
    SurgeryDiagram() = default;

    /// Linking entries name components by id; unlisted pairs are 0. An
    /// entry (a, b) also sets (b, a) unless (b, a) is listed separately.
    /// Entries naming unknown ids are kept aside and reported by validate().
    SurgeryDiagram(std::vector<SurgeryComponent> components, const std::vector<LinkingEntry>& linking);

    /// Raw constructor: `linking` is a row-major table, possibly of the
    /// wrong shape or asymmetric (validate() reports both).
    static SurgeryDiagram from_table(std::vector<SurgeryComponent> components,
                                     std::vector<std::vector<std::int64_t>> linking);

    std::size_t size() const noexcept { return components_.size(); }
    bool empty() const noexcept { return components_.empty(); }

    const std::vector<SurgeryComponent>& components() const noexcept { return components_; }
    const SurgeryComponent& component(std::size_t index) const { return components_.at(index); }
    const std::vector<std::vector<std::int64_t>>& linking_table() const noexcept { return linking_; }

    std::optional<std::size_t> index_of(const ComponentId& id) const;
    bool contains(const ComponentId& id) const { return index_of(id).has_value(); }
    const SurgeryComponent& component(const ComponentId& id) const;

    /// lk between two distinct components, by position.
    std::int64_t linking(std::size_t i, std::size_t j) const;
    std::int64_t linking(const ComponentId& a, const ComponentId& b) const;

    /// Indices sorted lexicographically by id: the order used for every
    /// matrix construction.
    std::vector<std::size_t> canonical_order() const;

    /// Same diagram with components reordered canonically.
    SurgeryDiagram canonical() const;

    /// Nonzero off-diagonal pairs (a < b by id) in canonical order.
    std::vector<LinkingEntry> linking_entries() const;

    /// Entries passed to the constructor that named unknown ids.
    const std::vector<LinkingEntry>& dangling_linking() const noexcept { return dangling_; }

    /// Order-insensitive equality: same components and linking by id.
    friend bool operator==(const SurgeryDiagram& a, const SurgeryDiagram& b);

private:
    void rebuild_index();

    std::vector<SurgeryComponent> components_;
    std::vector<std::vector<std::int64_t>> linking_;
    std::vector<LinkingEntry> dangling_;
    std::map<ComponentId, std::size_t> index_;
};

struct Violation {
    enum class Kind {
        parity,
        asymmetric_linking,
        linking_shape,
        self_linking,
        unknown_linking_id,
        duplicate_id,
        invalid_id,
        coefficient,
    };

    Kind kind;
    /// Component id or linking pair "a,b" the violation refers to.
    std::string subject;
    std::string message;

    friend bool operator==(const Violation&, const Violation&) = default;
};

const char* to_string(Violation::Kind kind);

std::vector<Violation> validate(const SurgeryDiagram& diagram);

/// Throws a validation Error listing every violation.
void require_valid(const SurgeryDiagram& diagram);

bool is_valid_id(const ComponentId& id);

/// Q with Q_ii = tb_i + sign_i and Q_ij = lk(L_i, L_j), rows in canonical
/// (lexicographic id) order.
struct ExtendedLinkingMatrix {
    std::vector<ComponentId> ids;
    IntMatrix q;
};

ExtendedLinkingMatrix extended_matrix(const SurgeryDiagram& diagram);

/// d1's ids are kept; an id of d2 that collides gets the smallest free
/// suffix ".2", ".3", ... Cross linking numbers are zero.
SurgeryDiagram disjoint_union(const SurgeryDiagram& d1, const SurgeryDiagram& d2);

/// `base` if unused in the diagram, else base + ".k" for the smallest free k >= 2.
ComponentId fresh_id(const SurgeryDiagram& diagram, const ComponentId& base);

/// New diagram with one more component linked to existing ones as given.
SurgeryDiagram with_component(const SurgeryDiagram& diagram, const SurgeryComponent& component,
                              const std::vector<std::pair<ComponentId, std::int64_t>>& linking_row);

/// Diagram without the named components.
SurgeryDiagram without_components(const SurgeryDiagram& diagram, const std::vector<ComponentId>& ids);

/// Diagram with one component's fields replaced (id unchanged).
SurgeryDiagram with_replaced_component(const SurgeryDiagram& diagram, const SurgeryComponent& component);

/// Sets of ids connected through nonzero linking, each sorted, listed
/// in order of their smallest id.
std::vector<std::vector<ComponentId>> linking_blocks(const SurgeryDiagram& diagram);

}  // namespace csurg
