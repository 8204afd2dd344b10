#pragma once

#include "csurg/diagram.hpp"
#include "csurg/invariants.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace csurg {

enum class MoveKind {
    stabilize_component,
    ambient_connect_sum,
    cancel_pair,
    handle_slide,
    add_meridian,
    lemma42_move,
    avdek_merge,
    detour_insert,
    detour_close,
    append_component,
};

const char* to_string(MoveKind kind);
std::optional<MoveKind> parse_move_kind(std::string_view text);

enum class Direction { positive, negative };

struct StabilizeParams {
    ComponentId id;
    Direction direction = Direction::positive;
    friend bool operator==(const StabilizeParams&, const StabilizeParams&) = default;
};

/// Appends xi_k; `tag` names its components (see standard_diagram).
struct AmbientConnectSumParams {
    int k = 1;
    ComponentId tag;
    friend bool operator==(const AmbientConnectSumParams&, const AmbientConnectSumParams&) = default;
};

struct CancelPairParams {
    ComponentId i;
    ComponentId j;
    friend bool operator==(const CancelPairParams&, const CancelPairParams&) = default;
};

/// Slides component i over component j.
struct HandleSlideParams {
    ComponentId i;
    ComponentId j;
    friend bool operator==(const HandleSlideParams&, const HandleSlideParams&) = default;
};

struct AddMeridianParams {
    ComponentId target;
    std::int64_t tb = -1;
    std::int64_t rot = 0;
    int sign = 1;
    ComponentId id;
    friend bool operator==(const AddMeridianParams&, const AddMeridianParams&) = default;
};

struct Lemma42Params {
    ComponentId i;
    ComponentId m;
    friend bool operator==(const Lemma42Params&, const Lemma42Params&) = default;
};

/// Replaces i and its meridian m by a copy of xi_1 with id `tag`.
struct AvdekMergeParams {
    ComponentId i;
    ComponentId m;
    ComponentId tag;
    friend bool operator==(const AvdekMergeParams&, const AvdekMergeParams&) = default;
};

struct DetourInsertParams {
    std::int64_t p = 2;
    ComponentId id;
    std::optional<std::int64_t> rot;
    friend bool operator==(const DetourInsertParams&, const DetourInsertParams&) = default;
};

struct DetourCloseParams {
    ComponentId id;
    ComponentId meridian;
    friend bool operator==(const DetourCloseParams&, const DetourCloseParams&) = default;
};

/// One extra surgery: a component together with its linking numbers.
struct AppendComponentParams {
    SurgeryComponent component;
    std::vector<std::pair<ComponentId, std::int64_t>> linking;
    friend bool operator==(const AppendComponentParams&, const AppendComponentParams&) = default;
};

using MoveParams = std::variant<StabilizeParams, AmbientConnectSumParams, CancelPairParams, HandleSlideParams,
                                AddMeridianParams, Lemma42Params, AvdekMergeParams, DetourInsertParams,
                                DetourCloseParams, AppendComponentParams>;

MoveKind kind_of(const MoveParams& params);

/// Whether the move claims the surgered contact manifold is unchanged.
bool preserves_manifold(MoveKind kind);

struct MoveRecord {
    MoveParams params;
    std::string before_hash;
    std::string after_hash;

    MoveKind kind() const { return kind_of(params); }
    friend bool operator==(const MoveRecord&, const MoveRecord&) = default;
};

// Individual moves. Every move requires a valid input diagram. Moves that
// preserve the manifold compare the full invariant suite before and after
// and throw an invariant_violation Error when it fails. Empty ids are
// replaced by fresh ones.

SurgeryDiagram stabilize_component(const SurgeryDiagram& d, const ComponentId& id, Direction direction);
SurgeryDiagram ambient_connect_sum(const SurgeryDiagram& d, int k, const ComponentId& tag = {});
SurgeryDiagram cancel_pair(const SurgeryDiagram& d, const ComponentId& i, const ComponentId& j);
SurgeryDiagram handle_slide(const SurgeryDiagram& d, const ComponentId& i, const ComponentId& j);
SurgeryDiagram add_meridian(const SurgeryDiagram& d, const ComponentId& target, std::int64_t tb, std::int64_t rot,
                            int sign, const ComponentId& id = {});
SurgeryDiagram lemma42_move(const SurgeryDiagram& d, const ComponentId& i, const ComponentId& m);
SurgeryDiagram avdek_merge(const SurgeryDiagram& d, const ComponentId& i, const ComponentId& m,
                           const ComponentId& tag = {});
SurgeryDiagram detour_insert(const SurgeryDiagram& d, std::int64_t p, const ComponentId& id = {},
                             std::optional<std::int64_t> rot = std::nullopt);
SurgeryDiagram detour_close(const SurgeryDiagram& d, const ComponentId& id, const ComponentId& meridian = {});
SurgeryDiagram append_component(const SurgeryDiagram& d, const SurgeryComponent& component,
                                const std::vector<std::pair<ComponentId, std::int64_t>>& linking);

/// U_p's default rotation number: 0 when tb = 1 - p is odd, else 1.
std::int64_t detour_default_rot(std::int64_t p);

/// Params with every fresh id and default filled in for this diagram.
MoveParams resolve(const SurgeryDiagram& d, const MoveParams& params);

struct AppliedMove {
    SurgeryDiagram diagram;
    MoveRecord record;
};

AppliedMove apply_move(const SurgeryDiagram& d, const MoveParams& params);

/// Replays records from `start`, checking every hash; throws
/// invariant_violation on the first mismatch.
SurgeryDiagram replay(const SurgeryDiagram& start, const std::vector<MoveRecord>& records);

/// Map H_1(after) -> H_1(before) on meridians induced by a move that
/// preserves the manifold (meridian_transfer orientation: a = before).
MeridianTransfer move_transfer(const SurgeryDiagram& before, const SurgeryDiagram& after, const MoveParams& params);

/// compare_invariants(before, after, move_transfer(...)).
InvariantComparison check_move_invariance(const SurgeryDiagram& before, const SurgeryDiagram& after,
                                          const MoveParams& params);

/// "handle_slide(i=a, j=b)" etc., for reports.
std::string describe(const MoveParams& params);

// Move scripts: a YAML sequence of {kind, params} records. Audit logs add
// `before` and `after` hashes to each record.

std::vector<MoveParams> parse_move_script(const std::string& text);
std::string serialize_move_script(const std::vector<MoveParams>& moves);
std::vector<MoveRecord> parse_move_log(const std::string& text);
std::string serialize_move_log(const std::vector<MoveRecord>& records);

}  // namespace csurg
