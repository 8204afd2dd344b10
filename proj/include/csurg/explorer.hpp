#pragma once

#include "csurg/diagram.hpp"
#include "csurg/invariants.hpp"
#include "csurg/moves.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace csurg {

enum class Family { OT_S3, TIGHT_S3, RHS_GENERIC };

const char* to_string(Family family);

/// A diagram together with the trail it was built by: a root document and
/// the moves applied to it. Certification reads only the trail.
struct Provenance {
    SurgeryDiagram root;
    std::vector<MoveRecord> moves;
};

struct CertifiedDiagram {
    SurgeryDiagram diagram;
    Provenance provenance;
};

/// Trail consisting of the root alone.
CertifiedDiagram certify_root(const SurgeryDiagram& diagram);
/// Applies one move and records it.
CertifiedDiagram extend(const CertifiedDiagram& c, const MoveParams& params);
/// Replays the trail and checks it ends at `c.diagram`.
void verify_provenance(const CertifiedDiagram& c);

/// Piece of a connected-sum decomposition read off the trail.
struct Summand {
    enum class Kind {
        xi,       // a copy of (S^3, xi_k)
        neutral,  // closed detour U_p(-1) u mu(+1), i.e. (S^3, xi_st)
        lens,     // open detour: (-1)-surgery on an unlinked tb = 1-p unknot
        other,
    };
    Kind kind = Kind::other;
    int k = 0;           // xi
    std::int64_t p = 0;  // lens
    std::vector<ComponentId> ids;
    /// Moves that produced the summand (descriptions).
    std::vector<std::string> trail;
};

/// Throws invariant_violation when the trail is inconsistent with the
/// diagram (summands that are not unions of linking blocks, or a d3
/// total that does not match).
std::vector<Summand> summands(const CertifiedDiagram& c);

struct OtCertificate {
    int k = 0;
    std::vector<ComponentId> ids;
    std::vector<std::string> trail;
};

struct VertexKey {
    Family family = Family::RHS_GENERIC;
    IntVector torsion;
    std::size_t free_rank = 0;
    std::optional<Rational> d3;
    /// Order of the Euler class (0 when infinite) and the divisibility of
    /// its free part (0 when the free part vanishes).
    Integer euler_order = 1;
    Integer euler_divisibility = 0;
    /// Compared by presence only.
    std::optional<OtCertificate> ot_certificate;

    std::string homology_summary() const;
    std::string d3_text() const;
    /// "OT_S3 d3=1 H1=0 e=1/0 ot"
    std::string str() const;

    friend bool operator==(const VertexKey& a, const VertexKey& b);
    friend bool operator<(const VertexKey& a, const VertexKey& b);
};

/// Invariant fields only (no family, no certificate).
bool same_invariants(const VertexKey& a, const VertexKey& b);

VertexKey classify(const CertifiedDiagram& c);
/// A bare document: the whole diagram is the root of its trail.
VertexKey classify(const SurgeryDiagram& d);
/// Invariant part of a key; family RHS_GENERIC, no certificate.
VertexKey invariant_key(const SurgeryDiagram& d);

/// One surgery edge: `witness` is `source` plus one component; `target`
/// is an independently certified model of the result, identified with the
/// witness through compare_invariants on the shared meridians.
struct EdgeCertificate {
    VertexKey from_key;
    VertexKey to_key;
    CertifiedDiagram source;
    CertifiedDiagram witness;
    CertifiedDiagram target;

    /// The added component and its linking row (derived from witness).
    AppendComponentParams added() const;
    int sign() const { return added().component.sign; }
};

/// Builds and verifies an edge; throws invariant_violation on failure.
EdgeCertificate make_edge(const CertifiedDiagram& source, const CertifiedDiagram& witness,
                          const CertifiedDiagram& target);

/// Recheck of everything an edge claims; empty when valid.
std::vector<std::string> check_edge(const EdgeCertificate& e);

struct PathCertificate {
    CertifiedDiagram start;
    std::vector<EdgeCertificate> edges;

    std::size_t length() const { return edges.size(); }
    VertexKey start_key() const;
    VertexKey end_key() const;
    const CertifiedDiagram& end() const { return edges.empty() ? start : edges.back().target; }
    /// Keys v_0 .. v_length.
    std::vector<VertexKey> vertex_keys() const;
};

/// Every edge checked and consecutive edges chained; empty when valid.
std::vector<std::string> check_path(const PathCertificate& path);

/// Certified xi_k (k any integer): xi_0 via ambient_connect_sum(0), else
/// |k| ambient sums with sign(k).
CertifiedDiagram xi_diagram(int k);

/// (+1)-edges xi_{k_min} -> ... -> xi_{k_max}.
PathCertificate ot_ladder(int k_min, int k_max);
/// (-1)-edges along the same vertices, from xi_{k_max} down to xi_{k_min}:
/// each adds the (-1) push-off of the newest xi_1 summand.
PathCertificate ot_ladder_reverse(int k_min, int k_max);

/// Path of length <= 2 from base u edge to base # xi_1.
PathCertificate verify_link_theorem(const SurgeryDiagram& base, const SurgeryComponent& edge,
                                    const std::vector<std::pair<ComponentId, std::int64_t>>& linking);
PathCertificate verify_link_theorem(const CertifiedDiagram& base, const SurgeryComponent& edge,
                                    const std::vector<std::pair<ComponentId, std::int64_t>>& linking);

/// Reroutes `path` through the L(p,1) summand: length + 2, same endpoints.
PathCertificate verify_detour(const PathCertificate& path, const std::vector<VertexKey>& forbidden, std::int64_t p);

/// Prepends the xi_0 insertion: length + 2, interior vertices overtwisted.
PathCertificate verify_ot_distance_bound(const PathCertificate& path);

// Finite subgraphs.

struct SubgraphOptions {
    std::size_t depth = 4;
    std::size_t max_vertices = 10000;
    /// Worker threads for generator evaluation; 0 or 1 runs inline.
    std::size_t threads = 0;
};

struct SubgraphVertex {
    VertexKey key;
    CertifiedDiagram representative;
    std::size_t depth = 0;
};

struct SubgraphEdge {
    std::size_t from = 0;
    std::size_t to = 0;
    std::size_t generator = 0;
    EdgeCertificate certificate;
};

struct Subgraph {
    std::vector<SurgeryComponent> generators;
    std::vector<SubgraphVertex> vertices;
    std::vector<SubgraphEdge> edges;
    bool truncated = false;
};

/// Generators must be unlinked components; their ids are ignored (each
/// application gets a fresh id).
Subgraph build_subgraph(const std::vector<CertifiedDiagram>& seeds, const std::vector<SurgeryComponent>& generators,
                        const SubgraphOptions& options = {});

/// Unlinked generator set: tb in [-t, -1], |rot| <= |tb| - 1 with
/// tb + rot odd, both signs.
std::vector<SurgeryComponent> unknot_generators(int t);

std::string generator_label(const SurgeryComponent& g);
std::string to_dot(const Subgraph& graph);

// Certificate bundles: a directory with index.yaml and one root document
// plus move log per certified diagram.

void write_path_bundle(const std::filesystem::path& dir, const PathCertificate& path);
PathCertificate read_path_bundle(const std::filesystem::path& dir);
void write_subgraph_bundle(const std::filesystem::path& dir, const Subgraph& graph);

}  // namespace csurg
