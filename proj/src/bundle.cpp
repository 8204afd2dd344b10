#include "csurg/explorer.hpp"

#include "csurg/diagram_format.hpp"
#include "csurg/error.hpp"
#include "yaml_support.hpp"

#include <map>
#include <sstream>

namespace csurg {

namespace {

namespace fs = std::filesystem;

/// Writes each distinct certified diagram once and hands out its name.
class DiagramStore {
public:
    explicit DiagramStore(fs::path dir) : dir_(std::move(dir)) {}

    std::string add(const CertifiedDiagram& c)
    {
        const std::string root = serialize(c.provenance.root);
        const std::string moves = serialize_move_log(c.provenance.moves);
        auto [it, inserted] = names_.emplace(root + moves, "c" + std::to_string(names_.size()));
        if (inserted) {
            const fs::path base = dir_ / "diagrams";
            write_text_file(base / (it->second + ".yaml"), serialize(c.diagram));
            write_text_file(base / (it->second + ".root.yaml"), root);
            write_text_file(base / (it->second + ".moves.yaml"), moves);
        }
        return it->second;
    }

private:
    fs::path dir_;
    std::map<std::string, std::string> names_;
};

CertifiedDiagram load_certified(const fs::path& dir, const std::string& name)
{
    if (!is_valid_id(name))
        throw Error(ErrorCategory::parse, "bundle.name", "invalid diagram name '" + name + "'");
    const fs::path base = dir / "diagrams";
    CertifiedDiagram c;
    c.diagram = read_diagram_file(base / (name + ".yaml"));
    c.provenance.root = read_diagram_file(base / (name + ".root.yaml"));
    c.provenance.moves = parse_move_log(read_text_file(base / (name + ".moves.yaml")));
    verify_provenance(c);
    return c;
}

void check_key(const YAML::Node& node, const VertexKey& key, const std::string& what)
{
    const std::string stored = yaml::scalar(node, what);
    if (stored != key.str())
        throw Error(ErrorCategory::invariant_violation, "bundle.key",
                    what + " recorded as '" + stored + "' but recomputes to '" + key.str() + "'");
}

}  // namespace

void write_path_bundle(const fs::path& dir, const PathCertificate& path)
{
    DiagramStore store(dir);
    std::ostringstream index;
    index << "kind: path\n";
    index << "length: " << path.length() << "\n";
    index << "start: " << yaml::quoted(store.add(path.start)) << "\n";
    index << "start_key: " << yaml::quoted(path.start_key().str()) << "\n";
    index << "end_key: " << yaml::quoted(path.end_key().str()) << "\n";
    if (path.edges.empty()) {
        index << "edges: []\n";
    } else {
        index << "edges:\n";
        for (const auto& e : path.edges) {
            index << "  - {source: " << yaml::quoted(store.add(e.source))
                  << ", witness: " << yaml::quoted(store.add(e.witness))
                  << ", target: " << yaml::quoted(store.add(e.target)) << ", sign: " << yaml::signed_unit(e.sign())
                  << ", from: " << yaml::quoted(e.from_key.str()) << ", to: " << yaml::quoted(e.to_key.str()) << "}\n";
        }
    }
    write_text_file(dir / "index.yaml", index.str());
}

PathCertificate read_path_bundle(const fs::path& dir)
{
    const std::string text = read_text_file(dir / "index.yaml");
    YAML::Node root = yaml::load(text);
    yaml::require_map(root, "bundle index");
    yaml::require_keys(root, {"kind", "length", "start", "start_key", "end_key", "edges"}, "bundle index");
    if (yaml::scalar(yaml::require_field(root, "kind", "bundle index"), "kind") != "path")
        yaml::fail_at(root["kind"], "bundle is not a path certificate");

    PathCertificate path;
    path.start = load_certified(dir, yaml::scalar(yaml::require_field(root, "start", "bundle index"), "start"));
    YAML::Node edges = yaml::require_field(root, "edges", "bundle index");
    yaml::require_sequence(edges, "edges");
    for (const auto& e : edges) {
        yaml::require_map(e, "edge");
        yaml::require_keys(e, {"source", "witness", "target", "sign", "from", "to"}, "edge");
        auto name = [&](const char* key) { return yaml::scalar(yaml::require_field(e, key, "edge"), key); };
        EdgeCertificate edge =
            make_edge(load_certified(dir, name("source")), load_certified(dir, name("witness")),
                      load_certified(dir, name("target")));
        check_key(e["from"], edge.from_key, "from");
        check_key(e["to"], edge.to_key, "to");
        if (yaml::contact_sign(yaml::require_field(e, "sign", "edge")) != edge.sign())
            yaml::fail_at(e["sign"], "edge sign does not match the witness");
        path.edges.push_back(std::move(edge));
    }
    if (static_cast<std::size_t>(yaml::integer(yaml::require_field(root, "length", "bundle index"), "length")) !=
        path.length())
        yaml::fail_at(root["length"], "length does not match the edge count");
    const auto failures = check_path(path);
    if (!failures.empty())
        throw Error(ErrorCategory::invariant_violation, "bundle.path", failures.front());
    return path;
}

void write_subgraph_bundle(const fs::path& dir, const Subgraph& graph)
{
    DiagramStore store(dir);
    std::ostringstream index;
    index << "kind: subgraph\n";
    index << "truncated: " << (graph.truncated ? "true" : "false") << "\n";
    index << (graph.generators.empty() ? "generators: []\n" : "generators:\n");
    for (const auto& g : graph.generators)
        index << "  - {tb: " << g.tb << ", rot: " << g.rot << ", sign: " << yaml::signed_unit(g.sign) << "}\n";
    index << "vertices:\n";
    for (std::size_t v = 0; v < graph.vertices.size(); ++v)
        index << "  - {id: " << v << ", depth: " << graph.vertices[v].depth
              << ", key: " << yaml::quoted(graph.vertices[v].key.str())
              << ", diagram: " << yaml::quoted(store.add(graph.vertices[v].representative)) << "}\n";
    if (graph.edges.empty()) {
        index << "edges: []\n";
    } else {
        index << "edges:\n";
        for (const auto& e : graph.edges)
            index << "  - {from: " << e.from << ", to: " << e.to << ", generator: " << e.generator
                  << ", source: " << yaml::quoted(store.add(e.certificate.source))
                  << ", witness: " << yaml::quoted(store.add(e.certificate.witness)) << "}\n";
    }
    write_text_file(dir / "index.yaml", index.str());
}

}  // namespace csurg
