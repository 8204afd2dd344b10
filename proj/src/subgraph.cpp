#include "csurg/explorer.hpp"

#include "csurg/error.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <set>
#include <sstream>
#include <thread>

namespace csurg {

namespace {

struct Expansion {
    std::size_t vertex = 0;
    std::size_t generator = 0;
    std::optional<EdgeCertificate> edge;
    std::optional<Error> error;
};

template <typename F>
void parallel_for(std::size_t count, std::size_t threads, F&& f)
{
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < std::min(threads, count); ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++)
                f(i);
        });
    for (auto& th : pool)
        th.join();
}

std::string dot_escape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
    return out;
}

}  // namespace

std::vector<SurgeryComponent> unknot_generators(int t)
{
    std::vector<SurgeryComponent> out;
    for (int sign : {1, -1})
        for (int tb = -1; tb >= -t; --tb)
            for (int rot = tb + 1; rot <= -tb - 1; ++rot)
                if ((tb + rot) % 2 != 0)
                    out.push_back({"g", tb, rot, sign});
    return out;
}

std::string generator_label(const SurgeryComponent& g)
{
    return "tb=" + std::to_string(g.tb) + " rot=" + std::to_string(g.rot) + " sign=" + (g.sign > 0 ? "+1" : "-1");
}

Subgraph build_subgraph(const std::vector<CertifiedDiagram>& seeds, const std::vector<SurgeryComponent>& generators,
                        const SubgraphOptions& options)
{
    Subgraph graph;
    graph.generators = generators;
    for (auto& g : graph.generators) {
        if ((g.tb + g.rot) % 2 == 0 || (g.sign != 1 && g.sign != -1))
            fail_precondition("subgraph.generator", "invalid generator " + generator_label(g));
        g.id = "g";
    }

    std::map<VertexKey, std::size_t> index;
    std::vector<std::size_t> frontier;
    std::vector<std::pair<VertexKey, const CertifiedDiagram*>> seeded;
    for (const auto& s : seeds)
        seeded.emplace_back(classify(s), &s);
    std::stable_sort(seeded.begin(), seeded.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [key, seed] : seeded) {
        if (index.contains(key))
            continue;
        if (graph.vertices.size() >= options.max_vertices) {
            graph.truncated = true;
            break;
        }
        index.emplace(key, graph.vertices.size());
        frontier.push_back(graph.vertices.size());
        graph.vertices.push_back({key, *seed, 0});
    }

    for (std::size_t level = 0; level < options.depth && !frontier.empty(); ++level) {
        std::vector<Expansion> work;
        for (std::size_t v : frontier)
            for (std::size_t g = 0; g < graph.generators.size(); ++g)
                work.push_back({v, g, std::nullopt, std::nullopt});

        parallel_for(work.size(), options.threads, [&](std::size_t i) {
            Expansion& x = work[i];
            const CertifiedDiagram& source = graph.vertices[x.vertex].representative;
            SurgeryComponent c = graph.generators[x.generator];
            c.id = fresh_id(source.diagram, "g" + std::to_string(x.generator));
            try {
                const CertifiedDiagram witness = extend(source, AppendComponentParams{c, {}});
                x.edge = make_edge(source, witness, witness);
            } catch (const Error& e) {
                x.error = e;
            }
        });

        std::vector<std::size_t> next;
        for (auto& x : work) {
            if (x.error)
                throw *x.error;
            const VertexKey& key = x.edge->to_key;
            auto it = index.find(key);
            if (it == index.end()) {
                if (graph.vertices.size() >= options.max_vertices) {
                    graph.truncated = true;
                    continue;
                }
                it = index.emplace(key, graph.vertices.size()).first;
                next.push_back(graph.vertices.size());
                graph.vertices.push_back({key, x.edge->target, level + 1});
            }
            graph.edges.push_back({x.vertex, it->second, x.generator, std::move(*x.edge)});
        }
        std::sort(next.begin(), next.end(),
                  [&](std::size_t a, std::size_t b) { return graph.vertices[a].key < graph.vertices[b].key; });
        frontier = std::move(next);
    }
    return graph;
}

std::string to_dot(const Subgraph& graph)
{
    std::ostringstream out;
    out << "digraph surgery {\n";
    for (std::size_t v = 0; v < graph.vertices.size(); ++v) {
        const VertexKey& k = graph.vertices[v].key;
        out << "  v" << v << " [label=\"" << to_string(k.family) << ":" << k.d3_text() << ":"
            << dot_escape(k.homology_summary()) << "\"";
        if (k.family == Family::RHS_GENERIC)
            out << ", shape=box, tooltip=\"invariant-class vertex\"";
        out << "];\n";
    }
    std::set<std::tuple<std::size_t, std::size_t, std::size_t>> seen;
    for (const auto& e : graph.edges) {
        if (!seen.insert({e.from, e.to, e.generator}).second)
            continue;
        out << "  v" << e.from << " -> v" << e.to << " [label=\"" << generator_label(graph.generators[e.generator])
            << "\"];\n";
    }
    if (graph.truncated)
        out << "  truncated [shape=plaintext, label=\"truncated\"];\n";
    out << "}\n";
    return out.str();
}

}  // namespace csurg
