#include "doctest.h"

#include "csurg/cli.hpp"
#include "csurg/diagram_format.hpp"
#include "csurg/explorer.hpp"

#include <filesystem>
#include <sstream>

using namespace csurg;

namespace {

struct Run {
    int status;
    std::string out;
    std::string err;
};

Run run(const std::vector<std::string>& args)
{
    std::ostringstream out, err;
    const int status = run_cli(args, out, err);
    return {status, out.str(), err.str()};
}

class Workdir {
public:
    Workdir() : dir_(std::filesystem::temp_directory_path() / "csurg_unit_cli")
    {
        std::filesystem::remove_all(dir_);
        std::filesystem::create_directories(dir_);
    }
    ~Workdir() { std::filesystem::remove_all(dir_); }

    std::string file(const std::string& name, const std::string& text) const
    {
        write_text_file(dir_ / name, text);
        return path(name);
    }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }

private:
    std::filesystem::path dir_;
};

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("invariants command")
{
    Workdir w;
    const std::string fig = w.file("fig.diagram", "components:\n  - {id: u, tb: -2, rot: 1, sign: +1}\n");
    const Run r = run({"invariants", fig, "--format", "yaml"});
    CHECK(r.status == 0);
    CHECK(contains(r.out, "H1: 0"));
    CHECK(contains(r.out, "d3: 1"));
    CHECK(contains(r.out, "euler_class: 0"));

    const std::string empty = w.file("empty.diagram", "components: []\n");
    const Run e = run({"invariants", empty, "--format", "yaml"});
    CHECK(e.status == 0);
    CHECK(contains(e.out, "H1: 0"));
    CHECK(contains(e.out, "d3: 0"));

    const std::string lens = w.file("lens.diagram", "components:\n  - {id: u, tb: -4, rot: 1, sign: -1}\n");
    CHECK(contains(run({"invariants", lens}).out, "1/5"));
}

TEST_CASE("reports are deterministic")
{
    Workdir w;
    const std::string fig = w.file("fig.diagram", "components:\n  - {id: u, tb: -2, rot: 1, sign: +1}\n");
    CHECK(run({"invariants", fig}).out == run({"invariants", fig}).out);
    CHECK(run({"ladder", "--from", "-1", "--to", "1", "--format", "yaml"}).out ==
          run({"ladder", "--from", "-1", "--to", "1", "--format", "yaml"}).out);
}

TEST_CASE("ladder writes a bundle that detour and ot-distance read")
{
    Workdir w;
    const Run r = run({"ladder", "--from", "0", "--to", "3", "--bundle", w.path("lad")});
    CHECK(r.status == 0);
    CHECK(contains(r.out, "length  3"));
    CHECK(read_path_bundle(w.path("lad")).length() == 3);

    const Run d = run({"detour", "--path", w.path("lad"), "--p", "2", "--forbid-d3", "1", "--bundle", w.path("det")});
    CHECK(d.status == 0);
    CHECK(read_path_bundle(w.path("det")).length() == 5);

    const Run o = run({"ot-distance", "--path", w.path("lad")});
    CHECK(o.status == 0);
    CHECK(contains(o.out, "bound            5"));
}

TEST_CASE("move command writes a result that re-parses and a log that replays")
{
    Workdir w;
    const std::string fig = w.file("fig.diagram", "components:\n  - {id: u, tb: -1, rot: 0, sign: -1}\n");
    const std::string script = w.file("s.yaml", "- {kind: add_meridian, params: {target: u, tb: -2, rot: 1, sign: +1}}\n"
                                                "- {kind: lemma42_move, params: {i: u, m: u_m}}\n");
    const Run r = run({"move", fig, script, "--result", w.path("out.diagram"), "--log", w.path("log.yaml")});
    REQUIRE(r.status == 0);
    const SurgeryDiagram out = read_diagram_file(w.path("out.diagram"));
    CHECK(out.size() == 1);
    CHECK(parse_diagram(serialize(out)) == out);
    CHECK(run({"move", fig, w.path("log.yaml"), "--replay"}).status == 0);
}

TEST_CASE("error categories map to exit statuses")
{
    Workdir w;
    const std::string bad = w.file("bad.diagram", "components:\n  - {id: u, tb: x, rot: 0, sign: +1}\n");
    const Run p = run({"invariants", bad});
    CHECK(p.status == exit_status(ErrorCategory::parse));
    CHECK(contains(p.err, "line 2"));

    const std::string invalid = w.file("inv.diagram", "components:\n  - {id: u, tb: -1, rot: 1, sign: +1}\n");
    CHECK(run({"validate", invalid}).status == exit_status(ErrorCategory::validation));
    CHECK(run({"invariants", invalid}).status == exit_status(ErrorCategory::validation));

    const Run pre = run({"ladder", "--from", "2", "--to", "0"});
    CHECK(pre.status == exit_status(ErrorCategory::precondition));
    CHECK(contains(pre.err, "ladder.range"));

    CHECK(run({"invariants", w.path("missing")}).status == exit_status(ErrorCategory::io));
    CHECK(run({"subgraph", "--tmax", "3", "--depth", "3", "--max-vertices", "4"}).status ==
          exit_status(ErrorCategory::budget));
    CHECK(run({"frobnicate"}).status == kExitUsage);
    CHECK(run({}).status == kExitUsage);
}

TEST_CASE("subgraph command writes DOT")
{
    Workdir w;
    const Run r = run({"subgraph", "--generator=-2,1,1", "--generator=-2,-1,1", "--depth", "2", "--dot", w.path("g.dot")});
    CHECK(r.status == 0);
    CHECK(contains(r.out, "vertices    3"));
    CHECK(contains(read_text_file(w.path("g.dot")), "digraph"));
}
