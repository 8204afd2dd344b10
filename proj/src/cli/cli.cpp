#include "csurg/cli.hpp"

#include "csurg/diagram_format.hpp"
#include "csurg/digest.hpp"
#include "csurg/explorer.hpp"
#include "csurg/invariants.hpp"
#include "csurg/moves.hpp"
#include "csurg/verification.hpp"
#include "report.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <functional>
#include <ostream>
#include <sstream>

namespace csurg {

int exit_status(ErrorCategory category)
{
    switch (category) {
    case ErrorCategory::parse: return 3;
    case ErrorCategory::validation: return 4;
    case ErrorCategory::precondition: return 5;
    case ErrorCategory::undefined_invariant: return 6;
    case ErrorCategory::invariant_violation: return 7;
    case ErrorCategory::budget: return 8;
    case ErrorCategory::io: return 9;
    }
    return 10;
}

namespace {

using cli::Report;

struct Output {
    std::string format = "table";
    std::string report_file;
};

/// Reading with the file name prefixed to any error.
template <class F>
auto with_source(const std::string& source, F&& f) -> decltype(f())
{
    try {
        return f();
    } catch (const Error& e) {
        throw Error(e.category(), e.check(), source + ": " + e.what());
    }
}

SurgeryDiagram load_diagram(const std::string& path)
{
    return with_source(path, [&] { return read_diagram_file(path); });
}

SurgeryDiagram load_valid_diagram(const std::string& path)
{
    return with_source(path, [&] {
        SurgeryDiagram d = read_diagram_file(path);
        require_valid(d);
        return d;
    });
}

std::string integer_list(const IntVector& v)
{
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? ", " : "") + v[i].get_str();
    return s + "]";
}

std::string euler_text(const HomologyClass& e)
{
    if (e.is_zero())
        return "0";
    const Integer order = e.order();
    return integer_list(e.coordinates()) + (order == 0 ? " (infinite order)" : " (order " + order.get_str() + ")");
}

std::string sign_text(int sign) { return sign > 0 ? "+1" : "-1"; }

YAML::Node component_node(const SurgeryComponent& c)
{
    YAML::Node n;
    n["id"] = c.id;
    n["tb"] = c.tb;
    n["rot"] = c.rot;
    n["sign"] = sign_text(c.sign);
    return n;
}

void describe_path(Report& r, const PathCertificate& path)
{
    const std::vector<VertexKey> keys = path.vertex_keys();
    r.row("length", std::to_string(path.length()));
    r.row("start", keys.front().str());
    r.row("end", keys.back().str());
    YAML::Node vertices = r.data()["vertices"];
    YAML::Node edges = r.data()["edges"];
    r.line("");
    for (std::size_t i = 0; i < keys.size(); ++i) {
        r.line("v" + std::to_string(i) + "  " + keys[i].str());
        vertices.push_back(keys[i].str());
        if (i == path.length())
            break;
        const EdgeCertificate& e = path.edges[i];
        const AppendComponentParams added = e.added();
        std::string row;
        for (const auto& [id, lk] : added.linking)
            row += (row.empty() ? "" : ", ") + id + ":" + std::to_string(lk);
        r.line("  " + sign_text(e.sign()) + "  " + added.component.id + " tb=" + std::to_string(added.component.tb) +
               " rot=" + std::to_string(added.component.rot) + (row.empty() ? "" : "  lk " + row));
        YAML::Node edge;
        edge["sign"] = sign_text(e.sign());
        edge["component"] = component_node(added.component);
        YAML::Node lk(YAML::NodeType::Map);
        for (const auto& [id, value] : added.linking)
            lk[id] = value;
        edge["linking"] = lk;
        edge["witness"] = content_hash(e.witness.diagram);
        edge["target"] = content_hash(e.target.diagram);
        edges.push_back(edge);
    }
}

void require_checked(const PathCertificate& path)
{
    const std::vector<std::string> problems = check_path(path);
    if (!problems.empty())
        throw Error(ErrorCategory::invariant_violation, "path.check", problems.front());
}

int emit(const Report& r, const Output& o, std::ostream& out)
{
    out << (o.format == "yaml" ? r.yaml() : r.table());
    if (!o.report_file.empty())
        write_text_file(o.report_file, r.yaml());
    return 0;
}

// Verbs.

int cmd_validate(const std::vector<std::string>& files, const Output& o, std::ostream& out)
{
    Report r("validate");
    bool all_valid = true;
    YAML::Node results = r.data()["files"];
    for (const std::string& f : files) {
        const SurgeryDiagram d = load_diagram(f);
        const std::vector<Violation> violations = validate(d);
        all_valid = all_valid && violations.empty();
        r.row(f, violations.empty() ? "valid" : std::to_string(violations.size()) + " violation(s)");
        YAML::Node entry;
        entry["file"] = f;
        entry["valid"] = violations.empty();
        for (const Violation& v : violations) {
            r.line("  " + std::string(to_string(v.kind)) + " " + v.subject + ": " + v.message);
            YAML::Node vn;
            vn["kind"] = to_string(v.kind);
            vn["subject"] = v.subject;
            vn["message"] = v.message;
            entry["violations"].push_back(vn);
        }
        results.push_back(entry);
    }
    emit(r, o, out);
    return all_valid ? 0 : exit_status(ErrorCategory::validation);
}

int cmd_invariants(const std::string& file, const Output& o, std::ostream& out)
{
    const SurgeryDiagram d = load_valid_diagram(file);
    Report r("invariants");
    r.row("file", file);
    r.row("components", std::to_string(d.size()));
    const AbelianGroup h1 = homology(d);
    r.row("H1", h1.summary());
    r.row("order", h1.is_finite() ? h1.order().get_str() : "infinite");
    const std::optional<D3Value> d3v = try_d3(d);
    r.row("d3", d3v ? d3v->str() : "undefined");
    r.row("euler_class", euler_text(euler_class(d)));
    const std::vector<CharacteristicSublink> chars = characteristic_sublinks(d);
    r.row("characteristic_sublinks", std::to_string(chars.size()));
    const VertexKey key = classify(d);
    r.row("family", to_string(key.family));
    r.row("key", key.str());
    r.row("hash", content_hash(d));
    return emit(r, o, out);
}

int cmd_move(const std::string& file, const std::string& script_file, bool audit_input,
             const std::string& result_file, const std::string& log_file, const Output& o, std::ostream& out)
{
    const SurgeryDiagram start = load_valid_diagram(file);
    const std::string script = with_source(script_file, [&] { return read_text_file(script_file); });
    Report r("move");
    r.row("input", content_hash(start));
    std::vector<MoveRecord> records;
    SurgeryDiagram current = start;
    if (audit_input) {
        records = with_source(script_file, [&] { return parse_move_log(script); });
        current = replay(start, records);
    } else {
        const std::vector<MoveParams> moves = with_source(script_file, [&] { return parse_move_script(script); });
        for (const MoveParams& m : moves) {
            AppliedMove applied = apply_move(current, m);
            records.push_back(applied.record);
            current = std::move(applied.diagram);
        }
    }
    YAML::Node steps = r.data()["moves"];
    for (std::size_t i = 0; i < records.size(); ++i) {
        r.line(std::to_string(i + 1) + "  " + describe(records[i].params) + "  " + records[i].after_hash.substr(0, 12));
        YAML::Node s;
        s["move"] = describe(records[i].params);
        s["before"] = records[i].before_hash;
        s["after"] = records[i].after_hash;
        steps.push_back(s);
    }
    r.row("steps", std::to_string(records.size()));
    r.row("output", content_hash(current));
    if (!result_file.empty())
        write_text_file(result_file, serialize(current));
    else
        r.data()["diagram"] = serialize(current);
    if (!log_file.empty())
        write_text_file(log_file, serialize_move_log(records));
    return emit(r, o, out);
}

int cmd_ladder(int from, int to, bool reverse, const std::string& bundle, const Output& o, std::ostream& out)
{
    if (from > to)
        fail_precondition("ladder.range", "--from must not exceed --to");
    const PathCertificate path = reverse ? ot_ladder_reverse(from, to) : ot_ladder(from, to);
    require_checked(path);
    Report r("ladder");
    describe_path(r, path);
    if (!bundle.empty()) {
        write_path_bundle(bundle, path);
        r.row("bundle", bundle);
    }
    return emit(r, o, out);
}

int cmd_link_theorem(const std::string& file, const std::string& edge_id, const std::string& bundle,
                     const Output& o, std::ostream& out)
{
    const SurgeryDiagram neighbor = load_valid_diagram(file);
    if (!neighbor.contains(edge_id))
        fail_precondition("link_theorem.edge", "no component '" + edge_id + "' in " + file);
    const SurgeryDiagram base = without_components(neighbor, {edge_id});
    std::vector<std::pair<ComponentId, std::int64_t>> row;
    for (const SurgeryComponent& c : base.components())
        if (const std::int64_t lk = neighbor.linking(c.id, edge_id); lk != 0)
            row.emplace_back(c.id, lk);
    const PathCertificate path = verify_link_theorem(base, neighbor.component(edge_id), row);
    require_checked(path);
    Report r("link-theorem");
    r.row("edge", edge_id);
    describe_path(r, path);
    if (!bundle.empty()) {
        write_path_bundle(bundle, path);
        r.row("bundle", bundle);
    }
    return emit(r, o, out);
}

PathCertificate input_path(const std::string& path_dir, std::optional<int> from, std::optional<int> to)
{
    if (!path_dir.empty())
        return with_source(path_dir, [&] { return read_path_bundle(path_dir); });
    if (!from || !to)
        fail_precondition("path.input", "give --path DIR or both --from and --to");
    if (*from > *to)
        fail_precondition("ladder.range", "--from must not exceed --to");
    return ot_ladder(*from, *to);
}

int cmd_detour(const PathCertificate& path, std::int64_t p, const std::vector<int>& forbid_d3, bool forbid_tight,
               const std::string& bundle, const Output& o, std::ostream& out)
{
    std::vector<VertexKey> forbidden;
    for (int k : forbid_d3)
        forbidden.push_back(classify(xi_diagram(k)));
    if (forbid_tight)
        forbidden.push_back(classify(SurgeryDiagram{}));
    const PathCertificate detour = verify_detour(path, forbidden, p);
    require_checked(detour);
    Report r("detour");
    r.row("p", std::to_string(p));
    r.row("original_length", std::to_string(path.length()));
    for (const VertexKey& k : forbidden)
        r.data()["forbidden"].push_back(k.str());
    describe_path(r, detour);
    if (!bundle.empty()) {
        write_path_bundle(bundle, detour);
        r.row("bundle", bundle);
    }
    return emit(r, o, out);
}

int cmd_ot_distance(const PathCertificate& path, const std::string& bundle, const Output& o, std::ostream& out)
{
    const PathCertificate rerouted = verify_ot_distance_bound(path);
    require_checked(rerouted);
    Report r("ot-distance");
    r.row("original_length", std::to_string(path.length()));
    r.row("bound", std::to_string(rerouted.length()));
    describe_path(r, rerouted);
    if (!bundle.empty()) {
        write_path_bundle(bundle, rerouted);
        r.row("bundle", bundle);
    }
    return emit(r, o, out);
}

SurgeryComponent parse_generator(const std::string& text)
{
    SurgeryComponent g;
    char c1 = 0, c2 = 0;
    std::istringstream in(text);
    if (!(in >> g.tb >> c1 >> g.rot >> c2 >> g.sign) || c1 != ',' || c2 != ',' || !(in >> std::ws).eof())
        throw Error(ErrorCategory::parse, "generator", "generator '" + text + "': expected tb,rot,sign");
    return g;
}

int cmd_subgraph(const std::vector<std::string>& seed_files, const std::vector<std::string>& generator_texts,
                 int tmax, const SubgraphOptions& options, const std::string& dot_file, const std::string& bundle,
                 const Output& o, std::ostream& out)
{
    std::vector<CertifiedDiagram> seeds;
    for (const std::string& f : seed_files)
        seeds.push_back(certify_root(load_valid_diagram(f)));
    if (seeds.empty())
        seeds.push_back(certify_root(SurgeryDiagram{}));
    std::vector<SurgeryComponent> generators;
    for (const std::string& t : generator_texts)
        generators.push_back(parse_generator(t));
    if (generators.empty())
        generators = unknot_generators(tmax);

    const Subgraph g = build_subgraph(seeds, generators, options);
    Report r("subgraph");
    r.row("generators", std::to_string(g.generators.size()));
    r.row("depth", std::to_string(options.depth));
    r.row("vertices", std::to_string(g.vertices.size()));
    r.row("edges", std::to_string(g.edges.size()));
    r.row("truncated", g.truncated ? "yes" : "no");
    r.line("");
    for (std::size_t i = 0; i < g.vertices.size(); ++i) {
        r.line(std::to_string(i) + "  depth " + std::to_string(g.vertices[i].depth) + "  " + g.vertices[i].key.str());
        YAML::Node v;
        v["key"] = g.vertices[i].key.str();
        v["depth"] = g.vertices[i].depth;
        r.data()["vertex_list"].push_back(v);
    }
    for (const SubgraphEdge& e : g.edges) {
        YAML::Node en;
        en["from"] = e.from;
        en["to"] = e.to;
        en["generator"] = generator_label(g.generators[e.generator]);
        r.data()["edge_list"].push_back(en);
    }
    if (!dot_file.empty())
        write_text_file(dot_file, to_dot(g));
    if (!bundle.empty())
        write_subgraph_bundle(bundle, g);
    emit(r, o, out);
    return g.truncated ? exit_status(ErrorCategory::budget) : 0;
}

int cmd_verify_all(const std::vector<int>& only, const Output& o, std::ostream& out)
{
    const SuiteConfig config = SuiteConfig::from_environment();
    Report r("verify-all");
    std::vector<SuiteResult> results;
    auto record = [&](const SuiteResult& s) {
        if (o.format != "yaml")
            out << format_result(s) << "\n" << std::flush;
        results.push_back(s);
    };
    if (only.empty()) {
        run_all(config, record);
    } else {
        for (int c : only) {
            if (c < 1 || c > kSuiteCount)
                fail_precondition("verify_all.criterion", "no criterion " + std::to_string(c));
            record(run_suite(c, config));
        }
    }
    const auto failed = std::count_if(results.begin(), results.end(), [](const SuiteResult& s) { return !s.passed; });
    for (const SuiteResult& s : results) {
        YAML::Node n;
        n["criterion"] = s.criterion;
        n["title"] = s.title;
        n["passed"] = s.passed;
        n["detail"] = s.detail;
        for (const std::string& f : s.failures)
            n["failures"].push_back(f);
        r.data()["criteria"].push_back(n);
    }
    r.data()["failed"] = failed;
    if (o.format == "yaml")
        out << r.yaml();
    else
        out << (failed == 0 ? "all criteria passed\n" : std::to_string(failed) + " criteria failed\n");
    if (!o.report_file.empty())
        write_text_file(o.report_file, r.yaml());
    return failed == 0 ? 0 : kExitSuiteFailure;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Contact surgery diagrams: invariants, moves and certified paths", "csurg"};
    app.require_subcommand(1);
    Output o;
    app.add_option("--format", o.format, "Report format")->check(CLI::IsMember({"table", "yaml"}));
    app.add_option("--report", o.report_file, "Also write the YAML report to FILE");
    std::function<int()> action;

    std::vector<std::string> files;
    auto* validate_cmd = app.add_subcommand("validate", "Check diagram documents")->fallthrough();
    validate_cmd->add_option("files", files, "Diagram files")->required();
    validate_cmd->callback([&] { action = [&] { return cmd_validate(files, o, out); }; });

    std::string file;
    auto* inv = app.add_subcommand("invariants", "H1, d3, Euler class and classification")->fallthrough();
    inv->add_option("diagram", file)->required();
    inv->callback([&] { action = [&] { return cmd_invariants(file, o, out); }; });

    std::string script, result_file, log_file;
    bool audit = false;
    auto* move = app.add_subcommand("move", "Apply a move script and write the audit log")->fallthrough();
    move->add_option("diagram", file)->required();
    move->add_option("script", script)->required();
    move->add_flag("--replay", audit, "SCRIPT is an audit log; replay it and check every hash");
    move->add_option("--result", result_file, "Write the resulting diagram to FILE");
    move->add_option("--log", log_file, "Write the audit log to FILE");
    move->callback([&] {
        action = [&] { return cmd_move(file, script, audit, result_file, log_file, o, out); };
    });

    int from = 0, to = 0;
    bool reverse = false;
    std::string bundle;
    auto* ladder = app.add_subcommand("ladder", "Certified path xi_from -> ... -> xi_to")->fallthrough();
    ladder->add_option("--from", from)->required();
    ladder->add_option("--to", to)->required();
    ladder->add_flag("--reverse", reverse, "Descend with (-1)-edges instead");
    ladder->add_option("--bundle", bundle, "Write the certificate bundle to DIR");
    ladder->callback([&] { action = [&] { return cmd_ladder(from, to, reverse, bundle, o, out); }; });

    std::string edge;
    auto* link = app.add_subcommand("link-theorem", "Short path from a neighbor to base # xi_1")->fallthrough();
    link->add_option("neighbor", file, "Diagram containing the edge component")->required();
    link->add_option("--edge", edge, "Id of the edge component")->required();
    link->add_option("--bundle", bundle, "Write the certificate bundle to DIR");
    link->callback([&] { action = [&] { return cmd_link_theorem(file, edge, bundle, o, out); }; });

    std::string path_dir;
    std::optional<int> path_from, path_to;
    std::int64_t p = 2;
    std::vector<int> forbid_d3;
    bool forbid_tight = false;
    auto* detour = app.add_subcommand("detour", "Reroute a path through a lens space summand")->fallthrough();
    detour->add_option("--path", path_dir, "Path certificate bundle");
    detour->add_option("--from", path_from, "Use the ladder from xi_FROM");
    detour->add_option("--to", path_to, "Use the ladder to xi_TO");
    detour->add_option("--p", p, "Lens space order")->check(CLI::PositiveNumber);
    detour->add_option("--forbid-d3", forbid_d3, "Forbid the overtwisted sphere with this d3");
    detour->add_flag("--forbid-tight", forbid_tight, "Forbid the tight sphere");
    detour->add_option("--bundle", bundle, "Write the certificate bundle to DIR");
    detour->callback([&] {
        action = [&] {
            return cmd_detour(input_path(path_dir, path_from, path_to), p, forbid_d3, forbid_tight, bundle, o, out);
        };
    });

    auto* ot = app.add_subcommand("ot-distance", "Overtwisted reroute of a path")->fallthrough();
    ot->add_option("--path", path_dir, "Path certificate bundle");
    ot->add_option("--from", path_from, "Use the ladder from xi_FROM");
    ot->add_option("--to", path_to, "Use the ladder to xi_TO");
    ot->add_option("--bundle", bundle, "Write the certificate bundle to DIR");
    ot->callback([&] {
        action = [&] { return cmd_ot_distance(input_path(path_dir, path_from, path_to), bundle, o, out); };
    });

    const SuiteConfig env = SuiteConfig::from_environment();
    std::vector<std::string> seeds, generators;
    int tmax = env.t_max;
    SubgraphOptions options;
    options.depth = env.depth;
    std::string dot_file;
    auto* sub = app.add_subcommand("subgraph", "Breadth-first subgraph under unknot generators")->fallthrough();
    sub->add_option("seeds", seeds, "Seed diagrams (default: the empty diagram)");
    sub->add_option("--generator", generators, "Generator tb,rot,sign (repeatable)");
    sub->add_option("--tmax", tmax, "Use every unknot generator with -T <= tb <= -1")->check(CLI::PositiveNumber);
    sub->add_option("--depth", options.depth);
    sub->add_option("--max-vertices", options.max_vertices);
    sub->add_option("--threads", options.threads);
    sub->add_option("--dot", dot_file, "Write Graphviz DOT to FILE");
    sub->add_option("--bundle", bundle, "Write the certificate bundle to DIR");
    sub->callback([&] {
        action = [&] { return cmd_subgraph(seeds, generators, tmax, options, dot_file, bundle, o, out); };
    });

    std::vector<int> only;
    auto* verify = app.add_subcommand("verify-all", "Run the acceptance suites")->fallthrough();
    verify->add_option("--criterion", only, "Run only these criteria");
    verify->callback([&] { action = [&] { return cmd_verify_all(only, o, out); }; });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : kExitUsage;
    }

    try {
        return action();
    } catch (const Error& e) {
        err << "csurg: error [" << to_string(e.category()) << "] " << e.what() << "\n";
        return exit_status(e.category());
    }
}

}  // namespace csurg
