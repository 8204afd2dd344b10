#include "csurg/diagram_format.hpp"

#include "yaml_support.hpp"

#include <fstream>
#include <sstream>

namespace csurg {

namespace {

SurgeryComponent parse_component(const YAML::Node& node)
{
    yaml::require_map(node, "component");
    yaml::require_keys(node, {"id", "tb", "rot", "sign"}, "component");
    SurgeryComponent c;
    c.id = yaml::scalar(yaml::require_field(node, "id", "component"), "id");
    c.tb = yaml::integer(yaml::require_field(node, "tb", "component"), "tb");
    c.rot = yaml::integer(yaml::require_field(node, "rot", "component"), "rot");
    c.sign = yaml::contact_sign(yaml::require_field(node, "sign", "component"));
    return c;
}

LinkingEntry parse_linking(const YAML::Node& node)
{
    yaml::require_map(node, "linking entry");
    yaml::require_keys(node, {"a", "b", "lk"}, "linking entry");
    LinkingEntry e;
    e.a = yaml::scalar(yaml::require_field(node, "a", "linking entry"), "a");
    e.b = yaml::scalar(yaml::require_field(node, "b", "linking entry"), "b");
    e.lk = yaml::integer(yaml::require_field(node, "lk", "linking entry"), "lk");
    return e;
}

}  // namespace

SurgeryDiagram parse_diagram(std::string_view text)
{
    YAML::Node root = yaml::load(text);
    if (!root.IsDefined() || root.IsNull())
        throw ParseError("empty document; expected a mapping with 'components'", 1, 1);
    yaml::require_map(root, "diagram document");
    yaml::require_keys(root, {"components", "linking"}, "diagram document");

    YAML::Node comps = yaml::require_field(root, "components", "diagram document");
    yaml::require_sequence(comps, "components");
    std::vector<SurgeryComponent> components;
    for (const auto& c : comps)
        components.push_back(parse_component(c));

    std::vector<LinkingEntry> linking;
    if (YAML::Node lk = root["linking"]) {
        yaml::require_sequence(lk, "linking");
        for (const auto& e : lk)
            linking.push_back(parse_linking(e));
    }
    return SurgeryDiagram(std::move(components), linking);
}

std::string read_text_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCategory::io, "io.read", "cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text)
{
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(ErrorCategory::io, "io.write", "cannot write " + path.string());
    out << text;
}

SurgeryDiagram read_diagram_file(const std::filesystem::path& path)
{
    return parse_diagram(read_text_file(path));
}

std::string serialize(const SurgeryDiagram& diagram)
{
    const SurgeryDiagram d = diagram.canonical();
    std::ostringstream out;
    if (d.empty()) {
        out << "components: []\n";
    } else {
        out << "components:\n";
        for (const SurgeryComponent& c : d.components())
            out << "  - {id: " << yaml::quoted(c.id) << ", tb: " << c.tb << ", rot: " << c.rot
                << ", sign: " << yaml::signed_unit(c.sign) << "}\n";
    }
    const auto entries = d.linking_entries();
    if (entries.empty()) {
        out << "linking: []\n";
    } else {
        out << "linking:\n";
        for (const LinkingEntry& e : entries)
            out << "  - {a: " << yaml::quoted(e.a) << ", b: " << yaml::quoted(e.b) << ", lk: " << e.lk << "}\n";
    }
    return out.str();
}

}  // namespace csurg
