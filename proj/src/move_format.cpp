#include "csurg/moves.hpp"

#include "yaml_support.hpp"

#include <sstream>

namespace csurg {

namespace {

ComponentId id_field(const YAML::Node& params, const char* key, bool required)
{
    if (required)
        return yaml::scalar(yaml::require_field(params, key, "params"), key);
    if (YAML::Node v = params[key])
        return yaml::scalar(v, key);
    return {};
}

std::int64_t int_field(const YAML::Node& params, const char* key)
{
    return yaml::integer(yaml::require_field(params, key, "params"), key);
}

MoveParams parse_params(MoveKind kind, const YAML::Node& p)
{
    yaml::require_map(p, "params");
    switch (kind) {
    case MoveKind::stabilize_component: {
        yaml::require_keys(p, {"id", "direction"}, "stabilize_component params");
        const std::string dir = yaml::scalar(yaml::require_field(p, "direction", "params"), "direction");
        if (dir != "positive" && dir != "negative")
            yaml::fail_at(p["direction"], "direction must be 'positive' or 'negative'");
        return StabilizeParams{id_field(p, "id", true), dir == "positive" ? Direction::positive : Direction::negative};
    }
    case MoveKind::ambient_connect_sum: {
        yaml::require_keys(p, {"k", "tag"}, "ambient_connect_sum params");
        const std::int64_t k = int_field(p, "k");
        if (k < -1 || k > 1)
            yaml::fail_at(p["k"], "k must be -1, 0 or +1");
        return AmbientConnectSumParams{static_cast<int>(k), id_field(p, "tag", false)};
    }
    case MoveKind::cancel_pair:
        yaml::require_keys(p, {"i", "j"}, "cancel_pair params");
        return CancelPairParams{id_field(p, "i", true), id_field(p, "j", true)};
    case MoveKind::handle_slide:
        yaml::require_keys(p, {"i", "j"}, "handle_slide params");
        return HandleSlideParams{id_field(p, "i", true), id_field(p, "j", true)};
    case MoveKind::add_meridian:
        yaml::require_keys(p, {"target", "tb", "rot", "sign", "id"}, "add_meridian params");
        return AddMeridianParams{id_field(p, "target", true), int_field(p, "tb"), int_field(p, "rot"),
                                 yaml::contact_sign(yaml::require_field(p, "sign", "params")), id_field(p, "id", false)};
    case MoveKind::lemma42_move:
        yaml::require_keys(p, {"i", "m"}, "lemma42_move params");
        return Lemma42Params{id_field(p, "i", true), id_field(p, "m", true)};
    case MoveKind::avdek_merge:
        yaml::require_keys(p, {"i", "m", "tag"}, "avdek_merge params");
        return AvdekMergeParams{id_field(p, "i", true), id_field(p, "m", true), id_field(p, "tag", false)};
    case MoveKind::detour_insert: {
        yaml::require_keys(p, {"p", "id", "rot"}, "detour_insert params");
        DetourInsertParams out{int_field(p, "p"), id_field(p, "id", false), std::nullopt};
        if (p["rot"])
            out.rot = int_field(p, "rot");
        return out;
    }
    case MoveKind::detour_close:
        yaml::require_keys(p, {"id", "meridian"}, "detour_close params");
        return DetourCloseParams{id_field(p, "id", true), id_field(p, "meridian", false)};
    case MoveKind::append_component: {
        yaml::require_keys(p, {"component", "linking"}, "append_component params");
        YAML::Node c = yaml::require_field(p, "component", "params");
        yaml::require_map(c, "component");
        yaml::require_keys(c, {"id", "tb", "rot", "sign"}, "component");
        AppendComponentParams out;
        out.component = {id_field(c, "id", true), int_field(c, "tb"), int_field(c, "rot"),
                         yaml::contact_sign(yaml::require_field(c, "sign", "component"))};
        if (YAML::Node lk = p["linking"]) {
            yaml::require_sequence(lk, "linking");
            for (const auto& e : lk) {
                yaml::require_map(e, "linking entry");
                yaml::require_keys(e, {"id", "lk"}, "linking entry");
                out.linking.emplace_back(id_field(e, "id", true), int_field(e, "lk"));
            }
        }
        return out;
    }
    }
    yaml::fail_at(p, "unknown move kind");
}

std::pair<MoveParams, YAML::Node> parse_entry(const YAML::Node& entry, std::initializer_list<const char*> keys)
{
    yaml::require_map(entry, "move record");
    yaml::require_keys(entry, keys, "move record");
    YAML::Node kind_node = yaml::require_field(entry, "kind", "move record");
    const std::string kind_text = yaml::scalar(kind_node, "kind");
    auto kind = parse_move_kind(kind_text);
    if (!kind)
        yaml::fail_at(kind_node, "unknown move kind '" + kind_text + "'");
    return {parse_params(*kind, yaml::require_field(entry, "params", "move record")), entry};
}

std::string params_text(const MoveParams& params)
{
    using yaml::quoted;
    std::ostringstream s;
    std::visit(
        [&](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, StabilizeParams>)
                s << "{id: " << quoted(p.id)
                  << ", direction: " << (p.direction == Direction::positive ? "positive" : "negative") << "}";
            else if constexpr (std::is_same_v<T, AmbientConnectSumParams>) {
                s << "{k: " << (p.k > 0 ? "+1" : p.k < 0 ? "-1" : "0");
                if (!p.tag.empty())
                    s << ", tag: " << quoted(p.tag);
                s << "}";
            } else if constexpr (std::is_same_v<T, CancelPairParams> || std::is_same_v<T, HandleSlideParams>)
                s << "{i: " << quoted(p.i) << ", j: " << quoted(p.j) << "}";
            else if constexpr (std::is_same_v<T, AddMeridianParams>) {
                s << "{target: " << quoted(p.target) << ", tb: " << p.tb << ", rot: " << p.rot
                  << ", sign: " << yaml::signed_unit(p.sign);
                if (!p.id.empty())
                    s << ", id: " << quoted(p.id);
                s << "}";
            } else if constexpr (std::is_same_v<T, Lemma42Params>)
                s << "{i: " << quoted(p.i) << ", m: " << quoted(p.m) << "}";
            else if constexpr (std::is_same_v<T, AvdekMergeParams>) {
                s << "{i: " << quoted(p.i) << ", m: " << quoted(p.m);
                if (!p.tag.empty())
                    s << ", tag: " << quoted(p.tag);
                s << "}";
            } else if constexpr (std::is_same_v<T, DetourInsertParams>) {
                s << "{p: " << p.p;
                if (!p.id.empty())
                    s << ", id: " << quoted(p.id);
                if (p.rot)
                    s << ", rot: " << *p.rot;
                s << "}";
            } else if constexpr (std::is_same_v<T, DetourCloseParams>) {
                s << "{id: " << quoted(p.id);
                if (!p.meridian.empty())
                    s << ", meridian: " << quoted(p.meridian);
                s << "}";
            } else {
                s << "{component: {id: " << quoted(p.component.id) << ", tb: " << p.component.tb
                  << ", rot: " << p.component.rot << ", sign: " << yaml::signed_unit(p.component.sign)
                  << "}, linking: [";
                for (std::size_t k = 0; k < p.linking.size(); ++k)
                    s << (k ? ", " : "") << "{id: " << quoted(p.linking[k].first) << ", lk: " << p.linking[k].second
                      << "}";
                s << "]}";
            }
        },
        params);
    return s.str();
}

YAML::Node load_sequence(const std::string& text, const char* what)
{
    YAML::Node root = yaml::load(text);
    if (!root.IsDefined() || root.IsNull())
        return YAML::Node(YAML::NodeType::Sequence);
    yaml::require_sequence(root, what);
    return root;
}

}  // namespace

std::vector<MoveParams> parse_move_script(const std::string& text)
{
    std::vector<MoveParams> out;
    for (const auto& entry : load_sequence(text, "move script"))
        out.push_back(parse_entry(entry, {"kind", "params"}).first);
    return out;
}

std::string serialize_move_script(const std::vector<MoveParams>& moves)
{
    if (moves.empty())
        return "[]\n";
    std::ostringstream s;
    for (const auto& m : moves)
        s << "- {kind: " << to_string(kind_of(m)) << ", params: " << params_text(m) << "}\n";
    return s.str();
}

std::vector<MoveRecord> parse_move_log(const std::string& text)
{
    std::vector<MoveRecord> out;
    for (const auto& entry : load_sequence(text, "move log")) {
        auto [params, node] = parse_entry(entry, {"kind", "params", "before", "after"});
        out.push_back({std::move(params), yaml::scalar(yaml::require_field(node, "before", "move record"), "before"),
                       yaml::scalar(yaml::require_field(node, "after", "move record"), "after")});
    }
    return out;
}

std::string serialize_move_log(const std::vector<MoveRecord>& records)
{
    if (records.empty())
        return "[]\n";
    std::ostringstream s;
    for (const auto& r : records)
        s << "- {kind: " << to_string(r.kind()) << ", params: " << params_text(r.params) << ", before: \""
          << r.before_hash << "\", after: \"" << r.after_hash << "\"}\n";
    return s.str();
}

}  // namespace csurg
