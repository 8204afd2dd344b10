#include "yaml_support.hpp"

#include <charconv>
#include <set>

namespace csurg::yaml {

void fail_at(const YAML::Node& node, const std::string& message)
{
    const YAML::Mark mark = node.Mark();
    throw ParseError(message, mark.line + 1, mark.column + 1);
}

YAML::Node load(std::string_view text)
{
    try {
        return YAML::Load(std::string(text));
    } catch (const YAML::Exception& e) {
        throw ParseError(e.msg, e.mark.line + 1, e.mark.column + 1);
    }
}

void require_map(const YAML::Node& node, const std::string& what)
{
    if (!node.IsMap())
        fail_at(node, what + " must be a mapping");
}

void require_sequence(const YAML::Node& node, const std::string& what)
{
    if (!node.IsSequence())
        fail_at(node, what + " must be a sequence");
}

void require_keys(const YAML::Node& map, std::initializer_list<const char*> allowed, const std::string& what)
{
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& kv : map) {
        const std::string key = kv.first.Scalar();
        if (!ok.contains(key))
            fail_at(kv.first, "unexpected field '" + key + "' in " + what);
    }
}

YAML::Node require_field(const YAML::Node& map, const char* key, const std::string& what)
{
    YAML::Node v = map[key];
    if (!v)
        fail_at(map, what + " is missing field '" + key + "'");
    return v;
}

std::string scalar(const YAML::Node& node, const std::string& what)
{
    if (!node.IsScalar())
        fail_at(node, what + " must be a scalar");
    return node.Scalar();
}

std::int64_t integer(const YAML::Node& node, const std::string& what)
{
    const std::string s = scalar(node, what);
    std::string_view digits = s;
    if (!digits.empty() && digits.front() == '+')
        digits.remove_prefix(1);
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (digits.empty() || ec != std::errc{} || ptr != digits.data() + digits.size())
        fail_at(node, what + " must be a decimal integer, got '" + s + "'");
    return value;
}

int contact_sign(const YAML::Node& node)
{
    const std::string s = scalar(node, "sign");
    if (s == "+1")
        return 1;
    if (s == "-1")
        return -1;
    fail_at(node, "sign must be literally +1 or -1, got '" + s + "'");
}

std::string quoted(const std::string& s)
{
    return "\"" + s + "\"";
}

std::string signed_unit(int sign)
{
    return sign > 0 ? "+1" : "-1";
}

}  // namespace csurg::yaml
