#pragma once

// Shared helpers for the YAML-based document formats.

#include "csurg/error.hpp"

#include <yaml-cpp/yaml.h>

#include <cstdint>
#include <initializer_list>
#include <string>

namespace csurg::yaml {

[[noreturn]] void fail_at(const YAML::Node& node, const std::string& message);

YAML::Node load(std::string_view text);

void require_map(const YAML::Node& node, const std::string& what);
void require_sequence(const YAML::Node& node, const std::string& what);
/// Rejects keys outside `allowed`.
void require_keys(const YAML::Node& map, std::initializer_list<const char*> allowed, const std::string& what);
YAML::Node require_field(const YAML::Node& map, const char* key, const std::string& what);

std::string scalar(const YAML::Node& node, const std::string& what);
std::int64_t integer(const YAML::Node& node, const std::string& what);
/// Literal "+1" or "-1".
int contact_sign(const YAML::Node& node);

/// Double-quoted scalar; ids are restricted so no escaping is needed.
std::string quoted(const std::string& s);
std::string signed_unit(int sign);

}  // namespace csurg::yaml
