#pragma once

#include "csurg/diagram.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace csurg {

/// Parses one diagram document:
///
///     components:
///       - {id: a, tb: -2, rot: 1, sign: +1}
///     linking:
///       - {a: a, b: b, lk: 2}
///
/// `sign` must be literally +1 or -1. Throws ParseError with the line
/// and column of the offending node. The result is not validated.
SurgeryDiagram parse_diagram(std::string_view text);

SurgeryDiagram read_diagram_file(const std::filesystem::path& path);

/// Canonical text: components sorted by id, nonzero linking pairs only,
/// ids double-quoted. parse_diagram(serialize(d)) == d for valid d.
std::string serialize(const SurgeryDiagram& diagram);

/// Writes `text` to `path`, creating parent directories.
void write_text_file(const std::filesystem::path& path, const std::string& text);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace csurg
