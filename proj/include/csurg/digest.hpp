#pragma once

#include "csurg/diagram.hpp"

#include <string>
#include <string_view>

namespace csurg {

/// Lowercase hex SHA-256 of arbitrary bytes.
std::string sha256_hex(std::string_view bytes);

/// Content hash of a diagram: SHA-256 of its canonical serialization.
std::string content_hash(const SurgeryDiagram& diagram);

}  // namespace csurg
