#pragma once

#include <yaml-cpp/yaml.h>

#include <string>
#include <utility>
#include <vector>

namespace csurg::cli {

/// A command's result, rendered either as an aligned table or as YAML.
class Report {
public:
    explicit Report(const std::string& command);

    /// Scalar shown in both renderings.
    void row(const std::string& key, const std::string& value);
    /// Free text line shown only in the table.
    void line(const std::string& text);
    /// Structured data shown only in the YAML rendering.
    YAML::Node data() { return root_; }

    std::string table() const;
    std::string yaml() const;

private:
    YAML::Node root_;
    std::vector<std::pair<std::string, std::string>> rows_;
    std::vector<std::pair<std::size_t, std::string>> lines_;
};

}  // namespace csurg::cli
