#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "mtpa/model_spec.hpp"

namespace mtpa {

// Minimal TOML-style config: "[section]" headers, "key = value" lines,
// "#"-comments, values are integers, floats, booleans, quoted strings, or
// one-line (possibly nested) arrays. Keys flatten to dotted paths.
struct ConfigValue {
    std::variant<std::int64_t, double, bool, std::string, std::vector<ConfigValue>> data;

    bool is_int() const { return std::holds_alternative<std::int64_t>(data); }
    bool is_number() const { return is_int() || std::holds_alternative<double>(data); }
    bool is_string() const { return std::holds_alternative<std::string>(data); }
    bool is_array() const { return std::holds_alternative<std::vector<ConfigValue>>(data); }

    std::int64_t as_int(const std::string& key) const;
    double as_double(const std::string& key) const;
    bool as_bool(const std::string& key) const;
    const std::string& as_string(const std::string& key) const;
    const std::vector<ConfigValue>& as_array(const std::string& key) const;
};

using ConfigTable = std::map<std::string, ConfigValue>;

ConfigTable parse_config(const std::string& text);

struct LoadedSpec {
    ModelSpec spec;
    bool seed_present = false;  // whether the file set a seed
};

// Builds and validates a ModelSpec from a parsed config. Unknown keys are
// rejected. The spec's seed is left at its default when the file has none;
// callers apply their own fallback chain.
LoadedSpec load_model_spec(const ConfigTable& table);

} // namespace mtpa
