#pragma once

// Line-based `key = value` configuration.
//
//   # comment
//   medium.gamma_perp_t = 1e-3
//   pump.area_pi_units  = 0.49
//   grid.stations       = 0.5, 1.0
//
// Every key is namespaced and typed; unknown keys, duplicates, malformed or
// out-of-range values are rejected with the offending line number.

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace polariton::config {

enum class KeyType { number, integer, text, list };

enum class Bound {
    any,
    non_negative,
    positive,
};

struct KeySpec
{
    std::string key;
    KeyType type;
    std::string default_value;
    Bound bound = Bound::any;
    std::vector<std::string> choices; // text keys only; empty = free text
};

/// All recognised keys in a fixed order.
const std::vector<KeySpec>& keys();
const KeySpec* find_key(const std::string& key);

class ParamSet
{
public:
    /// Every key at its default value.
    static ParamSet defaults();

    /// Set one value after checking key, type and bound. `line` is used in
    /// error messages (0 when the value does not come from a file).
    void set(const std::string& key, const std::string& value, const std::string& source,
             std::size_t line = 0);

    double number(const std::string& key) const;
    int integer(const std::string& key) const;
    const std::string& text(const std::string& key) const;
    std::vector<double> list(const std::string& key) const;

    /// Where the current value came from: default, preset, config or override.
    const std::string& source(const std::string& key) const;
    bool is_default(const std::string& key) const { return source(key) == "default"; }

    const std::map<std::string, std::string>& values() const { return values_; }

private:
    const std::string& raw(const std::string& key) const;

    std::map<std::string, std::string> values_;
    std::map<std::string, std::string> sources_;
};

/// Defaults overlaid with the contents of `path`.
ParamSet parse_config(const std::filesystem::path& path);

/// Apply the file at `path` on top of `params`.
void apply_config_file(ParamSet& params, const std::filesystem::path& path);

/// Apply one `key=value` override.
void apply_override(ParamSet& params, const std::string& assignment);

std::vector<double> parse_list(const std::string& text);

} // namespace polariton::config
