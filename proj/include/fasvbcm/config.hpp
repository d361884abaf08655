// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fas {

/// Malformed or out-of-range configuration; the CLI maps it to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class KeyType { integer, real, boolean, text, integer_or_auto, real_or_none, path };

struct ConfigKey {
    std::string_view name;  // "section.key"
    KeyType type;
    std::string_view default_value;
    std::string_view help;
    std::vector<std::string_view> choices = {};  // text keys only
};

/// Every key the tool understands, in echo order.
const std::vector<ConfigKey>& config_schema();

/// Fully resolved configuration. Values are stored in canonical text form, so two
/// configs compare equal exactly when they resolve to the same settings.
class RunConfig {
public:
    RunConfig();  // all defaults

    /// Validates and canonicalises; throws ConfigError for unknown keys or bad values.
    void set(std::string_view key, std::string_view value);

    [[nodiscard]] const std::string& text(std::string_view key) const;
    [[nodiscard]] long long integer(std::string_view key) const;
    [[nodiscard]] double real(std::string_view key) const;
    [[nodiscard]] bool boolean(std::string_view key) const;
    /// nullopt for "auto".
    [[nodiscard]] std::optional<long long> integer_or_auto(std::string_view key) const;
    /// nullopt for "none".
    [[nodiscard]] std::optional<double> real_or_none(std::string_view key) const;

    [[nodiscard]] const std::map<std::string, std::string, std::less<>>& values() const noexcept { return values_; }

    /// "section.key=value" lines in schema order.
    [[nodiscard]] std::vector<std::string> echo() const;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;

private:
    const std::string& raw(std::string_view key) const;
    std::map<std::string, std::string, std::less<>> values_;
};

/// Applies an INI-style stream: "[section]" headers, "key = value" lines, '#' or ';' comments.
void apply_ini(RunConfig& config, std::istream& in, std::string_view origin = "config");
void apply_ini_file(RunConfig& config, const std::string& path);

/// Shortest round-trip text for a double.
std::string shortest_text(double v);

}  // namespace fas
