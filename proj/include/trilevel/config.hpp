#pragma once

#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace trilevel {

/// A malformed or invalid configuration entry. key() names the offender.
class ConfigError : public std::runtime_error
{
public:
    ConfigError(std::string key, const std::string& message)
        : std::runtime_error(message), key_(std::move(key))
    {
    }
    const std::string& key() const { return key_; }

private:
    std::string key_;
};

using KeyValues = std::map<std::string, std::string>;

/// Flat "key = value" text. Lines starting with '#' or ';' are comments;
/// "[name]" opens a section (used by the preset table).
struct ConfigDocument
{
    KeyValues global;
    std::vector<std::pair<std::string, KeyValues>> sections;
};

ConfigDocument parse_config(std::istream& in);
ConfigDocument parse_config_file(const std::string& path);
ConfigDocument parse_config_text(const std::string& text);

/// Numbers may be written as small products/quotients of literals, "pi" and
/// "sqrt(x)", e.g. "1/sqrt(2)", "-pi/6", "5*sqrt(2)".
double parse_number(const std::string& key, const std::string& text);

/// Shortest text that parses back to the identical double.
std::string format_number(double x);

std::vector<std::string> split_list(const std::string& text, char sep = ',');

}  // namespace trilevel
