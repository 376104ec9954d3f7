#include <trilevel/config.hpp>

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace trilevel {

namespace pt = boost::property_tree;

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

class NumberParser
{
public:
    NumberParser(const std::string& key, const std::string& text)
        : key_(key), text_(text)
    {
    }

    double parse()
    {
        skip_ws();
        double sign = 1.0;
        if (peek() == '-' || peek() == '+') {
            sign = get() == '-' ? -1.0 : 1.0;
        }
        double value = factor();
        for (;;) {
            skip_ws();
            const char op = peek();
            if (op == '*') {
                get();
                value *= factor();
            } else if (op == '/') {
                get();
                value /= factor();
            } else {
                break;
            }
        }
        skip_ws();
        if (pos_ != text_.size()) {
            fail();
        }
        return sign * value;
    }

private:
    double factor()
    {
        skip_ws();
        if (text_.compare(pos_, 2, "pi") == 0) {
            pos_ += 2;
            return std::numbers::pi;
        }
        if (text_.compare(pos_, 5, "sqrt(") == 0) {
            pos_ += 5;
            const double arg = literal();
            skip_ws();
            if (get() != ')') {
                fail();
            }
            if (arg < 0.0) {
                fail();
            }
            return std::sqrt(arg);
        }
        return literal();
    }

    double literal()
    {
        skip_ws();
        const char* begin = text_.c_str() + pos_;
        char* end = nullptr;
        const double v = std::strtod(begin, &end);
        if (end == begin) {
            fail();
        }
        pos_ += static_cast<std::size_t>(end - begin);
        if (!std::isfinite(v)) {
            fail();
        }
        return v;
    }

    void skip_ws()
    {
        while (pos_ < text_.size() &&
               std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }
    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    char get() { return pos_ < text_.size() ? text_[pos_++] : '\0'; }

    [[noreturn]] void fail() const
    {
        throw ConfigError(key_, key_ + ": cannot parse number '" + text_ + "'");
    }

    const std::string& key_;
    const std::string& text_;
    std::size_t pos_ = 0;
};

}  // namespace

ConfigDocument
parse_config(std::istream& in)
{
    pt::ptree tree;
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError("", "malformed config (line " +
                              std::to_string(e.line()) + "): " + e.message());
    }

    ConfigDocument doc;
    for (const auto& [key, node] : tree) {
        if (node.empty()) {
            doc.global.emplace(key, trim(node.data()));
            continue;
        }
        KeyValues section;
        for (const auto& [k, v] : node) {
            section.emplace(k, trim(v.data()));
        }
        doc.sections.emplace_back(key, std::move(section));
    }
    return doc;
}

ConfigDocument
parse_config_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::ios_base::failure("cannot open config file '" + path + "'");
    }
    return parse_config(in);
}

ConfigDocument
parse_config_text(const std::string& text)
{
    std::istringstream in(text);
    return parse_config(in);
}

double
parse_number(const std::string& key, const std::string& text)
{
    return NumberParser(key, text).parse();
}

std::string
format_number(double x)
{
    char buf[32];
    for (int digits = 15; digits <= 17; ++digits) {
        std::snprintf(buf, sizeof buf, "%.*g", digits, x);
        if (std::strtod(buf, nullptr) == x) {
            break;
        }
    }
    return buf;
}

std::vector<std::string>
split_list(const std::string& text, char sep)
{
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, sep)) {
        item = trim(item);
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

}  // namespace trilevel
