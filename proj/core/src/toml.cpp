#include "ghostlight/toml.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace ghostlight::toml {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

// Cut a trailing comment, respecting double-quoted strings.
std::string strip_comment(const std::string& line) {
    bool in_str = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') in_str = !in_str;
        else if (line[i] == '#' && !in_str) return line.substr(0, i);
    }
    return line;
}

[[noreturn]] void fail(int lineno, const std::string& what) {
    throw config_error("config line " + std::to_string(lineno) + ": " + what);
}

double parse_number(const std::string& tok, int lineno) {
    // std::from_chars rejects TOML's leading '+', so route through strtod.
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(tok, &pos);
    } catch (const std::exception&) {
        fail(lineno, "expected a number, got '" + tok + "'");
    }
    if (pos != tok.size()) fail(lineno, "trailing characters in number '" + tok + "'");
    return v;
}

Value parse_value(const std::string& raw, int lineno) {
    const std::string tok = trim(raw);
    if (tok.empty()) fail(lineno, "missing value");
    if (tok == "true") return true;
    if (tok == "false") return false;
    if (tok.front() == '"') {
        if (tok.size() < 2 || tok.back() != '"')
            fail(lineno, "unterminated string");
        return tok.substr(1, tok.size() - 2);
    }
    if (tok.front() == '[') {
        if (tok.back() != ']') fail(lineno, "unterminated array");
        std::vector<double> nums;
        std::vector<std::string> strs;
        std::stringstream ss(tok.substr(1, tok.size() - 2));
        std::string item;
        while (std::getline(ss, item, ',')) {
            const std::string t = trim(item);
            if (t.empty()) continue;
            if (t.front() == '"') {
                if (t.size() < 2 || t.back() != '"')
                    fail(lineno, "unterminated string in array");
                strs.push_back(t.substr(1, t.size() - 2));
            } else {
                nums.push_back(parse_number(t, lineno));
            }
        }
        if (!strs.empty() && !nums.empty())
            fail(lineno, "mixed-type arrays are not supported");
        if (!strs.empty()) return strs;
        return nums;
    }
    return parse_number(tok, lineno);
}

} // namespace

const Value& Table::at(const std::string& key) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) throw config_error("missing config key '" + key + "'");
    return it->second;
}

double Table::number(const std::string& key) const {
    const Value& v = at(key);
    if (const double* d = std::get_if<double>(&v)) return *d;
    throw config_error("config key '" + key + "' must be a number");
}

double Table::number_or(const std::string& key, double fallback) const {
    return contains(key) ? number(key) : fallback;
}

bool Table::boolean_or(const std::string& key, bool fallback) const {
    if (!contains(key)) return fallback;
    const Value& v = at(key);
    if (const bool* b = std::get_if<bool>(&v)) return *b;
    throw config_error("config key '" + key + "' must be a boolean");
}

std::string Table::string(const std::string& key) const {
    const Value& v = at(key);
    if (const std::string* s = std::get_if<std::string>(&v)) return *s;
    throw config_error("config key '" + key + "' must be a string");
}

std::string Table::string_or(const std::string& key, std::string fallback) const {
    return contains(key) ? string(key) : std::move(fallback);
}

std::vector<double> Table::numbers(const std::string& key) const {
    const Value& v = at(key);
    if (const auto* a = std::get_if<std::vector<double>>(&v)) return *a;
    if (const double* d = std::get_if<double>(&v)) return {*d};
    throw config_error("config key '" + key + "' must be a numeric array");
}

const Table& Document::section(const std::string& name) const {
    static const Table empty;
    auto it = sections_.find(name);
    return it == sections_.end() ? empty : it->second;
}

Document parse(const std::string& text) {
    Document doc;
    std::string current;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string s = trim(strip_comment(line));
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']') fail(lineno, "unterminated section header");
            current = trim(s.substr(1, s.size() - 2));
            if (current.empty()) fail(lineno, "empty section name");
            doc.edit(current);
            continue;
        }
        const std::size_t eq = s.find('=');
        if (eq == std::string::npos) fail(lineno, "expected 'key = value'");
        const std::string key = trim(s.substr(0, eq));
        if (key.empty()) fail(lineno, "empty key");
        doc.edit(current).set(key, parse_value(s.substr(eq + 1), lineno));
    }
    return doc;
}

Document parse_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw config_error("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse(ss.str());
}

} // namespace ghostlight::toml
