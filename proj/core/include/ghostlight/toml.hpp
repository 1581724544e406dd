#pragma once

#include "ghostlight/errors.hpp"

#include <map>
#include <string>
#include <variant>
#include <vector>

namespace ghostlight::toml {

// Minimal TOML subset: [section] headers, scalar keys (bool, number, string)
// and flat arrays, '#' comments. Enough for scenario/sweep configs; parse
// problems surface as config_error with the offending line.
using Value = std::variant<bool, double, std::string, std::vector<double>,
                           std::vector<std::string>>;

class Table {
public:
    bool contains(const std::string& key) const { return kv_.count(key) != 0; }
    bool empty() const { return kv_.empty(); }

    double number(const std::string& key) const;
    double number_or(const std::string& key, double fallback) const;
    bool boolean_or(const std::string& key, bool fallback) const;
    std::string string(const std::string& key) const;
    std::string string_or(const std::string& key, std::string fallback) const;
    std::vector<double> numbers(const std::string& key) const;

    void set(const std::string& key, Value v) { kv_[key] = std::move(v); }

private:
    const Value& at(const std::string& key) const;
    std::map<std::string, Value> kv_;
};

class Document {
public:
    bool has_section(const std::string& name) const { return sections_.count(name) != 0; }
    // Missing sections read as empty tables.
    const Table& section(const std::string& name) const;
    Table& edit(const std::string& name) { return sections_[name]; }

private:
    std::map<std::string, Table> sections_;
};

Document parse(const std::string& text);
Document parse_file(const std::string& path);

} // namespace ghostlight::toml
