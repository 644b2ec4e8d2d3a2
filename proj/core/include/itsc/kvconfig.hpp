#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace itsc {

/// One `[name]` or `[name <id>]` section of a config file.
struct KvSection {
    std::string name;
    std::int64_t id = -1;    // -1 when the header carries no id
    int line = 0;
    std::map<std::string, std::string> values;
    std::map<std::string, int> value_lines;

    bool has(const std::string& key) const { return values.count(key) != 0; }
};

/// Flat `key = value` config text split into sections. Keys before the first
/// section header land in an implicit section with an empty name.
struct KvDocument {
    std::vector<KvSection> sections;

    const KvSection* find(const std::string& name) const;
    std::vector<const KvSection*> find_all(const std::string& name) const;
};

/// Parses `#`-commented `key = value` lines under `[section]` headers.
/// Throws ParseError (see scenario.hpp) with the line number on bad input.
KvDocument parse_kv(const std::string& text);

}  // namespace itsc
