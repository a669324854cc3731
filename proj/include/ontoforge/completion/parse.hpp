#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ontoforge/completion/partial_term.hpp"

namespace ontoforge {

// Masked-field values recovered from a model response. Relationship
// predicates and targets are normalized with to_symbol.
struct FieldMap {
    std::optional<std::string> label;
    std::optional<std::string> definition;
    std::optional<std::vector<Relationship>> relationships;
    std::optional<std::vector<Relationship>> logical_definitions;
    std::vector<std::string> rejected;  // entries that could not be read, as raw JSON text
};

// Finds the first balanced {...} block that parses as a JSON object, skipping
// preamble, code fences and trailing prose. Throws NoJsonFound when the text has
// no brace block at all, MalformedJson when no block parses.
nlohmann::json extract_json_object(const std::string& raw);

// Throws NoJsonFound / MalformedJson.
FieldMap parse_completion(const std::string& raw, const std::set<TermField>& mask);

struct FilteredRelationships {
    std::vector<Relationship> kept;
    std::vector<Relationship> dropped;
};

// Keeps a relationship iff its target is in `universe` and, when a whitelist is
// given, its predicate is whitelisted. Duplicates collapse into one kept entry.
FilteredRelationships postfilter_relationships(const std::vector<Relationship>& relationships,
                                               const std::set<Symbol>& universe,
                                               const std::optional<std::set<Symbol>>& predicate_whitelist);

} // namespace ontoforge
