#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "ontoforge/core/model.hpp"

namespace ontoforge {

enum class TermField { label, definition, relationships, logical_definitions };

std::string_view to_string(TermField f) noexcept;
// Accepts the canonical names plus "logical_definition". Throws InvalidQuery.
TermField term_field_from_string(std::string_view s);
std::set<TermField> parse_mask(std::string_view comma_separated);

// A term with some fields known and a mask naming the fields to generate.
// Never carries an id: identifiers are withheld from the model.
struct PartialTerm {
    std::optional<std::string> label;
    std::optional<std::string> definition;
    std::optional<std::vector<Relationship>> relationships;
    std::optional<std::vector<Relationship>> logical_definitions;
    std::set<TermField> mask;

    bool populated(TermField f) const noexcept;
    // Throws InvalidQuery: empty mask, nothing populated, or mask overlapping populated fields.
    void validate() const;

    bool operator==(const PartialTerm&) const = default;
};

// Populated fields only, in schema order.
nlohmann::ordered_json input_json(const PartialTerm& q);

nlohmann::json to_json(const PartialTerm& q);
// Reads label/definition/relationships/logical_definitions and an optional
// "mask" array; `default_mask` applies when the line has none. Populated
// fields that are also masked are cleared.
PartialTerm partial_term_from_json(const nlohmann::json& j, const std::set<TermField>& default_mask);

// Retrieved term split into what the query knows (input) and what it asks for (output).
struct ContextExample {
    std::string key;
    nlohmann::ordered_json input;
    nlohmann::ordered_json output;
};

// nullopt when the term has none of the masked fields.
std::optional<ContextExample> project_example(const TermObject& term, const PartialTerm& query);

} // namespace ontoforge
