#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace ontoforge {

// Compact identifier `prefix:local_id`, e.g. CL:1001502.
class Curie {
public:
    Curie(std::string prefix, std::string local_id);

    // Throws InvalidCurie unless `text` has exactly one colon and both sides are non-empty.
    static Curie parse(std::string_view text);
    static bool looks_like_curie(std::string_view text) noexcept;

    const std::string& prefix() const noexcept { return prefix_; }
    const std::string& local_id() const noexcept { return local_id_; }
    std::string str() const { return prefix_ + ":" + local_id_; }

    auto operator<=>(const Curie&) const = default;

private:
    std::string prefix_;
    std::string local_id_;
};

// Label-derived identifier presented to language models in place of a CURIE.
// Text matches [A-Za-z][A-Za-z0-9_]*; to_symbol never emits '_', which is
// reserved for the `Curie_<prefix>_<local>` fallback form.
class Symbol {
public:
    Symbol() = default;

    // Throws InvalidSymbol when `text` violates the character class.
    explicit Symbol(std::string text);

    static bool is_valid(std::string_view text) noexcept;

    const std::string& str() const noexcept { return text_; }
    bool empty() const noexcept { return text_.empty(); }

    auto operator<=>(const Symbol&) const = default;

private:
    std::string text_;
};

inline const Symbol& subclass_of() {
    static const Symbol s{"SubClassOf"};
    return s;
}

// Camel-cases a label: "mitral cell" -> "MitralCell", "5-HT receptor" -> "N5HTReceptor".
Symbol to_symbol(std::string_view label);

// Fallback symbol for a CURIE that has no label: CL:0000099 -> Curie_CL_0000099.
Symbol fallback_symbol(const Curie& curie);

struct Relationship {
    Symbol predicate;
    Symbol target;

    auto operator<=>(const Relationship&) const = default;
};

struct TermObject {
    Symbol id;
    std::optional<Curie> original_id;
    std::string label;
    std::optional<std::string> definition;
    std::vector<Relationship> relationships;
    std::optional<std::vector<Relationship>> logical_definitions;
    std::optional<std::string> created_date;

    bool operator==(const TermObject&) const = default;
};

// Removes exact duplicates, keeping the first occurrence.
std::vector<Relationship> dedupe_relationships(const std::vector<Relationship>& rels);

// Genus-differentia shape: exactly one SubClassOf entry.
bool is_genus_differentia(const std::vector<Relationship>& rels) noexcept;

nlohmann::json to_json(const Relationship& r);
nlohmann::json to_json(const std::vector<Relationship>& rels);
nlohmann::json to_json(const TermObject& t);

// Inverse of to_json(TermObject). Throws InvalidSymbol / InvalidCurie on bad fields.
TermObject term_from_json(const nlohmann::json& j);
std::vector<Relationship> relationships_from_json(const nlohmann::json& j);

} // namespace ontoforge

template <>
struct std::hash<ontoforge::Symbol> {
    std::size_t operator()(const ontoforge::Symbol& s) const noexcept {
        return std::hash<std::string>{}(s.str());
    }
};

template <>
struct std::hash<ontoforge::Curie> {
    std::size_t operator()(const ontoforge::Curie& c) const noexcept {
        return std::hash<std::string>{}(c.prefix()) * 31u + std::hash<std::string>{}(c.local_id());
    }
};
