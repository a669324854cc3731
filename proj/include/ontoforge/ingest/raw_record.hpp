#pragma once

#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ontoforge/core/model.hpp"
#include "ontoforge/core/symbol_table.hpp"

namespace ontoforge {

// `target` is a CURIE (OBO input) or an already-translated symbol (JSONL input);
// `predicate` is a label, a CURIE, or a symbol.
struct RawRelationship {
    std::string predicate;
    std::string target;

    bool operator==(const RawRelationship&) const = default;
};

struct RawTermRecord {
    Curie curie;
    std::string label{};
    std::optional<std::string> definition{};
    std::vector<std::string> definition_xrefs{};
    std::vector<RawRelationship> raw_relationships{};
    std::optional<std::vector<RawRelationship>> raw_logical{};
    std::optional<std::string> created_date{};
    std::optional<std::string> symbol_hint{};  // JSONL `id` when it is a symbol
    std::size_t line = 0;                    // not part of equality

    bool operator==(const RawTermRecord& o) const {
        return curie == o.curie && label == o.label && definition == o.definition &&
               definition_xrefs == o.definition_xrefs && raw_relationships == o.raw_relationships &&
               raw_logical == o.raw_logical && created_date == o.created_date &&
               symbol_hint == o.symbol_hint;
    }
};

// One term object per line. Requires `label` and a CURIE in `original_id`
// (or in `id` when it contains a colon). Blank lines are skipped.
std::vector<RawTermRecord> parse_term_jsonl(std::istream& in);

// [Term] stanzas with the id, name, is_a, relationship, def and
// creation_date tags; everything else is ignored.
std::vector<RawTermRecord> parse_obo_subset(std::istream& in);

// CURIE or raw label -> human label. Used for predicates ("RO:0002100" ->
// "has soma location") and for relationship targets that have no record of
// their own (imported terms).
using PredicateLabelMap = std::map<std::string, std::string>;

const PredicateLabelMap& default_predicate_labels();

// Reads `key<TAB>label` lines; '#' starts a comment.
PredicateLabelMap read_predicate_map(std::istream& in);

// Reads `curie<TAB>date` lines and fills created_date where absent.
void apply_date_sidecar(std::vector<RawTermRecord>& records, std::istream& dates);

struct CanonicalizeWarning {
    Curie subject;
    std::string message;
};

struct CanonicalOntology {
    std::vector<TermObject> terms;
    SymbolTable table;
    std::vector<CanonicalizeWarning> warnings;
};

CanonicalOntology canonicalize(const std::vector<RawTermRecord>& records,
                               const PredicateLabelMap& predicate_labels = default_predicate_labels());

} // namespace ontoforge
