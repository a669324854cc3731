#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "ontoforge/core/graph.hpp"
#include "ontoforge/core/model.hpp"

namespace ontoforge {

struct TermCounts {
    double tp = 0.0;
    double fp = 0.0;
    double fn = 0.0;
    std::size_t n_pred = 0;  // distinct predictions scored
    std::size_t n_gold = 0;  // distinct gold edges scored

    bool operator==(const TermCounts&) const = default;
};

// Corpus totals are kept equal to the sum over per_term.
class ScoreLedger {
public:
    void add(const Symbol& term, const TermCounts& counts);

    const TermCounts& totals() const noexcept { return totals_; }
    const std::map<Symbol, TermCounts>& per_term() const noexcept { return per_term_; }

private:
    TermCounts totals_;
    std::map<Symbol, TermCounts> per_term_;
};

// Four steps over the distinct edges of pred and gold:
//  1. each exact (predicate, target) match is a true positive;
//  2. remaining predictions that are more general than the subject (is_more_general)
//     are set aside and count as neither tp nor fp;
//  3. each unmatched gold edge costs 0.5 fn when a set-aside prediction shares its
//     predicate, 1 fn otherwise;
//  4. any other prediction is a false positive.
TermCounts score_relationships(std::span<const Relationship> pred, std::span<const Relationship> gold,
                               const OntologyGraph& graph, const Symbol& subject);

// Core ontology plus the subject's gold edges: the graph score_relationships expects.
OntologyGraph scoring_graph(const OntologyGraph& core, const Symbol& subject, std::span<const Relationship> gold);

// Keeps only edges with the given predicate (the SubClassOf subtask).
std::vector<Relationship> filter_predicate(std::span<const Relationship> rels, const Symbol& predicate);

struct Metrics {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

// Harmonic mean, 0 when p + r == 0.
double f1_score(double precision, double recall) noexcept;

// Micro-averaged. 0/0 gives 0, except that an empty prediction corpus scored
// against an empty gold corpus gives (1, 1, 1).
Metrics aggregate_metrics(const TermCounts& totals) noexcept;
Metrics aggregate_metrics(const ScoreLedger& ledger) noexcept;

struct LogicalDefinitionScore {
    bool exact = false;
    double jaccard = 0.0;
};

// Throws MalformedGold unless gold is non-empty with exactly one SubClassOf.
LogicalDefinitionScore score_logical_definitions(std::span<const Relationship> pred, std::span<const Relationship> gold);

nlohmann::json to_json(const TermCounts& c);
nlohmann::json to_json(const Metrics& m);
nlohmann::json to_json(const ScoreLedger& l);

} // namespace ontoforge
