#include "ontoforge/eval/scoring.hpp"

#include <set>

#include "ontoforge/error.hpp"

namespace ontoforge {

void ScoreLedger::add(const Symbol& term, const TermCounts& c) {
    auto& t = per_term_[term];
    t.tp += c.tp;
    t.fp += c.fp;
    t.fn += c.fn;
    t.n_pred += c.n_pred;
    t.n_gold += c.n_gold;
    totals_.tp += c.tp;
    totals_.fp += c.fp;
    totals_.fn += c.fn;
    totals_.n_pred += c.n_pred;
    totals_.n_gold += c.n_gold;
}

TermCounts score_relationships(std::span<const Relationship> pred, std::span<const Relationship> gold,
                               const OntologyGraph& graph, const Symbol& subject) {
    const std::set<Relationship> p(pred.begin(), pred.end());
    const std::set<Relationship> g(gold.begin(), gold.end());

    TermCounts out;
    out.n_pred = p.size();
    out.n_gold = g.size();

    std::set<Symbol> general_predicates;
    for (const auto& r : p) {
        if (g.contains(r)) {
            out.tp += 1.0;
        } else if (is_more_general(graph, subject, r.predicate, r.target)) {
            general_predicates.insert(r.predicate);
        } else {
            out.fp += 1.0;
        }
    }
    for (const auto& r : g) {
        if (p.contains(r)) continue;
        out.fn += general_predicates.contains(r.predicate) ? 0.5 : 1.0;
    }
    return out;
}

OntologyGraph scoring_graph(const OntologyGraph& core, const Symbol& subject, std::span<const Relationship> gold) {
    OntologyGraph g = core;
    g.add_node(subject);
    for (const auto& r : gold) g.add_edge(subject, r.predicate, r.target);
    return g;
}

std::vector<Relationship> filter_predicate(std::span<const Relationship> rels, const Symbol& predicate) {
    std::vector<Relationship> out;
    for (const auto& r : rels) {
        if (r.predicate == predicate) out.push_back(r);
    }
    return out;
}

double f1_score(double precision, double recall) noexcept {
    const double d = precision + recall;
    return d > 0.0 ? 2.0 * precision * recall / d : 0.0;
}

Metrics aggregate_metrics(const TermCounts& t) noexcept {
    if (t.n_pred == 0 && t.n_gold == 0) return {1.0, 1.0, 1.0};
    Metrics m;
    const double pd = t.tp + t.fp;
    const double rd = t.tp + t.fn;
    m.precision = pd > 0.0 ? t.tp / pd : 0.0;
    m.recall = rd > 0.0 ? t.tp / rd : 0.0;
    m.f1 = f1_score(m.precision, m.recall);
    return m;
}

Metrics aggregate_metrics(const ScoreLedger& ledger) noexcept { return aggregate_metrics(ledger.totals()); }

LogicalDefinitionScore score_logical_definitions(std::span<const Relationship> pred,
                                                 std::span<const Relationship> gold) {
    const std::vector<Relationship> gv(gold.begin(), gold.end());
    if (gv.empty() || !is_genus_differentia(gv)) {
        throw MalformedGold("gold logical definition must have exactly one SubClassOf genus");
    }
    const std::set<Relationship> p(pred.begin(), pred.end());
    const std::set<Relationship> g(gold.begin(), gold.end());
    std::size_t common = 0;
    for (const auto& r : p) common += g.contains(r) ? 1 : 0;
    const auto uni = p.size() + g.size() - common;
    return {p == g, static_cast<double>(common) / static_cast<double>(uni)};
}

nlohmann::json to_json(const TermCounts& c) {
    return {{"tp", c.tp}, {"fp", c.fp}, {"fn", c.fn}, {"n_pred", c.n_pred}, {"n_gold", c.n_gold}};
}

nlohmann::json to_json(const Metrics& m) {
    return {{"precision", m.precision}, {"recall", m.recall}, {"f1", m.f1}};
}

nlohmann::json to_json(const ScoreLedger& l) {
    nlohmann::json per = nlohmann::json::object();
    for (const auto& [term, c] : l.per_term()) per[term.str()] = to_json(c);
    return {{"totals", to_json(l.totals())}, {"per_term", per}};
}

} // namespace ontoforge
