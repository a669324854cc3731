#pragma once

#include <map>
#include <set>
#include <span>
#include <vector>

#include "ontoforge/core/model.hpp"

namespace ontoforge {

struct Edge {
    Symbol subject;
    Symbol predicate;
    Symbol object;

    auto operator<=>(const Edge&) const = default;
};

// Directed labeled multigraph over term symbols. Cycles are allowed.
class OntologyGraph {
public:
    void add_node(const Symbol& node);
    // Adds both endpoints; returns false if the edge already existed.
    bool add_edge(const Symbol& subject, const Symbol& predicate, const Symbol& object);

    bool has_node(const Symbol& node) const { return nodes_.contains(node); }
    bool has_edge(const Edge& e) const { return edges_.contains(e); }

    const std::set<Symbol>& nodes() const noexcept { return nodes_; }
    const std::set<Edge>& edges() const noexcept { return edges_; }

    // Outgoing (predicate, object) pairs of `subject`, empty if unknown.
    const std::vector<Relationship>& out_edges(const Symbol& subject) const;

private:
    std::set<Symbol> nodes_;
    std::set<Edge> edges_;
    std::map<Symbol, std::vector<Relationship>> adjacency_;
};

OntologyGraph build_graph(std::span<const TermObject> terms);

// True iff `target` is reachable from `subject` by a path of length >= 1 whose
// edges are all labeled SubClassOf or `predicate`.
bool is_more_general(const OntologyGraph& graph, const Symbol& subject, const Symbol& predicate,
                     const Symbol& target);

} // namespace ontoforge
