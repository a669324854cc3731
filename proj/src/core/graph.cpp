#include "ontoforge/core/graph.hpp"

#include <queue>

namespace ontoforge {

void OntologyGraph::add_node(const Symbol& node) { nodes_.insert(node); }

bool OntologyGraph::add_edge(const Symbol& subject, const Symbol& predicate, const Symbol& object) {
    nodes_.insert(subject);
    nodes_.insert(object);
    if (!edges_.insert(Edge{subject, predicate, object}).second) return false;
    adjacency_[subject].push_back({predicate, object});
    return true;
}

const std::vector<Relationship>& OntologyGraph::out_edges(const Symbol& subject) const {
    static const std::vector<Relationship> none;
    auto it = adjacency_.find(subject);
    return it == adjacency_.end() ? none : it->second;
}

OntologyGraph build_graph(std::span<const TermObject> terms) {
    OntologyGraph g;
    for (const auto& t : terms) {
        g.add_node(t.id);
        for (const auto& r : t.relationships) g.add_edge(t.id, r.predicate, r.target);
    }
    return g;
}

bool is_more_general(const OntologyGraph& graph, const Symbol& subject, const Symbol& predicate,
                     const Symbol& target) {
    if (!graph.has_node(subject) || !graph.has_node(target)) return false;
    std::set<Symbol> visited;
    std::queue<Symbol> frontier;
    frontier.push(subject);
    // The subject is not marked visited up front: a cycle back to it counts as a path.
    while (!frontier.empty()) {
        Symbol node = std::move(frontier.front());
        frontier.pop();
        for (const auto& [pred, obj] : graph.out_edges(node)) {
            if (pred != subclass_of() && pred != predicate) continue;
            if (obj == target) return true;
            if (visited.insert(obj).second) frontier.push(obj);
        }
    }
    return false;
}

} // namespace ontoforge
