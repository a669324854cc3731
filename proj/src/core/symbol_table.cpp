#include "ontoforge/core/symbol_table.hpp"

#include "ontoforge/error.hpp"

namespace ontoforge {

Symbol SymbolTable::register_term(const Curie& curie, std::string_view label) {
    if (forward_.contains(curie)) throw DuplicateCurie("CURIE already registered: " + curie.str());
    return register_symbol(curie, to_symbol(label));
}

Symbol SymbolTable::register_symbol(const Curie& curie, const Symbol& preferred) {
    if (forward_.contains(curie)) throw DuplicateCurie("CURIE already registered: " + curie.str());
    Symbol assigned = preferred;
    if (reverse_.contains(assigned)) {
        for (int suffix = 2;; ++suffix) {
            Symbol candidate(preferred.str() + std::to_string(suffix));
            if (!reverse_.contains(candidate)) {
                assigned = std::move(candidate);
                break;
            }
        }
        collisions_.push_back({curie, assigned, preferred});
    }
    forward_.emplace(curie, assigned);
    reverse_.emplace(assigned, curie);
    return assigned;
}

std::optional<Symbol> SymbolTable::symbol_for(const Curie& curie) const {
    if (auto it = forward_.find(curie); it != forward_.end()) return it->second;
    return std::nullopt;
}

std::optional<Curie> SymbolTable::curie_for(const Symbol& symbol) const {
    if (auto it = reverse_.find(symbol); it != reverse_.end()) return it->second;
    return std::nullopt;
}

} // namespace ontoforge
