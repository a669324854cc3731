#pragma once

#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "ontoforge/core/model.hpp"

namespace ontoforge {

// Bidirectional Curie <-> Symbol mapping. Registration is single-writer;
// a built table is safe for concurrent reads.
class SymbolTable {
public:
    struct Collision {
        Curie curie;
        Symbol assigned;   // the suffixed symbol actually bound
        Symbol requested;  // the symbol that was already taken
    };

    // Binds `curie` to to_symbol(label), suffixing 2, 3, ... on collision.
    // Throws DuplicateCurie if the curie is already registered.
    Symbol register_term(const Curie& curie, std::string_view label);

    // Same as register_term but with an explicit preferred symbol.
    Symbol register_symbol(const Curie& curie, const Symbol& preferred);

    std::optional<Symbol> symbol_for(const Curie& curie) const;
    std::optional<Curie> curie_for(const Symbol& symbol) const;

    bool contains(const Curie& curie) const { return forward_.contains(curie); }
    bool contains(const Symbol& symbol) const { return reverse_.contains(symbol); }
    std::size_t size() const noexcept { return forward_.size(); }

    const std::map<Curie, Symbol>& forward() const noexcept { return forward_; }
    const std::map<Symbol, Curie>& reverse() const noexcept { return reverse_; }
    const std::vector<Collision>& collisions() const noexcept { return collisions_; }

private:
    std::map<Curie, Symbol> forward_;
    std::map<Symbol, Curie> reverse_;
    std::vector<Collision> collisions_;
};

} // namespace ontoforge
