#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ontoforge/embed/embedding.hpp"

namespace ontoforge {

struct MmrCandidate {
    std::string key;
    EmbeddingVector vector;
};

// Maximal marginal relevance. Greedily picks m candidates maximizing
//   lambda * sim(c, query) - (1 - lambda) * max_{s in selected} sim(c, s)
// with cosine similarity. The first pick is the most query-similar candidate.
// Ties go to higher query similarity, then earlier input position.
std::vector<std::string> mmr_rerank(const EmbeddingVector& query, std::span<const MmrCandidate> candidates,
                                    double lambda, std::size_t m);

} // namespace ontoforge
