#include "ontoforge/vstore/mmr.hpp"

#include <algorithm>
#include <limits>

namespace ontoforge {

std::vector<std::string> mmr_rerank(const EmbeddingVector& query, std::span<const MmrCandidate> candidates,
                                    double lambda, std::size_t m) {
    const std::size_t n = candidates.size();
    m = std::min(m, n);
    std::vector<double> relevance(n);
    for (std::size_t i = 0; i < n; ++i) relevance[i] = cosine_similarity(query, candidates[i].vector);

    std::vector<double> redundancy(n, 0.0);  // max similarity to anything selected so far
    std::vector<bool> taken(n, false);
    std::vector<std::string> out;
    out.reserve(m);

    for (std::size_t step = 0; step < m; ++step) {
        std::size_t best = n;
        double best_score = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) {
            if (taken[i]) continue;
            const double score = step == 0 ? relevance[i] : lambda * relevance[i] - (1.0 - lambda) * redundancy[i];
            if (best == n || score > best_score || (score == best_score && relevance[i] > relevance[best])) {
                best = i;
                best_score = score;
            }
        }
        taken[best] = true;
        out.push_back(candidates[best].key);
        for (std::size_t i = 0; i < n; ++i) {
            if (taken[i]) continue;
            const double s = cosine_similarity(candidates[i].vector, candidates[best].vector);
            redundancy[i] = step == 0 ? s : std::max(redundancy[i], s);
        }
    }
    return out;
}

} // namespace ontoforge
