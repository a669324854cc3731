#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ontoforge/completion/partial_term.hpp"
#include "ontoforge/core/model.hpp"

namespace ontoforge {

struct SplitSpec {
    std::string cutoff_date;  // YYYY-MM-DD, inclusive
    std::size_t n_test = 50;
};

struct TestSplit {
    std::vector<TermObject> core;
    std::vector<TermObject> test;  // input order
};

// Samples n_test terms dated on or after the cutoff; everything else is core.
// Throws InsufficientNewTerms, or InvalidQuery for a malformed spec.
TestSplit split_test_set(std::span<const TermObject> terms, const SplitSpec& spec, std::uint64_t seed);

enum class MaskTask { relationships, definition, logical_definition };

std::string_view to_string(MaskTask t) noexcept;
MaskTask mask_task_from_string(std::string_view s);

// Removes the task's gold field and all identifiers. Throws MissingGoldField.
PartialTerm mask_term(const TermObject& term, MaskTask task);

// Uniform in [0, bound) without modulo bias. Stable across standard libraries,
// unlike std::uniform_int_distribution.
std::uint64_t bounded_draw(std::uint64_t bound, auto& rng) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    for (;;) {
        const std::uint64_t x = rng();
        if (x < limit) return x % bound;
    }
}

} // namespace ontoforge
