#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ontoforge/completion/partial_term.hpp"
#include "ontoforge/ingest/document.hpp"

namespace ontoforge {

struct PromptBudget {
    std::size_t max_tokens = 3000;
    std::size_t min_examples = 1;
    std::size_t requested_examples = 10;
};

struct Prompt {
    std::string text;
    std::size_t examples_used = 0;
};

// ceil(code points / 4)
std::size_t estimate_tokens(std::string_view text) noexcept;

// Per-document cap on what gets pasted into a prompt.
inline constexpr std::size_t kDocumentTokenCap = 1500;

// Instruction, background, documents, examples, then the query as the final
// "input:". Examples are dropped from the tail until the estimate fits
// max_tokens, never below min_examples. Throws BudgetImpossible.
Prompt build_prompt(const PartialTerm& query, std::span<const ContextExample> examples,
                    std::span<const Document> documents, const PromptBudget& budget,
                    const std::optional<std::string>& background = std::nullopt);

// Instruction used for the self-generated background call.
std::string background_prompt(const PartialTerm& query);

// Appended to the prompt for the single repair attempt.
inline constexpr std::string_view kRepairSuffix = "Respond with a single JSON object only.";

// Hex FNV-1a over every fixed template string; recorded in run manifests.
std::string prompt_template_hash();

} // namespace ontoforge
