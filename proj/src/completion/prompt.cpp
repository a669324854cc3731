#include "ontoforge/completion/prompt.hpp"

#include <cstdio>

#include "ontoforge/embed/embedding.hpp"
#include "ontoforge/error.hpp"

namespace ontoforge {

namespace {

constexpr std::string_view kInstruction =
    "You are assisting an ontology editor in creating a new ontology term.\n"
    "Complete the object given after the final \"input:\" by filling in these missing fields: {fields}.\n"
    "Respond with a single JSON object containing only those fields, in the same structure as the example "
    "outputs.\n"
    "Wherever possible, use only predicates and targets that appear in the examples or context below.";

constexpr std::string_view kBackgroundHeader = "## Background";
constexpr std::string_view kDocumentsHeader = "## Documents";
constexpr std::string_view kExamplesHeader = "## Examples";
constexpr std::string_view kQueryHeader = "## Query";
constexpr std::string_view kInstructionsHeader = "## Instructions";
constexpr std::string_view kNone = "(none)";

constexpr std::string_view kBackgroundInstruction =
    "Write a short, factual description of the ontology term \"{label}\" as it would be understood by a "
    "domain expert. Respond with plain text only.";

std::string replace_all(std::string s, std::string_view from, std::string_view to) {
    for (auto pos = s.find(from); pos != std::string::npos; pos = s.find(from, pos + to.size())) {
        s.replace(pos, from.size(), to);
    }
    return s;
}

// Cuts at a code point boundary.
std::string truncate_code_points(const std::string& s, std::size_t max_cp) {
    std::size_t cps = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if ((static_cast<unsigned char>(s[i]) & 0xC0) != 0x80) {
            if (cps == max_cp) return s.substr(0, i);
            ++cps;
        }
    }
    return s;
}

std::string render(const PartialTerm& query, std::span<const ContextExample> examples, std::size_t n_examples,
                   std::span<const Document> documents, const std::optional<std::string>& background) {
    std::string fields;
    for (auto f : query.mask) {
        if (!fields.empty()) fields += ", ";
        fields += to_string(f);
    }
    std::string out;
    out += kInstructionsHeader;
    out += '\n';
    out += replace_all(std::string(kInstruction), "{fields}", fields);
    out += "\n\n";

    out += kBackgroundHeader;
    out += '\n';
    out += (background && !background->empty()) ? *background : std::string(kNone);
    out += "\n\n";

    out += kDocumentsHeader;
    out += '\n';
    if (documents.empty()) {
        out += kNone;
        out += '\n';
    }
    for (const auto& d : documents) {
        out += "### " + d.title + "\n";
        out += truncate_code_points(d.body, kDocumentTokenCap * 4);
        out += '\n';
    }
    out += '\n';

    out += kExamplesHeader;
    out += '\n';
    for (std::size_t i = 0; i < n_examples; ++i) {
        out += "input:\n" + examples[i].input.dump() + "\noutput:\n" + examples[i].output.dump() + "\n\n";
    }

    out += kQueryHeader;
    out += "\ninput:\n" + input_json(query).dump() + "\noutput:\n";
    return out;
}

} // namespace

std::size_t estimate_tokens(std::string_view text) noexcept {
    std::size_t cps = 0;
    for (char c : text) {
        if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++cps;
    }
    return (cps + 3) / 4;
}

Prompt build_prompt(const PartialTerm& query, std::span<const ContextExample> examples,
                    std::span<const Document> documents, const PromptBudget& budget,
                    const std::optional<std::string>& background) {
    if (budget.min_examples > budget.requested_examples) {
        throw BudgetImpossible("min_examples exceeds requested_examples");
    }
    if (examples.size() < budget.min_examples) {
        throw BudgetImpossible("only " + std::to_string(examples.size()) + " examples available, " +
                               std::to_string(budget.min_examples) + " required");
    }
    std::size_t n = std::min(examples.size(), budget.requested_examples);
    for (;;) {
        auto text = render(query, examples, n, documents, background);
        if (estimate_tokens(text) <= budget.max_tokens) return Prompt{std::move(text), n};
        if (n <= budget.min_examples) {
            throw BudgetImpossible("prompt needs " + std::to_string(estimate_tokens(text)) + " tokens with " +
                                   std::to_string(n) + " examples; limit is " + std::to_string(budget.max_tokens));
        }
        --n;
    }
}

std::string background_prompt(const PartialTerm& query) {
    return replace_all(std::string(kBackgroundInstruction), "{label}", query.label.value_or(""));
}

std::string prompt_template_hash() {
    std::string all;
    for (auto part : {kInstruction, kBackgroundHeader, kDocumentsHeader, kExamplesHeader, kQueryHeader,
                      kInstructionsHeader, kNone, kBackgroundInstruction, kRepairSuffix}) {
        all += part;
        all += '\x1f';
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(all)));
    return buf;
}

} // namespace ontoforge
