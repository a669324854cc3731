#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ontoforge/completion/parse.hpp"
#include "ontoforge/completion/prompt.hpp"
#include "ontoforge/completion/provider.hpp"
#include "ontoforge/embed/embedding.hpp"
#include "ontoforge/vstore/collection.hpp"

namespace ontoforge {

// A term collection plus what post-filtering needs to know about it.
struct TermIndex {
    const Collection* terms = nullptr;
    std::set<Symbol> universe;    // term ids and every relationship target
    std::set<Symbol> predicates;  // predicates used anywhere, plus SubClassOf

    static TermIndex from(const Collection& terms);
};

struct RetrievalOptions {
    double mmr_lambda = 0.5;
    std::size_t candidate_multiplier = 3;
    std::size_t github_docs = 3;
};

struct CompletionOptions {
    PromptBudget budget;
    RetrievalOptions retrieval;
    bool use_github = false;
    bool use_background = false;
    bool repair_retry = true;
    // Overrides TermIndex::predicates when set.
    std::optional<std::set<Symbol>> predicate_whitelist;
};

struct ContextSelection {
    std::vector<ContextExample> examples;
    std::vector<Document> documents;
};

// Retrieval text for a query: its populated fields serialized, with the
// background appended when given.
std::string query_text(const PartialTerm& query, const std::optional<std::string>& background);

// Throws EmptyStore when the term collection is empty, ConfigError when
// use_github is set without an issue collection.
ContextSelection select_context(const TermIndex& index, const Collection* issues, EmbeddingProvider& embedder,
                                const PartialTerm& query, const PromptBudget& budget,
                                const RetrievalOptions& retrieval, bool use_github,
                                const std::optional<std::string>& background);

// One provider call with no retrieval context. An empty reply is returned as-is.
std::string generate_background(CompletionProvider& provider, const PartialTerm& query);

struct CompletedTerm {
    TermObject term;
    std::vector<Relationship> dropped_relationships;
    std::string raw_response;
    std::vector<std::string> context_keys;
    std::vector<std::string> document_keys;
    std::string background;
    std::string prompt_text;
};

nlohmann::json to_json(const CompletedTerm& c);

struct CompletionContext {
    TermIndex index;
    const Collection* issues = nullptr;
    EmbeddingProvider* embedder = nullptr;
    CompletionProvider* provider = nullptr;
};

// select_context -> build_prompt -> provider -> parse -> postfilter -> merge.
// Populated query fields are copied through unchanged.
CompletedTerm complete_term(const CompletionContext& ctx, const PartialTerm& query, const CompletionOptions& options);

// Key used for scripted playback and logging.
std::string query_key(const PartialTerm& query);

} // namespace ontoforge
