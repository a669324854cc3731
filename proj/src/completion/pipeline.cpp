#include "ontoforge/completion/pipeline.hpp"

#include "ontoforge/error.hpp"
#include "ontoforge/vstore/mmr.hpp"

namespace ontoforge {

TermIndex TermIndex::from(const Collection& terms) {
    TermIndex out;
    out.terms = &terms;
    out.predicates.insert(subclass_of());
    for (const auto& item : terms.items()) {
        const auto t = term_from_json(item.payload);
        out.universe.insert(t.id);
        auto note = [&](const std::vector<Relationship>& rels) {
            for (const auto& r : rels) {
                out.universe.insert(r.target);
                out.predicates.insert(r.predicate);
            }
        };
        note(t.relationships);
        if (t.logical_definitions) note(*t.logical_definitions);
    }
    return out;
}

std::string query_text(const PartialTerm& query, const std::optional<std::string>& background) {
    const std::vector<Relationship> none;
    auto text = serialize_fields(query.label, query.definition, query.relationships ? *query.relationships : none);
    if (background && !background->empty()) {
        if (!text.empty()) text += ' ';
        text += *background;
    }
    return text;
}

ContextSelection select_context(const TermIndex& index, const Collection* issues, EmbeddingProvider& embedder,
                                const PartialTerm& query, const PromptBudget& budget,
                                const RetrievalOptions& retrieval, bool use_github,
                                const std::optional<std::string>& background) {
    if (!index.terms || index.terms->size() == 0) throw EmptyStore("term collection is empty");
    if (use_github && !issues) throw ConfigError("github context requested but no issue collection was given");

    const auto qvec = embedder.embed_text(query_text(query, background));
    ContextSelection out;

    const std::size_t want = budget.requested_examples;
    if (want > 0) {
        const auto hits = index.terms->knn_query(qvec, want * std::max<std::size_t>(1, retrieval.candidate_multiplier));
        std::vector<MmrCandidate> candidates;
        candidates.reserve(hits.size());
        for (const auto& h : hits) candidates.push_back({h.key, index.terms->find(h.key)->vector});
        for (const auto& key : mmr_rerank(qvec, candidates, retrieval.mmr_lambda, want)) {
            const auto term = term_from_json(index.terms->find(key)->payload);
            if (auto ex = project_example(term, query)) out.examples.push_back(std::move(*ex));
        }
    }

    if (use_github && retrieval.github_docs > 0 && issues->size() > 0) {
        for (const auto& h : issues->knn_query(qvec, retrieval.github_docs)) {
            out.documents.push_back(document_from_json(issues->find(h.key)->payload));
        }
    }
    return out;
}

std::string query_key(const PartialTerm& query) {
    if (query.label && !query.label->empty()) return *query.label;
    return query_text(query, std::nullopt);
}

std::string generate_background(CompletionProvider& provider, const PartialTerm& query) {
    return call_provider(provider, "background:" + query_key(query), background_prompt(query));
}

nlohmann::json to_json(const CompletedTerm& c) {
    return {{"term", to_json(c.term)},
            {"dropped_relationships", to_json(c.dropped_relationships)},
            {"raw_response", c.raw_response},
            {"context_keys", c.context_keys},
            {"document_keys", c.document_keys},
            {"background", c.background}};
}

namespace {

Symbol id_for(const std::string& label) {
    if (!label.empty()) {
        try {
            return to_symbol(label);
        } catch (const Error&) {
        }
    }
    return Symbol("NewTerm");
}

} // namespace

CompletedTerm complete_term(const CompletionContext& ctx, const PartialTerm& query, const CompletionOptions& options) {
    query.validate();
    if (!ctx.embedder || !ctx.provider) throw ConfigError("completion context is missing a provider");

    CompletedTerm out;
    std::optional<std::string> background;
    if (options.use_background) {
        out.background = generate_background(*ctx.provider, query);
        background = out.background;
    }

    const auto selection = select_context(ctx.index, ctx.issues, *ctx.embedder, query, options.budget,
                                          options.retrieval, options.use_github, background);
    const auto prompt = build_prompt(query, selection.examples, selection.documents, options.budget, background);
    out.prompt_text = prompt.text;
    for (std::size_t i = 0; i < prompt.examples_used; ++i) out.context_keys.push_back(selection.examples[i].key);
    for (const auto& d : selection.documents) out.document_keys.push_back(d.doc_id);

    const auto key = query_key(query);
    out.raw_response = call_provider(*ctx.provider, key, prompt.text);
    FieldMap fields;
    try {
        fields = parse_completion(out.raw_response, query.mask);
    } catch (const Error& e) {
        const bool parse_failure = dynamic_cast<const NoJsonFound*>(&e) || dynamic_cast<const MalformedJson*>(&e);
        if (!parse_failure || !options.repair_retry) throw;
        out.raw_response = call_provider(*ctx.provider, key, prompt.text + "\n" + std::string(kRepairSuffix));
        fields = parse_completion(out.raw_response, query.mask);
    }

    const auto& whitelist = options.predicate_whitelist ? options.predicate_whitelist
                                                        : std::optional<std::set<Symbol>>(ctx.index.predicates);
    auto filter = [&](const std::vector<Relationship>& rels) {
        auto f = postfilter_relationships(rels, ctx.index.universe, whitelist);
        out.dropped_relationships.insert(out.dropped_relationships.end(), f.dropped.begin(), f.dropped.end());
        return f.kept;
    };

    auto& t = out.term;
    t.label = query.label ? *query.label : fields.label.value_or("");
    t.id = id_for(t.label);
    t.definition = query.definition ? query.definition : fields.definition;
    if (query.mask.contains(TermField::relationships)) {
        if (fields.relationships) t.relationships = filter(*fields.relationships);
    } else if (query.relationships) {
        t.relationships = *query.relationships;
    }
    if (query.mask.contains(TermField::logical_definitions)) {
        if (fields.logical_definitions) t.logical_definitions = filter(*fields.logical_definitions);
    } else {
        t.logical_definitions = query.logical_definitions;
    }
    return out;
}

} // namespace ontoforge
