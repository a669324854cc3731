#include "ontoforge/eval/split.hpp"

#include <algorithm>
#include <random>

#include "ontoforge/error.hpp"

namespace ontoforge {

namespace {

bool is_iso_date(std::string_view s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
    for (std::size_t i : {0, 1, 2, 3, 5, 6, 8, 9}) {
        if (s[i] < '0' || s[i] > '9') return false;
    }
    return true;
}

} // namespace

TestSplit split_test_set(std::span<const TermObject> terms, const SplitSpec& spec, std::uint64_t seed) {
    if (spec.n_test == 0) throw InvalidQuery("n_test must be at least 1");
    if (!is_iso_date(spec.cutoff_date)) throw InvalidQuery("cutoff date must be YYYY-MM-DD: '" + spec.cutoff_date + "'");

    std::vector<std::size_t> eligible;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const auto& d = terms[i].created_date;
        // Timestamps sort correctly against a bare date on their first 10 chars.
        if (d && d->size() >= 10 && d->substr(0, 10) >= spec.cutoff_date) eligible.push_back(i);
    }
    if (eligible.size() < spec.n_test) throw InsufficientNewTerms(eligible.size(), spec.n_test);

    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < spec.n_test; ++i) {
        const auto j = i + bounded_draw(eligible.size() - i, rng);
        std::swap(eligible[i], eligible[j]);
    }
    std::vector<bool> in_test(terms.size(), false);
    for (std::size_t i = 0; i < spec.n_test; ++i) in_test[eligible[i]] = true;

    TestSplit out;
    for (std::size_t i = 0; i < terms.size(); ++i) (in_test[i] ? out.test : out.core).push_back(terms[i]);
    return out;
}

std::string_view to_string(MaskTask t) noexcept {
    switch (t) {
    case MaskTask::relationships: return "relationships";
    case MaskTask::definition: return "definition";
    case MaskTask::logical_definition: return "logical_definition";
    }
    return "?";
}

MaskTask mask_task_from_string(std::string_view s) {
    if (s == "relationships") return MaskTask::relationships;
    if (s == "definition") return MaskTask::definition;
    if (s == "logical_definition" || s == "logical_definitions") return MaskTask::logical_definition;
    throw InvalidQuery("unknown mask task '" + std::string(s) + "'");
}

PartialTerm mask_term(const TermObject& term, MaskTask task) {
    PartialTerm q;
    q.label = term.label;
    switch (task) {
    case MaskTask::relationships:
        if (term.relationships.empty()) throw MissingGoldField(term.id.str() + " has no relationships");
        q.definition = term.definition;
        q.mask = {TermField::relationships};
        break;
    case MaskTask::definition:
        if (!term.definition || term.definition->empty()) throw MissingGoldField(term.id.str() + " has no definition");
        if (!term.relationships.empty()) q.relationships = term.relationships;
        if (term.logical_definitions && !term.logical_definitions->empty()) q.logical_definitions = term.logical_definitions;
        q.mask = {TermField::definition};
        break;
    case MaskTask::logical_definition:
        if (!term.logical_definitions || term.logical_definitions->empty()) {
            throw MissingGoldField(term.id.str() + " has no logical definition");
        }
        q.definition = term.definition;
        q.mask = {TermField::logical_definitions};
        break;
    }
    return q;
}

} // namespace ontoforge
