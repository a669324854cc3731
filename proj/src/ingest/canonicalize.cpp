#include <set>
#include <sstream>

#include "ontoforge/error.hpp"
#include "ontoforge/ingest/raw_record.hpp"

namespace ontoforge {

const PredicateLabelMap& default_predicate_labels() {
    static const PredicateLabelMap labels = {
        {"BFO:0000050", "part of"},
        {"BFO:0000051", "has part"},
        {"BFO:0000066", "occurs in"},
        {"RO:0000052", "inheres in"},
        {"RO:0000057", "has participant"},
        {"RO:0001000", "derives from"},
        {"RO:0002100", "has soma location"},
        {"RO:0002131", "overlaps"},
        {"RO:0002202", "develops from"},
        {"RO:0002211", "regulates"},
        {"RO:0002215", "capable of"},
        {"RO:0002220", "adjacent to"},
        {"RO:0002473", "composed primarily of"},
        {"RO:0002573", "has modifier"},
        {"RO:0002604", "is opposite of"},
        {"UPHENO:0000001", "has affected entity"},
    };
    return labels;
}

PredicateLabelMap read_predicate_map(std::istream& in) {
    PredicateLabelMap out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line.front() == '#') continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos) continue;
        std::string label = line.substr(tab + 1);
        while (!label.empty() && (label.back() == '\r' || label.back() == ' ')) label.pop_back();
        out[line.substr(0, tab)] = label;
    }
    return out;
}

void apply_date_sidecar(std::vector<RawTermRecord>& records, std::istream& dates) {
    std::map<std::string, std::string> by_curie;
    std::string line;
    while (std::getline(dates, line)) {
        if (line.empty() || line.front() == '#') continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos) continue;
        std::string date = line.substr(tab + 1);
        while (!date.empty() && (date.back() == '\r' || date.back() == ' ')) date.pop_back();
        by_curie[line.substr(0, tab)] = date;
    }
    for (auto& r : records) {
        if (r.created_date) continue;
        if (auto it = by_curie.find(r.curie.str()); it != by_curie.end()) r.created_date = it->second;
    }
}

namespace {

class Rewriter {
public:
    Rewriter(SymbolTable& table, const PredicateLabelMap& labels, std::vector<CanonicalizeWarning>& warnings)
        : table_(table), labels_(labels), warnings_(warnings) {}

    std::optional<Symbol> predicate(const Curie& subject, const std::string& raw) {
        if (auto it = labels_.find(raw); it != labels_.end()) return camel(subject, it->second);
        if (Curie::looks_like_curie(raw)) {
            warn(subject, "no label for predicate " + raw);
            return fallback_symbol(Curie::parse(raw));
        }
        return camel(subject, raw);
    }

    std::optional<Symbol> target(const Curie& subject, const std::string& raw) {
        if (Curie::looks_like_curie(raw)) {
            const Curie c = Curie::parse(raw);
            if (auto s = table_.symbol_for(c)) return s;
            if (auto it = labels_.find(raw); it != labels_.end()) {
                try {
                    return table_.register_term(c, it->second);
                } catch (const InvalidLabel&) {
                }
            }
            warn(subject, "unresolved target " + raw);
            return table_.register_symbol(c, fallback_symbol(c));
        }
        if (Symbol::is_valid(raw)) return Symbol(raw);
        warn(subject, "target '" + raw + "' is neither a CURIE nor a symbol; dropped");
        return std::nullopt;
    }

    std::vector<Relationship> rewrite(const Curie& subject, const std::vector<RawRelationship>& raw) {
        std::vector<Relationship> out;
        for (const auto& r : raw) {
            auto p = predicate(subject, r.predicate);
            auto t = target(subject, r.target);
            if (p && t) out.push_back({*p, *t});
        }
        return dedupe_relationships(out);
    }

private:
    std::optional<Symbol> camel(const Curie& subject, const std::string& label) {
        try {
            return to_symbol(label);
        } catch (const InvalidLabel&) {
            warn(subject, "unusable predicate label '" + label + "'; relationship dropped");
            return std::nullopt;
        }
    }

    void warn(const Curie& subject, std::string msg) { warnings_.push_back({subject, std::move(msg)}); }

    SymbolTable& table_;
    const PredicateLabelMap& labels_;
    std::vector<CanonicalizeWarning>& warnings_;
};

} // namespace

CanonicalOntology canonicalize(const std::vector<RawTermRecord>& records, const PredicateLabelMap& predicate_labels) {
    CanonicalOntology out;
    std::vector<const RawTermRecord*> accepted;
    std::vector<Symbol> ids;

    // Pass 1: bind every record's own CURIE before any relationship is resolved.
    for (const auto& rec : records) {
        if (out.table.contains(rec.curie)) {
            out.warnings.push_back({rec.curie, "duplicate record skipped"});
            continue;
        }
        try {
            Symbol id = rec.symbol_hint && Symbol::is_valid(*rec.symbol_hint)
                            ? out.table.register_symbol(rec.curie, Symbol(*rec.symbol_hint))
                            : out.table.register_term(rec.curie, rec.label);
            accepted.push_back(&rec);
            ids.push_back(std::move(id));
        } catch (const InvalidLabel& e) {
            out.warnings.push_back({rec.curie, e.what()});
        }
    }

    Rewriter rw(out.table, predicate_labels, out.warnings);
    for (std::size_t i = 0; i < accepted.size(); ++i) {
        const auto& rec = *accepted[i];
        TermObject t;
        t.id = ids[i];
        t.original_id = rec.curie;
        t.label = rec.label;
        t.definition = rec.definition;
        t.relationships = rw.rewrite(rec.curie, rec.raw_relationships);
        if (rec.raw_logical) t.logical_definitions = rw.rewrite(rec.curie, *rec.raw_logical);
        t.created_date = rec.created_date;
        out.terms.push_back(std::move(t));
    }
    return out;
}

} // namespace ontoforge
