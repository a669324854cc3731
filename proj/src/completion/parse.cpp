#include "ontoforge/completion/parse.hpp"

#include <cctype>

#include "ontoforge/error.hpp"

namespace ontoforge {

namespace {

// End offset (exclusive) of the balanced block opening at `start`, if any.
std::optional<std::size_t> balanced_end(const std::string& s, std::size_t start) {
    int depth = 0;
    bool in_string = false;
    for (std::size_t i = start; i < s.size(); ++i) {
        const char c = s[i];
        if (in_string) {
            if (c == '\\') ++i;
            else if (c == '"') in_string = false;
            continue;
        }
        if (c == '"') in_string = true;
        else if (c == '{') ++depth;
        else if (c == '}' && --depth == 0) return i + 1;
    }
    return std::nullopt;
}

std::string squash(std::string_view key) {
    std::string out;
    for (char c : key) {
        if (std::isalnum(static_cast<unsigned char>(c))) out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    return out;
}

std::optional<TermField> field_alias(std::string_view key) {
    const auto k = squash(key);
    if (k == "label" || k == "name") return TermField::label;
    if (k == "definition" || k == "def" || k == "textdefinition") return TermField::definition;
    if (k == "relationships" || k == "relationship" || k == "relations") return TermField::relationships;
    if (k == "logicaldefinitions" || k == "logicaldefinition" || k == "equivalentto") return TermField::logical_definitions;
    return std::nullopt;
}

const nlohmann::json* find_ci(const nlohmann::json& obj, std::initializer_list<std::string_view> names) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        const auto k = squash(it.key());
        for (auto n : names) {
            if (k == n) return &*it;
        }
    }
    return nullptr;
}

std::optional<Relationship> make_relationship(const nlohmann::json& pred, const nlohmann::json& target) {
    if (!pred.is_string() || !target.is_string()) return std::nullopt;
    try {
        return Relationship{to_symbol(pred.get<std::string>()), to_symbol(target.get<std::string>())};
    } catch (const Error&) {
        return std::nullopt;
    }
}

std::vector<Relationship> read_relationships(const nlohmann::json& v, std::vector<std::string>& rejected) {
    std::vector<Relationship> out;
    if (v.is_array()) {
        for (const auto& e : v) {
            std::optional<Relationship> r;
            if (e.is_object()) {
                const auto* p = find_ci(e, {"predicate", "relation", "property"});
                const auto* t = find_ci(e, {"target", "object", "value"});
                if (p && t) r = make_relationship(*p, *t);
            }
            if (r) out.push_back(*r);
            else rejected.push_back(e.dump());
        }
    } else if (v.is_object()) {
        // {"subClassOf": "X"} or {"partOf": ["A", "B"]}
        for (auto it = v.begin(); it != v.end(); ++it) {
            const nlohmann::json pred = it.key();
            const auto targets = it->is_array() ? *it : nlohmann::json::array({*it});
            for (const auto& t : targets) {
                if (auto r = make_relationship(pred, t)) out.push_back(*r);
                else rejected.push_back(nlohmann::json{{it.key(), t}}.dump());
            }
        }
    } else if (!v.is_null()) {
        rejected.push_back(v.dump());
    }
    return out;
}

} // namespace

nlohmann::json extract_json_object(const std::string& raw) {
    bool saw_block = false;
    std::string last_error = "unbalanced braces";
    for (auto start = raw.find('{'); start != std::string::npos; start = raw.find('{', start + 1)) {
        const auto end = balanced_end(raw, start);
        if (!end) continue;
        saw_block = true;
        try {
            auto j = nlohmann::json::parse(raw.begin() + static_cast<std::ptrdiff_t>(start),
                                           raw.begin() + static_cast<std::ptrdiff_t>(*end));
            if (j.is_object()) return j;
        } catch (const nlohmann::json::parse_error& e) {
            last_error = e.what();
        }
    }
    if (!saw_block && raw.find('{') == std::string::npos) throw NoJsonFound(raw);
    throw MalformedJson(raw, last_error);
}

FieldMap parse_completion(const std::string& raw, const std::set<TermField>& mask) {
    const auto obj = extract_json_object(raw);
    FieldMap out;
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        const auto field = field_alias(it.key());
        if (!field || !mask.contains(*field)) continue;
        const auto& v = *it;
        switch (*field) {
        case TermField::label:
        case TermField::definition:
            if (v.is_string()) {
                (*field == TermField::label ? out.label : out.definition) = v.get<std::string>();
            } else {
                out.rejected.push_back(v.dump());
            }
            break;
        case TermField::relationships: {
            auto rels = read_relationships(v, out.rejected);
            if (!out.relationships) out.relationships.emplace();
            out.relationships->insert(out.relationships->end(), rels.begin(), rels.end());
            break;
        }
        case TermField::logical_definitions: {
            auto rels = read_relationships(v, out.rejected);
            if (!out.logical_definitions) out.logical_definitions.emplace();
            out.logical_definitions->insert(out.logical_definitions->end(), rels.begin(), rels.end());
            break;
        }
        }
    }
    return out;
}

FilteredRelationships postfilter_relationships(const std::vector<Relationship>& relationships,
                                               const std::set<Symbol>& universe,
                                               const std::optional<std::set<Symbol>>& predicate_whitelist) {
    FilteredRelationships out;
    std::set<Relationship> kept;
    for (const auto& r : relationships) {
        const bool ok = universe.contains(r.target) && (!predicate_whitelist || predicate_whitelist->contains(r.predicate));
        if (!ok) {
            out.dropped.push_back(r);
        } else if (kept.insert(r).second) {
            out.kept.push_back(r);
        }
    }
    return out;
}

} // namespace ontoforge
