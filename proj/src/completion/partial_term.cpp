#include "ontoforge/completion/partial_term.hpp"

#include "ontoforge/error.hpp"

namespace ontoforge {

std::string_view to_string(TermField f) noexcept {
    switch (f) {
    case TermField::label: return "label";
    case TermField::definition: return "definition";
    case TermField::relationships: return "relationships";
    case TermField::logical_definitions: return "logical_definitions";
    }
    return "";
}

TermField term_field_from_string(std::string_view s) {
    if (s == "label") return TermField::label;
    if (s == "definition") return TermField::definition;
    if (s == "relationships") return TermField::relationships;
    if (s == "logical_definitions" || s == "logical_definition") return TermField::logical_definitions;
    throw InvalidQuery("unknown term field '" + std::string(s) + "'");
}

std::set<TermField> parse_mask(std::string_view s) {
    std::set<TermField> out;
    while (!s.empty()) {
        const auto comma = s.find(',');
        auto item = s.substr(0, comma);
        while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
        while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
        if (!item.empty()) out.insert(term_field_from_string(item));
        if (comma == std::string_view::npos) break;
        s.remove_prefix(comma + 1);
    }
    return out;
}

bool PartialTerm::populated(TermField f) const noexcept {
    switch (f) {
    case TermField::label: return label.has_value();
    case TermField::definition: return definition.has_value();
    case TermField::relationships: return relationships.has_value();
    case TermField::logical_definitions: return logical_definitions.has_value();
    }
    return false;
}

void PartialTerm::validate() const {
    if (mask.empty()) throw InvalidQuery("mask is empty");
    bool any = false;
    for (auto f : {TermField::label, TermField::definition, TermField::relationships, TermField::logical_definitions}) {
        if (!populated(f)) continue;
        any = true;
        if (mask.contains(f)) throw InvalidQuery("field '" + std::string(to_string(f)) + "' is both populated and masked");
    }
    if (!any) throw InvalidQuery("partial term has no populated field");
}

nlohmann::ordered_json input_json(const PartialTerm& q) {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    if (q.label) j["label"] = *q.label;
    if (q.definition) j["definition"] = *q.definition;
    if (q.relationships) j["relationships"] = to_json(*q.relationships);
    if (q.logical_definitions) j["logical_definitions"] = to_json(*q.logical_definitions);
    return j;
}

nlohmann::json to_json(const PartialTerm& q) {
    nlohmann::json j = nlohmann::json::parse(input_json(q).dump());
    auto mask = nlohmann::json::array();
    for (auto f : q.mask) mask.push_back(to_string(f));
    j["mask"] = mask;
    return j;
}

PartialTerm partial_term_from_json(const nlohmann::json& j, const std::set<TermField>& default_mask) {
    if (!j.is_object()) throw InvalidQuery("query must be a JSON object");
    PartialTerm q;
    if (j.contains("mask")) {
        for (const auto& f : j["mask"]) q.mask.insert(term_field_from_string(f.get<std::string>()));
    } else {
        q.mask = default_mask;
    }
    auto str = [&](const char* k) -> std::optional<std::string> {
        if (!j.contains(k) || j[k].is_null()) return std::nullopt;
        return j[k].get<std::string>();
    };
    q.label = str("label");
    q.definition = str("definition");
    if (j.contains("relationships") && !j["relationships"].is_null()) {
        q.relationships = relationships_from_json(j["relationships"]);
    }
    if (j.contains("logical_definitions") && !j["logical_definitions"].is_null()) {
        q.logical_definitions = relationships_from_json(j["logical_definitions"]);
    }
    if (q.mask.contains(TermField::label)) q.label.reset();
    if (q.mask.contains(TermField::definition)) q.definition.reset();
    if (q.mask.contains(TermField::relationships)) q.relationships.reset();
    if (q.mask.contains(TermField::logical_definitions)) q.logical_definitions.reset();
    return q;
}

namespace {

void put_field(nlohmann::ordered_json& j, const TermObject& t, TermField f) {
    switch (f) {
    case TermField::label:
        if (!t.label.empty()) j["label"] = t.label;
        break;
    case TermField::definition:
        if (t.definition) j["definition"] = *t.definition;
        break;
    case TermField::relationships:
        if (!t.relationships.empty()) j["relationships"] = to_json(t.relationships);
        break;
    case TermField::logical_definitions:
        if (t.logical_definitions && !t.logical_definitions->empty()) {
            j["logical_definitions"] = to_json(*t.logical_definitions);
        }
        break;
    }
}

} // namespace

std::optional<ContextExample> project_example(const TermObject& term, const PartialTerm& query) {
    ContextExample ex;
    ex.key = term.id.str();
    ex.input = nlohmann::ordered_json::object();
    ex.output = nlohmann::ordered_json::object();
    for (auto f : {TermField::label, TermField::definition, TermField::relationships, TermField::logical_definitions}) {
        if (query.populated(f)) put_field(ex.input, term, f);
        if (query.mask.contains(f)) put_field(ex.output, term, f);
    }
    if (ex.output.empty()) return std::nullopt;
    return ex;
}

} // namespace ontoforge
