#include "ontoforge/core/model.hpp"

#include <algorithm>
#include <set>

#include "ontoforge/error.hpp"

namespace ontoforge {

namespace {

bool is_ascii_alpha(char c) noexcept { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); }
bool is_ascii_digit(char c) noexcept { return c >= '0' && c <= '9'; }
bool is_ascii_alnum(char c) noexcept { return is_ascii_alpha(c) || is_ascii_digit(c); }

char ascii_upper(char c) noexcept { return (c >= 'a' && c <= 'z') ? static_cast<char>(c - 'a' + 'A') : c; }

bool valid_curie_part(std::string_view s, bool allow_extra) noexcept {
    if (s.empty()) return false;
    for (char c : s) {
        if (is_ascii_alnum(c) || c == '_') continue;
        if (allow_extra && (c == '.' || c == '-')) continue;
        return false;
    }
    return true;
}

} // namespace

Curie::Curie(std::string prefix, std::string local_id)
    : prefix_(std::move(prefix)), local_id_(std::move(local_id)) {
    if (!valid_curie_part(prefix_, false) || !valid_curie_part(local_id_, true)) {
        throw InvalidCurie("invalid CURIE parts '" + prefix_ + "' / '" + local_id_ + "'");
    }
}

Curie Curie::parse(std::string_view text) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos || text.find(':', colon + 1) != std::string_view::npos) {
        throw InvalidCurie("expected prefix:local_id, got '" + std::string(text) + "'");
    }
    return Curie(std::string(text.substr(0, colon)), std::string(text.substr(colon + 1)));
}

bool Curie::looks_like_curie(std::string_view text) noexcept {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos || text.find(':', colon + 1) != std::string_view::npos) {
        return false;
    }
    return valid_curie_part(text.substr(0, colon), false) &&
           valid_curie_part(text.substr(colon + 1), true);
}

Symbol::Symbol(std::string text) : text_(std::move(text)) {
    if (!is_valid(text_)) throw InvalidSymbol("invalid symbol '" + text_ + "'");
}

bool Symbol::is_valid(std::string_view text) noexcept {
    if (text.empty() || !is_ascii_alpha(text.front())) return false;
    return std::all_of(text.begin(), text.end(),
                       [](char c) { return is_ascii_alnum(c) || c == '_'; });
}

Symbol to_symbol(std::string_view label) {
    std::string out;
    out.reserve(label.size());
    bool capitalized = false;  // first alphabetic char of the current token seen
    for (char c : label) {
        if (!is_ascii_alnum(c)) {
            capitalized = false;
            continue;
        }
        if (!capitalized && is_ascii_alpha(c)) {
            out.push_back(ascii_upper(c));
            capitalized = true;
        } else {
            out.push_back(c);
        }
    }
    if (out.empty()) throw InvalidLabel("label '" + std::string(label) + "' has no usable characters");
    if (is_ascii_digit(out.front())) out.insert(out.begin(), 'N');
    return Symbol(std::move(out));
}

Symbol fallback_symbol(const Curie& curie) {
    std::string local;
    for (char c : curie.local_id()) local.push_back(is_ascii_alnum(c) ? c : '_');
    return Symbol("Curie_" + curie.prefix() + "_" + local);
}

std::vector<Relationship> dedupe_relationships(const std::vector<Relationship>& rels) {
    std::vector<Relationship> out;
    std::set<Relationship> seen;
    for (const auto& r : rels) {
        if (seen.insert(r).second) out.push_back(r);
    }
    return out;
}

bool is_genus_differentia(const std::vector<Relationship>& rels) noexcept {
    return std::count_if(rels.begin(), rels.end(),
                         [](const Relationship& r) { return r.predicate == subclass_of(); }) == 1;
}

nlohmann::json to_json(const Relationship& r) {
    return {{"predicate", r.predicate.str()}, {"target", r.target.str()}};
}

nlohmann::json to_json(const std::vector<Relationship>& rels) {
    auto arr = nlohmann::json::array();
    for (const auto& r : rels) arr.push_back(to_json(r));
    return arr;
}

nlohmann::json to_json(const TermObject& t) {
    nlohmann::json j;
    j["id"] = t.id.str();
    if (t.original_id) j["original_id"] = t.original_id->str();
    j["label"] = t.label;
    if (t.definition) j["definition"] = *t.definition;
    j["relationships"] = to_json(t.relationships);
    if (t.logical_definitions) j["logical_definitions"] = to_json(*t.logical_definitions);
    if (t.created_date) j["created_date"] = *t.created_date;
    return j;
}

std::vector<Relationship> relationships_from_json(const nlohmann::json& j) {
    std::vector<Relationship> out;
    if (j.is_null()) return out;
    for (const auto& r : j) {
        out.push_back({Symbol(r.at("predicate").get<std::string>()),
                       Symbol(r.at("target").get<std::string>())});
    }
    return out;
}

TermObject term_from_json(const nlohmann::json& j) {
    TermObject t;
    t.id = Symbol(j.at("id").get<std::string>());
    if (j.contains("original_id") && !j["original_id"].is_null()) {
        t.original_id = Curie::parse(j["original_id"].get<std::string>());
    }
    t.label = j.value("label", std::string{});
    if (j.contains("definition") && !j["definition"].is_null()) {
        t.definition = j["definition"].get<std::string>();
    }
    if (j.contains("relationships")) t.relationships = relationships_from_json(j["relationships"]);
    if (j.contains("logical_definitions") && !j["logical_definitions"].is_null()) {
        t.logical_definitions = relationships_from_json(j["logical_definitions"]);
    }
    if (j.contains("created_date") && !j["created_date"].is_null()) {
        t.created_date = j["created_date"].get<std::string>();
    }
    return t;
}

} // namespace ontoforge
