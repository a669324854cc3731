#include <string>

#include "ontoforge/error.hpp"
#include "ontoforge/ingest/raw_record.hpp"

namespace ontoforge {

namespace {

bool is_blank(const std::string& s) {
    return s.find_first_not_of(" \t\r\n") == std::string::npos;
}

std::vector<RawRelationship> read_relationships(const nlohmann::json& j, std::size_t line,
                                                const char* field) {
    if (!j.is_array()) throw SchemaError(line, std::string(field) + " must be an array");
    std::vector<RawRelationship> out;
    for (const auto& r : j) {
        if (!r.is_object() || !r.contains("predicate") || !r.contains("target") ||
            !r["predicate"].is_string() || !r["target"].is_string()) {
            throw SchemaError(line, std::string(field) + " entries need string predicate and target");
        }
        out.push_back({r["predicate"].get<std::string>(), r["target"].get<std::string>()});
    }
    return out;
}

std::optional<std::string> optional_string(const nlohmann::json& obj, const char* key, std::size_t line) {
    if (!obj.contains(key) || obj[key].is_null()) return std::nullopt;
    if (!obj[key].is_string()) throw SchemaError(line, std::string(key) + " must be a string");
    return obj[key].get<std::string>();
}

} // namespace

std::vector<RawTermRecord> parse_term_jsonl(std::istream& in) {
    std::vector<RawTermRecord> out;
    std::string text;
    std::size_t line_no = 0;
    while (std::getline(in, text)) {
        ++line_no;
        if (is_blank(text)) continue;
        nlohmann::json obj;
        try {
            obj = nlohmann::json::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError(line_no, e.what());
        }
        if (!obj.is_object()) throw ParseError(line_no, "expected a JSON object");

        auto id = optional_string(obj, "id", line_no);
        auto original = optional_string(obj, "original_id", line_no);
        auto label = optional_string(obj, "label", line_no);

        std::optional<std::string> curie_text = original;
        std::optional<std::string> hint;
        if (id) {
            if (Curie::looks_like_curie(*id)) {
                if (!curie_text) curie_text = id;
            } else {
                hint = id;
            }
        }
        if (!curie_text) throw SchemaError(line_no, "missing CURIE (original_id)");
        if (!label || label->empty()) throw SchemaError(line_no, "missing label");

        RawTermRecord rec{.curie = [&] {
            try {
                return Curie::parse(*curie_text);
            } catch (const InvalidCurie& e) {
                throw SchemaError(line_no, e.what());
            }
        }()};
        rec.label = *label;
        rec.definition = optional_string(obj, "definition", line_no);
        if (obj.contains("relationships") && !obj["relationships"].is_null()) {
            rec.raw_relationships = read_relationships(obj["relationships"], line_no, "relationships");
        }
        if (obj.contains("logical_definitions") && !obj["logical_definitions"].is_null()) {
            rec.raw_logical = read_relationships(obj["logical_definitions"], line_no, "logical_definitions");
        }
        rec.created_date = optional_string(obj, "created_date", line_no);
        rec.symbol_hint = hint;
        rec.line = line_no;
        out.push_back(std::move(rec));
    }
    return out;
}

} // namespace ontoforge
