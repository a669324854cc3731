#include <sstream>
#include <string>
#include <string_view>

#include "ontoforge/error.hpp"
#include "ontoforge/ingest/raw_record.hpp"

namespace ontoforge {

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

// Drops `! comment` and `{qualifiers}` trailing an identifier list.
std::string_view strip_trailer(std::string_view v) {
    if (auto bang = v.find('!'); bang != std::string_view::npos) v = v.substr(0, bang);
    if (auto brace = v.find('{'); brace != std::string_view::npos) v = v.substr(0, brace);
    return trim(v);
}

struct DefParts {
    std::string text;
    std::vector<std::string> xrefs;
};

DefParts parse_def(std::string_view v, std::size_t line) {
    v = trim(v);
    if (v.empty() || v.front() != '"') throw ParseError(line, "def value must start with a quote");
    DefParts out;
    std::size_t i = 1;
    bool closed = false;
    for (; i < v.size(); ++i) {
        const char c = v[i];
        if (c == '\\' && i + 1 < v.size()) {
            const char n = v[++i];
            out.text.push_back(n == 'n' ? '\n' : n);
        } else if (c == '"') {
            closed = true;
            ++i;
            break;
        } else {
            out.text.push_back(c);
        }
    }
    if (!closed) throw ParseError(line, "unterminated def quote");
    auto rest = trim(v.substr(i));
    if (!rest.empty() && rest.front() == '[') {
        const auto close = rest.find(']');
        if (close == std::string_view::npos) throw ParseError(line, "unterminated def xref list");
        std::string_view inner = rest.substr(1, close - 1);
        while (!inner.empty()) {
            const auto comma = inner.find(',');
            auto item = trim(inner.substr(0, comma));
            if (!item.empty()) out.xrefs.emplace_back(item);
            if (comma == std::string_view::npos) break;
            inner = inner.substr(comma + 1);
        }
    }
    return out;
}

std::string normalize_date(std::string_view v) {
    v = trim(v);
    // Keep the calendar date of an ISO-8601 timestamp.
    if (v.size() > 10 && v[4] == '-' && v[7] == '-' && (v[10] == 'T' || v[10] == ' ')) v = v.substr(0, 10);
    return std::string(v);
}

struct Stanza {
    std::size_t start_line = 0;
    std::optional<std::string> id;
    std::optional<std::string> name;
    std::optional<DefParts> def;
    std::vector<RawRelationship> rels;
    std::optional<std::string> created;
};

} // namespace

std::vector<RawTermRecord> parse_obo_subset(std::istream& in) {
    std::vector<RawTermRecord> out;
    std::optional<Stanza> current;
    bool in_term = false;

    auto flush = [&] {
        if (!current) return;
        Stanza s = std::move(*current);
        current.reset();
        if (!s.id) throw SchemaError(s.start_line, "[Term] stanza without id");
        if (!s.name) throw SchemaError(s.start_line, "[Term] stanza without name");
        RawTermRecord rec{.curie = [&] {
            try {
                return Curie::parse(*s.id);
            } catch (const InvalidCurie& e) {
                throw ParseError(s.start_line, e.what());
            }
        }()};
        rec.label = *s.name;
        if (s.def) {
            rec.definition = std::move(s.def->text);
            rec.definition_xrefs = std::move(s.def->xrefs);
        }
        rec.raw_relationships = std::move(s.rels);
        rec.created_date = std::move(s.created);
        rec.line = s.start_line;
        out.push_back(std::move(rec));
    };

    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto line = trim(raw);
        if (line.empty() || line.front() == '!') continue;
        if (line.front() == '[') {
            flush();
            in_term = (line == "[Term]");
            if (in_term) {
                current = Stanza{};
                current->start_line = line_no;
            }
            continue;
        }
        if (!in_term) continue;

        const auto colon = line.find(':');
        if (colon == std::string_view::npos) continue;
        const auto tag = trim(line.substr(0, colon));
        const auto value = trim(line.substr(colon + 1));

        if (tag == "id") {
            if (!current->id) current->id = std::string(strip_trailer(value));
        } else if (tag == "name") {
            if (!current->name) current->name = std::string(value);
        } else if (tag == "is_a") {
            const auto target = strip_trailer(value);
            if (target.empty()) throw ParseError(line_no, "empty is_a");
            current->rels.push_back({"subClassOf", std::string(target)});
        } else if (tag == "relationship") {
            std::istringstream parts{std::string(strip_trailer(value))};
            std::string pred, target, extra;
            if (!(parts >> pred >> target) || (parts >> extra)) {
                throw ParseError(line_no, "relationship needs '<predicate> <target>'");
            }
            current->rels.push_back({pred, target});
        } else if (tag == "def" || tag == "definition") {
            current->def = parse_def(value, line_no);
        } else if (tag == "creation_date") {
            current->created = normalize_date(value);
        }
    }
    flush();
    return out;
}

} // namespace ontoforge
