#include "ontoforge/eval/sheets.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <random>
#include <set>

#include "ontoforge/error.hpp"
#include "ontoforge/eval/split.hpp"

namespace ontoforge {

const char* const kSheetHeader = "row_id\tterm_label\tdefinition\taccuracy\tconsistency\toverall\tconfidence\tnotes";

EvalSheets make_eval_sheets(const std::map<DefinitionSource, std::string>& definitions,
                            const std::map<Symbol, std::string>& gold, std::uint64_t seed,
                            const std::map<Symbol, std::string>& labels) {
    std::map<DefinitionSource, std::string> all = definitions;
    for (const auto& [term, text] : gold) all[DefinitionSource{kCuratorMethod, kCuratorModel, term}] = text;

    std::mt19937_64 rng(seed);
    auto fresh_id = [&, used = std::set<std::string>{}]() mutable {
        static constexpr char hex[] = "0123456789abcdef";
        for (;;) {
            std::string id;
            auto x = rng();
            for (int i = 0; i < 16; ++i, x >>= 4) id.push_back(hex[x & 0xF]);
            if (used.insert(id).second) return id;
        }
    };

    EvalSheets out;
    for (const auto& [src, text] : all) {
        EvalSheetRow row;
        row.row_id = fresh_id();
        const auto l = labels.find(src.term);
        row.term_label = l != labels.end() ? l->second : src.term.str();
        row.definition_text = text;
        out.key.emplace(row.row_id, src);
        out.rows.push_back(std::move(row));
    }
    for (std::size_t i = out.rows.size(); i > 1; --i) {
        std::swap(out.rows[i - 1], out.rows[bounded_draw(i, rng)]);
    }
    return out;
}

namespace {

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '\\': out += "\\\\"; break;
        case '\t': out += "\\t"; break;
        case '\n': out += "\\n"; break;
        case '\r': out += "\\r"; break;
        default: out.push_back(c);
        }
    }
    return out;
}

std::string unescape(std::string_view s) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] != '\\' || i + 1 == s.size()) {
            out.push_back(s[i]);
            continue;
        }
        switch (s[++i]) {
        case 't': out.push_back('\t'); break;
        case 'n': out.push_back('\n'); break;
        case 'r': out.push_back('\r'); break;
        default: out.push_back(s[i]);
        }
    }
    return out;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto tab = line.find('\t', start);
        out.push_back(line.substr(start, tab - start));
        if (tab == std::string_view::npos) return out;
        start = tab + 1;
    }
}

std::string cell(const std::optional<int>& v) { return v ? std::to_string(*v) : ""; }

std::optional<int> score_cell(std::string_view s, std::size_t line, const char* column) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    if (s.empty()) return std::nullopt;
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw ParseError(line, std::string(column) + " is not an integer: '" + std::string(s) + "'");
    }
    return v;
}

template <class J>
std::optional<int> opt_int(const J& j, const char* k) {
    if (!j.contains(k) || j[k].is_null()) return std::nullopt;
    return j[k].template get<int>();
}

} // namespace

void write_sheet_tsv(std::ostream& out, std::span<const EvalSheetRow> rows) {
    out << kSheetHeader << '\n';
    for (const auto& r : rows) {
        out << escape(r.row_id) << '\t' << escape(r.term_label) << '\t' << escape(r.definition_text) << '\t'
            << cell(r.accuracy) << '\t' << cell(r.consistency) << '\t' << cell(r.overall) << '\t'
            << cell(r.confidence) << '\t' << escape(r.notes.value_or("")) << '\n';
    }
}

std::vector<EvalSheetRow> read_sheet_tsv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw SchemaError(1, "empty sheet");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kSheetHeader) throw SchemaError(1, "unexpected sheet header");

    std::vector<EvalSheetRow> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto cols = split_tabs(line);
        // Spreadsheet exports often drop trailing empty cells.
        if (cols.size() < 3 || cols.size() > 8) {
            throw SchemaError(line_no, "expected 8 columns, got " + std::to_string(cols.size()));
        }
        cols.resize(8);
        EvalSheetRow r;
        r.row_id = unescape(cols[0]);
        r.term_label = unescape(cols[1]);
        r.definition_text = unescape(cols[2]);
        r.accuracy = score_cell(cols[3], line_no, "accuracy");
        r.consistency = score_cell(cols[4], line_no, "consistency");
        r.overall = score_cell(cols[5], line_no, "overall");
        r.confidence = score_cell(cols[6], line_no, "confidence");
        if (!cols[7].empty()) r.notes = unescape(cols[7]);
        rows.push_back(std::move(r));
    }
    return rows;
}

void write_blind_key(std::ostream& out, const BlindKey& key) {
    for (const auto& [id, src] : key) {
        out << nlohmann::json{{"row_id", id}, {"method", src.method}, {"model", src.model}, {"term", src.term.str()}}
                   .dump()
            << '\n';
    }
}

BlindKey read_blind_key(std::istream& in) {
    BlindKey key;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            const auto j = nlohmann::json::parse(line);
            DefinitionSource src{j.at("method").get<std::string>(), j.at("model").get<std::string>(),
                                 Symbol(j.at("term").get<std::string>())};
            if (!key.emplace(j.at("row_id").get<std::string>(), std::move(src)).second) {
                throw SchemaError(line_no, "duplicate row_id in blind key");
            }
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(line_no, e.what());
        }
    }
    return key;
}

nlohmann::json to_json(const ScoreRecord& r) {
    auto opt = [](const std::optional<int>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
    nlohmann::json j{{"method", r.method},          {"model", r.model},
                     {"term", r.term.str()},        {"evaluator", r.evaluator},
                     {"accuracy", opt(r.accuracy)}, {"consistency", opt(r.consistency)},
                     {"overall", opt(r.overall)},   {"confidence", opt(r.confidence)}};
    j["notes"] = r.notes ? nlohmann::json(*r.notes) : nlohmann::json(nullptr);
    return j;
}

ScoreRecord score_record_from_json(const nlohmann::json& j) {
    ScoreRecord r;
    r.method = j.at("method").get<std::string>();
    r.model = j.at("model").get<std::string>();
    r.term = Symbol(j.at("term").get<std::string>());
    r.evaluator = j.value("evaluator", "");
    r.accuracy = opt_int(j, "accuracy");
    r.consistency = opt_int(j, "consistency");
    r.overall = opt_int(j, "overall");
    r.confidence = opt_int(j, "confidence");
    if (j.contains("notes") && j["notes"].is_string()) r.notes = j["notes"].get<std::string>();
    return r;
}

IngestResult ingest_eval_sheets(std::span<const EvalSheetRow> rows, const BlindKey& key, const std::string& evaluator) {
    IngestResult out;
    for (const auto& row : rows) {
        const auto it = key.find(row.row_id);
        if (it == key.end()) throw UnknownRowId("row_id '" + row.row_id + "' is not in the blind key");

        std::string bad;
        auto check = [&](const std::optional<int>& v, const char* name) {
            if (v && (*v < 1 || *v > 5)) {
                if (!bad.empty()) bad += ", ";
                bad += std::string(name) + "=" + std::to_string(*v);
            }
        };
        check(row.accuracy, "accuracy");
        check(row.consistency, "consistency");
        check(row.overall, "overall");
        check(row.confidence, "confidence");
        if (!bad.empty()) {
            out.rejected.push_back({row.row_id, "ScoreOutOfRange", "outside 1..5: " + bad});
            continue;
        }
        const auto& src = it->second;
        out.table.push_back(ScoreRecord{src.method, src.model, src.term, evaluator, row.accuracy, row.consistency,
                                        row.overall, row.confidence, row.notes});
    }
    return out;
}

} // namespace ontoforge
