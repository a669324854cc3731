#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ontoforge/core/model.hpp"

namespace ontoforge {

// One definition as shown to an evaluator. Nothing here reveals its source.
struct EvalSheetRow {
    std::string row_id;
    std::string term_label;
    std::string definition_text;
    std::optional<int> accuracy;
    std::optional<int> consistency;
    std::optional<int> overall;
    std::optional<int> confidence;
    std::optional<std::string> notes;

    bool operator==(const EvalSheetRow&) const = default;
};

struct DefinitionSource {
    std::string method;
    std::string model;
    Symbol term;

    auto operator<=>(const DefinitionSource&) const = default;
};

using BlindKey = std::map<std::string, DefinitionSource>;

inline constexpr const char* kCuratorMethod = "curator";
inline constexpr const char* kCuratorModel = "human";

struct EvalSheets {
    std::vector<EvalSheetRow> rows;
    BlindKey key;
};

// One row per generated definition plus one per curated definition, shuffled
// with the seed. `labels` supplies term_label; the symbol is used when absent.
EvalSheets make_eval_sheets(const std::map<DefinitionSource, std::string>& definitions,
                            const std::map<Symbol, std::string>& gold, std::uint64_t seed,
                            const std::map<Symbol, std::string>& labels = {});

extern const char* const kSheetHeader;

// Tab-separated with a fixed header. Tabs, newlines and backslashes in text
// cells are backslash-escaped.
void write_sheet_tsv(std::ostream& out, std::span<const EvalSheetRow> rows);
// Throws SchemaError on a wrong header or column count, ParseError on a
// non-integer score cell. Range checks are left to ingest_eval_sheets.
std::vector<EvalSheetRow> read_sheet_tsv(std::istream& in);

void write_blind_key(std::ostream& out, const BlindKey& key);
BlindKey read_blind_key(std::istream& in);

struct ScoreRecord {
    std::string method;
    std::string model;
    Symbol term;
    std::string evaluator;
    std::optional<int> accuracy;
    std::optional<int> consistency;
    std::optional<int> overall;
    std::optional<int> confidence;
    std::optional<std::string> notes;

    bool operator==(const ScoreRecord&) const = default;
};

nlohmann::json to_json(const ScoreRecord& r);
ScoreRecord score_record_from_json(const nlohmann::json& j);

struct RejectedRow {
    std::string row_id;
    std::string kind;  // error class, e.g. ScoreOutOfRange
    std::string reason;
};

struct IngestResult {
    std::vector<ScoreRecord> table;
    std::vector<RejectedRow> rejected;
};

// Unblinds scored rows. Rows with a score outside 1..5 are rejected one by one;
// a row_id missing from the key throws UnknownRowId.
IngestResult ingest_eval_sheets(std::span<const EvalSheetRow> rows, const BlindKey& key, const std::string& evaluator);

} // namespace ontoforge
