#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ontoforge/eval/scoring.hpp"
#include "ontoforge/eval/sheets.hpp"

namespace ontoforge {

struct WelchResult {
    double t = 0.0;
    double df = 0.0;
    double p = 1.0;  // two-sided
};

// nullopt when either sample has fewer than 2 values or both have zero variance.
std::optional<WelchResult> welch_t_test(std::span<const double> a, std::span<const double> b);

// nullopt when fewer than 2 points or either side is constant.
std::optional<double> pearson(std::span<const double> x, std::span<const double> y);

// Means are simple means over the rows that carry the score.
struct GroupSummary {
    std::string method;
    std::string model;
    std::size_t rows = 0;
    std::optional<double> accuracy;
    std::optional<double> score;  // the sheet's "overall" column
    std::optional<double> consistency;
};

// Curator minus best model, on the overall score, among rows at one confidence level.
struct ConfidenceGap {
    int confidence = 0;
    double curator_mean = 0.0;
    double model_mean = 0.0;
    double gap = 0.0;
    std::size_t curator_rows = 0;
    std::size_t model_rows = 0;
};

struct PairwiseComparison {
    std::string a;  // "method/model"
    std::string b;
    std::string metric;
    std::optional<WelchResult> test;
};

struct ScoreReport {
    std::string averaging;
    std::vector<GroupSummary> groups;  // sorted by (method, model)
    std::optional<std::string> best_model;
    std::vector<ConfidenceGap> gaps;  // ascending confidence
    std::optional<double> gap_pearson;
    std::vector<PairwiseComparison> comparisons;
};

// Throws InvalidQuery on an empty table.
ScoreReport summarize_scores(std::span<const ScoreRecord> table);

nlohmann::json to_json(const ScoreReport& r);
std::string format_report(const ScoreReport& r);

// Published relationship-prediction figures, carried for side-by-side comparison.
struct ReferenceResult {
    std::string method;
    std::string model;
    std::string subtask;  // "SubClassOf" or "all"
    double precision;
    double recall;
    double f1;
};

std::span<const ReferenceResult> reference_relationship_results();

// Hits@1 of the embedding baselines on FoodOn and GO.
struct KgeReference {
    std::string method;
    double foodon;
    double go;
};

std::span<const KgeReference> reference_kge_results();

// Relationship metrics next to the reference rows for the same subtask.
std::string format_relationship_metrics(const Metrics& subclass, const Metrics& all, const std::string& model);

} // namespace ontoforge
