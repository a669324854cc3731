#include "ontoforge/eval/report.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <numeric>
#include <sstream>

#include <boost/math/distributions/students_t.hpp>

#include "ontoforge/error.hpp"

namespace ontoforge {

namespace {

double mean(std::span<const double> v) { return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size()); }

double sample_variance(std::span<const double> v, double m) {
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return s / static_cast<double>(v.size() - 1);
}

std::string group_name(const std::string& method, const std::string& model) { return method + "/" + model; }

struct Columns {
    std::vector<double> accuracy, score, consistency;
};

std::optional<double> mean_or_none(const std::vector<double>& v) {
    if (v.empty()) return std::nullopt;
    return mean(v);
}

} // namespace

std::optional<WelchResult> welch_t_test(std::span<const double> a, std::span<const double> b) {
    if (a.size() < 2 || b.size() < 2) return std::nullopt;
    const double ma = mean(a), mb = mean(b);
    const double qa = sample_variance(a, ma) / static_cast<double>(a.size());
    const double qb = sample_variance(b, mb) / static_cast<double>(b.size());
    const double se2 = qa + qb;
    if (se2 <= 0.0) return std::nullopt;

    WelchResult r;
    r.t = (ma - mb) / std::sqrt(se2);
    r.df = se2 * se2 /
           (qa * qa / static_cast<double>(a.size() - 1) + qb * qb / static_cast<double>(b.size() - 1));
    const boost::math::students_t dist(r.df);
    r.p = 2.0 * boost::math::cdf(boost::math::complement(dist, std::fabs(r.t)));
    return r;
}

std::optional<double> pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) return std::nullopt;
    const double mx = mean(x), my = mean(y);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx <= 0.0 || syy <= 0.0) return std::nullopt;
    return sxy / std::sqrt(sxx * syy);
}

ScoreReport summarize_scores(std::span<const ScoreRecord> table) {
    if (table.empty()) throw InvalidQuery("score table is empty");

    ScoreReport out;
    out.averaging = "simple mean over all scored rows (all ontologies and evaluators pooled)";

    using Key = std::pair<std::string, std::string>;
    std::map<Key, Columns> cols;
    std::map<Key, std::size_t> rows;
    for (const auto& r : table) {
        const Key k{r.method, r.model};
        ++rows[k];
        auto& c = cols[k];
        if (r.accuracy) c.accuracy.push_back(*r.accuracy);
        if (r.overall) c.score.push_back(*r.overall);
        if (r.consistency) c.consistency.push_back(*r.consistency);
    }
    for (const auto& [k, c] : cols) {
        out.groups.push_back({k.first, k.second, rows[k], mean_or_none(c.accuracy), mean_or_none(c.score),
                              mean_or_none(c.consistency)});
    }

    // Best model: highest mean overall score among non-curator groups.
    const GroupSummary* best = nullptr;
    for (const auto& g : out.groups) {
        if (g.method == kCuratorMethod || !g.score) continue;
        if (!best || *g.score > *best->score) best = &g;
    }
    const bool has_curator = cols.contains(Key{kCuratorMethod, kCuratorModel});
    if (best) out.best_model = group_name(best->method, best->model);

    if (best && has_curator) {
        std::map<int, std::pair<std::vector<double>, std::vector<double>>> by_conf;
        for (const auto& r : table) {
            if (!r.confidence || !r.overall) continue;
            if (r.method == kCuratorMethod && r.model == kCuratorModel) {
                by_conf[*r.confidence].first.push_back(*r.overall);
            } else if (r.method == best->method && r.model == best->model) {
                by_conf[*r.confidence].second.push_back(*r.overall);
            }
        }
        std::vector<double> xs, ys;
        for (const auto& [conf, v] : by_conf) {
            if (v.first.empty() || v.second.empty()) continue;
            ConfidenceGap g;
            g.confidence = conf;
            g.curator_mean = mean(v.first);
            g.model_mean = mean(v.second);
            g.gap = g.curator_mean - g.model_mean;
            g.curator_rows = v.first.size();
            g.model_rows = v.second.size();
            out.gaps.push_back(g);
            xs.push_back(conf);
            ys.push_back(g.gap);
        }
        out.gap_pearson = pearson(xs, ys);
    }

    const std::vector<std::pair<const char*, std::vector<double> Columns::*>> metrics{
        {"accuracy", &Columns::accuracy}, {"score", &Columns::score}, {"consistency", &Columns::consistency}};
    for (auto a = cols.begin(); a != cols.end(); ++a) {
        for (auto b = std::next(a); b != cols.end(); ++b) {
            for (const auto& [name, member] : metrics) {
                out.comparisons.push_back({group_name(a->first.first, a->first.second),
                                           group_name(b->first.first, b->first.second), name,
                                           welch_t_test(a->second.*member, b->second.*member)});
            }
        }
    }
    return out;
}

nlohmann::json to_json(const ScoreReport& r) {
    auto opt = [](const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
    nlohmann::json groups = nlohmann::json::array();
    for (const auto& g : r.groups) {
        groups.push_back({{"method", g.method},
                          {"model", g.model},
                          {"rows", g.rows},
                          {"accuracy", opt(g.accuracy)},
                          {"score", opt(g.score)},
                          {"consistency", opt(g.consistency)}});
    }
    nlohmann::json gaps = nlohmann::json::array();
    for (const auto& g : r.gaps) {
        gaps.push_back({{"confidence", g.confidence},
                        {"curator_mean", g.curator_mean},
                        {"model_mean", g.model_mean},
                        {"gap", g.gap},
                        {"curator_rows", g.curator_rows},
                        {"model_rows", g.model_rows}});
    }
    nlohmann::json comps = nlohmann::json::array();
    for (const auto& c : r.comparisons) {
        nlohmann::json j{{"a", c.a}, {"b", c.b}, {"metric", c.metric}};
        if (c.test) j["welch"] = {{"t", c.test->t}, {"df", c.test->df}, {"p", c.test->p}};
        else j["welch"] = nullptr;
        comps.push_back(std::move(j));
    }
    return {{"averaging", r.averaging},
            {"groups", groups},
            {"best_model", r.best_model ? nlohmann::json(*r.best_model) : nlohmann::json(nullptr)},
            {"confidence_gaps", gaps},
            {"gap_pearson", opt(r.gap_pearson)},
            {"comparisons", comps}};
}

std::string format_report(const ScoreReport& r) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(3);
    auto num = [&](const std::optional<double>& v) {
        std::ostringstream s;
        s << std::fixed << std::setprecision(3);
        if (v) s << *v;
        else s << "-";
        return s.str();
    };
    os << std::left << std::setw(12) << "method" << std::setw(20) << "model" << std::right << std::setw(6) << "rows"
       << std::setw(10) << "accuracy" << std::setw(8) << "score" << std::setw(13) << "consistency" << '\n';
    for (const auto& g : r.groups) {
        os << std::left << std::setw(12) << g.method << std::setw(20) << g.model << std::right << std::setw(6)
           << g.rows << std::setw(10) << num(g.accuracy) << std::setw(8) << num(g.score) << std::setw(13)
           << num(g.consistency) << '\n';
    }
    os << "\naveraging: " << r.averaging << '\n';
    if (r.gaps.empty()) {
        os << "confidence gaps: none computable\n";
    } else {
        os << "confidence gaps (curator - " << r.best_model.value_or("?") << ", overall score):\n";
        for (const auto& g : r.gaps) os << "  confidence " << g.confidence << ": " << g.gap << '\n';
        os << "  pearson r: " << num(r.gap_pearson) << '\n';
    }
    return os.str();
}

std::span<const ReferenceResult> reference_relationship_results() {
    static const std::vector<ReferenceResult> rows{
        {"RAG", "gpt-3.5-turbo", "SubClassOf", 0.831, 0.352, 0.494},
        {"RAG", "gpt-3.5-turbo", "all", 0.746, 0.392, 0.514},
        {"RAG", "gpt-4", "SubClassOf", 0.889, 0.44, 0.588},
        {"RAG", "gpt-4", "all", 0.797, 0.456, 0.58},
        {"RAG", "nous-hermes-13b", "SubClassOf", 0.68, 0.273, 0.39},
        {"RAG", "nous-hermes-13b", "all", 0.597, 0.292, 0.392},
        {"Reasoner", "n/a", "SubClassOf", 1.0, 0.337, 0.504},
        {"RAG+background", "gpt-3.5-turbo", "all", 0.782, 0.409, 0.537},
        {"RAG+background", "gpt-4", "all", 0.726, 0.432, 0.541},
    };
    return rows;
}

std::span<const KgeReference> reference_kge_results() {
    static const std::vector<KgeReference> rows{{"rdf2vec", 0.053, 0.017}, {"owl2vec*", 0.143, 0.076}};
    return rows;
}

std::string format_relationship_metrics(const Metrics& subclass, const Metrics& all, const std::string& model) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(3);
    os << std::left << std::setw(20) << "method" << std::setw(18) << "model" << std::setw(12) << "subtask"
       << std::right << std::setw(10) << "precision" << std::setw(8) << "recall" << std::setw(8) << "f1" << '\n';
    auto line = [&](const std::string& method, const std::string& m, const std::string& task, double p, double r,
                    double f) {
        os << std::left << std::setw(20) << method << std::setw(18) << m << std::setw(12) << task << std::right
           << std::setw(10) << p << std::setw(8) << r << std::setw(8) << f << '\n';
    };
    line("this run", model, "SubClassOf", subclass.precision, subclass.recall, subclass.f1);
    line("this run", model, "all", all.precision, all.recall, all.f1);
    for (const auto& ref : reference_relationship_results()) {
        line(ref.method + " (published)", ref.model, ref.subtask, ref.precision, ref.recall, ref.f1);
    }
    return os.str();
}

} // namespace ontoforge
