#include "ontoforge/cli/commands.hpp"

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>

#include <CLI11.hpp>

#include "ontoforge/cli/config.hpp"
#include "ontoforge/completion/pipeline.hpp"
#include "ontoforge/core/graph.hpp"
#include "ontoforge/core/parallel.hpp"
#include "ontoforge/error.hpp"
#include "ontoforge/eval/report.hpp"
#include "ontoforge/eval/scoring.hpp"
#include "ontoforge/eval/sheets.hpp"
#include "ontoforge/eval/split.hpp"
#include "ontoforge/ingest/document.hpp"
#include "ontoforge/ingest/raw_record.hpp"
#include "ontoforge/vstore/collection.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace ontoforge::cli {

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

namespace {

std::ifstream open_in(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw IoError("cannot open " + p.string());
    return in;
}

std::ofstream open_out(const fs::path& p) {
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + p.string());
    return out;
}

std::vector<json> read_jsonl(const fs::path& p) {
    auto in = open_in(p);
    std::vector<json> out;
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        ++n;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            out.push_back(json::parse(line));
        } catch (const json::parse_error& e) {
            throw ParseError(n, p.string() + ": " + e.what());
        }
    }
    return out;
}

void write_jsonl(const fs::path& p, const std::vector<json>& rows) {
    auto out = open_out(p);
    for (const auto& r : rows) out << r.dump() << '\n';
    if (!out) throw IoError("write failed: " + p.string());
}

void write_json(const fs::path& p, const json& j) {
    auto out = open_out(p);
    out << j.dump(2) << '\n';
    if (!out) throw IoError("write failed: " + p.string());
}

Settings load_settings(const std::string& config_path) {
    return settings_from(config_path.empty() ? ConfigMap{} : read_config_file(config_path));
}

// ---- ontology loading --------------------------------------------------------

struct OntologyInputs {
    std::vector<std::string> files;
    std::string format;
    std::string label_map;
    std::string dates;
};

std::vector<TermObject> read_terms_jsonl(const fs::path& p) {
    std::vector<TermObject> out;
    for (const auto& j : read_jsonl(p)) out.push_back(term_from_json(j));
    return out;
}

std::vector<TermObject> load_ontology(const OntologyInputs& in, std::ostream& err) {
    if (in.format == "terms") {
        std::vector<TermObject> out;
        for (const auto& f : in.files) {
            auto t = read_terms_jsonl(f);
            out.insert(out.end(), t.begin(), t.end());
        }
        return out;
    }
    std::vector<RawTermRecord> records;
    for (const auto& f : in.files) {
        auto s = open_in(f);
        auto r = in.format == "obo" ? parse_obo_subset(s) : parse_term_jsonl(s);
        records.insert(records.end(), r.begin(), r.end());
    }
    if (!in.dates.empty()) {
        auto d = open_in(in.dates);
        apply_date_sidecar(records, d);
    }
    PredicateLabelMap labels = default_predicate_labels();
    if (!in.label_map.empty()) {
        auto m = open_in(in.label_map);
        for (auto& [k, v] : read_predicate_map(m)) labels[k] = v;
    }
    auto onto = canonicalize(records, labels);
    for (const auto& w : onto.warnings) err << "warning: " << w.subject.str() << ": " << w.message << '\n';
    return std::move(onto.terms);
}

void add_ontology_options(CLI::App* cmd, OntologyInputs& in, bool allow_github) {
    cmd->add_option("inputs", in.files, "Ontology or issue-cache files")->required();
    std::vector<std::string> formats{"obo", "jsonl", "terms"};
    if (allow_github) formats.push_back("github");
    cmd->add_option("--format", in.format, "Input format")->required()->check(CLI::IsMember(formats));
    cmd->add_option("--label-map", in.label_map, "TSV of CURIE -> label for predicates and imported targets");
    cmd->add_option("--dates", in.dates, "TSV of CURIE -> creation date");
}

// ---- index -------------------------------------------------------------------

struct IndexArgs {
    OntologyInputs inputs;
    std::string store;
    std::string collection;
    std::string repo;
    std::string config;
    bool force = false;
};

int cmd_index(const IndexArgs& a, std::ostream& out, std::ostream& err) {
    const auto settings = load_settings(a.config);
    const bool github = a.inputs.format == "github";
    const auto name = a.collection.empty() ? std::string(github ? "issues" : "terms") : a.collection;
    VectorStore store(a.store);
    if (store.contains(name) && !a.force) {
        err << "error: collection '" << name << "' already exists in " << a.store << " (use --force to replace)\n";
        return kExitFailure;
    }

    std::vector<std::string> keys, texts;
    std::vector<json> payloads;
    if (github) {
        std::vector<Document> docs;
        if (!a.repo.empty()) {
            const auto slash = a.repo.find('/');
            if (slash == std::string::npos || a.inputs.files.size() != 1) {
                throw UsageError("--repo takes owner/name and exactly one cache path");
            }
            GithubRemoteSource src;
            src.owner = a.repo.substr(0, slash);
            src.repo = a.repo.substr(slash + 1);
            src.cache_path = a.inputs.files.front();
            docs = load_github_issues(src);
        } else {
            for (const auto& f : a.inputs.files) {
                auto d = load_github_issues(GithubCacheSource{f});
                docs.insert(docs.end(), d.begin(), d.end());
            }
        }
        for (const auto& d : docs) {
            keys.push_back(d.doc_id);
            texts.push_back(serialize_document(d));
            payloads.push_back(to_json(d));
        }
    } else {
        for (const auto& t : load_ontology(a.inputs, err)) {
            keys.push_back(t.id.str());
            texts.push_back(serialize_term(t));
            payloads.push_back(to_json(t));
        }
    }

    auto embedder = make_embedding_provider(settings.embed);
    auto vectors = embedder->embed_batch(texts);
    Collection c(embedder->dim(), settings.hnsw);
    for (std::size_t i = 0; i < keys.size(); ++i) c.add({keys[i], std::move(payloads[i]), std::move(vectors[i])});
    store.save(name, c, a.force);
    out << "indexed " << c.size() << (github ? " documents" : " terms") << " (dim " << c.dim() << ") into "
        << (fs::path(a.store) / name).string() << '\n';
    return kExitOk;
}

// ---- completion runs ---------------------------------------------------------

struct CompletionRunArgs {
    std::string store;
    std::string collection = "terms";
    std::string issues_collection = "issues";
    bool github = false;
    bool background = false;
    std::string output;
    std::string config;
    std::string script;
    std::string model;
    std::size_t jobs = 1;
    std::optional<std::size_t> k;
};

void add_completion_options(CLI::App* cmd, CompletionRunArgs& a) {
    cmd->add_option("--store", a.store, "Vector store directory")->required();
    cmd->add_option("--collection", a.collection, "Term collection name")->capture_default_str();
    cmd->add_flag("--github", a.github, "Add retrieved issues to the prompt");
    cmd->add_option("--issues-collection", a.issues_collection, "Issue collection name")->capture_default_str();
    cmd->add_flag("--background", a.background, "Generate background text first and use it as extra context");
    cmd->add_option("--output", a.output, "Output JSON Lines file")->required();
    cmd->add_option("--config", a.config, "key=value configuration file");
    cmd->add_option("--script", a.script, "Scripted provider responses (JSON Lines)");
    cmd->add_option("--model", a.model, "Model name override");
    cmd->add_option("--jobs", a.jobs, "Parallel completions")->check(CLI::PositiveNumber)->capture_default_str();
    cmd->add_option("--examples", a.k, "Number of in-context examples");
}

struct Job {
    PartialTerm query;
    json extra;  // merged into the output record
    std::optional<json> skip;  // error recorded without calling the provider
};

std::string method_label(const CompletionRunArgs& a) {
    std::string m = "RAG";
    if (a.github) m += "+github";
    if (a.background) m += "+background";
    return m;
}

json error_json(const std::string& kind, const std::string& message) { return {{"kind", kind}, {"message", message}}; }

// Runs every job and writes one record per job, in job order. Returns the
// number of completed terms.
std::size_t run_completions(const CompletionRunArgs& a, std::vector<Job>& jobs, const std::string& command,
                            std::ostream& err) {
    auto settings = load_settings(a.config);
    if (!a.script.empty()) {
        settings.llm.kind = CompletionProviderKind::scripted;
        settings.llm.script_path = a.script;
    }
    if (!a.model.empty()) settings.llm.model_name = a.model;
    if (a.k) settings.budget.requested_examples = *a.k;

    if (!fs::is_directory(a.store)) throw IoError("store directory " + a.store + " does not exist");
    VectorStore store(a.store);
    const auto terms = store.load(a.collection);
    std::optional<Collection> issues;
    if (a.github) {
        if (!store.contains(a.issues_collection)) {
            throw ConfigError("--github needs issue collection '" + a.issues_collection + "', which is not in store " +
                              a.store);
        }
        issues = store.load(a.issues_collection);
    }

    auto embedder = make_embedding_provider(settings.embed);
    auto provider = make_completion_provider(settings.llm);
    CompletionContext ctx{TermIndex::from(terms), issues ? &*issues : nullptr, embedder.get(), provider.get()};
    CompletionOptions opts;
    opts.budget = settings.budget;
    opts.retrieval = settings.retrieval;
    opts.use_github = a.github;
    opts.use_background = a.background;

    const auto started = utc_timestamp();
    const fs::path output(a.output);
    const auto manifest_path = fs::path(a.output + ".manifest.json");
    const auto manifest_name = manifest_path.filename().string();
    const auto method = method_label(a);

    std::vector<json> records(jobs.size());
    parallel_for_bounded(jobs.size(), a.jobs, [&](std::size_t i) {
        const auto& job = jobs[i];
        json rec = job.extra;
        rec["manifest"] = manifest_name;
        rec["index"] = i;
        rec["method"] = method;
        rec["model"] = settings.llm.model_name;
        rec["query"] = to_json(job.query);
        if (job.skip) {
            rec["status"] = "skipped";
            rec["error"] = *job.skip;
        } else {
            try {
                const auto done = complete_term(ctx, job.query, opts);
                rec["status"] = "ok";
                rec["result"] = to_json(done);
                rec["prompt"] = done.prompt_text;
            } catch (const Error& e) {
                rec["status"] = "error";
                rec["error"] = error_json(e.kind(), e.what());
            }
        }
        records[i] = std::move(rec);
    });

    std::size_t ok = 0;
    for (const auto& r : records) {
        if (r["status"] == "ok") ++ok;
        else err << "term " << r["index"].get<std::size_t>() << ": " << r["status"].get<std::string>() << ": "
                 << r["error"]["kind"].get<std::string>() << ": " << r["error"]["message"].get<std::string>() << '\n';
    }
    write_jsonl(output, records);

    json embed_spec{{"kind", effective_config(settings).at("embed.kind")},
                    {"model_name", embedder->model_name()},
                    {"dim", embedder->dim()}};
    if (settings.embed.endpoint) embed_spec["endpoint"] = *settings.embed.endpoint;
    json llm_spec{{"kind", effective_config(settings).at("llm.kind")},
                  {"model_name", settings.llm.model_name},
                  {"temperature", settings.llm.temperature}};
    if (settings.llm.endpoint) llm_spec["endpoint"] = *settings.llm.endpoint;
    if (settings.llm.script_path) llm_spec["script"] = settings.llm.script_path->string();
    json manifest{{"command", command},
                  {"ontoforge_version", kVersion},
                  {"config", effective_config(settings)},
                  {"config_hash", config_hash(settings)},
                  {"prompt_template_hash", prompt_template_hash()},
                  {"embedding_provider", embed_spec},
                  {"completion_provider", llm_spec},
                  {"store", a.store},
                  {"collection", a.collection},
                  {"issues_collection", a.github ? json(a.issues_collection) : json(nullptr)},
                  {"seed", settings.seed},
                  {"records", records.size()},
                  {"completed", ok},
                  {"output", output.filename().string()},
                  {"started_at", started},
                  {"finished_at", utc_timestamp()}};
    write_json(manifest_path, manifest);
    return ok;
}

struct CompleteArgs {
    CompletionRunArgs run;
    std::string query_file;
    std::string label;
    std::string definition;
    std::string mask = "definition,relationships";
};

int cmd_complete(CompleteArgs& a, std::ostream& out, std::ostream& err) {
    const auto mask = parse_mask(a.mask);
    std::vector<Job> jobs;
    if (!a.query_file.empty()) {
        for (const auto& j : read_jsonl(a.query_file)) {
            Job job;
            job.query = partial_term_from_json(j, mask);
            jobs.push_back(std::move(job));
        }
    } else {
        Job job;
        job.query.label = a.label;
        if (!a.definition.empty()) job.query.definition = a.definition;
        job.query.mask = mask;
        jobs.push_back(std::move(job));
    }
    const auto ok = run_completions(a.run, jobs, "complete", err);
    out << "completed " << ok << " of " << jobs.size() << " terms -> " << a.run.output << '\n';
    return ok > 0 ? kExitOk : kExitFailure;
}

// ---- eval --------------------------------------------------------------------

struct SplitArgs {
    OntologyInputs inputs;
    std::string cutoff;
    std::size_t n_test = 50;
    std::optional<std::uint64_t> seed;
    std::string core_out;
    std::string test_out;
    std::string config;
};

int cmd_split(const SplitArgs& a, std::ostream& out, std::ostream& err) {
    const auto settings = load_settings(a.config);
    const auto terms = load_ontology(a.inputs, err);
    const auto split = split_test_set(terms, SplitSpec{a.cutoff, a.n_test}, a.seed.value_or(settings.seed));
    auto dump = [](const std::vector<TermObject>& ts) {
        std::vector<json> rows;
        for (const auto& t : ts) rows.push_back(to_json(t));
        return rows;
    };
    write_jsonl(a.core_out, dump(split.core));
    write_jsonl(a.test_out, dump(split.test));
    out << "split " << terms.size() << " terms: " << split.core.size() << " core, " << split.test.size() << " test\n";
    return kExitOk;
}

struct RunArgs {
    CompletionRunArgs run;
    std::string test_file;
    std::string task = "relationships";
};

int cmd_eval_run(RunArgs& a, std::ostream& out, std::ostream& err) {
    const auto task = mask_task_from_string(a.task);
    std::vector<Job> jobs;
    for (const auto& t : read_terms_jsonl(a.test_file)) {
        Job job;
        job.extra = {{"task", std::string(to_string(task))}, {"subject", t.id.str()}, {"gold", to_json(t)}};
        try {
            job.query = mask_term(t, task);
        } catch (const MissingGoldField& e) {
            job.query.label = t.label;
            job.skip = error_json(e.kind(), e.what());
        }
        jobs.push_back(std::move(job));
    }
    const auto ok = run_completions(a.run, jobs, "eval run", err);
    out << "completed " << ok << " of " << jobs.size() << " test terms -> " << a.run.output << '\n';
    return ok > 0 ? kExitOk : kExitFailure;
}

struct ScoreArgs {
    std::string run_file;
    std::string core_file;
    std::string output;
};

std::vector<Relationship> predicted(const json& rec, const char* field) {
    if (rec.value("status", "") != "ok") return {};
    const auto& t = rec.at("result").at("term");
    if (!t.contains(field) || t[field].is_null()) return {};
    return relationships_from_json(t[field]);
}

int cmd_score(const ScoreArgs& a, std::ostream& out, std::ostream&) {
    const auto core_terms = read_terms_jsonl(a.core_file);
    const auto core = build_graph(core_terms);
    ScoreLedger subclass, all;
    std::size_t n_terms = 0, n_logical = 0, n_exact = 0;
    double jaccard_sum = 0.0;
    std::string model, method;
    for (const auto& rec : read_jsonl(a.run_file)) {
        if (rec.value("status", "") == "skipped") continue;
        const auto task = rec.value("task", "");
        const auto gold_term = term_from_json(rec.at("gold"));
        model = rec.value("model", model);
        method = rec.value("method", method);
        if (task == "relationships") {
            const auto pred = predicted(rec, "relationships");
            const auto& gold = gold_term.relationships;
            const auto graph = scoring_graph(core, gold_term.id, gold);
            all.add(gold_term.id, score_relationships(pred, gold, graph, gold_term.id));
            const auto ps = filter_predicate(pred, subclass_of());
            const auto gs = filter_predicate(gold, subclass_of());
            subclass.add(gold_term.id, score_relationships(ps, gs, graph, gold_term.id));
            ++n_terms;
        } else if (task == "logical_definition") {
            const auto pred = predicted(rec, "logical_definitions");
            const auto s = score_logical_definitions(pred, *gold_term.logical_definitions);
            ++n_logical;
            n_exact += s.exact ? 1 : 0;
            jaccard_sum += s.jaccard;
        }
    }
    if (n_terms == 0 && n_logical == 0) throw InvalidQuery("no scorable relationship or logical-definition records");

    json report{{"model", model}, {"method", method}, {"terms_scored", n_terms}};
    const auto ms = aggregate_metrics(subclass);
    const auto ma = aggregate_metrics(all);
    if (n_terms > 0) {
        report["subclass_of"] = {{"metrics", to_json(ms)}, {"ledger", to_json(subclass)}};
        report["all"] = {{"metrics", to_json(ma)}, {"ledger", to_json(all)}};
    }
    if (n_logical > 0) {
        report["logical_definitions"] = {{"terms", n_logical},
                                         {"exact_rate", static_cast<double>(n_exact) / static_cast<double>(n_logical)},
                                         {"mean_jaccard", jaccard_sum / static_cast<double>(n_logical)}};
    }
    if (!a.output.empty()) write_json(a.output, report);
    if (n_terms > 0) out << format_relationship_metrics(ms, ma, model);
    if (n_logical > 0) out << "logical definitions: " << report["logical_definitions"].dump() << '\n';
    return kExitOk;
}

struct SheetsMakeArgs {
    std::vector<std::string> runs;
    std::optional<std::uint64_t> seed;
    std::string sheet;
    std::string key;
    std::string config;
};

int cmd_sheets_make(const SheetsMakeArgs& a, std::ostream& out, std::ostream& err) {
    const auto settings = load_settings(a.config);
    std::map<DefinitionSource, std::string> defs;
    std::map<Symbol, std::string> gold, labels;
    for (const auto& f : a.runs) {
        for (const auto& rec : read_jsonl(f)) {
            if (rec.value("task", "") != "definition" || rec.value("status", "") == "skipped") continue;
            const auto gold_term = term_from_json(rec.at("gold"));
            if (gold_term.definition) gold[gold_term.id] = *gold_term.definition;
            labels[gold_term.id] = gold_term.label;
            if (rec.value("status", "") != "ok") continue;
            const auto& t = rec.at("result").at("term");
            if (!t.contains("definition") || !t["definition"].is_string()) {
                err << "warning: no generated definition for " << gold_term.id.str() << " in " << f << '\n';
                continue;
            }
            DefinitionSource src{rec.at("method").get<std::string>(), rec.at("model").get<std::string>(), gold_term.id};
            if (!defs.emplace(src, t["definition"].get<std::string>()).second) {
                throw ConfigError("duplicate definition for " + src.method + "/" + src.model + "/" + src.term.str());
            }
        }
    }
    const auto sheets = make_eval_sheets(defs, gold, a.seed.value_or(settings.seed), labels);
    {
        auto s = open_out(a.sheet);
        write_sheet_tsv(s, sheets.rows);
        auto k = open_out(a.key);
        write_blind_key(k, sheets.key);
    }
    out << "wrote " << sheets.rows.size() << " rows to " << a.sheet << '\n';
    return kExitOk;
}

struct SheetsIngestArgs {
    std::vector<std::string> sheets;
    std::string key;
    std::string evaluator;
    std::string output;
};

int cmd_sheets_ingest(const SheetsIngestArgs& a, std::ostream& out, std::ostream& err) {
    auto k = open_in(a.key);
    const auto key = read_blind_key(k);
    std::vector<json> rows;
    std::size_t rejected = 0;
    for (const auto& f : a.sheets) {
        auto in = open_in(f);
        const auto sheet = read_sheet_tsv(in);
        const auto res = ingest_eval_sheets(sheet, key, a.evaluator);
        for (const auto& r : res.table) rows.push_back(to_json(r));
        for (const auto& r : res.rejected) {
            err << "rejected " << r.row_id << ": " << r.kind << ": " << r.reason << '\n';
        }
        rejected += res.rejected.size();
    }
    write_jsonl(a.output, rows);
    out << "ingested " << rows.size() << " rows, rejected " << rejected << '\n';
    return kExitOk;
}

struct ReportArgs {
    std::vector<std::string> scores;
    std::string output;
};

int cmd_report(const ReportArgs& a, std::ostream& out, std::ostream&) {
    std::vector<ScoreRecord> table;
    for (const auto& f : a.scores) {
        for (const auto& j : read_jsonl(f)) table.push_back(score_record_from_json(j));
    }
    const auto report = summarize_scores(table);
    if (!a.output.empty()) write_json(a.output, to_json(report));
    out << format_report(report);
    return kExitOk;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Retrieval-augmented ontology term completion", "ontoforge"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    IndexArgs index_args;
    auto* index = app.add_subcommand("index", "Parse, embed and store an ontology or issue cache");
    add_ontology_options(index, index_args.inputs, true);
    index->add_option("--store", index_args.store, "Vector store directory")->required();
    index->add_option("--collection", index_args.collection, "Collection name (default terms, or issues)");
    index->add_option("--repo", index_args.repo, "owner/name: fetch issues into the given cache file first");
    index->add_option("--config", index_args.config, "key=value configuration file");
    index->add_flag("--force", index_args.force, "Replace an existing collection");

    CompleteArgs complete_args;
    auto* complete = app.add_subcommand("complete", "Complete partial terms");
    add_completion_options(complete, complete_args.run);
    auto* query_opt = complete->add_option("--query", complete_args.query_file, "JSON Lines of partial terms");
    auto* label_opt = complete->add_option("--label", complete_args.label, "Label of a single term to complete");
    query_opt->excludes(label_opt);
    complete->add_option("--definition", complete_args.definition, "Known definition (with --label)")->needs(label_opt);
    complete->add_option("--mask", complete_args.mask, "Fields to generate")->capture_default_str();

    auto* eval = app.add_subcommand("eval", "Evaluation workflow");
    eval->require_subcommand(1);

    SplitArgs split_args;
    auto* split = eval->add_subcommand("split", "Hold out recently added terms as a test set");
    add_ontology_options(split, split_args.inputs, false);
    split->add_option("--cutoff", split_args.cutoff, "YYYY-MM-DD")->required();
    split->add_option("--n-test", split_args.n_test, "Test set size")->capture_default_str();
    split->add_option("--seed", split_args.seed, "Sampling seed (default: config seed)");
    split->add_option("--core", split_args.core_out, "Core terms output")->required();
    split->add_option("--test", split_args.test_out, "Test terms output")->required();
    split->add_option("--config", split_args.config, "key=value configuration file");

    RunArgs run_args;
    auto* run_cmd = eval->add_subcommand("run", "Mask and complete every test term");
    add_completion_options(run_cmd, run_args.run);
    run_cmd->add_option("--test", run_args.test_file, "Test terms (JSON Lines)")->required();
    run_cmd->add_option("--task", run_args.task, "Field to predict")
        ->check(CLI::IsMember({"relationships", "definition", "logical_definition"}))
        ->capture_default_str();

    ScoreArgs score_args;
    auto* score = eval->add_subcommand("score", "Score relationship predictions");
    score->add_option("--run", score_args.run_file, "Output of eval run")->required();
    score->add_option("--core", score_args.core_file, "Core terms used to build the traversal graph")->required();
    score->add_option("--output", score_args.output, "Metrics JSON");

    SheetsMakeArgs make_args;
    auto* sheets_make = eval->add_subcommand("sheets-make", "Build a blinded definition score sheet");
    sheets_make->add_option("--run", make_args.runs, "Definition-task outputs of eval run")->required();
    sheets_make->add_option("--seed", make_args.seed, "Shuffle seed (default: config seed)");
    sheets_make->add_option("--sheet", make_args.sheet, "Sheet TSV output")->required();
    sheets_make->add_option("--key", make_args.key, "Blind key output")->required();
    sheets_make->add_option("--config", make_args.config, "key=value configuration file");

    SheetsIngestArgs ingest_args;
    auto* sheets_ingest = eval->add_subcommand("sheets-ingest", "Unblind scored sheets");
    sheets_ingest->add_option("--sheet", ingest_args.sheets, "Scored sheet TSV")->required();
    sheets_ingest->add_option("--key", ingest_args.key, "Blind key")->required();
    sheets_ingest->add_option("--evaluator", ingest_args.evaluator, "Evaluator name")->required();
    sheets_ingest->add_option("--output", ingest_args.output, "Score table (JSON Lines)")->required();

    ReportArgs report_args;
    auto* report = eval->add_subcommand("report", "Summarize definition scores");
    report->add_option("--scores", report_args.scores, "Score tables")->required();
    report->add_option("--output", report_args.output, "Report JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (index->parsed()) return cmd_index(index_args, out, err);
        if (complete->parsed()) {
            if (complete_args.query_file.empty() && complete_args.label.empty()) {
                throw UsageError("complete needs --query or --label");
            }
            return cmd_complete(complete_args, out, err);
        }
        if (split->parsed()) return cmd_split(split_args, out, err);
        if (run_cmd->parsed()) return cmd_eval_run(run_args, out, err);
        if (score->parsed()) return cmd_score(score_args, out, err);
        if (sheets_make->parsed()) return cmd_sheets_make(make_args, out, err);
        if (sheets_ingest->parsed()) return cmd_sheets_ingest(ingest_args, out, err);
        if (report->parsed()) return cmd_report(report_args, out, err);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.kind() << ": " << e.what() << '\n';
        return kExitFailure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitUsage;
}

} // namespace ontoforge::cli
