#include "ontoforge/cli/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include "ontoforge/error.hpp"

namespace ontoforge::cli {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

template <class T>
T parse_number(const std::string& key, const std::string& v) {
    T out{};
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size()) throw ConfigError("bad value for " + key + ": '" + v + "'");
    return out;
}

double parse_double(const std::string& key, const std::string& v) {
    // from_chars for double is missing from older libstdc++.
    std::istringstream is(v);
    double d = 0.0;
    if (!(is >> d) || !is.eof()) throw ConfigError("bad value for " + key + ": '" + v + "'");
    return d;
}

std::string fmt_double(double d) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", d);
    return buf;
}

} // namespace

ConfigMap parse_config(std::istream& in) {
    ConfigMap out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
        const auto key = trim(std::string_view(t).substr(0, eq));
        if (key.empty()) throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
        out[key] = trim(std::string_view(t).substr(eq + 1));
    }
    return out;
}

ConfigMap read_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    return parse_config(in);
}

Settings settings_from(const ConfigMap& config) {
    Settings s;
    bool dim_given = false;
    using Setter = std::function<void(const std::string&, const std::string&)>;
    const std::map<std::string, Setter> setters{
        {"embed.kind",
         [&](auto& k, auto& v) {
             if (v == "deterministic_local") s.embed.kind = EmbeddingProviderKind::deterministic_local;
             else if (v == "remote_http") s.embed.kind = EmbeddingProviderKind::remote_http;
             else throw ConfigError("bad value for " + k + ": '" + v + "'");
         }},
        {"embed.model_name", [&](auto&, auto& v) { s.embed.model_name = v; }},
        {"embed.endpoint", [&](auto&, auto& v) { s.embed.endpoint = v; }},
        {"embed.dim",
         [&](auto& k, auto& v) {
             s.embed.dim = parse_number<std::size_t>(k, v);
             dim_given = true;
         }},
        {"embed.max_concurrency", [&](auto& k, auto& v) { s.embed.max_concurrency = parse_number<std::size_t>(k, v); }},
        {"embed.batch_size", [&](auto& k, auto& v) { s.embed.batch_size = parse_number<std::size_t>(k, v); }},
        {"llm.kind",
         [&](auto& k, auto& v) {
             if (v == "scripted") s.llm.kind = CompletionProviderKind::scripted;
             else if (v == "remote_http") s.llm.kind = CompletionProviderKind::remote_http;
             else throw ConfigError("bad value for " + k + ": '" + v + "'");
         }},
        {"llm.model_name", [&](auto&, auto& v) { s.llm.model_name = v; }},
        {"llm.endpoint", [&](auto&, auto& v) { s.llm.endpoint = v; }},
        {"llm.temperature", [&](auto& k, auto& v) { s.llm.temperature = parse_double(k, v); }},
        {"llm.script", [&](auto&, auto& v) { s.llm.script_path = v; }},
        {"retrieval.k", [&](auto& k, auto& v) { s.budget.requested_examples = parse_number<std::size_t>(k, v); }},
        {"retrieval.mmr_lambda", [&](auto& k, auto& v) { s.retrieval.mmr_lambda = parse_double(k, v); }},
        {"retrieval.github_docs", [&](auto& k, auto& v) { s.retrieval.github_docs = parse_number<std::size_t>(k, v); }},
        {"retrieval.candidate_multiplier",
         [&](auto& k, auto& v) { s.retrieval.candidate_multiplier = parse_number<std::size_t>(k, v); }},
        {"prompt.max_tokens", [&](auto& k, auto& v) { s.budget.max_tokens = parse_number<std::size_t>(k, v); }},
        {"prompt.min_examples", [&](auto& k, auto& v) { s.budget.min_examples = parse_number<std::size_t>(k, v); }},
        {"hnsw.m", [&](auto& k, auto& v) { s.hnsw.m = parse_number<std::size_t>(k, v); }},
        {"hnsw.ef_construction", [&](auto& k, auto& v) { s.hnsw.ef_construction = parse_number<std::size_t>(k, v); }},
        {"hnsw.ef_search", [&](auto& k, auto& v) { s.hnsw.ef_search = parse_number<std::size_t>(k, v); }},
        {"hnsw.seed", [&](auto& k, auto& v) { s.hnsw.seed = parse_number<std::uint64_t>(k, v); }},
        {"seed", [&](auto& k, auto& v) { s.seed = parse_number<std::uint64_t>(k, v); }},
    };
    for (const auto& [k, v] : config) {
        const auto it = setters.find(k);
        if (it == setters.end()) throw ConfigError("unknown config key '" + k + "'");
        it->second(k, v);
    }
    if (!dim_given) {
        s.embed.dim = s.embed.kind == EmbeddingProviderKind::remote_http ? EmbeddingProviderSpec::default_remote_dim
                                                                          : EmbeddingProviderSpec::default_local_dim;
    }
    if (s.retrieval.mmr_lambda < 0.0 || s.retrieval.mmr_lambda > 1.0) {
        throw ConfigError("retrieval.mmr_lambda must lie in [0, 1]");
    }
    if (s.hnsw.m < 2) throw ConfigError("hnsw.m must be at least 2");
    return s;
}

ConfigMap effective_config(const Settings& s) {
    ConfigMap m;
    m["embed.kind"] = s.embed.kind == EmbeddingProviderKind::remote_http ? "remote_http" : "deterministic_local";
    m["embed.model_name"] = s.embed.model_name;
    m["embed.endpoint"] = s.embed.endpoint.value_or("");
    m["embed.dim"] = std::to_string(s.embed.dim);
    m["embed.max_concurrency"] = std::to_string(s.embed.max_concurrency);
    m["embed.batch_size"] = std::to_string(s.embed.batch_size);
    m["llm.kind"] = s.llm.kind == CompletionProviderKind::remote_http ? "remote_http" : "scripted";
    m["llm.model_name"] = s.llm.model_name;
    m["llm.endpoint"] = s.llm.endpoint.value_or("");
    m["llm.temperature"] = fmt_double(s.llm.temperature);
    m["llm.script"] = s.llm.script_path ? s.llm.script_path->generic_string() : "";
    m["retrieval.k"] = std::to_string(s.budget.requested_examples);
    m["retrieval.mmr_lambda"] = fmt_double(s.retrieval.mmr_lambda);
    m["retrieval.github_docs"] = std::to_string(s.retrieval.github_docs);
    m["retrieval.candidate_multiplier"] = std::to_string(s.retrieval.candidate_multiplier);
    m["prompt.max_tokens"] = std::to_string(s.budget.max_tokens);
    m["prompt.min_examples"] = std::to_string(s.budget.min_examples);
    m["hnsw.m"] = std::to_string(s.hnsw.m);
    m["hnsw.ef_construction"] = std::to_string(s.hnsw.ef_construction);
    m["hnsw.ef_search"] = std::to_string(s.hnsw.ef_search);
    m["hnsw.seed"] = std::to_string(s.hnsw.seed);
    m["seed"] = std::to_string(s.seed);
    return m;
}

std::string config_hash(const Settings& s) {
    std::string canon;
    for (const auto& [k, v] : effective_config(s)) canon += k + "=" + v + "\n";
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(canon)));
    return buf;
}

} // namespace ontoforge::cli
