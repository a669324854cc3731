#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>

#include "ontoforge/completion/pipeline.hpp"
#include "ontoforge/completion/provider.hpp"
#include "ontoforge/embed/embedding.hpp"
#include "ontoforge/vstore/hnsw.hpp"

namespace ontoforge::cli {

using ConfigMap = std::map<std::string, std::string>;

// key = value lines; '#' starts a comment line. Throws ConfigError naming the line.
ConfigMap parse_config(std::istream& in);
ConfigMap read_config_file(const std::filesystem::path& path);

struct Settings {
    EmbeddingProviderSpec embed;
    CompletionProviderSpec llm;
    RetrievalOptions retrieval;
    PromptBudget budget;
    HnswParams hnsw;
    std::uint64_t seed = 42;
};

// Recognized keys:
//   embed.kind embed.model_name embed.endpoint embed.dim embed.max_concurrency embed.batch_size
//   llm.kind llm.model_name llm.endpoint llm.temperature llm.script
//   retrieval.k retrieval.mmr_lambda retrieval.github_docs retrieval.candidate_multiplier
//   prompt.max_tokens prompt.min_examples
//   hnsw.m hnsw.ef_construction hnsw.ef_search hnsw.seed
//   seed
// Unknown keys and unparsable values throw ConfigError.
Settings settings_from(const ConfigMap& config);

// Every setting in canonical key=value form, secrets excluded.
ConfigMap effective_config(const Settings& s);
std::string config_hash(const Settings& s);

} // namespace ontoforge::cli
