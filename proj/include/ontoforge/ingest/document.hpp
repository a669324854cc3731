#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "ontoforge/net/http.hpp"

namespace ontoforge {

enum class DocumentSource { github_issue, pubmed, docs, other };

std::string_view to_string(DocumentSource s) noexcept;
DocumentSource document_source_from_string(std::string_view s);

struct Document {
    std::string doc_id;
    DocumentSource source = DocumentSource::other;
    std::string title;
    std::string body;
    nlohmann::json raw;  // full upstream payload, verbatim

    bool operator==(const Document&) const = default;
};

// Payload stored in a vector collection (no raw blob).
nlohmann::json to_json(const Document& d);
Document document_from_json(const nlohmann::json& j);

// Text that gets embedded for a document.
std::string serialize_document(const Document& d);

// Issue payload -> Document. Comment payloads live under the `comments_data`
// key that fetch_github_issues attaches before caching.
Document issue_to_document(const nlohmann::json& issue);

struct GithubCacheSource {
    std::filesystem::path cache_path;
};

struct GithubRemoteSource {
    std::string owner;
    std::string repo;
    std::string api_base = "https://api.github.com";
    std::string state = "all";
    std::size_t max_issues = 0;  // 0 = no limit
    std::size_t per_page = 100;
    std::size_t max_concurrency = 4;
    std::string token_env = "ONTOFORGE_GITHUB_TOKEN";
    std::filesystem::path cache_path;
    RetryPolicy retry;
};

using IssueSource = std::variant<GithubCacheSource, GithubRemoteSource>;

// Cache: one raw issue payload per line. Remote sources fetch, write the
// cache, then reload from it so both paths produce identical documents.
std::vector<Document> load_github_issues(const IssueSource& source, HttpTransport* transport = nullptr);

std::vector<Document> read_issue_cache(const std::filesystem::path& path);

} // namespace ontoforge
