#include <fstream>
#include <mutex>
#include <sstream>

#include "ontoforge/core/parallel.hpp"
#include "ontoforge/error.hpp"
#include "ontoforge/ingest/document.hpp"

namespace ontoforge {

std::string_view to_string(DocumentSource s) noexcept {
    switch (s) {
    case DocumentSource::github_issue: return "github_issue";
    case DocumentSource::pubmed: return "pubmed";
    case DocumentSource::docs: return "docs";
    case DocumentSource::other: return "other";
    }
    return "other";
}

DocumentSource document_source_from_string(std::string_view s) {
    if (s == "github_issue") return DocumentSource::github_issue;
    if (s == "pubmed") return DocumentSource::pubmed;
    if (s == "docs") return DocumentSource::docs;
    return DocumentSource::other;
}

nlohmann::json to_json(const Document& d) {
    return {{"doc_id", d.doc_id}, {"source", to_string(d.source)}, {"title", d.title}, {"body", d.body}};
}

Document document_from_json(const nlohmann::json& j) {
    Document d;
    d.doc_id = j.at("doc_id").get<std::string>();
    d.source = document_source_from_string(j.value("source", std::string("other")));
    d.title = j.value("title", std::string{});
    d.body = j.value("body", std::string{});
    return d;
}

std::string serialize_document(const Document& d) {
    if (d.title.empty()) return d.body;
    return d.title + "\n\n" + d.body;
}

namespace {

std::string string_field(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_string()) return {};
    return j[key].get<std::string>();
}

} // namespace

Document issue_to_document(const nlohmann::json& issue) {
    if (!issue.is_object() || !issue.contains("number") || !issue["number"].is_number_integer()) {
        throw ParseError("issue payload lacks an integer 'number'");
    }
    Document d;
    d.doc_id = std::to_string(issue["number"].get<long long>());
    d.source = DocumentSource::github_issue;
    d.title = string_field(issue, "title");

    std::vector<std::string> parts;
    if (auto body = string_field(issue, "body"); !body.empty()) parts.push_back(std::move(body));
    if (issue.contains("comments_data")) {
        if (!issue["comments_data"].is_array()) throw ParseError("comments_data must be an array");
        for (const auto& c : issue["comments_data"]) {
            if (auto body = string_field(c, "body"); !body.empty()) parts.push_back(std::move(body));
        }
    }
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) d.body += "\n\n";
        d.body += parts[i];
    }
    if (d.body.empty()) d.body = d.title.empty() ? "(issue " + d.doc_id + ")" : d.title;
    d.raw = issue;
    return d;
}

std::vector<Document> read_issue_cache(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open issue cache " + path.string());
    std::vector<Document> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        nlohmann::json payload;
        try {
            payload = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError(line_no, e.what());
        }
        try {
            out.push_back(issue_to_document(payload));
        } catch (const ParseError& e) {
            throw ParseError(line_no, e.what());
        }
    }
    return out;
}

namespace {

HttpRequest github_get(const GithubRemoteSource& src, const std::string& url) {
    HttpRequest req;
    req.method = "GET";
    req.url = url;
    req.headers = {{"Accept", "application/vnd.github+json"}, {"User-Agent", "ontoforge"}};
    if (auto token = env_value(src.token_env)) req.headers.emplace_back("Authorization", "Bearer " + *token);
    return req;
}

nlohmann::json get_json(HttpTransport& transport, const GithubRemoteSource& src, const std::string& url) {
    auto res = send_with_retry(transport, github_get(src, url), src.retry);
    if (res.status != 200) throw FetchError(res.status, url + (res.error.empty() ? "" : " (" + res.error + ")"));
    try {
        return nlohmann::json::parse(res.body);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("GitHub response from ") + url + ": " + e.what());
    }
}

std::vector<nlohmann::json> fetch_issue_payloads(const GithubRemoteSource& src, HttpTransport& transport) {
    const std::string base = src.api_base + "/repos/" + src.owner + "/" + src.repo;
    std::vector<nlohmann::json> issues;
    for (std::size_t page = 1;; ++page) {
        const std::string url = base + "/issues?state=" + src.state + "&per_page=" +
                                std::to_string(src.per_page) + "&page=" + std::to_string(page);
        auto batch = get_json(transport, src, url);
        if (!batch.is_array()) throw ParseError("GitHub issue listing is not an array");
        if (batch.empty()) break;
        for (auto& issue : batch) {
            if (issue.contains("pull_request")) continue;
            issues.push_back(std::move(issue));
            if (src.max_issues && issues.size() >= src.max_issues) return issues;
        }
        if (batch.size() < src.per_page) break;
    }
    return issues;
}

} // namespace

std::vector<Document> load_github_issues(const IssueSource& source, HttpTransport* transport) {
    if (const auto* cache = std::get_if<GithubCacheSource>(&source)) return read_issue_cache(cache->cache_path);

    const auto& src = std::get<GithubRemoteSource>(source);
    HttplibTransport default_transport;
    HttpTransport& http = transport ? *transport : default_transport;

    auto issues = fetch_issue_payloads(src, http);
    parallel_for_bounded(issues.size(), src.max_concurrency, [&](std::size_t i) {
        auto& issue = issues[i];
        const long long n = issue.value("comments", 0LL);
        if (n <= 0 || !issue.contains("comments_url") || !issue["comments_url"].is_string()) return;
        auto comments = get_json(http, src, issue["comments_url"].get<std::string>() + "?per_page=100");
        if (!comments.is_array()) throw ParseError("comment listing is not an array");
        issue["comments_data"] = std::move(comments);
    });

    if (!src.cache_path.empty()) {
        if (src.cache_path.has_parent_path()) std::filesystem::create_directories(src.cache_path.parent_path());
        std::ofstream out(src.cache_path, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write issue cache " + src.cache_path.string());
        for (const auto& issue : issues) out << issue.dump() << '\n';
        out.close();
        return read_issue_cache(src.cache_path);
    }
    std::vector<Document> docs;
    for (const auto& issue : issues) docs.push_back(issue_to_document(issue));
    return docs;
}

} // namespace ontoforge
