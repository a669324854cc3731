#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>

#include "gtest/gtest.h"
#include "ontoforge/error.hpp"
#include "ontoforge/ingest/document.hpp"
#include "ontoforge/ingest/raw_record.hpp"
#include "ontoforge/net/http.hpp"

namespace ontoforge {
namespace {

const std::string kData = std::string(ONTOFORGE_SOURCE_DIR) + "/data";

std::vector<RawTermRecord> parse_obo(const std::string& text) {
    std::istringstream in(text);
    return parse_obo_subset(in);
}

std::vector<RawTermRecord> parse_jsonl(const std::string& text) {
    std::istringstream in(text);
    return parse_term_jsonl(in);
}

PredicateLabelMap mitral_labels() {
    auto labels = default_predicate_labels();
    labels["UBERON:0004186"] = "olfactory bulb mitral cell layer";
    return labels;
}

TEST(OboTest, ParsesMitralCellStanza) {
    std::ifstream in(kData + "/mitral_cell/mitral_cell.obo");
    const auto recs = parse_obo_subset(in);
    ASSERT_EQ(recs.size(), 2u);
    const auto& mc = recs[0];
    EXPECT_EQ(mc.curie.str(), "CL:1001502");
    EXPECT_EQ(mc.label, "mitral cell");
    ASSERT_TRUE(mc.definition);
    EXPECT_EQ(mc.definition->substr(0, 35), "The large glutaminergic nerve cells");
    EXPECT_EQ(mc.definition_xrefs, std::vector<std::string>{"MP:0009954"});
    ASSERT_EQ(mc.raw_relationships.size(), 2u);
    EXPECT_EQ(mc.raw_relationships[0].predicate, "subClassOf");
    EXPECT_EQ(mc.raw_relationships[0].target, "CL:0000099");
    EXPECT_EQ(mc.raw_relationships[1].predicate, "RO:0002100");
    EXPECT_EQ(mc.raw_relationships[1].target, "UBERON:0004186");
}

TEST(OboTest, DefEscapesCommentsAndOtherStanzas) {
    const auto recs = parse_obo(
        "format-version: 1.2\n\n"
        "[Term]\nid: X:1\nname: thing\n"
        "def: \"A \\\"quoted\\\" thing.\" [PMID:1, GOC:x]\n"
        "is_a: X:2 {source=\"foo\"} ! parent\n"
        "creation_date: 2023-01-05T10:00:00Z\n\n"
        "[Typedef]\nid: part_of\nname: part of\n\n"
        "[Term]\nid: X:2\nname: parent\n");
    ASSERT_EQ(recs.size(), 2u);
    EXPECT_EQ(*recs[0].definition, "A \"quoted\" thing.");
    EXPECT_EQ(recs[0].definition_xrefs, (std::vector<std::string>{"PMID:1", "GOC:x"}));
    EXPECT_EQ(recs[0].raw_relationships[0].target, "X:2");
    EXPECT_EQ(*recs[0].created_date, "2023-01-05");
}

TEST(OboTest, ErrorsCarryLineNumbers) {
    try {
        parse_obo("[Term]\nid: X:1\nname: a\ndef: \"unterminated\n");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 4u);
    }
    try {
        parse_obo("[Term]\nid: X:1\n\n[Term]\nid: X:2\nname: b\n");
        FAIL();
    } catch (const SchemaError& e) {
        EXPECT_EQ(e.line(), 1u);
    }
    EXPECT_THROW(parse_obo("[Term]\nid: X:1\nname: a\nrelationship: part_of\n"), ParseError);
}

TEST(JsonlTest, ParsesMitralCellPanel) {
    std::ifstream in(kData + "/mitral_cell/mitral_cell.jsonl");
    const auto recs = parse_term_jsonl(in);
    ASSERT_EQ(recs.size(), 2u);
    EXPECT_EQ(recs[0].curie.str(), "CL:1001502");
    EXPECT_EQ(*recs[0].symbol_hint, "MitralCell");
    EXPECT_EQ(recs[0].raw_relationships[1].predicate, "HasSomaLocation");
}

TEST(JsonlTest, CurieIdAndErrors) {
    const auto recs = parse_jsonl("{\"id\": \"GO:1\", \"label\": \"x\"}\n\n");
    ASSERT_EQ(recs.size(), 1u);
    EXPECT_EQ(recs[0].curie.str(), "GO:1");
    EXPECT_FALSE(recs[0].symbol_hint);
    try {
        parse_jsonl("{\"id\": \"GO:1\", \"label\": \"x\"}\n{not json\n");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2u);
    }
    EXPECT_THROW(parse_jsonl("{\"id\": \"Foo\", \"label\": \"x\"}\n"), SchemaError);
    EXPECT_THROW(parse_jsonl("{\"id\": \"GO:1\"}\n"), SchemaError);
}

TEST(CanonicalizeTest, OboAndJsonPanelsAgree) {
    std::ifstream obo(kData + "/mitral_cell/mitral_cell.obo");
    std::ifstream jsonl(kData + "/mitral_cell/mitral_cell.jsonl");
    const auto a = canonicalize(parse_obo_subset(obo), mitral_labels());
    const auto b = canonicalize(parse_term_jsonl(jsonl), mitral_labels());
    EXPECT_EQ(a.terms, b.terms);
    EXPECT_TRUE(a.warnings.empty());
    ASSERT_EQ(a.terms.size(), 2u);
    EXPECT_EQ(a.terms[0].id.str(), "MitralCell");
    EXPECT_EQ(a.terms[0].relationships[0].target.str(), "Interneuron");
    EXPECT_EQ(a.terms[0].relationships[1].predicate.str(), "HasSomaLocation");
    EXPECT_EQ(a.terms[0].relationships[1].target.str(), "OlfactoryBulbMitralCellLayer");
}

TEST(CanonicalizeTest, UnlabeledCuriesFallBackWithWarnings) {
    const auto recs = parse_obo("[Term]\nid: X:1\nname: a\nrelationship: RO:9999999 Y:7\n");
    const auto onto = canonicalize(recs);
    ASSERT_EQ(onto.terms.size(), 1u);
    EXPECT_EQ(onto.terms[0].relationships[0].predicate.str(), "Curie_RO_9999999");
    EXPECT_EQ(onto.terms[0].relationships[0].target.str(), "Curie_Y_7");
    EXPECT_EQ(onto.warnings.size(), 2u);
    EXPECT_EQ(onto.table.curie_for(Symbol("Curie_Y_7"))->str(), "Y:7");
}

TEST(CanonicalizeTest, DuplicateRecordsAndCollidingLabels) {
    const auto recs = parse_obo("[Term]\nid: X:1\nname: cell\n\n[Term]\nid: Y:1\nname: cell\n\n"
                                "[Term]\nid: X:1\nname: again\n\n[Term]\nid: Z:1\nname: z\nis_a: Y:1\n");
    const auto onto = canonicalize(recs);
    ASSERT_EQ(onto.terms.size(), 3u);
    EXPECT_EQ(onto.terms[1].id.str(), "Cell2");
    EXPECT_EQ(onto.terms[2].relationships[0].target.str(), "Cell2");
    EXPECT_EQ(onto.warnings.size(), 1u);
}

TEST(CanonicalizeTest, DateSidecarFillsMissingDates) {
    auto recs = parse_obo("[Term]\nid: X:1\nname: a\n\n[Term]\nid: X:2\nname: b\ncreation_date: 2020-01-01\n");
    std::istringstream dates("# curie\tdate\nX:1\t2023-02-03\nX:2\t1999-01-01\n");
    apply_date_sidecar(recs, dates);
    EXPECT_EQ(*recs[0].created_date, "2023-02-03");
    EXPECT_EQ(*recs[1].created_date, "2020-01-01");
}

TEST(PredicateMapTest, ReadsTsv) {
    std::istringstream in("# comment\nRO:1\thas thing \r\nbad line\n");
    const auto m = read_predicate_map(in);
    ASSERT_EQ(m.size(), 1u);
    EXPECT_EQ(m.at("RO:1"), "has thing");
    EXPECT_EQ(default_predicate_labels().at("RO:0002100"), "has soma location");
}

TEST(IssueTest, BodyJoinsCommentsAndFallsBackToTitle) {
    const auto d = issue_to_document(nlohmann::json::parse(
        R"({"number": 5, "title": "NTR", "body": "first", "comments_data": [{"body": "second"}, {"body": ""}]})"));
    EXPECT_EQ(d.doc_id, "5");
    EXPECT_EQ(d.body, "first\n\nsecond");
    EXPECT_EQ(d.source, DocumentSource::github_issue);
    EXPECT_EQ(serialize_document(d), "NTR\n\nfirst\n\nsecond");

    const auto empty = issue_to_document(nlohmann::json::parse(R"({"number": 6, "title": "only title", "body": null})"));
    EXPECT_EQ(empty.body, "only title");
    EXPECT_THROW(issue_to_document(nlohmann::json::parse(R"({"title": "x"})")), ParseError);
}

TEST(IssueTest, DocumentJsonOmitsRaw) {
    const auto d = issue_to_document(nlohmann::json::parse(R"({"number": 9, "title": "t", "body": "b"})"));
    const auto j = to_json(d);
    EXPECT_FALSE(j.contains("raw"));
    auto back = document_from_json(j);
    EXPECT_EQ(back.doc_id, "9");
    EXPECT_EQ(back.body, "b");
}

TEST(IssueTest, ReadsShippedCache) {
    const auto docs = load_github_issues(GithubCacheSource{kData + "/toy/issues.jsonl"});
    ASSERT_EQ(docs.size(), 3u);
    EXPECT_EQ(docs[0].doc_id, "101");
    EXPECT_NE(docs[0].body.find("cystathioninuria"), std::string::npos);
}

// Serves canned responses keyed by URL and records every request.
class FakeTransport : public HttpTransport {
public:
    std::map<std::string, std::vector<HttpResponse>> routes;
    std::vector<std::string> seen;

    HttpResponse send(const HttpRequest& req) override {
        std::lock_guard lock(mu_);
        seen.push_back(req.url);
        auto& q = routes[req.url];
        if (q.empty()) return HttpResponse{404, {}, "", "no route"};
        auto r = q.front();
        if (q.size() > 1) q.erase(q.begin());
        return r;
    }

private:
    std::mutex mu_;
};

HttpResponse ok(const std::string& body) { return HttpResponse{200, {}, body, ""}; }

TEST(GithubRemoteTest, PaginatesSkipsPullRequestsAndCaches) {
    const auto cache = std::filesystem::temp_directory_path() / "ontoforge_issue_cache_test.jsonl";
    FakeTransport http;
    const std::string base = "https://api.test/repos/o/r/issues?state=all&per_page=2&page=";
    http.routes[base + "1"] = {ok(R"([{"number":1,"title":"a","body":"x","comments":1,"comments_url":"https://api.test/c1"},
                                     {"number":2,"title":"pr","pull_request":{}}])")};
    http.routes[base + "2"] = {ok(R"([{"number":3,"title":"b","body":"y","comments":0}])")};
    http.routes["https://api.test/c1?per_page=100"] = {ok(R"([{"body":"comment"}])")};

    GithubRemoteSource src;
    src.owner = "o";
    src.repo = "r";
    src.api_base = "https://api.test";
    src.per_page = 2;
    src.cache_path = cache;
    src.retry.sleep = [](std::chrono::milliseconds) {};
    const auto docs = load_github_issues(src, &http);
    ASSERT_EQ(docs.size(), 2u);
    EXPECT_EQ(docs[0].body, "x\n\ncomment");
    EXPECT_EQ(docs[1].doc_id, "3");
    EXPECT_EQ(read_issue_cache(cache).size(), 2u);
    std::filesystem::remove(cache);
}

TEST(GithubRemoteTest, HttpFailureIsFetchError) {
    FakeTransport http;
    GithubRemoteSource src;
    src.owner = "o";
    src.repo = "r";
    src.api_base = "https://api.test";
    src.retry.sleep = [](std::chrono::milliseconds) {};
    try {
        load_github_issues(src, &http);
        FAIL();
    } catch (const FetchError& e) {
        EXPECT_EQ(e.status(), 404);
    }
}

TEST(RetryTest, BacksOffThenSucceeds) {
    FakeTransport http;
    http.routes["u"] = {HttpResponse{503, {}, "", ""}, HttpResponse{0, {}, "", "reset"}, ok("done")};
    std::vector<long> delays;
    RetryPolicy p;
    p.sleep = [&](std::chrono::milliseconds d) { delays.push_back(d.count()); };
    const auto r = send_with_retry(http, HttpRequest{"GET", "u", {}, "", ""}, p);
    EXPECT_EQ(r.status, 200);
    EXPECT_EQ(delays, (std::vector<long>{500, 1000}));
}

TEST(RetryTest, HonorsRetryAfterAndGivesUp) {
    FakeTransport http;
    http.routes["u"] = {HttpResponse{429, {{"retry-after", "2"}}, "", ""}};
    std::vector<long> delays;
    RetryPolicy p;
    p.max_retries = 2;
    p.sleep = [&](std::chrono::milliseconds d) { delays.push_back(d.count()); };
    const auto r = send_with_retry(http, HttpRequest{"GET", "u", {}, "", ""}, p);
    EXPECT_EQ(r.status, 429);
    EXPECT_EQ(delays, (std::vector<long>{2000, 2000}));
    EXPECT_EQ(http.seen.size(), 3u);
}

TEST(RetryTest, ClientErrorsAreNotRetried) {
    FakeTransport http;
    http.routes["u"] = {HttpResponse{403, {}, "", ""}};
    RetryPolicy p;
    p.sleep = [](std::chrono::milliseconds) { FAIL() << "should not sleep"; };
    EXPECT_EQ(send_with_retry(http, HttpRequest{"GET", "u", {}, "", ""}, p).status, 403);
    http.routes["u"] = {HttpResponse{403, {{"x-ratelimit-remaining", "0"}}, "", ""}, ok("")};
    int sleeps = 0;
    p.sleep = [&](std::chrono::milliseconds) { ++sleeps; };
    EXPECT_EQ(send_with_retry(http, HttpRequest{"GET", "u", {}, "", ""}, p).status, 200);
    EXPECT_EQ(sleeps, 1);
}

} // namespace
} // namespace ontoforge
