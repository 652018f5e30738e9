#include <gtest/gtest.h>

#include <json.hpp>

#include "collabgraph/corpus.hpp"
#include "collabgraph/service.hpp"
#include "generators.hpp"

using namespace collabgraph;
using nlohmann::json;

namespace {

std::string fixture_text(const std::string& name) { return serialize_corpus(gen::load_fixture(name)); }

class ServiceTest : public ::testing::Test {
protected:
    void SetUp() override { state_.replace_corpus(gen::load_fixture("erdos_bowen.jsonl")); }

    ApiResponse get(const std::string& path, std::map<std::string, std::string> query = {}) {
        return handle_request(state_, {"GET", path, std::move(query), {}});
    }

    json get_json(const std::string& path, std::map<std::string, std::string> query = {}, int status = 200) {
        auto response = get(path, std::move(query));
        EXPECT_EQ(response.status, status) << path << " -> " << response.body;
        return json::parse(response.body);
    }

    EngineState state_;
};

}  // namespace

TEST(DistanceRoute, TwoRecordFixture) {
    EngineState state;
    state.replace_corpus(gen::load_fixture("two_records.jsonl"));
    auto response = handle_request(state, {"GET", "/distance", {{"root", "erdos"}}, {}});
    EXPECT_EQ(response.status, 200);
    EXPECT_NE(response.body.find("\"wilson\":1,\"bowen\":2"), std::string::npos) << response.body;
}

TEST_F(ServiceTest, DistanceFromErdos) {
    auto body = get_json("/distance", {{"root", "erdos"}});
    EXPECT_EQ(body["distances"]["wilson"], 1);
    EXPECT_EQ(body["distances"]["bowen"], 2);
    EXPECT_EQ(body["version"], 1);
    EXPECT_EQ(body["distances"]["erdos"], 0);
    EXPECT_FALSE(body["distances"].contains("parnas"));
}

TEST_F(ServiceTest, UnknownAuthorMetrics) {
    auto body = get_json("/authors/nobody/metrics", {}, 404);
    EXPECT_EQ(body["code"], "unknown_author");
    EXPECT_TRUE(body["message"].is_string());
    EXPECT_EQ(body["version"], 1);
}

TEST_F(ServiceTest, EgoRejectsZeroK) {
    EXPECT_EQ(get_json("/ego", {{"author", "bowen"}, {"k", "0"}}, 400)["code"], "bad_parameter");
    EXPECT_EQ(get_json("/ego", {{"author", "bowen"}, {"k", "-3"}}, 400)["code"], "bad_parameter");
    EXPECT_EQ(get_json("/ego", {{"author", "bowen"}, {"k", "two"}}, 400)["code"], "bad_parameter");
    EXPECT_EQ(get_json("/ego", {}, 400)["code"], "bad_parameter");
}

TEST_F(ServiceTest, EgoBodyCarriesLayout) {
    auto body = get_json("/ego", {{"author", "bowen"}, {"k", "3"}});
    EXPECT_EQ(body["ego"]["center"], "bowen");
    EXPECT_EQ(body["ego"]["neighbours"].size(), 3u);
    EXPECT_EQ(body["ego"]["neighbours"][0]["id"], "liu");
    EXPECT_EQ(body["layout"]["idiom"], "ego");
    EXPECT_EQ(body["layout"]["nodes"].size(), 4u);
}

TEST_F(ServiceTest, UnknownRouteAndMethod) {
    EXPECT_EQ(get_json("/nowhere", {}, 404)["code"], "unknown_route");
    auto response = handle_request(state_, {"POST", "/distance", {{"root", "erdos"}}, {}});
    EXPECT_EQ(response.status, 405);
    EXPECT_EQ(get("/corpus").status, 405);
}

TEST_F(ServiceTest, AuthorSearchAndDetail) {
    auto hits = get_json("/authors", {{"q", "wilson"}});
    ASSERT_EQ(hits["authors"].size(), 1u);
    EXPECT_EQ(hits["authors"][0]["name"], "Robin J. Wilson");
    EXPECT_EQ(get_json("/authors", {{"q", "R. J. WIL"}})["authors"].size(), 1u);
    auto detail = get_json("/authors/wilson");
    EXPECT_EQ(detail["author"]["coauthors"], 3);
    EXPECT_EQ(detail["author"]["records"].size(), 3u);
    EXPECT_EQ(get_json("/authors/nobody", {}, 404)["code"], "unknown_author");
}

TEST_F(ServiceTest, MetricsModes) {
    auto cumulative = get_json("/authors/wilson/metrics");
    EXPECT_EQ(cumulative["series"]["mode"], "cumulative");
    EXPECT_EQ(cumulative["series"]["points"].back()["papers"], 3);
    auto annual = get_json("/authors/wilson/metrics", {{"mode", "annual"}});
    EXPECT_EQ(annual["series"]["points"].back()["papers"], 1);
    EXPECT_EQ(annual["citation_source"], "in_corpus_cites");
    EXPECT_EQ(get_json("/authors/wilson/metrics", {{"mode", "weekly"}}, 400)["code"], "bad_parameter");
}

TEST_F(ServiceTest, Paths) {
    auto body = get_json("/paths", {{"from", "erdos"}, {"to", "bowen"}});
    EXPECT_EQ(body["distance"], 2);
    EXPECT_EQ(body["paths"][0]["authors"], json({"erdos", "wilson", "bowen"}));
    auto none = get_json("/paths", {{"from", "erdos"}, {"to", "parnas"}});
    EXPECT_TRUE(none["distance"].is_null());
    EXPECT_TRUE(none["paths"].empty());
    EXPECT_EQ(get_json("/paths", {{"from", "erdos"}, {"to", "bowen"}, {"max", "0"}}, 400)["code"], "bad_parameter");
    EXPECT_EQ(get_json("/paths", {{"from", "erdos"}, {"to", "ghost"}}, 404)["code"], "unknown_author");
}

TEST_F(ServiceTest, CitersGenealogyCommunitiesForce) {
    auto citers = get_json("/citers", {{"author", "wilson"}});
    EXPECT_EQ(citers["citers"], json::parse(R"([{"id":"bowen","count":2}])"));
    EXPECT_EQ(citers["layout"]["idiom"], "citation");

    auto lone = get_json("/genealogy", {{"root", "bowen"}});
    EXPECT_EQ(lone["layout"]["nodes"].size(), 1u);

    auto communities = get_json("/communities", {{"seed", "4"}});
    EXPECT_EQ(communities["clusters"].size(), 13u);
    EXPECT_TRUE(communities["modularity"].is_number());

    auto force = get_json("/layout/force", {{"seed", "1"}, {"iterations", "50"}, {"pins", "erdos:1.5:-2"}});
    const auto& nodes = force["layout"]["nodes"];
    auto erdos = std::find_if(nodes.begin(), nodes.end(), [](const json& n) { return n["id"] == "erdos"; });
    ASSERT_NE(erdos, nodes.end());
    EXPECT_EQ((*erdos)["x"], 1.5);
    EXPECT_EQ((*erdos)["y"], -2.0);
    EXPECT_EQ(get_json("/layout/force", {{"pins", "erdos:1"}}, 400)["code"], "bad_parameter");
    EXPECT_EQ(get_json("/layout/force", {{"pins", "ghost:1:1"}}, 404)["code"], "unknown_author");
}

TEST_F(ServiceTest, KindFilterOnDistance) {
    handle_request(state_, {"POST", "/corpus", {}, fixture_text("erdos_bacon.jsonl")});
    auto publications = get_json("/distance", {{"root", "erdos"}, {"kind", "publication"}});
    EXPECT_EQ(publications["distances"]["morgan"], 2);
    EXPECT_FALSE(publications["distances"].contains("reyes"));
    auto credits = get_json("/distance", {{"root", "bacon"}, {"kind", "credit"}});
    EXPECT_EQ(credits["distances"]["morgan"], 1);
    EXPECT_EQ(get_json("/distance", {{"root", "erdos"}, {"kind", "films"}}, 400)["code"], "bad_parameter");
}

TEST_F(ServiceTest, ChurchGenealogyGrouped) {
    handle_request(state_, {"POST", "/corpus", {}, fixture_text("church_genealogy.jsonl")});
    auto body = get_json("/genealogy", {{"root", "church"}, {"threshold", "3"}});
    bool grouped = false;
    for (const auto& n : body["layout"]["nodes"]) grouped |= n["id"] == "institution:church/Princeton";
    EXPECT_TRUE(grouped);
}

TEST_F(ServiceTest, UploadReplacesAndBumpsVersion) {
    auto response = handle_request(state_, {"POST", "/corpus", {}, fixture_text("erdos_bacon.jsonl")});
    EXPECT_EQ(response.status, 200);
    auto body = json::parse(response.body);
    EXPECT_EQ(body["version"], 2);
    EXPECT_EQ(body["authors"], 5);
    EXPECT_EQ(get_json("/authors/bowen", {}, 404)["version"], 2);
}

TEST_F(ServiceTest, BadUploadKeepsState) {
    auto response = handle_request(state_, {"POST", "/corpus", {}, "{\"type\":\"record\",\"id\":\"r\",\"authors\":[]}\n"});
    EXPECT_EQ(response.status, 422);
    auto body = json::parse(response.body);
    EXPECT_EQ(body["code"], "malformed_record");
    EXPECT_EQ(body["version"], 1);
    EXPECT_EQ(json::parse(get("/distance", {{"root", "erdos"}}).body)["version"], 1);

    auto dangling = handle_request(state_, {"POST", "/corpus", {}, "{\"type\":\"record\",\"id\":\"r\",\"authors\":[\"x\"]}\n"});
    EXPECT_EQ(dangling.status, 422);
    EXPECT_EQ(json::parse(dangling.body)["code"], "dangling_author");
}

TEST_F(ServiceTest, ReadsAreIdempotent) {
    const std::vector<std::pair<std::string, std::map<std::string, std::string>>> requests{
        {"/distance", {{"root", "erdos"}}},          {"/paths", {{"from", "erdos"}, {"to", "bowen"}}},
        {"/ego", {{"author", "bowen"}}},             {"/communities", {{"seed", "2"}}},
        {"/layout/force", {{"iterations", "20"}}}, {"/authors/wilson/metrics", {}},
    };
    for (const auto& [path, query] : requests) {
        const auto first = get(path, query);
        for (int i = 0; i < 5; ++i) ASSERT_EQ(get(path, query).body, first.body) << path;
    }
    EXPECT_EQ(state_.current()->version(), 1u);
}

TEST(EngineStateTest, PersistedRoundTrip) {
    EngineState state;
    EXPECT_EQ(state.current()->version(), 0u);
    state.replace_corpus(gen::load_fixture("erdos_bowen.jsonl"));
    auto saved = state.persisted();
    EngineState restored(saved);
    EXPECT_EQ(restored.persisted(), saved);
    EXPECT_EQ(&restored.current()->coauthor_graph(KindFilter::all), &restored.current()->coauthor_graph(KindFilter::all));
}
