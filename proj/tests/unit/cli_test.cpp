#include <gtest/gtest.h>

#include <chrono>
#include <csignal>
#include <filesystem>
#include <fstream>
#include <regex>
#include <spawn.h>
#include <sstream>
#include <sys/wait.h>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "collabgraph/persistence.hpp"
#include "generators.hpp"

extern char** environ;

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Outcome {
    int exit_code;
    std::string out;
};

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("collabgraph-cli-" + std::to_string(::getpid()) + "-" +
                ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::remove_all(dir_);
        fs::create_directories(dir_);
        state_ = dir_ / "engine.state";
    }
    void TearDown() override { fs::remove_all(dir_); }

    // Runs the CLI through the shell with stdout captured to a file.
    Outcome run(const std::string& args, const std::string& env = "") {
        const auto out = dir_ / "stdout.txt";
        const std::string command = env + " " + COLLABGRAPH_CLI + " " + args + " > " + out.string() + " 2> " +
                                    (dir_ / "stderr.txt").string();
        const int status = std::system(command.c_str());
        std::ifstream in(out);
        std::stringstream text;
        text << in.rdbuf();
        return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, text.str()};
    }

    Outcome run_with_state(const std::string& args) { return run("--state " + state_.string() + " " + args); }

    void ingest(const std::string& fixture) {
        ASSERT_EQ(run_with_state("ingest " + gen::fixture_path(fixture)).exit_code, 0);
    }

    fs::path dir_;
    fs::path state_;
};

}  // namespace

TEST_F(CliTest, IngestExitCodes) {
    auto ok = run_with_state("ingest " + gen::fixture_path("erdos_bowen.jsonl"));
    EXPECT_EQ(ok.exit_code, 0);
    EXPECT_EQ(json::parse(ok.out)["version"], 1);
    EXPECT_EQ(json::parse(run_with_state("ingest " + gen::fixture_path("erdos_bacon.jsonl")).out)["version"], 2);

    const auto bad = dir_ / "bad.jsonl";
    std::ofstream(bad) << "{\"type\":\"record\",\"id\":\"r\",\"authors\":[]}\n";
    EXPECT_EQ(run_with_state("ingest " + bad.string()).exit_code, 2);
    EXPECT_EQ(run_with_state("ingest " + (dir_ / "absent.jsonl").string()).exit_code, 2);
    EXPECT_EQ(run_with_state("ingest").exit_code, 1);
    EXPECT_EQ(collabgraph::load_state(state_).version, 2u);
}

TEST_F(CliTest, StateFromEnvironment) {
    const auto env = "COLLABGRAPH_STATE=" + state_.string();
    EXPECT_EQ(run("ingest " + gen::fixture_path("erdos_bowen.jsonl"), env).exit_code, 0);
    EXPECT_TRUE(fs::exists(state_));
    EXPECT_EQ(run("stats", env).exit_code, 0);
}

TEST_F(CliTest, ValidateExitCodes) {
    EXPECT_EQ(run_with_state("validate").exit_code, 2);
    ingest("erdos_bowen.jsonl");
    auto clean = run_with_state("validate --strict");
    EXPECT_EQ(clean.exit_code, 0);
    EXPECT_TRUE(json::parse(clean.out)["dangling_citations"].empty());
    const auto dangling = dir_ / "dangling.jsonl";
    std::ofstream(dangling) << "{\"type\":\"author\",\"id\":\"a\"}\n"
                               "{\"type\":\"record\",\"id\":\"r\",\"authors\":[\"a\"],\"cites\":[\"zz\"]}\n";
    EXPECT_EQ(run_with_state("validate " + dangling.string()).exit_code, 0);
    EXPECT_EQ(run_with_state("validate --strict " + dangling.string()).exit_code, 2);
    EXPECT_EQ(run_with_state("validate --bogus").exit_code, 1);
}

TEST_F(CliTest, StatsExitCodes) {
    EXPECT_EQ(run_with_state("stats").exit_code, 2);
    ingest("erdos_bowen.jsonl");
    auto ok = run_with_state("stats");
    EXPECT_EQ(ok.exit_code, 0);
    EXPECT_EQ(json::parse(ok.out)["authors"], 13);
    EXPECT_EQ(run_with_state("stats extra").exit_code, 1);
}

TEST_F(CliTest, ErdosExitCodes) {
    ingest("erdos_bowen.jsonl");
    auto ok = run_with_state("erdos --root erdos");
    EXPECT_EQ(ok.exit_code, 0);
    auto body = json::parse(ok.out);
    EXPECT_EQ(body["distances"]["wilson"], 1);
    EXPECT_EQ(body["distances"]["bowen"], 2);
    EXPECT_EQ(run_with_state("erdos --root nobody").exit_code, 2);
    EXPECT_EQ(run_with_state("erdos").exit_code, 1);
    EXPECT_EQ(run_with_state("erdos --root erdos --kind films").exit_code, 1);
}

TEST_F(CliTest, PathExitCodes) {
    ingest("erdos_bowen.jsonl");
    auto ok = run_with_state("path --from erdos --to bowen");
    EXPECT_EQ(ok.exit_code, 0);
    EXPECT_EQ(json::parse(ok.out)["paths"][0]["authors"], json({"erdos", "wilson", "bowen"}));
    EXPECT_EQ(run_with_state("path --from erdos --to ghost").exit_code, 2);
    EXPECT_EQ(run_with_state("path --from erdos").exit_code, 1);
    EXPECT_EQ(run_with_state("path --from erdos --to bowen --max 0").exit_code, 1);
}

TEST_F(CliTest, EgoExitCodes) {
    ingest("erdos_bowen.jsonl");
    auto ok = run_with_state("ego --author bowen --k 2");
    EXPECT_EQ(ok.exit_code, 0);
    EXPECT_EQ(json::parse(ok.out)["ego"]["neighbours"].size(), 2u);
    EXPECT_EQ(run_with_state("ego --author bowen --k 0").exit_code, 1);
    EXPECT_EQ(run_with_state("ego --author nobody").exit_code, 2);
}

TEST_F(CliTest, ExportExitCodes) {
    ingest("erdos_bowen.jsonl");
    const auto out = dir_ / "graph.graphml";
    EXPECT_EQ(run_with_state("export --format graphml --out " + out.string()).exit_code, 0);
    EXPECT_TRUE(fs::file_size(out) > 0);
    auto dot = run_with_state("export --format dot --out -");
    EXPECT_EQ(dot.exit_code, 0);
    EXPECT_NE(dot.out.find("\"erdos\" -- \"wilson\" [weight=1]"), std::string::npos);
    auto layout = run_with_state("export --format json --out - --layout force --seed 2 --iterations 30");
    EXPECT_EQ(layout.exit_code, 0);
    EXPECT_EQ(json::parse(layout.out)["idiom"], "force");
    EXPECT_EQ(run_with_state("export --format svg --out -").exit_code, 1);
    EXPECT_EQ(run_with_state("export --format dot").exit_code, 1);
    EXPECT_EQ(run_with_state("export --format dot --out " + (dir_ / "no/such/dir.dot").string()).exit_code, 2);
}

TEST_F(CliTest, SnapshotExitCodes) {
    ingest("erdos_bowen.jsonl");
    const auto out = dir_ / "y1977.jsonl";
    EXPECT_EQ(run_with_state("snapshot --year 1977 --out " + out.string()).exit_code, 0);
    std::ifstream in(out);
    auto corpus = collabgraph::parse_corpus(in);
    ASSERT_EQ(corpus.records().size(), 1u);
    EXPECT_TRUE(corpus.records().contains("erdos-wilson-1977"));
    EXPECT_EQ(run_with_state("snapshot").exit_code, 1);
    EXPECT_EQ(run_with_state("snapshot --year nineteen").exit_code, 1);
}

TEST_F(CliTest, MergeExitCodes) {
    ingest("erdos_bowen.jsonl");
    auto ok = run_with_state("merge --into wilson parnas");
    EXPECT_EQ(ok.exit_code, 0);
    EXPECT_EQ(json::parse(ok.out)["authors"], 12);
    EXPECT_EQ(run_with_state("merge --into wilson ghost").exit_code, 2);
    EXPECT_EQ(run_with_state("merge --into wilson wilson").exit_code, 1);
    EXPECT_EQ(run_with_state("merge wilson").exit_code, 1);
}

TEST_F(CliTest, UnknownSubcommandIsUsageError) {
    EXPECT_EQ(run("").exit_code, 1);
    EXPECT_EQ(run("frobnicate").exit_code, 1);
    EXPECT_EQ(run("--help").exit_code, 0);
}

TEST_F(CliTest, ServeAnswersAndPersistsUploads) {
    ingest("erdos_bowen.jsonl");
    const auto log = dir_ / "serve.log";
    const std::string command = std::string("exec ") + COLLABGRAPH_CLI + " --state " + state_.string() +
                                " serve --port 0 2> " + log.string();
    pid_t pid = 0;
    const char* argv[] = {"/bin/sh", "-c", command.c_str(), nullptr};
    ASSERT_EQ(posix_spawn(&pid, "/bin/sh", nullptr, nullptr, const_cast<char**>(argv), environ), 0);

    int port = 0;
    const std::regex listening(R"(listening on [^:]+:(\d+))");
    for (int attempt = 0; attempt < 200 && port == 0; ++attempt) {
        std::this_thread::sleep_for(std::chrono::milliseconds(25));
        std::ifstream in(log);
        std::stringstream text;
        text << in.rdbuf();
        std::smatch match;
        const auto s = text.str();
        if (std::regex_search(s, match, listening)) port = std::stoi(match[1]);
    }
    ASSERT_GT(port, 0) << "server did not start";

    httplib::Client client("127.0.0.1", port);
    auto res = client.Get("/distance?root=erdos");
    ASSERT_TRUE(res);
    EXPECT_EQ(res->status, 200);
    EXPECT_EQ(json::parse(res->body)["distances"]["bowen"], 2);

    std::ifstream bacon(gen::fixture_path("erdos_bacon.jsonl"));
    std::stringstream corpus;
    corpus << bacon.rdbuf();
    auto upload = client.Post("/corpus", corpus.str(), "application/x-ndjson");
    ASSERT_TRUE(upload);
    EXPECT_EQ(upload->status, 200);

    ::kill(pid, SIGTERM);
    int status = 0;
    ::waitpid(pid, &status, 0);
    EXPECT_TRUE(WIFEXITED(status));
    EXPECT_EQ(WEXITSTATUS(status), 0);
    EXPECT_EQ(collabgraph::load_state(state_).version, 2u);
    EXPECT_TRUE(collabgraph::load_state(state_).corpus.has_author("bacon"));
}
