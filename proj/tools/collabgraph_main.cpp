#include <csignal>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <pthread.h>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "collabgraph/collab_graph.hpp"
#include "collabgraph/corpus.hpp"
#include "collabgraph/error.hpp"
#include "collabgraph/export.hpp"
#include "collabgraph/community.hpp"
#include "collabgraph/layout.hpp"
#include "collabgraph/persistence.hpp"
#include "collabgraph/service.hpp"

namespace fs = std::filesystem;
using namespace collabgraph;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr int kSuccess = 0;
constexpr int kUsageError = 1;
constexpr int kDataError = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

PersistedState load_existing(const fs::path& path) {
    if (!fs::exists(path))
        throw Error(ErrorCode::io_error,
                    "no engine state at " + path.string() + "; run `collabgraph ingest <file>` first");
    return load_state(path);
}

Corpus read_corpus_file(const std::string& file) {
    if (file == "-") return parse_corpus(std::cin);
    std::ifstream in(file, std::ios::binary);
    if (!in) throw Error(ErrorCode::io_error, "cannot open " + file);
    return parse_corpus(in);
}

void write_output(const std::string& out, const std::string& text) {
    if (out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream file(out, std::ios::binary | std::ios::trunc);
    if (!file || !(file << text)) throw Error(ErrorCode::io_error, "cannot write " + out);
}

int status_to_exit(int status) {
    if (status == 200) return kSuccess;
    return status == 400 ? kUsageError : kDataError;
}

// Runs one read route against the stored state and prints its body.
int query(const fs::path& state_path, std::string path, std::map<std::string, std::string> params) {
    EngineState state(load_existing(state_path));
    const auto response = handle_request(state, {"GET", std::move(path), std::move(params), {}});
    auto body = ordered_json::parse(response.body);
    if (response.status != 200) {
        std::cerr << "error: " << body.value("message", "request failed") << " (" << body.value("code", "") << ")\n";
    } else {
        body.erase("version");
        std::cout << body.dump(2) << '\n';
    }
    return status_to_exit(response.status);
}

ordered_json report_json(const ValidationReport& report) {
    auto dangling = ordered_json::array();
    for (const auto& d : report.dangling_citations) dangling.push_back({{"record", d.citing}, {"cites", d.cited}});
    return {{"dangling_citations", std::move(dangling)},
            {"authors_without_records", report.authors_without_records},
            {"advisor_cycles", report.advisor_cycles}};
}

std::size_t count_components(const CollaborationGraph& graph, std::size_t& largest) {
    std::vector<VertexIndex> parent(graph.vertex_count());
    std::iota(parent.begin(), parent.end(), 0u);
    auto find = [&](VertexIndex v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    for (const auto& e : graph.edges()) parent[find(e.a)] = find(e.b);
    std::map<VertexIndex, std::size_t> sizes;
    for (VertexIndex v = 0; v < graph.vertex_count(); ++v) ++sizes[find(v)];
    largest = 0;
    for (const auto& [root, size] : sizes) largest = std::max(largest, size);
    return sizes.size();
}

int run_stats(const fs::path& state_path) {
    const auto state = load_existing(state_path);
    const auto& corpus = state.corpus;
    std::size_t publications = 0;
    std::size_t credits = 0;
    std::size_t undated = 0;
    for (const auto& [id, record] : corpus.records()) {
        (record.kind == RecordKind::publication ? publications : credits) += 1;
        undated += record.year ? 0 : 1;
    }
    ordered_json graphs = ordered_json::object();
    for (auto kind : {KindFilter::all, KindFilter::publication, KindFilter::credit}) {
        const auto graph = build_coauthor_graph(corpus, kind);
        std::size_t largest = 0;
        const auto components = count_components(graph, largest);
        graphs[std::string(to_string(kind))] = {{"edges", graph.edge_count()},
                                                {"total_weight", graph.total_weight()},
                                                {"components", components},
                                                {"largest_component", largest}};
    }
    const auto citations = build_citation_graph(corpus);
    const ordered_json out{{"version", state.version},
                           {"authors", corpus.authors().size()},
                           {"records", {{"publication", publications}, {"credit", credits}, {"undated", undated}}},
                           {"coauthor_graphs", std::move(graphs)},
                           {"citation_edges", citations.edge_count()},
                           {"self_citation_edges", citations.self_citations().size()}};
    std::cout << out.dump(2) << '\n';
    return kSuccess;
}

std::uint64_t next_version(const fs::path& path) {
    return fs::exists(path) ? load_state(path).version + 1 : 1;
}

int run_ingest(const fs::path& state_path, const std::string& file) {
    auto corpus = read_corpus_file(file);
    const auto report = validate(corpus);
    const PersistedState state{std::move(corpus), next_version(state_path)};
    save_state(state, state_path);
    const ordered_json out{{"state", state_path.string()},
                           {"version", state.version},
                           {"authors", state.corpus.authors().size()},
                           {"records", state.corpus.records().size()},
                           {"report", report_json(report)}};
    std::cout << out.dump(2) << '\n';
    return kSuccess;
}

int run_validate(const fs::path& state_path, const std::string& file, bool strict) {
    const auto corpus = file.empty() ? load_existing(state_path).corpus : read_corpus_file(file);
    const auto report = validate(corpus);
    std::cout << report_json(report).dump(2) << '\n';
    return strict && !report.empty() ? kDataError : kSuccess;
}

int run_merge(const fs::path& state_path, const std::string& canonical, const std::vector<std::string>& duplicates) {
    auto state = load_existing(state_path);
    state.corpus = merge_authors(state.corpus, canonical, duplicates);
    ++state.version;
    save_state(state, state_path);
    std::cout << ordered_json{{"version", state.version}, {"authors", state.corpus.authors().size()}}.dump(2) << '\n';
    return kSuccess;
}

struct ExportArgs {
    std::string format;
    std::string out;
    std::string kind = "all";
    std::string layout = "none";
    std::uint64_t seed = 0;
    std::uint32_t iterations = 300;
};

int run_export(const fs::path& state_path, const ExportArgs& args) {
    const auto format = parse_export_format(args.format);
    const auto kind = parse_kind_filter(args.kind);
    if (!kind) throw UsageError("--kind must be publication, credit or all");
    const auto state = load_existing(state_path);
    const auto graph = build_coauthor_graph(state.corpus, *kind);
    const auto clusters = detect_communities(graph, args.seed);
    std::string text;
    if (args.layout == "force") {
        text = export_layout(force_layout(graph, clusters, {.seed = args.seed, .iterations = args.iterations}), format);
    } else {
        text = export_graph(graph, format, {.clusters = &clusters});
    }
    write_output(args.out, text);
    return kSuccess;
}

int run_snapshot(const fs::path& state_path, int year, const std::string& out) {
    const auto state = load_existing(state_path);
    write_output(out, serialize_corpus(snapshot_by_year(state.corpus, year)));
    return kSuccess;
}

int run_serve(const fs::path& state_path, const std::string& host, int port) {
    // Block termination signals before any thread starts so only the waiter sees them.
    sigset_t signals;
    sigemptyset(&signals);
    sigaddset(&signals, SIGINT);
    sigaddset(&signals, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &signals, nullptr);

    EngineState state(fs::exists(state_path) ? load_state(state_path) : PersistedState{});
    HttpService service(state, [&] { save_state(state.persisted(), state_path); });
    const int bound = service.bind(host, port);
    if (bound < 0) throw Error(ErrorCode::io_error, "cannot bind " + host + ":" + std::to_string(port));
    std::cerr << "listening on " << host << ':' << bound << " (state " << state_path.string() << ", version "
              << state.current()->version() << ")\n";

    std::thread waiter([&] {
        int received = 0;
        sigwait(&signals, &received);
        service.stop();
    });
    const bool clean = service.run();
    if (waiter.joinable()) {
        // run() may return on its own; wake the waiter so it can exit.
        pthread_kill(waiter.native_handle(), SIGTERM);
        waiter.join();
    }
    return clean ? kSuccess : kDataError;
}

int classify(const Error& e) {
    switch (e.code()) {
        case ErrorCode::invalid_argument:
        case ErrorCode::unsupported_format:
            return kUsageError;
        default:
            return kDataError;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Collaboration-graph analytics: co-author distances, paths, metrics, communities and layouts."};
    app.require_subcommand(1);
    std::string state_path = default_state_path().string();
    app.add_option("--state", state_path, "Engine state file (default: $COLLABGRAPH_STATE or ./collabgraph.state)");

    std::string ingest_file;
    auto* ingest = app.add_subcommand("ingest", "Load a corpus file (or - for stdin) as the new engine state");
    ingest->add_option("file", ingest_file, "Corpus interchange file")->required();

    std::string validate_file;
    bool strict = false;
    auto* validate_cmd = app.add_subcommand("validate", "Report dangling citations, idle authors and advisor cycles");
    validate_cmd->add_option("file", validate_file, "Corpus file to check instead of the stored state");
    validate_cmd->add_flag("--strict", strict, "Exit with status 2 when the report is not empty");

    auto* stats = app.add_subcommand("stats", "Summarise the stored corpus and its graphs");

    std::string root;
    std::string kind = "all";
    auto* erdos = app.add_subcommand("erdos", "Collaborative distance from a root author");
    erdos->add_option("--root", root, "Root author id")->required();
    erdos->add_option("--kind", kind, "publication, credit or all")->check(CLI::IsMember({"publication", "credit", "all"}));

    std::string from;
    std::string to;
    std::size_t max_paths = 6;
    std::size_t slack = 1;
    auto* path = app.add_subcommand("path", "Shortest and near-shortest co-author paths");
    path->add_option("--from", from, "First author id")->required();
    path->add_option("--to", to, "Second author id")->required();
    path->add_option("--max", max_paths, "Maximum number of paths")->check(CLI::Range(1, 100));
    path->add_option("--slack", slack, "Extra hops allowed beyond the shortest")->check(CLI::Range(0, 10));
    path->add_option("--kind", kind, "publication, credit or all")->check(CLI::IsMember({"publication", "credit", "all"}));

    std::string author;
    std::size_t k = 30;
    auto* ego = app.add_subcommand("ego", "Top co-authors of an author with the radial layout");
    ego->add_option("--author", author, "Centre author id")->required();
    ego->add_option("--k", k, "Number of co-authors kept")->check(CLI::Range(1, 100000));
    ego->add_option("--kind", kind, "publication, credit or all")->check(CLI::IsMember({"publication", "credit", "all"}));

    ExportArgs export_args;
    auto* export_cmd = app.add_subcommand("export", "Write the co-author graph as DOT, GraphML or JSON");
    export_cmd->add_option("--format", export_args.format, "dot, graphml or json")->required();
    export_cmd->add_option("--out", export_args.out, "Output file, - for stdout")->required();
    export_cmd->add_option("--kind", export_args.kind, "publication, credit or all");
    export_cmd->add_option("--layout", export_args.layout, "none or force")->check(CLI::IsMember({"none", "force"}));
    export_cmd->add_option("--seed", export_args.seed, "Seed for clustering and layout");
    export_cmd->add_option("--iterations", export_args.iterations, "Force layout iterations")->check(CLI::Range(1, 10000));

    int port = 8080;
    std::string host = "127.0.0.1";
    auto* serve = app.add_subcommand("serve", "Serve the HTTP query API");
    serve->add_option("--port", port, "TCP port, 0 for any free port")->check(CLI::Range(0, 65535));
    serve->add_option("--host", host, "Address to bind");

    int year = 0;
    std::string snapshot_out = "-";
    auto* snapshot = app.add_subcommand("snapshot", "Write the corpus as it stood at the end of a year");
    snapshot->add_option("--year", year, "Cutoff year, inclusive")->required();
    snapshot->add_option("--out", snapshot_out, "Output file, - for stdout");

    std::string canonical;
    std::vector<std::string> duplicates;
    auto* merge = app.add_subcommand("merge", "Fold duplicate author ids into one canonical author");
    merge->add_option("--into", canonical, "Canonical author id")->required();
    merge->add_option("duplicates", duplicates, "Duplicate author ids")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kSuccess : kUsageError;
    }

    const fs::path state_file(state_path);
    try {
        if (*ingest) return run_ingest(state_file, ingest_file);
        if (*validate_cmd) return run_validate(state_file, validate_file, strict);
        if (*stats) return run_stats(state_file);
        if (*erdos) return query(state_file, "/distance", {{"root", root}, {"kind", kind}});
        if (*path)
            return query(state_file, "/paths",
                         {{"from", from},
                          {"to", to},
                          {"max", std::to_string(max_paths)},
                          {"slack", std::to_string(slack)},
                          {"kind", kind}});
        if (*ego) return query(state_file, "/ego", {{"author", author}, {"k", std::to_string(k)}, {"kind", kind}});
        if (*export_cmd) return run_export(state_file, export_args);
        if (*serve) return run_serve(state_file, host, port);
        if (*snapshot) return run_snapshot(state_file, year, snapshot_out);
        if (*merge) return run_merge(state_file, canonical, duplicates);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << " (" << to_string(e.code()) << ")\n";
        return classify(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kDataError;
    }
    return kUsageError;
}
