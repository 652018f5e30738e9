#include "collabgraph/service.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include <httplib.h>
#include <json.hpp>

#include "collabgraph/community.hpp"
#include "collabgraph/error.hpp"
#include "collabgraph/export.hpp"
#include "collabgraph/layout.hpp"
#include "collabgraph/metrics.hpp"
#include "collabgraph/pathfinder.hpp"

namespace collabgraph {

using ordered_json = nlohmann::ordered_json;

const CollaborationGraph& EngineSnapshot::coauthor_graph(KindFilter kind) const {
    const auto slot = static_cast<std::size_t>(kind);
    std::call_once(graph_once_[slot], [&] { graphs_[slot] = build_coauthor_graph(corpus_, kind); });
    return graphs_[slot];
}

const CitationGraph& EngineSnapshot::citation_graph() const {
    std::call_once(citation_once_, [&] { citation_ = build_citation_graph(corpus_); });
    return citation_;
}

EngineState::EngineState() : snapshot_(std::make_shared<EngineSnapshot>(Corpus{}, 0)) {}

EngineState::EngineState(PersistedState state)
    : snapshot_(std::make_shared<EngineSnapshot>(std::move(state.corpus), state.version)) {}

std::shared_ptr<const EngineSnapshot> EngineState::current() const {
    std::shared_lock lock(mutex_);
    return snapshot_;
}

std::uint64_t EngineState::replace_corpus(Corpus corpus) {
    std::lock_guard writer(writer_);
    const auto version = current()->version() + 1;
    auto next = std::make_shared<const EngineSnapshot>(std::move(corpus), version);
    std::unique_lock lock(mutex_);
    snapshot_ = std::move(next);
    return version;
}

PersistedState EngineState::persisted() const {
    auto snapshot = current();
    return {snapshot->corpus(), snapshot->version()};
}

namespace {

// Raised inside handlers and turned into an error body.
struct ApiError {
    int status;
    std::string code;
    std::string message;
};

[[noreturn]] void bad_parameter(const std::string& message) { throw ApiError{400, "bad_parameter", message}; }

const std::string* param(const ApiRequest& request, const std::string& name) {
    auto it = request.query.find(name);
    return it == request.query.end() ? nullptr : &it->second;
}

const std::string& required(const ApiRequest& request, const std::string& name) {
    const auto* value = param(request, name);
    if (!value || value->empty()) bad_parameter("missing parameter \"" + name + "\"");
    return *value;
}

template <typename T>
T number(const ApiRequest& request, const std::string& name, T fallback, T minimum, T maximum) {
    const auto* value = param(request, name);
    if (!value) return fallback;
    T parsed{};
    const auto* end = value->data() + value->size();
    auto [ptr, ec] = std::from_chars(value->data(), end, parsed);
    if (value->empty() || ec != std::errc{} || ptr != end || parsed < minimum || parsed > maximum) {
        bad_parameter("parameter \"" + name + "\" must be an integer in [" + std::to_string(minimum) + ", " +
                      std::to_string(maximum) + "]");
    }
    return parsed;
}

KindFilter kind_param(const ApiRequest& request) {
    const auto* value = param(request, "kind");
    if (!value) return KindFilter::all;
    auto kind = parse_kind_filter(*value);
    if (!kind) bad_parameter("parameter \"kind\" must be publication, credit or all");
    return *kind;
}

void require_author(const EngineSnapshot& snapshot, const std::string& id) {
    if (!snapshot.corpus().has_author(id))
        throw ApiError{404, "unknown_author", "unknown author " + id};
}

std::string lower(std::string_view text) {
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

ordered_json author_search(const EngineSnapshot& snapshot, const ApiRequest& request) {
    const auto* q = param(request, "q");
    const auto needle = lower(q ? *q : "");
    auto matches = ordered_json::array();
    for (const auto& [id, author] : snapshot.corpus().authors()) {
        bool hit = lower(author.display_name).find(needle) != std::string::npos ||
                   lower(id).find(needle) != std::string::npos;
        for (const auto& alias : author.aliases) hit = hit || lower(alias).find(needle) != std::string::npos;
        if (hit) matches.push_back({{"id", id}, {"name", author.display_name}});
    }
    return {{"authors", std::move(matches)}};
}

ordered_json author_detail(const EngineSnapshot& snapshot, const std::string& id) {
    require_author(snapshot, id);
    const auto& author = snapshot.corpus().authors().at(id);
    auto records = ordered_json::array();
    for (const auto& [record_id, record] : snapshot.corpus().records()) {
        if (std::find(record.author_ids.begin(), record.author_ids.end(), id) != record.author_ids.end())
            records.push_back(record_id);
    }
    const auto& graph = snapshot.coauthor_graph(KindFilter::all);
    ordered_json out{{"id", author.id},
                     {"name", author.display_name},
                     {"aliases", author.aliases},
                     {"institution", author.institution ? ordered_json(*author.institution) : ordered_json()},
                     {"advisor", author.advisor_id ? ordered_json(*author.advisor_id) : ordered_json()},
                     {"records", std::move(records)},
                     {"coauthors", graph.degree(graph.require(id))}};
    return {{"author", std::move(out)}};
}

ordered_json author_metrics(const EngineSnapshot& snapshot, const std::string& id, const ApiRequest& request) {
    require_author(snapshot, id);
    auto mode = SeriesMode::cumulative;
    if (const auto* text = param(request, "mode")) {
        auto parsed = parse_series_mode(*text);
        if (!parsed) bad_parameter("parameter \"mode\" must be annual or cumulative");
        mode = *parsed;
    }
    const auto indices = author_indices(snapshot.corpus(), id);
    const auto series = yearly_series(snapshot.corpus(), id, mode);
    auto points = ordered_json::array();
    for (const auto& p : series.points)
        points.push_back({{"year", p.year}, {"papers", p.papers}, {"citations", p.citations}});
    return {{"author", id},
            {"h", indices.h},
            {"g", indices.g},
            {"i10", indices.i10},
            {"records", indices.record_count},
            {"citation_source", to_string(indices.source)},
            {"series",
             {{"mode", to_string(series.mode)},
              {"points", std::move(points)},
              {"undated_records", series.undated_records},
              {"undated_citations", series.undated_citations}}}};
}

ordered_json distance(const EngineSnapshot& snapshot, const ApiRequest& request) {
    const auto& root = required(request, "root");
    require_author(snapshot, root);
    const auto kind = kind_param(request);
    const auto map = collaborative_distance(snapshot.coauthor_graph(kind), root);
    // Table order: by distance, then id.
    std::vector<std::pair<std::uint32_t, std::string_view>> rows;
    for (const auto& [id, hops] : map.distances()) rows.emplace_back(hops, id);
    std::sort(rows.begin(), rows.end());
    ordered_json distances = ordered_json::object();
    for (const auto& [hops, id] : rows) distances[std::string(id)] = hops;
    return {{"root", root}, {"kind", to_string(kind)}, {"distances", std::move(distances)}};
}

ordered_json paths(const EngineSnapshot& snapshot, const ApiRequest& request) {
    const auto& from = required(request, "from");
    const auto& to = required(request, "to");
    require_author(snapshot, from);
    require_author(snapshot, to);
    const auto max = number<std::size_t>(request, "max", kDefaultMaxPaths, 1, 100);
    const auto slack = number<std::size_t>(request, "slack", kDefaultSlack, 0, 10);
    const auto& graph = snapshot.coauthor_graph(kind_param(request));
    PathResult result{from, to, {}};
    if (from == to) {
        result.paths.push_back({from});
    } else {
        result = path_selection(graph, from, to, max, slack);
    }
    auto list = ordered_json::array();
    for (const auto& path : result.paths) list.push_back({{"authors", path}, {"hops", PathResult::hops(path)}});
    ordered_json out{{"from", from}, {"to", to}};
    out["distance"] = result.paths.empty() ? ordered_json() : ordered_json(PathResult::hops(result.paths.front()));
    out["paths"] = std::move(list);
    return out;
}

ordered_json ego(const EngineSnapshot& snapshot, const ApiRequest& request) {
    const auto& author = required(request, "author");
    const auto k = number<long long>(request, "k", static_cast<long long>(kDefaultEgoLimit), 1, 100000);
    require_author(snapshot, author);
    const auto sub = ego_subgraph(snapshot.coauthor_graph(kind_param(request)), author, static_cast<std::size_t>(k));
    auto neighbours = ordered_json::array();
    for (const auto& n : sub.neighbours) neighbours.push_back({{"id", n.id}, {"count", n.joint_count}});
    auto edges = ordered_json::array();
    for (const auto& e : sub.edges) edges.push_back({{"a", e.a}, {"b", e.b}, {"w", e.weight}});
    return {{"ego",
             {{"center", sub.center},
              {"neighbours", std::move(neighbours)},
              {"edges", std::move(edges)},
              {"excluded", sub.excluded}}},
            {"layout", layout_to_json(ego_layout(sub))}};
}

ordered_json citers(const EngineSnapshot& snapshot, const ApiRequest& request) {
    const auto& author = required(request, "author");
    require_author(snapshot, author);
    std::vector<Citer> list;
    for (const auto& [id, count] : snapshot.citation_graph().citers_of(author)) list.push_back({id, count});
    auto layout = citation_layout(list, author);
    auto rows = ordered_json::array();
    for (const auto& p : layout.placements) {
        if (p.id == author) continue;
        auto it = std::find_if(list.begin(), list.end(), [&](const Citer& c) { return c.id == p.id; });
        rows.push_back({{"id", p.id}, {"count", it->count}});
    }
    return {{"author", author}, {"citers", std::move(rows)}, {"layout", layout_to_json(layout)}};
}

ordered_json genealogy(const EngineSnapshot& snapshot, const ApiRequest& request) {
    const auto& root = required(request, "root");
    const auto threshold =
        number<std::size_t>(request, "threshold", kDefaultGroupThreshold, 1, 1000000);
    require_author(snapshot, root);
    const auto forest = build_genealogy(snapshot.corpus());
    LayoutResult layout{LayoutIdiom::genealogy, {{root, {}, TreeParams{}.node_size, 0}}, {}};
    if (forest.contains(root)) layout = genealogy_layout(forest, root, threshold);
    return {{"root", root}, {"threshold", threshold}, {"layout", layout_to_json(layout)}};
}

ordered_json communities(const EngineSnapshot& snapshot, const ApiRequest& request) {
    const auto seed = number<std::uint64_t>(request, "seed", 0, 0, UINT64_MAX);
    const auto rounds = number<std::uint32_t>(request, "rounds", 100, 1, 100000);
    const auto& graph = snapshot.coauthor_graph(kind_param(request));
    const auto assignment = detect_communities(graph, seed, rounds);
    ordered_json clusters = ordered_json::object();
    ordered_json colours = ordered_json::object();
    for (VertexIndex v = 0; v < graph.vertex_count(); ++v) {
        clusters[graph.id_of(v)] = assignment.labels[v];
        colours[graph.id_of(v)] = assignment.colour_of(v);
    }
    ordered_json out{{"seed", seed},
                     {"rounds", assignment.rounds},
                     {"converged", assignment.converged},
                     {"cluster_count", assignment.cluster_count}};
    out["modularity"] = graph.total_weight() == 0 ? ordered_json() : ordered_json(modularity(graph, assignment));
    out["clusters"] = std::move(clusters);
    out["colors"] = std::move(colours);
    out["palette"] = kClusterPalette;
    return out;
}

// pins=id:x:y,id:x:y
std::map<AuthorId, Point> parse_pins(const std::string& text) {
    std::map<AuthorId, Point> pins;
    std::size_t start = 0;
    while (start < text.size()) {
        auto end = text.find(',', start);
        if (end == std::string::npos) end = text.size();
        const auto item = text.substr(start, end - start);
        const auto second = item.rfind(':');
        const auto first = second == std::string::npos || second == 0 ? std::string::npos : item.rfind(':', second - 1);
        if (first == std::string::npos) bad_parameter("pins must look like id:x:y");
        try {
            std::size_t used = 0;
            const auto xs = item.substr(first + 1, second - first - 1);
            const auto ys = item.substr(second + 1);
            Point p{std::stod(xs, &used), 0.0};
            if (used != xs.size()) bad_parameter("bad pin x in " + item);
            p.y = std::stod(ys, &used);
            if (used != ys.size()) bad_parameter("bad pin y in " + item);
            pins[item.substr(0, first)] = p;
        } catch (const std::logic_error&) {
            bad_parameter("bad pin coordinates in " + item);
        }
        start = end + 1;
    }
    return pins;
}

ordered_json force(const EngineSnapshot& snapshot, const ApiRequest& request) {
    ForceParams params;
    params.seed = number<std::uint64_t>(request, "seed", 0, 0, UINT64_MAX);
    params.iterations = number<std::uint32_t>(request, "iterations", 300, 1, 10000);
    if (const auto* pins = param(request, "pins")) params.pins = parse_pins(*pins);
    for (const auto& [id, point] : params.pins) require_author(snapshot, id);
    const auto& graph = snapshot.coauthor_graph(kind_param(request));
    const auto assignment = detect_communities(graph, params.seed);
    return {{"seed", params.seed},
            {"iterations", params.iterations},
            {"layout", layout_to_json(force_layout(graph, assignment, params))}};
}

ordered_json upload(EngineState& state, const ApiRequest& request) {
    Corpus corpus;
    try {
        corpus = parse_corpus(request.body);
    } catch (const Error& e) {
        throw ApiError{422, std::string(to_string(e.code())), e.what()};
    }
    const auto report = validate(corpus);
    const auto authors = corpus.authors().size();
    const auto records = corpus.records().size();
    const auto version = state.replace_corpus(std::move(corpus));
    return {{"version", version},
            {"authors", authors},
            {"records", records},
            {"report",
             {{"dangling_citations", report.dangling_citations.size()},
              {"authors_without_records", report.authors_without_records.size()},
              {"advisor_cycles", report.advisor_cycles.size()}}}};
}

ApiResponse respond(int status, ordered_json body, std::uint64_t version) {
    ordered_json out{{"version", version}};
    for (auto& [key, value] : body.items()) {
        if (key != "version") out[key] = std::move(value);
    }
    return {status, out.dump()};
}

std::vector<std::string> segments(const std::string& path) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= path.size()) {
        auto end = path.find('/', start);
        if (end == std::string::npos) end = path.size();
        if (end > start) out.push_back(path.substr(start, end - start));
        start = end + 1;
    }
    return out;
}

}  // namespace

ApiResponse handle_request(EngineState& state, const ApiRequest& request) {
    auto snapshot = state.current();
    try {
        const auto parts = segments(request.path);
        const bool get = request.method == "GET";
        auto expect_get = [&] {
            if (!get) throw ApiError{405, "method_not_allowed", request.method + " " + request.path};
        };
        if (parts.size() == 1 && parts[0] == "corpus") {
            if (request.method != "POST") throw ApiError{405, "method_not_allowed", request.method + " /corpus"};
            auto body = upload(state, request);
            const auto version = body["version"].get<std::uint64_t>();
            return respond(200, std::move(body), version);
        }
        ordered_json body;
        if (parts.size() == 1 && parts[0] == "authors") {
            expect_get();
            body = author_search(*snapshot, request);
        } else if (parts.size() == 2 && parts[0] == "authors") {
            expect_get();
            body = author_detail(*snapshot, parts[1]);
        } else if (parts.size() == 3 && parts[0] == "authors" && parts[2] == "metrics") {
            expect_get();
            body = author_metrics(*snapshot, parts[1], request);
        } else if (parts.size() == 1 && parts[0] == "distance") {
            expect_get();
            body = distance(*snapshot, request);
        } else if (parts.size() == 1 && parts[0] == "paths") {
            expect_get();
            body = paths(*snapshot, request);
        } else if (parts.size() == 1 && parts[0] == "ego") {
            expect_get();
            body = ego(*snapshot, request);
        } else if (parts.size() == 1 && parts[0] == "citers") {
            expect_get();
            body = citers(*snapshot, request);
        } else if (parts.size() == 1 && parts[0] == "genealogy") {
            expect_get();
            body = genealogy(*snapshot, request);
        } else if (parts.size() == 1 && parts[0] == "communities") {
            expect_get();
            body = communities(*snapshot, request);
        } else if (parts.size() == 2 && parts[0] == "layout" && parts[1] == "force") {
            expect_get();
            body = force(*snapshot, request);
        } else {
            throw ApiError{404, "unknown_route", "no route for " + request.path};
        }
        return respond(200, std::move(body), snapshot->version());
    } catch (const ApiError& e) {
        return respond(e.status, {{"code", e.code}, {"message", e.message}}, snapshot->version());
    } catch (const Error& e) {
        int status = 422;
        std::string code(to_string(e.code()));
        if (e.code() == ErrorCode::unknown_author) status = 404;
        if (e.code() == ErrorCode::invalid_argument) {
            status = 400;
            code = "bad_parameter";
        }
        return respond(status, {{"code", code}, {"message", e.what()}}, snapshot->version());
    }
}

struct HttpService::Impl {
    Impl(EngineState& s, std::function<void()> hook) : state(s), after_upload(std::move(hook)) {}

    EngineState& state;
    std::function<void()> after_upload;
    std::mutex upload_mutex;
    httplib::Server server;
};

HttpService::HttpService(EngineState& state, std::function<void()> after_upload)
    : impl_(std::make_unique<Impl>(state, std::move(after_upload))) {
    auto handler = [this](const httplib::Request& req, httplib::Response& res) {
        ApiRequest request{req.method, req.path, {}, req.body};
        for (const auto& [key, value] : req.params) request.query.emplace(key, value);
        ApiResponse response;
        if (request.method == "POST" && impl_->after_upload) {
            std::lock_guard lock(impl_->upload_mutex);
            response = handle_request(impl_->state, request);
            if (response.status == 200) impl_->after_upload();
        } else {
            response = handle_request(impl_->state, request);
        }
        res.status = response.status;
        res.set_content(response.body, "application/json");
    };
    impl_->server.Get(".*", handler);
    impl_->server.Post(".*", handler);
    impl_->server.Put(".*", handler);
    impl_->server.Delete(".*", handler);
    impl_->server.Patch(".*", handler);
}

HttpService::~HttpService() = default;

int HttpService::bind(const std::string& host, int port) {
    if (port == 0) return impl_->server.bind_to_any_port(host);
    return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpService::run() { return impl_->server.listen_after_bind(); }

void HttpService::stop() { impl_->server.stop(); }

}  // namespace collabgraph
