// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <numbers>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "collabgraph/collab_graph.hpp"
#include "collabgraph/community.hpp"
#include "collabgraph/corpus.hpp"
#include "collabgraph/export.hpp"
#include "collabgraph/layout.hpp"
#include "collabgraph/metrics.hpp"
#include "collabgraph/pathfinder.hpp"
#include "collabgraph/persistence.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace collabgraph;
using Clock = std::chrono::steady_clock;

namespace {

// A check fills `detail` and returns whether it held.
struct Criterion {
    int number;
    std::string title;
    double limit_seconds;  // 0 when untimed
    std::function<bool(std::string& detail)> check;
};

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

bool distance_facts(std::string& detail) {
    const auto corpus = gen::load_fixture("erdos_bowen.jsonl");
    const auto graph = build_coauthor_graph(corpus);
    const auto map = collaborative_distance(graph, "erdos");
    if (map.find("wilson") != 1u || map.find("bowen") != 2u) {
        detail = "wilson or bowen distance wrong";
        return false;
    }
    std::size_t coauthors = 0;
    for (auto v : graph.neighbours(graph.require("bowen"))) {
        ++coauthors;
        auto d = map.find(graph.id_of(v));
        if (!d || *d > 3) {
            detail = graph.id_of(v) + " is farther than 3";
            return false;
        }
    }
    std::size_t bowen_records = 0;
    for (const auto& [id, record] : corpus.records()) {
        const auto& a = record.author_ids;
        if (id != "bowen-wilson-2012" && a.size() > 1 && std::find(a.begin(), a.end(), "bowen") != a.end())
            ++bowen_records;
    }
    detail = "wilson=1 bowen=2, " + std::to_string(coauthors) + " co-authors of bowen all <= 3, " +
             std::to_string(bowen_records) + " further bowen co-author records";
    return bowen_records >= 3;
}

bool index_oracles(std::string& detail) {
    std::mt19937_64 rng(1001);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<std::uint64_t> counts(gen::uniform(rng, 0, 50));
        for (auto& c : counts) c = gen::uniform(rng, 0, 100);
        const auto h = h_index(counts);
        const auto g = g_index(counts);
        if (h != oracle::h_index(counts) || g != oracle::g_index(counts) ||
            i10_index(counts) != oracle::i10_index(counts) || g < h) {
            detail = "mismatch on vector " + std::to_string(trial);
            return false;
        }
    }
    detail = "1000 vectors";
    return true;
}

bool bfs_oracle(std::string& detail) {
    std::mt19937_64 rng(1002);
    for (int trial = 0; trial < 200; ++trial) {
        const auto n = gen::uniform(rng, 1, 50);
        auto graph = gen::random_graph(rng, n, std::uniform_real_distribution<double>(0.0, 0.2)(rng));
        const auto all = oracle::floyd_warshall(graph);
        const auto root = static_cast<VertexIndex>(gen::uniform(rng, 0, n - 1));
        const auto map = collaborative_distance(graph, graph.id_of(root));
        for (VertexIndex v = 0; v < n; ++v) {
            const auto d = map.find(graph.id_of(v));
            const bool reachable = all[root][v] != oracle::kInfinity;
            if (d.has_value() != reachable || (reachable && *d != all[root][v])) {
                detail = "graph " + std::to_string(trial) + " vertex " + std::to_string(v);
                return false;
            }
        }
    }
    detail = "200 graphs";
    return true;
}

bool path_oracle(std::string& detail) {
    std::mt19937_64 rng(1003);
    std::size_t paths = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const auto n = gen::uniform(rng, 2, 20);
        auto graph = gen::random_graph(rng, n, std::uniform_real_distribution<double>(0.1, 0.35)(rng));
        const auto from = static_cast<VertexIndex>(gen::uniform(rng, 0, n - 1));
        auto to = static_cast<VertexIndex>(gen::uniform(rng, 0, n - 2));
        if (to >= from) ++to;
        const auto max_paths = gen::uniform(rng, 1, 12);
        const auto slack = gen::uniform(rng, 0, 2);
        const auto got = path_selection(graph, graph.id_of(from), graph.id_of(to), max_paths, slack);
        if (got.paths != oracle::selected_paths(graph, graph.id_of(from), graph.id_of(to), max_paths, slack)) {
            detail = "graph " + std::to_string(trial);
            return false;
        }
        paths += got.paths.size();
    }
    detail = "100 graphs, " + std::to_string(paths) + " paths compared";
    return true;
}

bool top_thirty(std::string& detail) {
    std::vector<AuthorId> vertices{"centre"};
    std::vector<std::tuple<AuthorId, AuthorId, std::uint32_t>> edges;
    std::mt19937_64 rng(1005);
    std::vector<std::uint32_t> counts(40);
    std::iota(counts.begin(), counts.end(), 1u);
    std::shuffle(counts.begin(), counts.end(), rng);
    for (std::size_t i = 0; i < 40; ++i) {
        vertices.push_back(gen::vertex_name(i));
        edges.emplace_back("centre", gen::vertex_name(i), counts[i]);
    }
    const auto ego = ego_subgraph(CollaborationGraph::from_edges(vertices, edges), "centre", 30);
    std::vector<std::uint32_t> kept;
    for (const auto& n : ego.neighbours) kept.push_back(n.joint_count);
    std::vector<std::uint32_t> expected;
    for (std::uint32_t c = 40; c > 10; --c) expected.push_back(c);
    detail = "kept " + std::to_string(kept.size()) + ", excluded " + std::to_string(ego.excluded);
    return kept == expected && ego.excluded == 10;
}

bool series_consistency(std::string& detail) {
    std::mt19937_64 rng(1006);
    std::size_t series = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const auto corpus = gen::random_corpus(rng, {.cite_probability = 0.2});
        for (const auto& [author, record] : corpus.authors()) {
            const auto annual = yearly_series(corpus, author, SeriesMode::annual);
            const auto cumulative = yearly_series(corpus, author, SeriesMode::cumulative);
            if (annual.points.size() != cumulative.points.size()) return false;
            std::uint64_t papers = 0;
            std::uint64_t citations = 0;
            for (std::size_t i = 0; i < annual.points.size(); ++i) {
                papers += annual.points[i].papers;
                citations += annual.points[i].citations;
                if (cumulative.points[i].papers != papers || cumulative.points[i].citations != citations ||
                    cumulative.points[i].year != annual.points[i].year) {
                    detail = "prefix sum broken for " + author;
                    return false;
                }
            }
            std::uint64_t dated = 0;
            for (const auto& [id, r] : corpus.records()) {
                const bool mine = std::find(r.author_ids.begin(), r.author_ids.end(), author) != r.author_ids.end();
                dated += mine && r.year ? 1 : 0;
            }
            const auto final_papers = cumulative.points.empty() ? 0 : cumulative.points.back().papers;
            if (final_papers != dated) {
                detail = "final cumulative papers " + std::to_string(final_papers) + " != " + std::to_string(dated);
                return false;
            }
            ++series;
        }
    }
    detail = std::to_string(series) + " author series over 100 corpora";
    return true;
}

double norm(Point p) { return std::hypot(p.x, p.y); }

bool layout_monotonicity(std::string& detail) {
    std::mt19937_64 rng(1007);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<AuthorId> vertices{"centre"};
        std::vector<std::tuple<AuthorId, AuthorId, std::uint32_t>> edges;
        const auto n = gen::uniform(rng, 1, 45);
        for (std::size_t i = 0; i < n; ++i) {
            vertices.push_back(gen::vertex_name(i));
            edges.emplace_back("centre", gen::vertex_name(i), static_cast<std::uint32_t>(gen::uniform(rng, 1, 15)));
        }
        const auto ego = ego_subgraph(CollaborationGraph::from_edges(vertices, edges), "centre",
                                      gen::uniform(rng, 1, 40));
        const auto layout = ego_layout(ego);
        for (const auto& p : ego.neighbours) {
            for (const auto& q : ego.neighbours) {
                if (p.joint_count <= q.joint_count) continue;
                const auto& lp = *layout.find(p.id);
                const auto& lq = *layout.find(q.id);
                if (!(norm(lp.position) < norm(lq.position)) || !(lp.display_radius > lq.display_radius)) {
                    detail = "ego order broken in trial " + std::to_string(trial);
                    return false;
                }
            }
        }

        std::vector<Citer> citers;
        for (std::size_t i = 0; i < gen::uniform(rng, 0, 30); ++i)
            citers.push_back({gen::vertex_name(i), static_cast<std::uint32_t>(gen::uniform(rng, 1, 60))});
        const auto quadrant = citation_layout(citers, "main");
        for (const auto& c : citers) {
            const auto pos = quadrant.find(c.id)->position;
            const double degrees = std::atan2(pos.y, pos.x) * 180.0 / std::numbers::pi;
            if (degrees < -1e-9 || degrees > 90.0 + 1e-9) {
                detail = "citation angle " + std::to_string(degrees);
                return false;
            }
        }
    }
    detail = "100 ego inputs and 100 citation inputs";
    return true;
}

bool cluster_separation(std::string& detail) {
    double weakest_ratio = 1e300;
    double weakest_q = 1e300;
    for (std::size_t a = 4; a <= 8; ++a) {
        for (std::size_t b = 4; b <= 8; ++b) {
            const auto graph = gen::two_clique_bridge(a, b);
            const auto clusters = detect_communities(graph, 0);
            std::vector<std::uint32_t> cliques(a + b, 1);
            std::fill(cliques.begin(), cliques.begin() + static_cast<std::ptrdiff_t>(a), 0u);
            if (clusters.labels != cliques) {
                detail = "cliques " + std::to_string(a) + "+" + std::to_string(b) + " not recovered";
                return false;
            }
            if (a == b) {
                const double q = modularity(graph, clusters);
                weakest_q = std::min(weakest_q, q);
                if (q < 0.3) {
                    detail = "modularity " + std::to_string(q) + " at size " + std::to_string(a);
                    return false;
                }
            }
            const auto layout = force_layout(graph, clusters, {.seed = 0});
            auto pos = [&](std::size_t i) { return layout.find(gen::vertex_name(i))->position; };
            Point ca;
            Point cb;
            for (std::size_t i = 0; i < a; ++i) ca = {ca.x + pos(i).x / a, ca.y + pos(i).y / a};
            for (std::size_t i = a; i < a + b; ++i) cb = {cb.x + pos(i).x / b, cb.y + pos(i).y / b};
            double intra = 0.0;
            std::size_t pairs = 0;
            auto add = [&](std::size_t begin, std::size_t end) {
                for (std::size_t i = begin; i < end; ++i)
                    for (std::size_t j = i + 1; j < end; ++j, ++pairs)
                        intra += std::hypot(pos(i).x - pos(j).x, pos(i).y - pos(j).y);
            };
            add(0, a);
            add(a, a + b);
            const double ratio = std::hypot(ca.x - cb.x, ca.y - cb.y) / (intra / static_cast<double>(pairs));
            weakest_ratio = std::min(weakest_ratio, ratio);
            if (ratio <= 2.0) {
                detail = "separation ratio " + std::to_string(ratio) + " at " + std::to_string(a) + "+" +
                         std::to_string(b);
                return false;
            }
        }
    }
    std::ostringstream text;
    text << "25 size pairs recovered; min Q (equal sizes) " << weakest_q << "; min separation ratio "
         << weakest_ratio;
    detail = text.str();
    return true;
}

bool erdos_bacon(std::string& detail) {
    const auto corpus = gen::load_fixture("erdos_bacon.jsonl");
    const auto erdos = collaborative_distance(build_coauthor_graph(corpus, KindFilter::publication), "erdos");
    const auto bacon = collaborative_distance(build_coauthor_graph(corpus, KindFilter::credit), "bacon");
    const auto sum = combined_number(erdos, bacon, "morgan");
    detail = "morgan: erdos " + std::to_string(erdos.find("morgan").value_or(99)) + " + bacon " +
             std::to_string(bacon.find("morgan").value_or(99)) + " = " +
             (sum ? std::to_string(*sum) : std::string("none"));
    return erdos.find("morgan") == 2u && bacon.find("morgan") == 1u && sum == 3u;
}

bool determinism(std::string& detail) {
    std::mt19937_64 rng(1010);
    std::vector<CollaborationGraph> graphs{build_coauthor_graph(gen::load_fixture("erdos_bowen.jsonl")),
                                           gen::two_clique_bridge(6, 7), gen::random_graph(rng, 60, 0.06)};
    for (std::size_t g = 0; g < graphs.size(); ++g) {
        std::string first;
        for (int run = 0; run < 5; ++run) {
            const auto clusters = detect_communities(graphs[g], 77);
            const auto text = export_graph(graphs[g], ExportFormat::json, {.clusters = &clusters}) +
                              export_layout(force_layout(graphs[g], clusters, {.seed = 77}), ExportFormat::json);
            if (run == 0) {
                first = text;
            } else if (text != first) {
                detail = "graph " + std::to_string(g) + " differs on run " + std::to_string(run);
                return false;
            }
        }
    }
    detail = "3 graphs x 5 runs byte-identical";
    return true;
}

bool performance(std::string& detail) {
    constexpr std::size_t kVertices = 100'000;
    constexpr std::size_t kEdges = 500'000;
    std::mt19937_64 rng(1011);
    std::vector<AuthorId> vertices;
    vertices.reserve(kVertices);
    for (std::size_t i = 0; i < kVertices; ++i) vertices.push_back(gen::vertex_name(i));
    std::set<std::pair<VertexIndex, VertexIndex>> seen;
    std::vector<WeightedEdge> edges;
    edges.reserve(kEdges);
    while (edges.size() < kEdges) {
        auto a = static_cast<VertexIndex>(gen::uniform(rng, 0, kVertices - 1));
        auto b = static_cast<VertexIndex>(gen::uniform(rng, 0, kVertices - 1));
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        if (seen.emplace(a, b).second) edges.push_back({a, b, static_cast<std::uint32_t>(gen::uniform(rng, 1, 5))});
    }
    const auto graph = CollaborationGraph::from_index_edges(std::move(vertices), std::move(edges));

    auto start = Clock::now();
    const auto map = collaborative_distance(graph, gen::vertex_name(0));
    const double bfs = seconds_since(start);

    VertexIndex hub = 0;
    for (VertexIndex v = 0; v < graph.vertex_count(); ++v)
        if (graph.degree(v) > graph.degree(hub)) hub = v;
    start = Clock::now();
    const auto ego = ego_subgraph(graph, graph.id_of(hub));
    const double ego_time = seconds_since(start);

    std::ostringstream text;
    text << "BFS " << bfs << " s over " << map.size() << " reached (limit 2 s); ego " << ego_time * 1000.0
         << " ms at degree " << graph.degree(hub) << " (limit 100 ms)";
    detail = text.str();
    return bfs < 2.0 && ego_time < 0.1 && !ego.neighbours.empty();
}

bool round_trips(std::string& detail) {
    const auto corpus = gen::load_fixture("erdos_bowen.jsonl");
    if (parse_corpus(serialize_corpus(corpus)) != corpus) {
        detail = "corpus parse/serialize";
        return false;
    }
    const PersistedState state{corpus, 5};
    const auto path = std::filesystem::temp_directory_path() / "collabgraph-acceptance.state";
    save_state(state, path);
    const bool state_ok = load_state(path) == state;
    std::filesystem::remove(path);
    if (!state_ok) {
        detail = "snapshot save/load";
        return false;
    }
    const auto graph = build_coauthor_graph(corpus);
    const auto back = import_graphml(export_graph(graph, ExportFormat::graphml));
    if (back.vertices() != graph.vertices() || back.edges() != graph.edges()) {
        detail = "graphml export/import";
        return false;
    }
    detail = "corpus, snapshot and graphml";
    return true;
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "distance facts on the fixture corpus", 1.0, distance_facts},
        {2, "h/g/i10 index oracles", 5.0, index_oracles},
        {3, "BFS against Floyd-Warshall", 10.0, bfs_oracle},
        {4, "path selection against enumeration", 30.0, path_oracle},
        {5, "top-30 co-author rule", 0.0, top_thirty},
        {6, "yearly series consistency", 0.0, series_consistency},
        {7, "ego and citation layout monotonicity", 0.0, layout_monotonicity},
        {8, "two-clique cluster separation", 10.0, cluster_separation},
        {9, "Erdos-Bacon combined number", 0.0, erdos_bacon},
        {10, "seeded determinism", 0.0, determinism},
        {11, "performance floor", 0.0, performance},
        {12, "round trips", 0.0, round_trips},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        std::string detail;
        bool ok = false;
        const auto start = Clock::now();
        try {
            ok = c.check(detail);
        } catch (const std::exception& e) {
            detail = std::string("threw: ") + e.what();
        }
        const double elapsed = seconds_since(start);
        if (c.limit_seconds > 0.0 && elapsed >= c.limit_seconds) {
            ok = false;
            detail += " [over time limit]";
        }
        std::printf("%s  %2d  %-40s %8.3f s  %s\n", ok ? "PASS" : "FAIL", c.number, c.title.c_str(), elapsed,
                    detail.c_str());
        failures += ok ? 0 : 1;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
