#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>

#include "collabgraph/collab_graph.hpp"
#include "collabgraph/corpus.hpp"
#include "collabgraph/persistence.hpp"

namespace collabgraph {

/// One corpus version plus the graphs derived from it. Derived graphs are
/// built on first use; concurrent callers block until the build finishes.
class EngineSnapshot {
public:
    EngineSnapshot(Corpus corpus, std::uint64_t version)
        : corpus_(std::move(corpus)), version_(version) {}

    const Corpus& corpus() const noexcept { return corpus_; }
    std::uint64_t version() const noexcept { return version_; }

    const CollaborationGraph& coauthor_graph(KindFilter kind) const;
    const CitationGraph& citation_graph() const;

private:
    Corpus corpus_;
    std::uint64_t version_;

    mutable std::array<std::once_flag, 3> graph_once_;
    mutable std::array<CollaborationGraph, 3> graphs_;
    mutable std::once_flag citation_once_;
    mutable CitationGraph citation_;
};

/// Active corpus behind a reader/writer lock. Readers take a shared pointer
/// to the current snapshot and never see a partially replaced state.
class EngineState {
public:
    EngineState();
    explicit EngineState(PersistedState state);

    std::shared_ptr<const EngineSnapshot> current() const;

    /// Installs `corpus` as a new version and returns that version number.
    std::uint64_t replace_corpus(Corpus corpus);

    PersistedState persisted() const;

private:
    mutable std::shared_mutex mutex_;
    std::mutex writer_;
    std::shared_ptr<const EngineSnapshot> snapshot_;
};

struct ApiRequest {
    std::string method = "GET";
    std::string path;
    std::map<std::string, std::string> query;
    std::string body;
};

struct ApiResponse {
    int status = 200;
    std::string body;  // JSON
};

/// Routes one request. Every body carries the corpus "version" it was
/// computed from; errors are {"code", "message", "version"}.
ApiResponse handle_request(EngineState& state, const ApiRequest& request);

/// HTTP front end over handle_request.
class HttpService {
public:
    /// `after_upload` runs after every accepted POST /corpus.
    explicit HttpService(EngineState& state, std::function<void()> after_upload = {});
    ~HttpService();
    HttpService(const HttpService&) = delete;
    HttpService& operator=(const HttpService&) = delete;

    /// Binds host:port (port 0 picks a free one). Returns the bound port or -1.
    int bind(const std::string& host, int port);
    /// Serves until stop() is called from another thread.
    bool run();
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace collabgraph
