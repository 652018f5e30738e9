#pragma once

#include "collabgraph/corpus.hpp"

namespace collabgraph {

// Builds a Corpus from maps the caller has already checked.
struct CorpusAccess {
    static Corpus make(Corpus::AuthorMap authors, Corpus::RecordMap records) {
        return Corpus(std::move(authors), std::move(records));
    }
};

}  // namespace collabgraph
