#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "collabgraph/collab_graph.hpp"
#include "collabgraph/community.hpp"
#include "collabgraph/layout.hpp"

namespace collabgraph {

enum class ExportFormat { dot, graphml, json };

std::string_view to_string(ExportFormat format) noexcept;
/// Throws Error(unsupported_format).
ExportFormat parse_export_format(std::string_view text);

// Optional colouring for plain graph exports.
struct GraphExportOptions {
    const ClusterAssignment* clusters = nullptr;
};

/// Byte-stable for identical inputs: vertices in id order, edges in (a, b)
/// order, reals in shortest round-trip form.
std::string export_graph(const CollaborationGraph& graph, ExportFormat format,
                         const GraphExportOptions& options = {});
std::string export_graph(const CollaborationGraph& graph, std::string_view format,
                         const GraphExportOptions& options = {});
std::string export_layout(const LayoutResult& layout, ExportFormat format);
std::string export_layout(const LayoutResult& layout, std::string_view format);

/// Reads the GraphML dialect written by export_graph back into a graph.
/// Throws Error(malformed_record) on documents it cannot interpret.
CollaborationGraph import_graphml(std::string_view document);

// {idiom, nodes: [{id, x, y, r, color}], edges: [{a, b, w}]}
nlohmann::ordered_json layout_to_json(const LayoutResult& layout);
// {kind, nodes: [{id[, color]}], edges: [{a, b, w}]}
nlohmann::ordered_json graph_to_json(const CollaborationGraph& graph,
                                     const GraphExportOptions& options = {});

}  // namespace collabgraph
