#include "collabgraph/export.hpp"

#include <charconv>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "collabgraph/error.hpp"

namespace collabgraph {

namespace {

std::string format_real(double value) {
    char buffer[32];
    auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
    return std::string(buffer, end);
}

std::string dot_quote(std::string_view text) {
    std::string out = "\"";
    for (char c : text) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

std::string xml_escape(std::string_view text) {
    std::string out;
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

// Graphviz's set312 scheme holds the same number of colours as the cluster palette.
std::string dot_colour(std::uint32_t colour) {
    return "colorscheme=set312, color=" + std::to_string(colour % kPaletteSize + 1);
}

constexpr std::string_view kGraphmlHeader =
    "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n";

std::string graph_dot(const CollaborationGraph& graph, const GraphExportOptions& options) {
    std::string out = "graph g {\n";
    for (VertexIndex v = 0; v < graph.vertex_count(); ++v) {
        out += "  " + dot_quote(graph.id_of(v));
        if (options.clusters) out += " [" + dot_colour(options.clusters->colour_of(v)) + "]";
        out += ";\n";
    }
    for (const auto& e : graph.edges()) {
        out += "  " + dot_quote(graph.id_of(e.a)) + " -- " + dot_quote(graph.id_of(e.b)) +
               " [weight=" + std::to_string(e.weight) + "];\n";
    }
    out += "}\n";
    return out;
}

std::string graph_graphml(const CollaborationGraph& graph, const GraphExportOptions& options) {
    std::string out(kGraphmlHeader);
    out += "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"int\"/>\n";
    if (options.clusters) out += "  <key id=\"color\" for=\"node\" attr.name=\"color\" attr.type=\"int\"/>\n";
    out += "  <graph id=\"g\" edgedefault=\"undirected\">\n";
    for (VertexIndex v = 0; v < graph.vertex_count(); ++v) {
        out += "    <node id=\"" + xml_escape(graph.id_of(v)) + "\"";
        if (options.clusters) {
            out += "><data key=\"color\">" + std::to_string(options.clusters->colour_of(v)) + "</data></node>\n";
        } else {
            out += "/>\n";
        }
    }
    for (const auto& e : graph.edges()) {
        out += "    <edge source=\"" + xml_escape(graph.id_of(e.a)) + "\" target=\"" +
               xml_escape(graph.id_of(e.b)) + "\"><data key=\"weight\">" + std::to_string(e.weight) +
               "</data></edge>\n";
    }
    out += "  </graph>\n</graphml>\n";
    return out;
}

std::string layout_dot(const LayoutResult& layout) {
    std::string out = "graph g {\n  graph [layout=neato, idiom=" + dot_quote(to_string(layout.idiom)) + "];\n";
    for (const auto& p : layout.placements) {
        out += "  " + dot_quote(p.id) + " [pos=\"" + format_real(p.position.x) + "," +
               format_real(p.position.y) + "!\", width=" + format_real(2.0 * p.display_radius) + ", " +
               dot_colour(p.colour) + "];\n";
    }
    for (const auto& e : layout.edges) {
        out += "  " + dot_quote(e.a) + " -- " + dot_quote(e.b) + " [weight=" + std::to_string(e.weight) + "];\n";
    }
    out += "}\n";
    return out;
}

std::string layout_graphml(const LayoutResult& layout) {
    std::string out(kGraphmlHeader);
    out += "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"int\"/>\n";
    out += "  <key id=\"x\" for=\"node\" attr.name=\"x\" attr.type=\"double\"/>\n";
    out += "  <key id=\"y\" for=\"node\" attr.name=\"y\" attr.type=\"double\"/>\n";
    out += "  <key id=\"r\" for=\"node\" attr.name=\"r\" attr.type=\"double\"/>\n";
    out += "  <key id=\"color\" for=\"node\" attr.name=\"color\" attr.type=\"int\"/>\n";
    out += "  <graph id=\"" + std::string(to_string(layout.idiom)) + "\" edgedefault=\"undirected\">\n";
    for (const auto& p : layout.placements) {
        out += "    <node id=\"" + xml_escape(p.id) + "\"><data key=\"x\">" + format_real(p.position.x) +
               "</data><data key=\"y\">" + format_real(p.position.y) + "</data><data key=\"r\">" +
               format_real(p.display_radius) + "</data><data key=\"color\">" + std::to_string(p.colour) +
               "</data></node>\n";
    }
    for (const auto& e : layout.edges) {
        out += "    <edge source=\"" + xml_escape(e.a) + "\" target=\"" + xml_escape(e.b) +
               "\"><data key=\"weight\">" + std::to_string(e.weight) + "</data></edge>\n";
    }
    out += "  </graph>\n</graphml>\n";
    return out;
}

}  // namespace

std::string_view to_string(ExportFormat format) noexcept {
    switch (format) {
        case ExportFormat::dot: return "dot";
        case ExportFormat::graphml: return "graphml";
        case ExportFormat::json: return "json";
    }
    return "json";
}

ExportFormat parse_export_format(std::string_view text) {
    if (text == "dot") return ExportFormat::dot;
    if (text == "graphml") return ExportFormat::graphml;
    if (text == "json") return ExportFormat::json;
    throw Error(ErrorCode::unsupported_format, "unsupported export format \"" + std::string(text) + "\"");
}

nlohmann::ordered_json graph_to_json(const CollaborationGraph& graph, const GraphExportOptions& options) {
    nlohmann::ordered_json out;
    out["kind"] = to_string(graph.kind());
    out["nodes"] = nlohmann::ordered_json::array();
    for (VertexIndex v = 0; v < graph.vertex_count(); ++v) {
        nlohmann::ordered_json node{{"id", graph.id_of(v)}};
        if (options.clusters) node["color"] = options.clusters->colour_of(v);
        out["nodes"].push_back(std::move(node));
    }
    out["edges"] = nlohmann::ordered_json::array();
    for (const auto& e : graph.edges()) {
        out["edges"].push_back({{"a", graph.id_of(e.a)}, {"b", graph.id_of(e.b)}, {"w", e.weight}});
    }
    return out;
}

nlohmann::ordered_json layout_to_json(const LayoutResult& layout) {
    nlohmann::ordered_json out;
    out["idiom"] = to_string(layout.idiom);
    out["nodes"] = nlohmann::ordered_json::array();
    for (const auto& p : layout.placements) {
        out["nodes"].push_back({{"id", p.id},
                                {"x", p.position.x},
                                {"y", p.position.y},
                                {"r", p.display_radius},
                                {"color", p.colour}});
    }
    out["edges"] = nlohmann::ordered_json::array();
    for (const auto& e : layout.edges) out["edges"].push_back({{"a", e.a}, {"b", e.b}, {"w", e.weight}});
    return out;
}

std::string export_graph(const CollaborationGraph& graph, ExportFormat format, const GraphExportOptions& options) {
    switch (format) {
        case ExportFormat::dot: return graph_dot(graph, options);
        case ExportFormat::graphml: return graph_graphml(graph, options);
        case ExportFormat::json: return graph_to_json(graph, options).dump(2) + "\n";
    }
    throw Error(ErrorCode::unsupported_format, "unsupported export format");
}

std::string export_graph(const CollaborationGraph& graph, std::string_view format,
                         const GraphExportOptions& options) {
    return export_graph(graph, parse_export_format(format), options);
}

std::string export_layout(const LayoutResult& layout, ExportFormat format) {
    switch (format) {
        case ExportFormat::dot: return layout_dot(layout);
        case ExportFormat::graphml: return layout_graphml(layout);
        case ExportFormat::json: return layout_to_json(layout).dump(2) + "\n";
    }
    throw Error(ErrorCode::unsupported_format, "unsupported export format");
}

std::string export_layout(const LayoutResult& layout, std::string_view format) {
    return export_layout(layout, parse_export_format(format));
}

CollaborationGraph import_graphml(std::string_view document) {
    namespace pt = boost::property_tree;
    pt::ptree tree;
    try {
        std::istringstream stream{std::string(document)};
        pt::read_xml(stream, tree);
    } catch (const pt::xml_parser_error& e) {
        throw Error(ErrorCode::malformed_record, std::string("GraphML: ") + e.what());
    }
    const auto graphml = tree.get_child_optional("graphml");
    if (!graphml) throw Error(ErrorCode::malformed_record, "GraphML: missing <graphml> root");
    const auto graph = graphml->get_child_optional("graph");
    if (!graph) throw Error(ErrorCode::malformed_record, "GraphML: missing <graph> element");

    std::vector<AuthorId> vertices;
    std::vector<std::tuple<AuthorId, AuthorId, std::uint32_t>> edges;
    try {
        for (const auto& [tag, child] : *graph) {
            if (tag == "node") {
                vertices.push_back(child.get<std::string>("<xmlattr>.id"));
            } else if (tag == "edge") {
                std::uint32_t weight = 1;
                for (const auto& [data_tag, data] : child) {
                    if (data_tag == "data" && data.get<std::string>("<xmlattr>.key", "") == "weight") {
                        weight = data.get_value<std::uint32_t>();
                    }
                }
                edges.emplace_back(child.get<std::string>("<xmlattr>.source"),
                                   child.get<std::string>("<xmlattr>.target"), weight);
            }
        }
    } catch (const pt::ptree_error& e) {
        throw Error(ErrorCode::malformed_record, std::string("GraphML: ") + e.what());
    }
    try {
        return CollaborationGraph::from_edges(std::move(vertices), edges);
    } catch (const Error& e) {
        throw Error(ErrorCode::malformed_record, std::string("GraphML: ") + e.what());
    }
}

}  // namespace collabgraph
