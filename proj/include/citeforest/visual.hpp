#ifndef CITEFOREST_VISUAL_HPP
#define CITEFOREST_VISUAL_HPP

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "citeforest/layering.hpp"
#include "citeforest/simplify.hpp"

namespace citeforest {

struct VisualAttributes {
    double node_size = 0;     // grows with in-degree
    double border_width = 0;  // grows with author count
    int color = 0;            // index into level_palette()
    int level = 0;

    friend bool operator==(const VisualAttributes&, const VisualAttributes&) = default;
};

inline constexpr double kBaseNodeSize = 10.0;
inline constexpr double kNodeSizeScale = 6.0;
inline constexpr double kBaseBorder = 1.0;
inline constexpr double kBorderPerAuthor = 1.0;

/// node_size = 10 + 6*sqrt(in_degree), border_width = 1 + (authors - 1),
/// both rounded to two decimals; color is the level index.
/// Throws Error when a node is missing from any of the maps.
std::map<NodeId, VisualAttributes> compute_visual_attrs(std::span<const NodeId> nodes,
                                                        const std::map<NodeId, std::size_t>& in_degrees,
                                                        const std::map<NodeId, std::size_t>& author_counts,
                                                        const std::map<NodeId, int>& levels);

/// Evenly spaced hues, one "#rrggbb" per level (hue = 360*k/count, s=0.6, l=0.55).
std::vector<std::string> level_palette(std::size_t count);

enum class ViewKind { full, simplified };
std::string_view to_string(ViewKind k);

struct ViewNode {
    PaperRecord record;
    VisualAttributes attrs;
};

struct GraphView {
    ViewKind kind = ViewKind::full;
    std::vector<ViewNode> nodes;  // ascending id
    std::vector<Edge> edges;      // sorted
};

/// Which graph's in-degrees drive node size.
enum class DegreeSource { view, full };

GraphView make_full_view(std::span<const PaperRecord> records, const CitationGraph& graph,
                         const LevelAssignment& levels);
GraphView make_simplified_view(std::span<const PaperRecord> records, const CitationGraph& graph,
                               const SimplifiedForest& forest, const LevelAssignment& levels,
                               DegreeSource degrees = DegreeSource::view);

/// JSON view document with a stable key order:
/// {view_kind, levels:[{index,lo,hi,color}], nodes:[{id,doi,title,authors,year,level,size,border,url}],
///  edges:[{from,to}]}
std::string export_view_json(const GraphView& view, const LevelAssignment& levels);

/// Graphviz digraph with one rank=same subgraph per non-empty level.
std::string export_view_dot(const GraphView& view, const LevelAssignment& levels);

}  // namespace citeforest

#endif  // CITEFOREST_VISUAL_HPP
