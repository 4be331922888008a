#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "prosodex/features.hpp"
#include "prosodex/label.hpp"

namespace prosodex {

/// dot(a, b) / (|a| |b|); 0 when either vector is zero. Throws DomainError
/// on a length mismatch.
double cosine_similarity(std::span<const double> a, std::span<const double> b);

struct GraphNode {
  std::string id;
  Label label = Label::unlabeled;

  friend bool operator==(const GraphNode&, const GraphNode&) = default;
};

struct GraphEdge {
  std::size_t source = 0;
  std::size_t target = 0;  ///< source < target
  double weight = 0.0;

  friend bool operator==(const GraphEdge&, const GraphEdge&) = default;
};

struct SimilarityGraph {
  std::vector<GraphNode> nodes;
  std::vector<GraphEdge> edges;
  double tau = 0.5;

  friend bool operator==(const SimilarityGraph&, const SimilarityGraph&) = default;
};

/// Standardizes the vectors over the whole set, restricts them to
/// `selected` columns and links every pair whose cosine similarity is at
/// least `tau`. An empty `selected` means all columns.
SimilarityGraph build_graph(std::span<const FeatureVector> features,
                            std::span<const std::size_t> selected, double tau);

/// Fraction of possible same-label (or cross-label) pairs joined by an edge.
double edge_density(const SimilarityGraph& graph, Label a, Label b);

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

struct LayoutParams {
  int iterations = 500;
  double width = 1000.0;
  double height = 1000.0;
  std::uint64_t seed = 0;
  /// Scale attraction by edge weight (negative weights attract nothing).
  bool weighted = true;
};

/// Fruchterman-Reingold spring embedding: k = sqrt(area/|V|), repulsion
/// k²/d between all pairs, attraction d²/k along edges, temperature cooling
/// linearly from 0.1·sqrt(area) to 0, positions clamped to the frame.
std::vector<Point> layout_fr(const SimilarityGraph& graph, const LayoutParams& params = {});

enum class GraphFormat { json, dot, svg };

/// "json", "dot" or "svg". Throws ConfigError.
GraphFormat parse_graph_format(std::string_view name);

/// Node-link JSON, Graphviz DOT or SVG (edges under class-coloured nodes).
std::string export_graph(const SimilarityGraph& graph, std::span<const Point> layout,
                         GraphFormat format);

/// Reads back the node-link JSON written by export_graph.
std::pair<SimilarityGraph, std::vector<Point>> parse_graph_json(std::string_view json);

}  // namespace prosodex
