#include "prosodex/simgraph.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <nlohmann/json.hpp>
#include <numeric>
#include <sstream>

#include "prosodex/error.hpp"
#include "prosodex/rng.hpp"

namespace prosodex {

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw DomainError("cosine_similarity: lengths " + std::to_string(a.size()) + " and " +
                      std::to_string(b.size()) + " differ");
  }
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
}

SimilarityGraph build_graph(std::span<const FeatureVector> features,
                            std::span<const std::size_t> selected, double tau) {
  SimilarityGraph g;
  g.tau = tau;
  if (features.empty()) return g;
  Matrix m;
  for (const auto& f : features) m.append_row(f.values);
  m = apply_standardizer(fit_standardizer(m), m);
  if (!selected.empty()) m = m.select_columns(selected);

  for (const auto& f : features) g.nodes.push_back({f.doc_id, f.label});
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = i + 1; j < m.rows(); ++j) {
      const double w = cosine_similarity(m.row(i), m.row(j));
      if (w >= tau) g.edges.push_back({i, j, w});
    }
  }
  return g;
}

double edge_density(const SimilarityGraph& graph, Label a, Label b) {
  std::size_t na = 0, nb = 0;
  for (const auto& n : graph.nodes) {
    na += n.label == a;
    nb += n.label == b;
  }
  const double possible = a == b ? 0.5 * static_cast<double>(na) * static_cast<double>(na - (na > 0))
                                 : static_cast<double>(na) * static_cast<double>(nb);
  if (possible == 0.0) return 0.0;
  std::size_t count = 0;
  for (const auto& e : graph.edges) {
    const Label s = graph.nodes[e.source].label, t = graph.nodes[e.target].label;
    if ((s == a && t == b) || (s == b && t == a)) ++count;
  }
  return static_cast<double>(count) / possible;
}

std::vector<Point> layout_fr(const SimilarityGraph& graph, const LayoutParams& params) {
  const std::size_t n = graph.nodes.size();
  std::vector<Point> pos(n);
  if (n == 0) return pos;
  const double w = params.width, h = params.height;
  if (n == 1) {
    pos[0] = {w / 2, h / 2};
    return pos;
  }
  Rng rng(params.seed);
  for (auto& p : pos) p = {rng.uniform(0.0, w), rng.uniform(0.0, h)};

  const double area = w * h;
  const double k = std::sqrt(area / static_cast<double>(n));
  const double t0 = 0.1 * std::sqrt(area);
  constexpr double kMinDistance = 1e-9;
  std::vector<Point> disp(n);

  for (int it = 0; it < params.iterations; ++it) {
    std::fill(disp.begin(), disp.end(), Point{});
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        double dx = pos[i].x - pos[j].x, dy = pos[i].y - pos[j].y;
        double d = std::hypot(dx, dy);
        if (d < kMinDistance) {
          // Coincident nodes: push apart along a fixed direction.
          dx = kMinDistance, dy = 0.0, d = kMinDistance;
        }
        const double f = k * k / d;
        disp[i].x += dx / d * f, disp[i].y += dy / d * f;
        disp[j].x -= dx / d * f, disp[j].y -= dy / d * f;
      }
    }
    for (const auto& e : graph.edges) {
      const double dx = pos[e.source].x - pos[e.target].x, dy = pos[e.source].y - pos[e.target].y;
      const double d = std::hypot(dx, dy);
      if (d < kMinDistance) continue;
      double f = d * d / k;
      if (params.weighted) f *= std::max(e.weight, 0.0);
      disp[e.source].x -= dx / d * f, disp[e.source].y -= dy / d * f;
      disp[e.target].x += dx / d * f, disp[e.target].y += dy / d * f;
    }
    const double temp = t0 * (1.0 - static_cast<double>(it) / static_cast<double>(params.iterations));
    for (std::size_t i = 0; i < n; ++i) {
      const double len = std::hypot(disp[i].x, disp[i].y);
      if (len > 0.0) {
        const double step = std::min(len, temp);
        pos[i].x += disp[i].x / len * step;
        pos[i].y += disp[i].y / len * step;
      }
      pos[i].x = std::clamp(pos[i].x, 0.0, w);
      pos[i].y = std::clamp(pos[i].y, 0.0, h);
    }
  }
  return pos;
}

GraphFormat parse_graph_format(std::string_view name) {
  if (name == "json") return GraphFormat::json;
  if (name == "dot") return GraphFormat::dot;
  if (name == "svg") return GraphFormat::svg;
  throw ConfigError("unknown graph format '" + std::string(name) + "' (expected json, dot or svg)");
}

namespace {

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string dot_quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out + "\"";
}

std::string fixed(double v, int digits) {
  std::ostringstream ss;
  ss.setf(std::ios::fixed);
  ss.precision(digits);
  ss << v;
  return ss.str();
}

std::string_view node_colour(Label label) {
  switch (label) {
    case Label::poetry: return "#3b6fb6";
    case Label::prose: return "#f28e2b";
    case Label::unlabeled: break;
  }
  return "#9a9a9a";
}

}  // namespace

std::string export_graph(const SimilarityGraph& graph, std::span<const Point> layout, GraphFormat format) {
  if (layout.size() != graph.nodes.size()) throw DomainError("layout does not match graph size");
  switch (format) {
    case GraphFormat::json: {
      nlohmann::ordered_json doc;
      doc["tau"] = graph.tau;
      auto& nodes = doc["nodes"] = nlohmann::ordered_json::array();
      for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
        nodes.push_back({{"id", graph.nodes[i].id},
                         {"label", to_string(graph.nodes[i].label)},
                         {"x", layout[i].x},
                         {"y", layout[i].y}});
      }
      auto& edges = doc["edges"] = nlohmann::ordered_json::array();
      for (const auto& e : graph.edges) {
        edges.push_back({{"source", graph.nodes[e.source].id},
                         {"target", graph.nodes[e.target].id},
                         {"weight", e.weight}});
      }
      return doc.dump(2) + "\n";
    }
    case GraphFormat::dot: {
      std::ostringstream out;
      out << "graph similarity {\n  node [shape=circle, style=filled, label=\"\"];\n";
      for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
        out << "  " << dot_quote(graph.nodes[i].id) << " [class=" << to_string(graph.nodes[i].label)
            << ", fillcolor=\"" << node_colour(graph.nodes[i].label) << "\", pos=\""
            << fixed(layout[i].x, 3) << ',' << fixed(layout[i].y, 3) << "!\"];\n";
      }
      for (const auto& e : graph.edges) {
        out << "  " << dot_quote(graph.nodes[e.source].id) << " -- " << dot_quote(graph.nodes[e.target].id)
            << " [weight=" << fixed(e.weight, 6) << "];\n";
      }
      out << "}\n";
      return out.str();
    }
    case GraphFormat::svg: {
      constexpr double kMargin = 20.0;
      double max_x = 0.0, max_y = 0.0;
      for (const auto& p : layout) max_x = std::max(max_x, p.x), max_y = std::max(max_y, p.y);
      std::ostringstream out;
      out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed(max_x + 2 * kMargin, 0)
          << "\" height=\"" << fixed(max_y + 2 * kMargin, 0) << "\">\n";
      out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n<g stroke=\"#b0b0b0\" stroke-opacity=\"0.5\">\n";
      for (const auto& e : graph.edges) {
        const auto& a = layout[e.source];
        const auto& b = layout[e.target];
        out << "<line x1=\"" << fixed(a.x + kMargin, 1) << "\" y1=\"" << fixed(a.y + kMargin, 1) << "\" x2=\""
            << fixed(b.x + kMargin, 1) << "\" y2=\"" << fixed(b.y + kMargin, 1) << "\"/>\n";
      }
      out << "</g>\n<g stroke=\"black\" stroke-width=\"0.5\">\n";
      for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
        out << "<circle class=\"" << to_string(graph.nodes[i].label) << "\" cx=\"" << fixed(layout[i].x + kMargin, 1)
            << "\" cy=\"" << fixed(layout[i].y + kMargin, 1) << "\" r=\"6\" fill=\""
            << node_colour(graph.nodes[i].label) << "\"><title>" << xml_escape(graph.nodes[i].id)
            << "</title></circle>\n";
      }
      out << "</g>\n</svg>\n";
      return out.str();
    }
  }
  throw ConfigError("unknown graph format");
}

std::pair<SimilarityGraph, std::vector<Point>> parse_graph_json(std::string_view text) {
  SimilarityGraph g;
  std::vector<Point> layout;
  try {
    const auto doc = nlohmann::json::parse(text);
    g.tau = doc.at("tau").get<double>();
    std::map<std::string, std::size_t> index;
    for (const auto& n : doc.at("nodes")) {
      index[n.at("id").get<std::string>()] = g.nodes.size();
      g.nodes.push_back({n.at("id").get<std::string>(), parse_label(n.at("label").get<std::string>())});
      layout.push_back({n.at("x").get<double>(), n.at("y").get<double>()});
    }
    for (const auto& e : doc.at("edges")) {
      g.edges.push_back({index.at(e.at("source").get<std::string>()),
                         index.at(e.at("target").get<std::string>()), e.at("weight").get<double>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("graph JSON: ") + e.what(), 0);
  } catch (const std::out_of_range&) {
    throw ParseError("graph JSON: edge refers to an unknown node", 0);
  }
  return {std::move(g), std::move(layout)};
}

}  // namespace prosodex
