/* Copyright (C) 2026 the mrftest authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#ifndef MRFTEST_GRAPH_HPP
#define MRFTEST_GRAPH_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace mrftest {

/// Correlation class of a dependence edge. Default is used when no
/// correlation metadata exists and all edges share one coupling.
enum class EdgeClass : std::uint8_t { High = 0, Medium = 1, Low = 2, Default = 3 };

inline constexpr std::size_t kEdgeClassCount = 4;

const char* to_string(EdgeClass c);

/// Undirected edge, stored canonically with i < j.
struct Edge {
  std::size_t i = 0;
  std::size_t j = 0;
  EdgeClass cls = EdgeClass::Default;
};

/// A squared-correlation observation between two hypotheses.
struct R2Record {
  std::size_t i = 0;
  std::size_t j = 0;
  double r2 = 0.0;
};

/// Class boundaries on r-squared: edges above `high` are High, edges in
/// (mid, high] Medium, edges in [low, mid] Low, edges below `low` dropped
/// by the max-partner constructor.
struct R2Thresholds {
  double low = 0.25;
  double mid = 0.5;
  double high = 0.8;
};

/// Immutable undirected dependence graph over m hypotheses.
class Graph {
 public:
  Graph() = default;

  /// Validates and adopts an edge list: canonicalizes endpoint order,
  /// rejects self-loops, out-of-range endpoints and duplicates, and
  /// computes connected components.
  static Graph from_edges(std::size_t m, std::vector<Edge> edges);

  std::size_t node_count() const { return m_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }

  /// Per-node list of (neighbor, incident edge index).
  const std::vector<std::vector<std::pair<std::size_t, std::size_t>>>&
  adjacency() const {
    return adjacency_;
  }

  bool is_acyclic() const { return acyclic_; }
  std::size_t component_count() const { return components_; }

  std::size_t class_edge_count(EdgeClass c) const {
    return class_counts_[static_cast<std::size_t>(c)];
  }
  /// Classes with at least one edge, in enum order.
  std::vector<EdgeClass> classes_present() const;

 private:
  std::size_t m_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adjacency_;
  std::array<std::size_t, kEdgeClassCount> class_counts_{};
  std::size_t components_ = 0;
  bool acyclic_ = true;
};

/// Path graph 0-1-2-...-(m-1). All edges Default.
Graph build_chain(std::size_t m);

/// Perfect binary tree: node k has children 2k+1 and 2k+2 where in range;
/// 2^(height+1) - 1 nodes in total.
Graph build_perfect_binary_tree(std::size_t height);

/// 4-neighbor lattice with rows*cols nodes.
Graph build_grid(std::size_t rows, std::size_t cols);

/// For each node keep one candidate edge to its maximum-r2 partner (ties
/// broken toward the lowest partner id), drop candidates below t.low,
/// deduplicate mutual best pairs, and label survivors by class.
Graph build_max_r2_graph(const std::vector<R2Record>& records, std::size_t m,
                         const R2Thresholds& t = {});

/// Treat every record as a literal edge (used when loading edge-list
/// files): canonicalize, keep the max r2 of repeated pairs, classify by
/// thresholds. Records with r2 <= t.mid are Low even below t.low; a
/// negative r2 marks "no metadata" and yields class Default.
Graph graph_from_edge_records(const std::vector<R2Record>& records,
                              std::size_t m, const R2Thresholds& t = {});

/// BFS spanning forest of an acyclic graph: `order` lists nodes root-first
/// per component, `parent`/`parent_edge` are -1 at roots.
struct TreeOrder {
  std::vector<std::size_t> order;
  std::vector<std::ptrdiff_t> parent;
  std::vector<std::ptrdiff_t> parent_edge;
  std::vector<std::size_t> roots;
};

TreeOrder tree_order(const Graph& g);

}  // namespace mrftest

#endif  // MRFTEST_GRAPH_HPP
