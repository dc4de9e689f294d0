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
#include "mrftest/graph.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <set>

#include "mrftest/errors.hpp"

namespace mrftest {

const char* to_string(EdgeClass c) {
  switch (c) {
    case EdgeClass::High: return "high";
    case EdgeClass::Medium: return "medium";
    case EdgeClass::Low: return "low";
    case EdgeClass::Default: return "default";
  }
  return "?";
}

namespace {

// Union-find over node ids, used to count components.
class DisjointSet {
 public:
  explicit DisjointSet(std::size_t n) : parent_(n), count_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t a) {
    while (parent_[a] != a) {
      parent_[a] = parent_[parent_[a]];
      a = parent_[a];
    }
    return a;
  }
  void merge(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) {
      parent_[b] = a;
      --count_;
    }
  }
  std::size_t count() const { return count_; }

 private:
  std::vector<std::size_t> parent_;
  std::size_t count_;
};

}  // namespace

Graph Graph::from_edges(std::size_t m, std::vector<Edge> edges) {
  Graph g;
  g.m_ = m;
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (auto& e : edges) {
    if (e.i == e.j)
      throw index_error("graph: self-loop at node " + std::to_string(e.i));
    if (e.i > e.j) std::swap(e.i, e.j);
    if (e.j >= m)
      throw index_error("graph: edge endpoint " + std::to_string(e.j) +
                        " out of range for m=" + std::to_string(m));
    if (!seen.insert({e.i, e.j}).second)
      throw index_error("graph: duplicate edge (" + std::to_string(e.i) +
                        "," + std::to_string(e.j) + ")");
  }
  g.edges_ = std::move(edges);
  g.adjacency_.assign(m, {});
  DisjointSet ds(m);
  for (std::size_t k = 0; k < g.edges_.size(); ++k) {
    const Edge& e = g.edges_[k];
    g.adjacency_[e.i].push_back({e.j, k});
    g.adjacency_[e.j].push_back({e.i, k});
    g.class_counts_[static_cast<std::size_t>(e.cls)]++;
    ds.merge(e.i, e.j);
  }
  g.components_ = ds.count();
  g.acyclic_ = g.edges_.size() == m - g.components_;
  return g;
}

std::vector<EdgeClass> Graph::classes_present() const {
  std::vector<EdgeClass> out;
  for (std::size_t c = 0; c < kEdgeClassCount; ++c)
    if (class_counts_[c] > 0) out.push_back(static_cast<EdgeClass>(c));
  return out;
}

Graph build_chain(std::size_t m) {
  if (m == 0) throw invalid_size_error("build_chain: m must be >= 1");
  std::vector<Edge> edges;
  edges.reserve(m > 0 ? m - 1 : 0);
  for (std::size_t i = 0; i + 1 < m; ++i)
    edges.push_back({i, i + 1, EdgeClass::Default});
  return Graph::from_edges(m, std::move(edges));
}

Graph build_perfect_binary_tree(std::size_t height) {
  // 2^(height+1) - 1 nodes; cap well below any arithmetic overflow.
  if (height > 30)
    throw invalid_size_error("build_perfect_binary_tree: height " +
                             std::to_string(height) +
                             " would overflow the node count");
  const std::size_t m = (std::size_t{1} << (height + 1)) - 1;
  std::vector<Edge> edges;
  edges.reserve(m - 1);
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t left = 2 * k + 1, right = 2 * k + 2;
    if (left < m) edges.push_back({k, left, EdgeClass::Default});
    if (right < m) edges.push_back({k, right, EdgeClass::Default});
  }
  return Graph::from_edges(m, std::move(edges));
}

Graph build_grid(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0)
    throw invalid_size_error("build_grid: rows and cols must be >= 1");
  const std::size_t m = rows * cols;
  std::vector<Edge> edges;
  edges.reserve(rows * (cols - 1) + cols * (rows - 1));
  const auto at = [cols](std::size_t r, std::size_t c) { return r * cols + c; };
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      if (c + 1 < cols) edges.push_back({at(r, c), at(r, c + 1), EdgeClass::Default});
      if (r + 1 < rows) edges.push_back({at(r, c), at(r + 1, c), EdgeClass::Default});
    }
  return Graph::from_edges(m, std::move(edges));
}

namespace {

EdgeClass classify_r2(double r2, const R2Thresholds& t) {
  if (r2 > t.high) return EdgeClass::High;
  if (r2 > t.mid) return EdgeClass::Medium;
  return EdgeClass::Low;
}

}  // namespace

Graph build_max_r2_graph(const std::vector<R2Record>& records, std::size_t m,
                         const R2Thresholds& t) {
  if (!(0.0 < t.low && t.low < t.mid && t.mid < t.high && t.high < 1.0))
    throw domain_error("build_max_r2_graph: thresholds must satisfy 0 < low < mid < high < 1");
  // best partner per node: (r2, partner), ties toward the lowest partner id
  constexpr auto kNone = std::numeric_limits<std::size_t>::max();
  std::vector<double> best_r2(m, -1.0);
  std::vector<std::size_t> best_partner(m, kNone);
  auto consider = [&](std::size_t a, std::size_t b, double r2) {
    if (r2 > best_r2[a] || (r2 == best_r2[a] && b < best_partner[a])) {
      best_r2[a] = r2;
      best_partner[a] = b;
    }
  };
  for (const auto& rec : records) {
    if (rec.i == rec.j)
      throw index_error("build_max_r2_graph: record with i == j");
    if (rec.i >= m || rec.j >= m)
      throw index_error("build_max_r2_graph: record references node >= m");
    if (rec.r2 < 0.0 || rec.r2 > 1.0)
      throw domain_error("build_max_r2_graph: r2 outside [0,1]");
    consider(rec.i, rec.j, rec.r2);
    consider(rec.j, rec.i, rec.r2);
  }
  // collect candidates, dropping weak ones; mutual best pairs collapse
  std::map<std::pair<std::size_t, std::size_t>, double> chosen;
  for (std::size_t i = 0; i < m; ++i) {
    if (best_partner[i] == kNone || best_r2[i] < t.low) continue;
    const auto key = std::minmax(i, best_partner[i]);
    auto [it, fresh] = chosen.insert({{key.first, key.second}, best_r2[i]});
    if (!fresh && best_r2[i] > it->second) it->second = best_r2[i];
  }
  std::vector<Edge> edges;
  edges.reserve(chosen.size());
  for (const auto& [key, r2] : chosen)
    edges.push_back({key.first, key.second, classify_r2(r2, t)});
  return Graph::from_edges(m, std::move(edges));
}

Graph graph_from_edge_records(const std::vector<R2Record>& records,
                              std::size_t m, const R2Thresholds& t) {
  std::map<std::pair<std::size_t, std::size_t>, double> pairs;
  for (const auto& rec : records) {
    if (rec.i == rec.j)
      throw index_error("graph_from_edge_records: record with i == j");
    if (rec.i >= m || rec.j >= m)
      throw index_error("graph_from_edge_records: record references node >= m");
    const auto key = std::minmax(rec.i, rec.j);
    auto [it, fresh] = pairs.insert({{key.first, key.second}, rec.r2});
    if (!fresh && rec.r2 > it->second) it->second = rec.r2;
  }
  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (const auto& [key, r2] : pairs) {
    const EdgeClass cls = r2 < 0.0 ? EdgeClass::Default : classify_r2(r2, t);
    edges.push_back({key.first, key.second, cls});
  }
  return Graph::from_edges(m, std::move(edges));
}

TreeOrder tree_order(const Graph& g) {
  const std::size_t m = g.node_count();
  TreeOrder t;
  t.order.reserve(m);
  t.parent.assign(m, -1);
  t.parent_edge.assign(m, -1);
  std::vector<std::uint8_t> visited(m, 0);
  for (std::size_t root = 0; root < m; ++root) {
    if (visited[root]) continue;
    t.roots.push_back(root);
    std::size_t head = t.order.size();
    t.order.push_back(root);
    visited[root] = 1;
    while (head < t.order.size()) {
      const std::size_t v = t.order[head++];
      for (const auto& [nbr, eidx] : g.adjacency()[v]) {
        if (visited[nbr]) continue;
        visited[nbr] = 1;
        t.parent[nbr] = static_cast<std::ptrdiff_t>(v);
        t.parent_edge[nbr] = static_cast<std::ptrdiff_t>(eidx);
        t.order.push_back(nbr);
      }
    }
  }
  return t;
}

}  // namespace mrftest
