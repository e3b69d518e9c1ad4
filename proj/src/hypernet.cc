// Copyright 2026 The qhyper Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qhyper/hypernet.h"

#include <algorithm>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include <fmt/format.h>

#include "qhyper/random.h"

namespace qhyper {
namespace {

Hyperedge Sorted(Hyperedge e) {
  std::sort(e.begin(), e.end());
  return e;
}

std::uint64_t EdgeKey(const Hyperedge& e) {
  const Hyperedge s = Sorted(e);
  // Node ids fit in 21 bits whenever a key is formed (checked by callers).
  return (std::uint64_t{s[0]} << 42) | (std::uint64_t{s[1]} << 21) | s[2];
}

// Number of 3-subsets of n nodes, saturating at uint64 max.
std::uint64_t Choose3(std::uint64_t n) {
  if (n < 3) return 0;
  if (n > (1ULL << 21)) return std::numeric_limits<std::uint64_t>::max();
  return n * (n - 1) / 2 * (n - 2) / 3;
}

// Fenwick tree over non-negative integer weights, supporting sampling of an
// index with probability proportional to its weight.
class WeightTree {
 public:
  explicit WeightTree(std::size_t size) : tree_(size + 1, 0) {
    while ((top_bit_ << 1) <= size) top_bit_ <<= 1;
  }

  void Add(std::size_t index, std::int64_t delta) {
    total_ += delta;
    for (std::size_t i = index + 1; i < tree_.size(); i += i & (~i + 1)) {
      tree_[i] += delta;
    }
  }

  std::int64_t total() const { return total_; }

  // Smallest index whose inclusive prefix sum exceeds `target`.
  std::size_t Find(std::int64_t target) const {
    std::size_t pos = 0;
    for (std::size_t step = top_bit_; step > 0; step >>= 1) {
      const std::size_t next = pos + step;
      if (next < tree_.size() && tree_[next] <= target) {
        pos = next;
        target -= tree_[next];
      }
    }
    return pos;
  }

  std::size_t Sample(Rng& rng) const {
    return Find(static_cast<std::int64_t>(
        rng.UniformIndex(static_cast<std::uint64_t>(total_))));
  }

 private:
  std::vector<std::int64_t> tree_;
  std::size_t top_bit_ = 1;
  std::int64_t total_ = 0;
};

}  // namespace

Hypergraph::Hypergraph(std::size_t node_count, std::vector<Hyperedge> edges)
    : node_count_(node_count), edges_(std::move(edges)) {
  if (node_count_ == 0) {
    throw std::invalid_argument("hypergraph must have at least one node");
  }
  if (node_count_ > std::numeric_limits<NodeId>::max() ||
      edges_.size() > std::numeric_limits<std::uint32_t>::max()) {
    throw std::invalid_argument("hypergraph too large");
  }
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(edges_.size());
  const bool keyed = node_count_ <= (1ULL << 21);
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const Hyperedge s = Sorted(edges_[e]);
    if (s[2] >= node_count_) {
      throw std::invalid_argument(
          fmt::format("edge {} has a node id outside [0, {})", e, node_count_));
    }
    if (s[0] == s[1] || s[1] == s[2]) {
      throw std::invalid_argument(fmt::format("edge {} repeats a node", e));
    }
    if (keyed && !seen.insert(EdgeKey(s)).second) {
      throw std::invalid_argument(
          fmt::format("edge {} duplicates an earlier edge", e));
    }
  }

  incidence_offset_.assign(node_count_ + 1, 0);
  for (const Hyperedge& e : edges_)
    for (NodeId v : e) ++incidence_offset_[v + 1];
  for (std::size_t i = 0; i < node_count_; ++i)
    incidence_offset_[i + 1] += incidence_offset_[i];
  incidence_.resize(incidence_offset_.back());
  std::vector<std::uint32_t> fill(incidence_offset_.begin(),
                                  incidence_offset_.end() - 1);
  for (std::uint32_t e = 0; e < edges_.size(); ++e)
    for (NodeId v : edges_[e]) incidence_[fill[v]++] = e;

  neighbor_offset_.assign(node_count_ + 1, 0);
  std::vector<NodeId> scratch;
  for (NodeId v = 0; v < node_count_; ++v) {
    scratch.clear();
    for (std::uint32_t e : Incidence(v))
      for (NodeId u : edges_[e])
        if (u != v) scratch.push_back(u);
    std::sort(scratch.begin(), scratch.end());
    scratch.erase(std::unique(scratch.begin(), scratch.end()), scratch.end());
    neighbors_.insert(neighbors_.end(), scratch.begin(), scratch.end());
    neighbor_offset_[v + 1] = static_cast<std::uint32_t>(neighbors_.size());
  }
}

std::vector<std::uint32_t> Hypergraph::Degrees() const {
  std::vector<std::uint32_t> d(node_count_);
  for (NodeId v = 0; v < node_count_; ++v) d[v] = Degree(v);
  return d;
}

NodeId Hypergraph::HighestDegreeNode() const {
  NodeId best = 0;
  for (NodeId v = 1; v < node_count_; ++v)
    if (Degree(v) > Degree(best)) best = v;
  return best;
}

void NetworkSpec::Validate() const {
  if (nodes > std::numeric_limits<NodeId>::max()) {
    throw std::invalid_argument("nodes: too many nodes");
  }
  switch (kind) {
    case NetworkKind::kRandom:
      if (nodes < 3) throw std::invalid_argument("nodes: must be at least 3");
      if (edge_count < 1) {
        throw std::invalid_argument("edges: must be at least 1");
      }
      if (edge_count > Choose3(nodes)) {
        throw std::invalid_argument(fmt::format(
            "edges: {} exceeds the {} distinct 3-subsets of {} nodes",
            edge_count, Choose3(nodes), nodes));
      }
      break;
    case NetworkKind::kScaleFree:
      if (m0 != 3) {
        throw std::invalid_argument(
            "m0: only a seed of 3 nodes (one hyperedge) is supported");
      }
      if (nodes <= m0) {
        throw std::invalid_argument("nodes: must exceed m0");
      }
      if (m < 1 || m >= m0) {
        throw std::invalid_argument("m: must satisfy 1 <= m < m0");
      }
      break;
  }
}

Hypergraph GenerateRandom(const NetworkSpec& spec) {
  if (spec.kind != NetworkKind::kRandom) {
    throw std::invalid_argument("kind: expected a random network spec");
  }
  spec.Validate();
  Rng rng(spec.seed);
  const auto n = static_cast<std::uint64_t>(spec.nodes);
  std::vector<Hyperedge> edges;
  edges.reserve(spec.edge_count);
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(spec.edge_count);
  while (edges.size() < spec.edge_count) {
    Hyperedge e;
    e[0] = static_cast<NodeId>(rng.UniformIndex(n));
    do {
      e[1] = static_cast<NodeId>(rng.UniformIndex(n));
    } while (e[1] == e[0]);
    do {
      e[2] = static_cast<NodeId>(rng.UniformIndex(n));
    } while (e[2] == e[0] || e[2] == e[1]);
    e = Sorted(e);
    if (seen.insert(EdgeKey(e)).second) edges.push_back(e);
  }
  return Hypergraph(spec.nodes, std::move(edges));
}

Hypergraph GenerateScaleFree(const NetworkSpec& spec) {
  if (spec.kind != NetworkKind::kScaleFree) {
    throw std::invalid_argument("kind: expected a scale-free network spec");
  }
  spec.Validate();
  Rng rng(spec.seed);
  std::vector<Hyperedge> edges;
  edges.reserve(1 + (spec.nodes - spec.m0) * spec.m);
  edges.push_back({0, 1, 2});

  // Nodes enter the sampling tree only after their own arrival completes.
  WeightTree weights(spec.nodes);
  std::vector<std::int64_t> degree(spec.nodes, 0);
  auto bump = [&](NodeId u) {
    ++degree[u];
    weights.Add(u, 1);
  };
  for (NodeId u = 0; u < 3; ++u) bump(u);

  std::vector<Hyperedge> arrival;
  for (auto v = static_cast<NodeId>(spec.m0); v < spec.nodes; ++v) {
    arrival.clear();
    while (arrival.size() < spec.m) {
      const auto a = static_cast<NodeId>(weights.Sample(rng));
      weights.Add(a, -degree[a]);
      const auto b = static_cast<NodeId>(weights.Sample(rng));
      weights.Add(a, degree[a]);
      const Hyperedge e = Sorted({a, b, v});
      if (std::find(arrival.begin(), arrival.end(), e) != arrival.end()) {
        continue;
      }
      arrival.push_back(e);
      edges.push_back(e);
      bump(a);
      bump(b);
    }
    degree[v] = static_cast<std::int64_t>(spec.m);
    weights.Add(v, degree[v]);
  }
  return Hypergraph(spec.nodes, std::move(edges));
}

Hypergraph Generate(const NetworkSpec& spec) {
  return spec.kind == NetworkKind::kRandom ? GenerateRandom(spec)
                                           : GenerateScaleFree(spec);
}

void WriteEdgeList(std::ostream& out, const Hypergraph& g) {
  out << "N " << g.node_count() << '\n';
  for (const Hyperedge& e : g.edges()) {
    out << e[0] << ' ' << e[1] << ' ' << e[2] << '\n';
  }
}

Hypergraph ReadEdgeList(std::istream& in) {
  std::string line;
  std::size_t n = 0;
  {
    std::string tag;
    std::getline(in, line);
    std::istringstream header(line);
    if (!(header >> tag >> n) || tag != "N") {
      throw std::invalid_argument("edge list: missing 'N <count>' header");
    }
  }
  std::vector<Hyperedge> edges;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream fields(line);
    Hyperedge e;
    std::string extra;
    if (!(fields >> e[0] >> e[1] >> e[2]) || (fields >> extra)) {
      throw std::invalid_argument(
          fmt::format("edge list line {}: expected three node ids", line_no));
    }
    edges.push_back(e);
  }
  return Hypergraph(n, std::move(edges));
}

}  // namespace qhyper
