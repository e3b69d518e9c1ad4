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

// 3-uniform hypergraphs and the two network generators: uniformly random
// hyperedges, and a growth model with preferential attachment on
// hyperedge degree.

#ifndef QHYPER_HYPERNET_H_
#define QHYPER_HYPERNET_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace qhyper {

using NodeId = std::uint32_t;
using Hyperedge = std::array<NodeId, 3>;

class Hypergraph {
 public:
  // Throws std::invalid_argument if an edge has repeated or out-of-range
  // members, or if two edges contain the same three nodes.
  Hypergraph(std::size_t node_count, std::vector<Hyperedge> edges);

  std::size_t node_count() const { return node_count_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Hyperedge>& edges() const { return edges_; }

  // Indices into edges() of the hyperedges containing `node`, ascending.
  std::span<const std::uint32_t> Incidence(NodeId node) const {
    return {incidence_.data() + incidence_offset_[node],
            incidence_.data() + incidence_offset_[node + 1]};
  }

  // Number of incident hyperedges.
  std::uint32_t Degree(NodeId node) const {
    return incidence_offset_[node + 1] - incidence_offset_[node];
  }
  std::vector<std::uint32_t> Degrees() const;

  // Distinct nodes sharing at least one hyperedge with `node`, ascending.
  std::span<const NodeId> Neighbors(NodeId node) const {
    return {neighbors_.data() + neighbor_offset_[node],
            neighbors_.data() + neighbor_offset_[node + 1]};
  }

  // Maximum-degree node; ties go to the lowest id.
  NodeId HighestDegreeNode() const;

 private:
  std::size_t node_count_;
  std::vector<Hyperedge> edges_;
  std::vector<std::uint32_t> incidence_offset_;
  std::vector<std::uint32_t> incidence_;
  std::vector<std::uint32_t> neighbor_offset_;
  std::vector<NodeId> neighbors_;
};

enum class NetworkKind { kRandom, kScaleFree };

struct NetworkSpec {
  NetworkKind kind = NetworkKind::kRandom;
  std::size_t nodes = 2500;
  std::size_t edge_count = 10000;  // kRandom only
  std::size_t m0 = 3;              // kScaleFree only
  std::size_t m = 2;               // kScaleFree only
  std::uint64_t seed = 0;

  // Throws std::invalid_argument naming the offending field.
  void Validate() const;
};

// `edge_count` distinct hyperedges, each a uniform 3-subset; duplicates are
// redrawn.
Hypergraph GenerateRandom(const NetworkSpec& spec);

// Seed hyperedge {0, 1, 2}; every later node v arrives with `m` hyperedges
// {v, a, b}, where a and b are distinct earlier nodes drawn sequentially with
// probability proportional to their current hyperedge degree.
Hypergraph GenerateScaleFree(const NetworkSpec& spec);

Hypergraph Generate(const NetworkSpec& spec);

// Plain-text edge list: header "N <count>", then one edge per line as three
// space-separated node ids.
void WriteEdgeList(std::ostream& out, const Hypergraph& g);
Hypergraph ReadEdgeList(std::istream& in);

}  // namespace qhyper

#endif  // QHYPER_HYPERNET_H_
