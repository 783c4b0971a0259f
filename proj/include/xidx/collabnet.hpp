#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "xidx/corpus.hpp"
#include "xidx/types.hpp"

namespace xidx {

// Undirected, unit-weight co-authorship graph for the window
// [year - window + 1, year]. Two authors are adjacent iff they co-authored
// at least one paper published inside the window; every author of every
// window paper is a node, so solo authors appear isolated. Immutable once
// built and safe to share read-only across workers.
class CollabNetwork {
 public:
  // Nodes must be sorted unique author ids; edges reference dense indices.
  CollabNetwork(int32_t year, int32_t window, std::vector<std::string> node_ids,
                std::vector<std::pair<NodeIdx, NodeIdx>> edges);

  int32_t year() const { return year_; }
  int32_t window() const { return window_; }
  size_t node_count() const { return node_ids_.size(); }
  size_t edge_count() const { return adjacency_.size() / 2; }

  const std::string& node_id(NodeIdx v) const { return node_ids_[v]; }
  std::optional<NodeIdx> find(std::string_view author_id) const;

  std::span<const NodeIdx> neighbors(NodeIdx v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }

  uint32_t degree(NodeIdx v) const { return offsets_[v + 1] - offsets_[v]; }

  // Edge-list dump: "a<TAB>b" with a < b, lines sorted lexicographically.
  void write_edges(std::ostream& out) const;

 private:
  int32_t year_;
  int32_t window_;
  std::vector<std::string> node_ids_;  // dense index = position, sorted
  std::unordered_map<std::string_view, NodeIdx> lookup_;
  std::vector<uint32_t> offsets_;
  std::vector<NodeIdx> adjacency_;
};

// Builds the window graph for end year t. An empty window yields an empty
// network, which is valid. Node indexing is deterministic (sorted by id).
CollabNetwork build_window_graph(const CorpusIndex& corpus, int32_t t, int32_t window);

// Maximum-cardinality connected component; ties broken by the component
// containing the smallest dense index. Sorted ascending.
std::vector<NodeIdx> largest_connected_component(const CollabNetwork& net);

struct LccStats {
  std::vector<NodeIdx> lcc_nodes;
  uint64_t lcc_size = 0;
  double avg_degree = 0.0;
  // Mean pairwise shortest path inside the LCC; absent when lcc_size < 2.
  std::optional<double> avg_shortest_path;
  uint64_t sample_pairs = 0;  // 0 = exact
};

// avg_degree is always exact. avg_shortest_path is exact (all-pairs BFS)
// when sample_pairs == 0 or the LCC has at most exact_threshold nodes;
// otherwise it averages over sample_pairs seeded uniform node pairs.
LccStats graph_stats(const CollabNetwork& net, uint64_t sample_pairs, uint64_t seed,
                     uint64_t exact_threshold = 2000, int workers = 1);

}  // namespace xidx
