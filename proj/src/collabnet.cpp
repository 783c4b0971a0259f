#include "xidx/collabnet.hpp"

#include <algorithm>
#include <ostream>

#include "xidx/error.hpp"
#include "xidx/parallel.hpp"
#include "xidx/rng.hpp"

namespace xidx {

CollabNetwork::CollabNetwork(int32_t year, int32_t window, std::vector<std::string> node_ids,
                             std::vector<std::pair<NodeIdx, NodeIdx>> edges)
    : year_(year), window_(window), node_ids_(std::move(node_ids)) {
  if (window_ < 1) throw InvalidArgument("CollabNetwork: window must be >= 1");
  for (size_t i = 1; i < node_ids_.size(); ++i) {
    if (!(node_ids_[i - 1] < node_ids_[i])) {
      throw InvalidArgument("CollabNetwork: node ids must be sorted and unique");
    }
  }
  lookup_.reserve(node_ids_.size() * 2);
  for (NodeIdx v = 0; v < node_ids_.size(); ++v) lookup_.emplace(node_ids_[v], v);

  // Symmetrize, drop self-loops and parallel edges, then pack as CSR.
  std::vector<std::pair<NodeIdx, NodeIdx>> dir;
  dir.reserve(edges.size() * 2);
  for (auto [a, b] : edges) {
    if (a == b) continue;
    if (a >= node_ids_.size() || b >= node_ids_.size()) {
      throw InvalidArgument("CollabNetwork: edge endpoint out of range");
    }
    dir.emplace_back(a, b);
    dir.emplace_back(b, a);
  }
  std::sort(dir.begin(), dir.end());
  dir.erase(std::unique(dir.begin(), dir.end()), dir.end());

  offsets_.assign(node_ids_.size() + 1, 0);
  for (auto [a, b] : dir) ++offsets_[a + 1];
  for (size_t i = 1; i < offsets_.size(); ++i) offsets_[i] += offsets_[i - 1];
  adjacency_.resize(dir.size());
  for (size_t i = 0; i < dir.size(); ++i) adjacency_[i] = dir[i].second;
}

std::optional<NodeIdx> CollabNetwork::find(std::string_view author_id) const {
  auto it = lookup_.find(author_id);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

void CollabNetwork::write_edges(std::ostream& out) const {
  // Dense order is lexicographic by id, so iterating (v, w > v) emits the
  // dump already sorted.
  for (NodeIdx v = 0; v < node_ids_.size(); ++v) {
    for (NodeIdx w : neighbors(v)) {
      if (w > v) out << node_ids_[v] << '\t' << node_ids_[w] << '\n';
    }
  }
  if (!out) throw IoError("CollabNetwork::write_edges: write failed");
}

CollabNetwork build_window_graph(const CorpusIndex& corpus, int32_t t, int32_t window) {
  if (window < 1) throw InvalidArgument("build_window_graph: window must be >= 1");
  if (corpus.empty()) throw InvalidArgument("build_window_graph: corpus is empty");

  const int32_t first = t - window + 1;
  std::vector<AuthorIdx> active;
  std::vector<std::pair<AuthorIdx, AuthorIdx>> pairs;
  for (int32_t y = first; y <= t; ++y) {
    for (PaperIdx p : corpus.papers_in_year(y)) {
      auto authors = corpus.paper_authors(p);
      for (AuthorIdx a : authors) active.push_back(a);
      for (size_t i = 0; i < authors.size(); ++i) {
        for (size_t j = i + 1; j < authors.size(); ++j) {
          AuthorIdx a = authors[i], b = authors[j];
          pairs.emplace_back(std::min(a, b), std::max(a, b));
        }
      }
    }
  }
  std::sort(active.begin(), active.end());
  active.erase(std::unique(active.begin(), active.end()), active.end());

  // Corpus author order is lexicographic, so the dense remap keeps ids sorted.
  std::vector<std::string> node_ids;
  node_ids.reserve(active.size());
  for (AuthorIdx a : active) node_ids.push_back(corpus.author_id(a));
  std::vector<NodeIdx> remap(active.empty() ? 0 : active.back() + 1, kNoNode);
  for (NodeIdx v = 0; v < active.size(); ++v) remap[active[v]] = v;

  std::vector<std::pair<NodeIdx, NodeIdx>> edges;
  edges.reserve(pairs.size());
  for (auto [a, b] : pairs) edges.emplace_back(remap[a], remap[b]);

  return CollabNetwork(t, window, std::move(node_ids), std::move(edges));
}

std::vector<NodeIdx> largest_connected_component(const CollabNetwork& net) {
  const size_t n = net.node_count();
  std::vector<uint32_t> comp(n, kNoNode);
  std::vector<NodeIdx> stack;
  uint32_t best_comp = kNoNode;
  size_t best_size = 0;
  uint32_t next = 0;
  for (NodeIdx start = 0; start < n; ++start) {
    if (comp[start] != kNoNode) continue;
    const uint32_t c = next++;
    size_t size = 0;
    stack.push_back(start);
    comp[start] = c;
    while (!stack.empty()) {
      NodeIdx v = stack.back();
      stack.pop_back();
      ++size;
      for (NodeIdx w : net.neighbors(v)) {
        if (comp[w] == kNoNode) {
          comp[w] = c;
          stack.push_back(w);
        }
      }
    }
    // Strict > keeps the earlier component on ties; components are discovered
    // in order of their smallest dense index.
    if (size > best_size) {
      best_size = size;
      best_comp = c;
    }
  }
  std::vector<NodeIdx> lcc;
  lcc.reserve(best_size);
  for (NodeIdx v = 0; v < n; ++v) {
    if (comp[v] == best_comp) lcc.push_back(v);
  }
  return lcc;
}

namespace {

// BFS from `source`, accumulating distances to nodes visited. Returns the sum
// of distances and (optionally) stops once `target` is reached, returning its
// distance instead. Buffers are caller-owned so workers can reuse them.
struct BfsBuffers {
  std::vector<uint32_t> dist;
  std::vector<uint32_t> epoch;
  std::vector<NodeIdx> queue;
  uint32_t current_epoch = 0;

  void ensure(size_t n) {
    if (dist.size() < n) {
      dist.resize(n);
      epoch.resize(n, 0);
    }
  }
};

uint64_t bfs_distance_sum(const CollabNetwork& net, NodeIdx source, BfsBuffers& buf) {
  buf.ensure(net.node_count());
  ++buf.current_epoch;
  buf.queue.clear();
  buf.queue.push_back(source);
  buf.epoch[source] = buf.current_epoch;
  buf.dist[source] = 0;
  uint64_t sum = 0;
  for (size_t head = 0; head < buf.queue.size(); ++head) {
    NodeIdx v = buf.queue[head];
    sum += buf.dist[v];
    for (NodeIdx w : net.neighbors(v)) {
      if (buf.epoch[w] != buf.current_epoch) {
        buf.epoch[w] = buf.current_epoch;
        buf.dist[w] = buf.dist[v] + 1;
        buf.queue.push_back(w);
      }
    }
  }
  return sum;
}

uint32_t bfs_single_pair(const CollabNetwork& net, NodeIdx source, NodeIdx target,
                         BfsBuffers& buf) {
  buf.ensure(net.node_count());
  ++buf.current_epoch;
  buf.queue.clear();
  buf.queue.push_back(source);
  buf.epoch[source] = buf.current_epoch;
  buf.dist[source] = 0;
  for (size_t head = 0; head < buf.queue.size(); ++head) {
    NodeIdx v = buf.queue[head];
    if (v == target) return buf.dist[v];
    for (NodeIdx w : net.neighbors(v)) {
      if (buf.epoch[w] != buf.current_epoch) {
        buf.epoch[w] = buf.current_epoch;
        buf.dist[w] = buf.dist[v] + 1;
        buf.queue.push_back(w);
      }
    }
  }
  return kNoNode;  // unreachable; cannot happen inside one component
}

}  // namespace

LccStats graph_stats(const CollabNetwork& net, uint64_t sample_pairs, uint64_t seed,
                     uint64_t exact_threshold, int workers) {
  LccStats stats;
  stats.lcc_nodes = largest_connected_component(net);
  stats.lcc_size = stats.lcc_nodes.size();
  if (stats.lcc_size == 0) return stats;

  uint64_t degree_sum = 0;
  for (NodeIdx v : stats.lcc_nodes) degree_sum += net.degree(v);
  stats.avg_degree = static_cast<double>(degree_sum) / static_cast<double>(stats.lcc_size);

  if (stats.lcc_size < 2) return stats;

  const size_t n = stats.lcc_nodes.size();
  workers = std::max(1, workers);
  if (sample_pairs == 0 || stats.lcc_size <= exact_threshold) {
    // Exact: one BFS per LCC node; every reached node is in the LCC.
    std::vector<uint64_t> partial(workers, 0);
    parallel_chunks(n, workers, [&](int w, size_t lo, size_t hi) {
      BfsBuffers buf;
      uint64_t sum = 0;
      for (size_t i = lo; i < hi; ++i) sum += bfs_distance_sum(net, stats.lcc_nodes[i], buf);
      partial[w] = sum;
    });
    uint64_t total = 0;
    for (uint64_t s : partial) total += s;
    const double ordered_pairs = static_cast<double>(n) * static_cast<double>(n - 1);
    stats.avg_shortest_path = static_cast<double>(total) / ordered_pairs;
    stats.sample_pairs = 0;
  } else {
    // Sampled: the pair list is drawn up front from the seed, so the result
    // does not depend on the worker count.
    std::vector<std::pair<NodeIdx, NodeIdx>> pairs;
    pairs.reserve(sample_pairs);
    Rng rng(substream_seed(seed, "graph_stats.pairs"));
    for (uint64_t i = 0; i < sample_pairs; ++i) {
      uint64_t a = rng.uniform(n);
      uint64_t b = rng.uniform(n - 1);
      if (b >= a) ++b;
      pairs.emplace_back(stats.lcc_nodes[a], stats.lcc_nodes[b]);
    }
    std::vector<uint64_t> partial(workers, 0);
    parallel_chunks(pairs.size(), workers, [&](int w, size_t lo, size_t hi) {
      BfsBuffers buf;
      uint64_t sum = 0;
      for (size_t i = lo; i < hi; ++i) {
        sum += bfs_single_pair(net, pairs[i].first, pairs[i].second, buf);
      }
      partial[w] = sum;
    });
    uint64_t total = 0;
    for (uint64_t s : partial) total += s;
    stats.avg_shortest_path = static_cast<double>(total) / static_cast<double>(sample_pairs);
    stats.sample_pairs = sample_pairs;
  }
  return stats;
}

}  // namespace xidx
