#include "xidx/distance.hpp"

#include <algorithm>
#include <cassert>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <unordered_set>

#include "xidx/error.hpp"
#include "xidx/parallel.hpp"

namespace xidx {

namespace {

// Reusable BFS scratch space. Epoch stamps avoid clearing the arrays between
// the many searches one worker performs.
struct BfsScratch {
  std::vector<uint32_t> dist;
  std::vector<uint32_t> stamp;
  std::vector<NodeIdx> queue;
  uint32_t epoch = 0;

  void ensure(size_t n) {
    if (stamp.size() < n) {
      stamp.resize(n, 0);
      dist.resize(n);
    }
  }
  bool visited(NodeIdx v) const { return stamp[v] == epoch; }
};

// Labels distances from the seed set to every reachable node; with a depth
// cap only nodes at distance <= cap are labeled.
void multi_source_bfs(const CollabNetwork& net, std::span<const NodeIdx> seeds,
                      int32_t depth_cap, BfsScratch& bfs) {
  bfs.ensure(net.node_count());
  ++bfs.epoch;
  bfs.queue.clear();
  for (NodeIdx s : seeds) {
    if (bfs.stamp[s] != bfs.epoch) {
      bfs.stamp[s] = bfs.epoch;
      bfs.dist[s] = 0;
      bfs.queue.push_back(s);
    }
  }
  for (size_t head = 0; head < bfs.queue.size(); ++head) {
    NodeIdx v = bfs.queue[head];
    if (depth_cap >= 0 && bfs.dist[v] >= static_cast<uint32_t>(depth_cap)) continue;
    for (NodeIdx w : net.neighbors(v)) {
      if (bfs.stamp[w] != bfs.epoch) {
        bfs.stamp[w] = bfs.epoch;
        bfs.dist[w] = bfs.dist[v] + 1;
        bfs.queue.push_back(w);
      }
    }
  }
}

}  // namespace

Distance paper_pair_distance(const CollabNetwork& net, std::span<const std::string> authors_p,
                             std::span<const std::string> authors_q) {
  if (authors_p.empty() || authors_q.empty()) {
    throw InvalidArgument("paper_pair_distance: author sets must be nonempty");
  }
  // Identity dominates topology: a shared author id means distance 0 even if
  // that author is absent from the window graph.
  {
    std::unordered_set<std::string_view> p_set(authors_p.begin(), authors_p.end());
    for (const auto& b : authors_q) {
      if (p_set.count(b)) return Distance::finite(0);
    }
  }
  std::vector<NodeIdx> seeds;
  for (const auto& a : authors_p) {
    if (auto v = net.find(a)) seeds.push_back(*v);
  }
  std::vector<NodeIdx> targets;
  for (const auto& b : authors_q) {
    if (auto v = net.find(b)) targets.push_back(*v);
  }
  if (seeds.empty() || targets.empty()) return Distance::infinite();

  BfsScratch bfs;
  multi_source_bfs(net, seeds, -1, bfs);
  Distance best = Distance::infinite();
  for (NodeIdx t : targets) {
    if (bfs.visited(t)) best = std::min(best, Distance::finite(bfs.dist[t]));
  }
  return best;
}

std::vector<CitationDistanceRecord> distances_for_year(const CorpusIndex& corpus,
                                                       const CollabNetwork& net, int32_t t,
                                                       int workers, int32_t depth_cap) {
  if (net.year() != t) throw InvalidArgument("distances_for_year: net.year != t");
  if (depth_cap == 0) throw InvalidArgument("distances_for_year: depth cap must be >= 1");

  auto citations = corpus.citations_in_year(t);
  std::vector<CitationDistanceRecord> out(citations.size());
  if (citations.empty()) return out;

  // Corpus author -> window-graph node, resolved once.
  std::vector<NodeIdx> author_node(corpus.author_count(), kNoNode);
  for (NodeIdx v = 0; v < net.node_count(); ++v) {
    if (auto a = corpus.find_author(net.node_id(v))) author_node[*a] = v;
  }

  // Citations are sorted by (cited, citing); one BFS serves each run of
  // records that share the cited paper.
  std::vector<std::pair<size_t, size_t>> groups;
  for (size_t i = 0; i < citations.size();) {
    size_t j = i;
    while (j < citations.size() && citations[j].cited == citations[i].cited) ++j;
    groups.emplace_back(i, j);
    i = j;
  }

  parallel_chunks(groups.size(), workers, [&](int, size_t glo, size_t ghi) {
    BfsScratch bfs;
    std::vector<uint32_t> author_stamp(corpus.author_count(), 0);
    uint32_t author_epoch = 0;
    std::vector<NodeIdx> seeds;

    for (size_t g = glo; g < ghi; ++g) {
      const auto [lo, hi] = groups[g];
      const PaperIdx cited = citations[lo].cited;
      const auto cited_authors = corpus.paper_authors(cited);

      ++author_epoch;
      seeds.clear();
      for (AuthorIdx a : cited_authors) {
        author_stamp[a] = author_epoch;
        if (author_node[a] != kNoNode) seeds.push_back(author_node[a]);
      }
      if (!seeds.empty()) multi_source_bfs(net, seeds, depth_cap, bfs);

      for (size_t i = lo; i < hi; ++i) {
        const PaperIdx citing = citations[i].citing;
        CitationDistanceRecord rec{cited, citing, t, Distance::infinite(), false};

        bool shared = false;
        bool target_in_net = false;
        Distance best = Distance::infinite();
        for (AuthorIdx b : corpus.paper_authors(citing)) {
          if (author_stamp[b] == author_epoch) {
            shared = true;
            break;
          }
          NodeIdx v = author_node[b];
          if (v != kNoNode) {
            target_in_net = true;
            if (!seeds.empty() && bfs.visited(v)) {
              best = std::min(best, Distance::finite(bfs.dist[v]));
            }
          }
        }
        if (shared) {
          rec.distance = Distance::finite(0);
        } else if (best.is_finite()) {
          rec.distance = best;
        } else if (depth_cap >= 0 && !seeds.empty() && target_in_net) {
          // The cap hid the answer: all we know is distance >= cap.
          rec.distance = Distance::finite(static_cast<uint32_t>(depth_cap));
          rec.censored = true;
        }
        out[i] = rec;
      }
    }
  });
  return out;
}

YearContext average_citation_distance(std::span<const CitationDistanceRecord> records,
                                      std::span<const NodeIdx> lcc, const CorpusIndex& corpus,
                                      const CollabNetwork& net) {
  if (records.empty()) throw Degenerate("d_bar undefined: no citation records");
  const int32_t year = records.front().citing_year;

  std::vector<uint8_t> in_lcc(net.node_count(), 0);
  for (NodeIdx v : lcc) in_lcc[v] = 1;

  std::vector<NodeIdx> author_node(corpus.author_count(), kNoNode);
  for (NodeIdx v = 0; v < net.node_count(); ++v) {
    if (auto a = corpus.find_author(net.node_id(v))) author_node[*a] = v;
  }

  // -1 unknown, else 0/1: does the paper have an author inside the LCC?
  std::vector<int8_t> paper_flag(corpus.paper_count(), -1);
  auto has_lcc_author = [&](PaperIdx p) -> bool {
    int8_t& f = paper_flag[p];
    if (f < 0) {
      f = 0;
      for (AuthorIdx a : corpus.paper_authors(p)) {
        NodeIdx v = author_node[a];
        if (v != kNoNode && in_lcc[v]) {
          f = 1;
          break;
        }
      }
    }
    return f != 0;
  };

  uint64_t sum = 0;
  uint64_t count = 0;
  for (const auto& rec : records) {
    if (rec.citing_year != year) {
      throw InvalidArgument("average_citation_distance: mixed citing years");
    }
    if (rec.censored) {
      throw InvalidArgument("average_citation_distance: capped records cannot enter d_bar");
    }
    if (!has_lcc_author(rec.cited) || !has_lcc_author(rec.citing)) continue;
    // Both sides touch the LCC, so the distance is finite.
    assert(rec.distance.is_finite());
    if (rec.distance.is_infinite()) {
      throw Error("average_citation_distance: infinite distance on an LCC-valid pair");
    }
    sum += rec.distance.value();
    ++count;
  }
  if (count == 0) {
    throw Degenerate("d_bar undefined for year " + std::to_string(year) + ": no valid pairs");
  }
  const double d_bar = static_cast<double>(sum) / static_cast<double>(count);
  if (d_bar <= 0.0) {
    throw Degenerate("d_bar undefined for year " + std::to_string(year) +
                     ": all valid pairs have distance 0");
  }
  return YearContext{year, d_bar, 1.0 / d_bar, count};
}

void ContextTable::insert_substituted(int32_t year, const YearContext& donor,
                                      uint64_t valid_pairs) {
  by_year_[year] = YearContext{year, donor.d_bar, donor.lambda, valid_pairs};
  substituted_from_[year] = donor.year;
}

const YearContext* ContextTable::find(int32_t year) const {
  auto it = by_year_.find(year);
  return it == by_year_.end() ? nullptr : &it->second;
}

const YearContext& ContextTable::at(int32_t year) const {
  const YearContext* ctx = find(year);
  if (!ctx) throw NotFound("no year context for year " + std::to_string(year));
  return *ctx;
}

DistanceSet compute_distances(const CorpusIndex& corpus, int32_t from, int32_t to,
                              int32_t window, int workers, int32_t depth_cap) {
  if (from > to) throw InvalidArgument("compute_distances: from > to");
  DistanceSet set;
  set.depth_cap = depth_cap;

  std::optional<YearContext> last_real;
  for (int32_t year : corpus.citation_years()) {
    if (year < from || year > to) continue;
    CollabNetwork net = build_window_graph(corpus, year, window);
    auto records = distances_for_year(corpus, net, year, workers, depth_cap);
    if (records.empty()) continue;

    const bool capped =
        std::any_of(records.begin(), records.end(), [](const auto& r) { return r.censored; });
    if (capped) {
      // The cap may have censored valid pairs, so this year's d_bar is not
      // trustworthy; fall back to the nearest earlier year.
      set.capped_years.push_back(year);
      if (last_real) set.contexts.insert_substituted(year, *last_real);
    } else {
      auto lcc = largest_connected_component(net);
      try {
        YearContext ctx = average_citation_distance(records, lcc, corpus, net);
        set.contexts.insert(ctx);
        last_real = ctx;
      } catch (const Degenerate&) {
        if (last_real) set.contexts.insert_substituted(year, *last_real);
      }
    }
    set.records.insert(set.records.end(), records.begin(), records.end());
  }
  return set;
}

std::string format_distance(Distance d, bool censored) {
  if (censored) return ">=" + std::to_string(d.value());
  if (d.is_infinite()) return "inf";
  return std::to_string(d.value());
}

namespace {

Distance parse_distance(std::string_view s, bool& censored) {
  censored = false;
  if (s == "inf") return Distance::infinite();
  if (s.substr(0, 2) == ">=") {
    censored = true;
    s.remove_prefix(2);
  }
  uint32_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw IoError("bad distance value: " + std::string(s));
  }
  return Distance::finite(v);
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  size_t start = 0;
  for (size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == '\t') {
      fields.push_back(line.substr(start, i - start));
      start = i + 1;
    }
  }
  return fields;
}

constexpr const char* kDistanceHeader = "citing_year\tcited_paper_id\tciting_paper_id\tdistance";
constexpr const char* kContextHeader = "year\td_bar\tvalid_pair_count";

}  // namespace

void write_distance_table(const DistanceSet& set, const CorpusIndex& corpus, std::ostream& out) {
  out << kDistanceHeader << '\n';
  for (const auto& rec : set.records) {
    out << rec.citing_year << '\t' << corpus.paper(rec.cited).paper_id << '\t'
        << corpus.paper(rec.citing).paper_id << '\t'
        << format_distance(rec.distance, rec.censored) << '\n';
  }
  if (!out) throw IoError("write_distance_table: write failed");
}

void write_context_table(const DistanceSet& set, std::ostream& out) {
  out << kContextHeader << '\n';
  char buf[64];
  for (const auto& [year, ctx] : set.contexts.all()) {
    // %.17g round-trips, so a reloaded set reproduces x bit-for-bit.
    std::snprintf(buf, sizeof(buf), "%.17g", ctx.d_bar);
    out << year << '\t' << buf << '\t' << ctx.valid_pair_count << '\n';
  }
  if (!out) throw IoError("write_context_table: write failed");
}

DistanceSet load_distance_set(const CorpusIndex& corpus, std::istream& distances,
                              std::istream& contexts) {
  DistanceSet set;
  std::string line;

  if (!std::getline(distances, line) || line != kDistanceHeader) {
    throw IoError("distance table: missing or unexpected header");
  }
  while (std::getline(distances, line)) {
    if (line.empty()) continue;
    auto f = split_tabs(line);
    if (f.size() != 4) throw IoError("distance table: expected 4 fields: " + line);
    CitationDistanceRecord rec;
    rec.citing_year = static_cast<int32_t>(std::stol(std::string(f[0])));
    auto cited = corpus.find_paper(f[1]);
    auto citing = corpus.find_paper(f[2]);
    if (!cited || !citing) {
      throw NotFound("distance table references unknown paper: " + std::string(!cited ? f[1] : f[2]));
    }
    rec.cited = *cited;
    rec.citing = *citing;
    rec.distance = parse_distance(f[3], rec.censored);
    set.records.push_back(rec);
  }
  std::sort(set.records.begin(), set.records.end(), [](const auto& a, const auto& b) {
    return std::tie(a.citing_year, a.cited, a.citing) < std::tie(b.citing_year, b.cited, b.citing);
  });
  {
    std::vector<int32_t> capped;
    for (const auto& r : set.records) {
      if (r.censored) capped.push_back(r.citing_year);
    }
    std::sort(capped.begin(), capped.end());
    capped.erase(std::unique(capped.begin(), capped.end()), capped.end());
    set.capped_years = std::move(capped);
  }

  if (!std::getline(contexts, line) || line != kContextHeader) {
    throw IoError("context table: missing or unexpected header");
  }
  while (std::getline(contexts, line)) {
    if (line.empty()) continue;
    auto f = split_tabs(line);
    if (f.size() != 3) throw IoError("context table: expected 3 fields: " + line);
    YearContext ctx;
    ctx.year = static_cast<int32_t>(std::stol(std::string(f[0])));
    ctx.d_bar = std::stod(std::string(f[1]));
    ctx.valid_pair_count = std::stoull(std::string(f[2]));
    if (ctx.d_bar <= 0.0) throw IoError("context table: d_bar must be positive");
    ctx.lambda = 1.0 / ctx.d_bar;
    set.contexts.insert(ctx);
  }
  return set;
}

}  // namespace xidx
