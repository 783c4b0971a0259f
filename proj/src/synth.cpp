#include "xidx/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <span>

#include "xidx/error.hpp"
#include "xidx/rng.hpp"

namespace xidx {

namespace {

std::string paper_id(uint64_t seq) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "p%07llu", static_cast<unsigned long long>(seq));
  return buf;
}

std::string bg_author_id(uint32_t community, uint32_t index) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "a_c%02u_%03u", community, index);
  return buf;
}

std::string archetype_id(const char* prefix, uint32_t index) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%s_%02u", prefix, index);
  return buf;
}

void validate(const SynthConfig& cfg) {
  if (cfg.year_from > cfg.year_to) throw InvalidArgument("synth: year_from > year_to");
  if (cfg.community_count == 0) throw InvalidArgument("synth: community_count must be >= 1");
  if (cfg.n_background_authors < 4 * cfg.community_count) {
    throw InvalidArgument("synth: need at least 4 background authors per community");
  }
  if (cfg.inter_community_edge_prob < 0.0 || cfg.inter_community_edge_prob > 1.0 ||
      cfg.hp_profile.citation_radius < 0.0 || cfg.hp_profile.citation_radius > 1.0 ||
      cfg.ta_profile.citation_radius < 0.0 || cfg.ta_profile.citation_radius > 1.0) {
    throw InvalidArgument("synth: probabilities must lie in [0, 1]");
  }
  if (cfg.hp_profile.papers_per_year < 1 || cfg.ta_profile.papers_per_year < 1 ||
      cfg.background_papers_per_community_year < 1) {
    throw InvalidArgument("synth: papers_per_year must be >= 1");
  }
}

}  // namespace

SynthCorpus generate_corpus(const SynthConfig& cfg) {
  validate(cfg);
  Rng rng(substream_seed(cfg.seed, "synth.corpus"));

  const uint32_t cc = cfg.community_count;
  std::vector<std::vector<std::string>> community_authors(cc);
  for (uint32_t i = 0; i < cfg.n_background_authors; ++i) {
    const uint32_t c = i % cc;
    community_authors[c].push_back(
        bg_author_id(c, static_cast<uint32_t>(community_authors[c].size())));
  }

  SynthCorpus out;
  std::vector<uint32_t> hp_home(cfg.hp_profile.count), ta_home(cfg.ta_profile.count);
  for (uint32_t i = 0; i < cfg.hp_profile.count; ++i) {
    out.hp_authors.push_back(archetype_id("hp", i));
    hp_home[i] = i % cc;
  }
  for (uint32_t i = 0; i < cfg.ta_profile.count; ++i) {
    out.ta_authors.push_back(archetype_id("ta", i));
    ta_home[i] = i % cc;
  }

  // Reference pools hold only papers from completed (earlier) years.
  std::vector<std::vector<std::string>> bg_pool(cc);
  std::vector<std::vector<std::string>> bg_pool_staged(cc);

  auto pick_community_authors = [&](uint32_t c, size_t n_wanted) {
    std::vector<std::string> picked;
    const auto& pool = community_authors[c];
    n_wanted = std::min(n_wanted, pool.size());
    while (picked.size() < n_wanted) {
      const auto& candidate = pool[rng.uniform(pool.size())];
      if (std::find(picked.begin(), picked.end(), candidate) == picked.end()) {
        picked.push_back(candidate);
      }
    }
    return picked;
  };

  auto pick_other_community = [&](uint32_t c) {
    if (cc == 1) return c;
    uint32_t o = static_cast<uint32_t>(rng.uniform(cc - 1));
    return o >= c ? o + 1 : o;
  };

  // Chooses an archetype index honoring the citation radius: with
  // probability `radius` the target lives outside the citing community.
  auto pick_archetype = [&](std::span<const uint32_t> homes, uint32_t citing_community,
                            double radius) -> int64_t {
    if (homes.empty()) return -1;
    const bool cross = rng.bernoulli(radius);
    std::vector<uint32_t> eligible;
    for (uint32_t i = 0; i < homes.size(); ++i) {
      if ((homes[i] == citing_community) != cross) eligible.push_back(i);
    }
    if (eligible.empty()) return static_cast<int64_t>(rng.uniform(homes.size()));
    return eligible[rng.uniform(eligible.size())];
  };

  auto add_ref = [](PaperRecord& rec, const std::string& id) {
    if (std::find(rec.reference_ids.begin(), rec.reference_ids.end(), id) ==
        rec.reference_ids.end()) {
      rec.reference_ids.push_back(id);
    }
  };

  uint64_t seq = 0;
  const size_t hp_count = cfg.hp_profile.count;
  const size_t ta_count = cfg.ta_profile.count;
  std::vector<std::vector<std::string>> hp_pool(hp_count), ta_pool(ta_count);
  std::vector<std::vector<std::string>> hp_pool_staged(hp_count), ta_pool_staged(ta_count);

  for (int32_t year = cfg.year_from; year <= cfg.year_to; ++year) {
    for (uint32_t c = 0; c < cc; ++c) {
      for (uint32_t i = 0; i < cfg.background_papers_per_community_year; ++i) {
        PaperRecord rec;
        rec.paper_id = paper_id(seq++);
        rec.year = year;
        rec.author_ids = pick_community_authors(c, 2 + rng.uniform(3));
        if (rng.bernoulli(cfg.inter_community_edge_prob) && cc > 1) {
          // Bridge paper: one author comes from another community.
          const uint32_t o = pick_other_community(c);
          rec.author_ids.back() = community_authors[o][rng.uniform(community_authors[o].size())];
        }

        for (uint32_t r = 0; r < cfg.background_refs_per_paper; ++r) {
          const uint32_t src = rng.bernoulli(0.8) ? c : pick_other_community(c);
          if (!bg_pool[src].empty()) {
            add_ref(rec, bg_pool[src][rng.uniform(bg_pool[src].size())]);
          }
        }
        for (uint32_t r = 0; r < cfg.archetype_refs_per_paper; ++r) {
          const int64_t hp = pick_archetype(hp_home, c, cfg.hp_profile.citation_radius);
          if (hp >= 0 && !hp_pool[hp].empty()) {
            add_ref(rec, hp_pool[hp][rng.uniform(hp_pool[hp].size())]);
          }
        }
        for (uint32_t r = 0; r < cfg.archetype_refs_per_paper; ++r) {
          const int64_t ta = pick_archetype(ta_home, c, cfg.ta_profile.citation_radius);
          if (ta >= 0 && !ta_pool[ta].empty()) {
            add_ref(rec, ta_pool[ta][rng.uniform(ta_pool[ta].size())]);
          }
        }
        bg_pool_staged[c].push_back(rec.paper_id);
        out.records.push_back(std::move(rec));
      }
    }

    for (uint32_t i = 0; i < hp_count; ++i) {
      for (uint32_t k = 0; k < cfg.hp_profile.papers_per_year; ++k) {
        PaperRecord rec;
        rec.paper_id = paper_id(seq++);
        rec.year = year;
        rec.author_ids.push_back(out.hp_authors[i]);
        for (const auto& co : pick_community_authors(hp_home[i], 1 + rng.uniform(2))) {
          rec.author_ids.push_back(co);
        }
        if (!bg_pool[hp_home[i]].empty()) {
          add_ref(rec, bg_pool[hp_home[i]][rng.uniform(bg_pool[hp_home[i]].size())]);
        }
        hp_pool_staged[i].push_back(rec.paper_id);
        out.records.push_back(std::move(rec));
      }
    }

    for (uint32_t i = 0; i < ta_count; ++i) {
      for (uint32_t k = 0; k < cfg.ta_profile.papers_per_year; ++k) {
        PaperRecord rec;
        rec.paper_id = paper_id(seq++);
        rec.year = year;
        rec.author_ids.push_back(out.ta_authors[i]);
        for (const auto& co : pick_community_authors(ta_home[i], 1 + rng.uniform(2))) {
          rec.author_ids.push_back(co);
        }
        for (uint32_t r = 0; r < 2; ++r) {
          const uint32_t src = rng.bernoulli(0.5) ? ta_home[i] : pick_other_community(ta_home[i]);
          if (!bg_pool[src].empty()) {
            add_ref(rec, bg_pool[src][rng.uniform(bg_pool[src].size())]);
          }
        }
        ta_pool_staged[i].push_back(rec.paper_id);
        out.records.push_back(std::move(rec));
      }
    }

    for (uint32_t c = 0; c < cc; ++c) {
      auto& staged = bg_pool_staged[c];
      bg_pool[c].insert(bg_pool[c].end(), staged.begin(), staged.end());
      staged.clear();
    }
    for (size_t i = 0; i < hp_count; ++i) {
      hp_pool[i].insert(hp_pool[i].end(), hp_pool_staged[i].begin(), hp_pool_staged[i].end());
      hp_pool_staged[i].clear();
    }
    for (size_t i = 0; i < ta_count; ++i) {
      ta_pool[i].insert(ta_pool[i].end(), ta_pool_staged[i].begin(), ta_pool_staged[i].end());
      ta_pool_staged[i].clear();
    }
  }
  return out;
}

SynthTrajectories generate_trajectories(size_t n, double breakout_fraction, uint64_t seed) {
  if (breakout_fraction < 0.0 || breakout_fraction > 1.0) {
    throw InvalidArgument("generate_trajectories: breakout_fraction must lie in [0, 1]");
  }
  Rng rng(substream_seed(seed, "synth.trajectories"));
  const size_t n_breakout = static_cast<size_t>(std::llround(breakout_fraction * n));

  SynthTrajectories out;
  out.series.resize(n);
  out.breakout.assign(n, 0);

  for (size_t i = 0; i < n; ++i) {
    const bool breakout = i < n_breakout;
    out.breakout[i] = breakout ? 1 : 0;
    std::array<double, 10> inc{};
    if (breakout) {
      const int onset = rng.bernoulli(0.85) ? 1 : 2;
      const double early_base = rng.uniform_real(5.5, 8.5);
      const double accel = rng.uniform_real(2.5, 4.5);
      for (int k = onset; k <= 5; ++k) {
        inc[k - 1] = early_base * std::max(0.1, 1.0 + 0.25 * rng.normal());
      }
      for (int k = 6; k <= 10; ++k) {
        const double ramp = 1.0 + accel * (k - 5) / 5.0;
        inc[k - 1] = early_base * ramp * std::max(0.1, 1.0 + 0.20 * rng.normal());
      }
    } else {
      const double u = rng.uniform_real();
      const int onset = u < 0.50 ? 1 : u < 0.77 ? 2 : u < 0.92 ? 3 : 4;
      const double base = rng.uniform_real(0.6, 2.6);
      const double late_mult = rng.uniform_real(0.9, 1.9);
      for (int k = onset; k <= 10; ++k) {
        const double scale = k <= 5 ? 1.0 : late_mult;
        inc[k - 1] = base * scale * std::max(0.0, 1.0 + 0.35 * rng.normal());
      }
    }
    double acc = 0.0;
    for (int k = 0; k < 10; ++k) {
      acc += inc[k];
      out.series[i][k] = acc;
    }
  }
  return out;
}

}  // namespace xidx
