#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "xidx/corpus.hpp"

namespace xidx {

// One scholar archetype: how much it publishes and how far its incoming
// citations travel. citation_radius is the probability that a citation to
// the archetype originates outside its home community, so a small radius
// yields short-range local attention and a large one cross-community reach.
struct ArchetypeProfile {
  uint32_t count = 0;
  uint32_t papers_per_year = 1;
  double citation_radius = 0.5;
};

struct SynthConfig {
  uint64_t seed = 42;
  int32_t year_from = 2000;
  int32_t year_to = 2012;
  uint32_t n_background_authors = 240;
  uint32_t community_count = 8;
  double inter_community_edge_prob = 0.08;
  ArchetypeProfile hp_profile{10, 75, 0.05};
  ArchetypeProfile ta_profile{10, 2, 0.90};
  uint32_t background_papers_per_community_year = 6;
  uint32_t background_refs_per_paper = 3;
  uint32_t archetype_refs_per_paper = 2;
};

struct SynthCorpus {
  std::vector<PaperRecord> records;
  std::vector<std::string> hp_authors;
  std::vector<std::string> ta_authors;
};

// Deterministic for a fixed config: background authors form a planted
// multi-community collaboration structure, hyperprolific archetypes flood
// papers and draw same-community citations, long-reach archetypes publish
// little and draw cross-community citations. Output always passes corpus
// validation with zero rejects. Throws InvalidArgument on infeasible
// configs.
SynthCorpus generate_corpus(const SynthConfig& config);

struct SynthTrajectories {
  std::vector<std::array<double, 10>> series;
  std::vector<uint8_t> breakout;  // 1 = breakout archetype
};

// Ten-year cumulative index series for n scholars, a `breakout_fraction`
// share of which follows a breakout profile: earlier onset, steeper early
// growth, strong late-stage acceleration, higher volatility. The rest grow
// slowly and roughly linearly. Deterministic for a fixed seed.
SynthTrajectories generate_trajectories(size_t n, double breakout_fraction, uint64_t seed);

}  // namespace xidx
