#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "xidx/types.hpp"

namespace xidx {

inline constexpr int32_t kMinYear = 1900;
inline constexpr int32_t kMaxYear = 2100;

// One publication as ingested: id, calendar year, author ids (deduplicated,
// input order preserved) and the ids of the papers it cites.
struct PaperRecord {
  std::string paper_id;
  int32_t year = 0;
  std::vector<std::string> author_ids;
  std::vector<std::string> reference_ids;
};

struct IngestReport {
  uint64_t lines_read = 0;
  uint64_t accepted = 0;
  uint64_t rejected = 0;
  uint64_t blank_lines = 0;
  std::map<std::string, uint64_t> reject_reasons;
  std::map<std::string, uint64_t> warnings;
};

// Parses line-delimited records. Malformed lines are rejected and tallied in
// the report; they never abort the stream. Output order equals input order.
// Throws IoError if the stream itself is unreadable.
std::vector<PaperRecord> parse_records(std::istream& in, IngestReport& report);

// Canonical single-line JSON form of a record (stable key order, no spaces).
std::string serialize_record(const PaperRecord& rec);

// A directed citation event: `cited` is cited by `citing`.
struct Citation {
  PaperIdx cited;
  PaperIdx citing;
};

// Immutable index over a validated record set. Papers and authors get dense
// indices sorted by id, so every downstream ordering is deterministic.
// Citations are keyed by the citing paper's publication year and deduplicated
// per (cited, citing) pair; references to unknown papers are dropped and
// tallied, never kept.
class CorpusIndex {
 public:
  // Throws InvalidArgument on duplicate paper ids.
  static CorpusIndex build(std::vector<PaperRecord> records);

  size_t paper_count() const { return papers_.size(); }
  size_t author_count() const { return author_ids_.size(); }
  uint64_t citation_count() const { return citation_count_; }
  uint64_t dangling_references() const { return dangling_references_; }
  uint64_t duplicate_citations() const { return duplicate_citations_; }

  const PaperRecord& paper(PaperIdx p) const { return papers_[p]; }
  const std::string& author_id(AuthorIdx a) const { return author_ids_[a]; }

  std::optional<PaperIdx> find_paper(std::string_view id) const;
  std::optional<AuthorIdx> find_author(std::string_view id) const;

  std::span<const AuthorIdx> paper_authors(PaperIdx p) const;
  std::span<const PaperIdx> author_papers(AuthorIdx a) const;

  // Papers published in `year`, ascending dense index.
  std::span<const PaperIdx> papers_in_year(int32_t year) const;

  // Citations whose citing paper was published in `year`, sorted by
  // (cited, citing). Empty span for years without citations.
  std::span<const Citation> citations_in_year(int32_t year) const;

  // Years that have at least one citation, ascending.
  const std::vector<int32_t>& citation_years() const { return citation_years_; }

  bool empty() const { return papers_.empty(); }
  int32_t min_year() const { return min_year_; }
  int32_t max_year() const { return max_year_; }

  // Writes the canonical index file: one record per line, sorted by paper id.
  void save(std::ostream& out) const;

 private:
  std::vector<PaperRecord> papers_;  // dense index = position, sorted by paper_id
  std::unordered_map<std::string_view, PaperIdx> paper_lookup_;
  std::vector<std::string> author_ids_;  // dense index = position, sorted
  std::unordered_map<std::string_view, AuthorIdx> author_lookup_;

  // CSR paper -> dense author indices.
  std::vector<uint32_t> paper_author_offsets_;
  std::vector<AuthorIdx> paper_author_data_;

  // CSR author -> dense paper indices (ascending).
  std::vector<uint32_t> author_paper_offsets_;
  std::vector<PaperIdx> author_paper_data_;

  std::map<int32_t, std::vector<PaperIdx>> papers_by_year_;
  std::map<int32_t, std::vector<Citation>> citations_by_year_;
  std::vector<int32_t> citation_years_;

  uint64_t citation_count_ = 0;
  uint64_t dangling_references_ = 0;
  uint64_t duplicate_citations_ = 0;
  int32_t min_year_ = 0;
  int32_t max_year_ = 0;
};

}  // namespace xidx
