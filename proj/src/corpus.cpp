#include "xidx/corpus.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <unordered_set>

#include "json.hpp"
#include "xidx/error.hpp"

namespace xidx {

namespace {

using nlohmann::json;

bool is_blank(const std::string& line) {
  return std::all_of(line.begin(), line.end(),
                     [](unsigned char c) { return std::isspace(c); });
}

// Validates one parsed line. Returns the reject reason, or empty on success.
std::string validate_line(const json& j, PaperRecord& rec, IngestReport& report) {
  if (!j.is_object()) return "not_object";

  auto id_it = j.find("id");
  if (id_it == j.end()) return "missing_id";
  if (!id_it->is_string()) return "bad_id";
  rec.paper_id = id_it->get<std::string>();
  if (rec.paper_id.empty()) return "empty_id";

  auto year_it = j.find("year");
  if (year_it == j.end()) return "missing_year";
  if (!year_it->is_number_integer()) return "bad_year";
  rec.year = year_it->get<int32_t>();
  if (rec.year < kMinYear || rec.year > kMaxYear) return "year_out_of_range";

  auto authors_it = j.find("authors");
  if (authors_it == j.end()) return "missing_authors";
  if (!authors_it->is_array()) return "bad_authors";
  rec.author_ids.clear();
  for (const auto& a : *authors_it) {
    if (!a.is_object()) return "bad_author_entry";
    auto aid = a.find("id");
    if (aid == a.end() || !aid->is_string()) return "bad_author_entry";
    std::string s = aid->get<std::string>();
    if (s.empty()) return "bad_author_entry";
    rec.author_ids.push_back(std::move(s));
  }
  if (rec.author_ids.empty()) return "empty_authors";

  // Duplicate author ids within one record are deduplicated (first
  // occurrence wins) and counted as a warning, not a reject.
  {
    std::unordered_set<std::string_view> seen;
    std::vector<std::string> unique;
    unique.reserve(rec.author_ids.size());
    bool had_dup = false;
    for (auto& a : rec.author_ids) {
      if (seen.insert(a).second) {
        unique.push_back(std::move(a));
      } else {
        had_dup = true;
      }
    }
    if (had_dup) {
      rec.author_ids = std::move(unique);
      ++report.warnings["duplicate_authors"];
    }
  }

  rec.reference_ids.clear();
  auto refs_it = j.find("references");
  if (refs_it != j.end()) {
    if (!refs_it->is_array()) return "bad_references";
    for (const auto& r : *refs_it) {
      if (!r.is_string()) return "bad_references";
      rec.reference_ids.push_back(r.get<std::string>());
    }
  }
  for (const auto& r : rec.reference_ids) {
    if (r == rec.paper_id) return "self_reference";
  }

  return {};
}

}  // namespace

std::vector<PaperRecord> parse_records(std::istream& in, IngestReport& report) {
  if (!in.good()) throw IoError("parse_records: input stream is not readable");

  std::vector<PaperRecord> records;
  std::string line;
  while (std::getline(in, line)) {
    ++report.lines_read;
    if (is_blank(line)) {
      ++report.blank_lines;
      continue;
    }
    json j = json::parse(line, nullptr, /*allow_exceptions=*/false);
    PaperRecord rec;
    std::string reason;
    if (j.is_discarded()) {
      reason = "bad_json";
    } else {
      reason = validate_line(j, rec, report);
    }
    if (reason.empty()) {
      ++report.accepted;
      records.push_back(std::move(rec));
    } else {
      ++report.rejected;
      ++report.reject_reasons[reason];
    }
  }
  if (in.bad()) throw IoError("parse_records: stream failed mid-read");
  return records;
}

std::string serialize_record(const PaperRecord& rec) {
  json authors = json::array();
  for (const auto& a : rec.author_ids) authors.push_back(json{{"id", a}});
  json j{{"authors", authors},
         {"id", rec.paper_id},
         {"references", rec.reference_ids},
         {"year", rec.year}};
  return j.dump();
}

CorpusIndex CorpusIndex::build(std::vector<PaperRecord> records) {
  CorpusIndex idx;

  std::sort(records.begin(), records.end(),
            [](const PaperRecord& a, const PaperRecord& b) { return a.paper_id < b.paper_id; });
  for (size_t i = 1; i < records.size(); ++i) {
    if (records[i].paper_id == records[i - 1].paper_id) {
      throw InvalidArgument("duplicate paper_id: " + records[i].paper_id);
    }
  }
  idx.papers_ = std::move(records);

  idx.paper_lookup_.reserve(idx.papers_.size() * 2);
  for (PaperIdx p = 0; p < idx.papers_.size(); ++p) {
    idx.paper_lookup_.emplace(idx.papers_[p].paper_id, p);
  }

  // Dense author table, sorted by id.
  {
    std::vector<std::string_view> all;
    for (const auto& rec : idx.papers_) {
      for (const auto& a : rec.author_ids) all.push_back(a);
    }
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    idx.author_ids_.reserve(all.size());
    for (auto v : all) idx.author_ids_.emplace_back(v);
    idx.author_lookup_.reserve(all.size() * 2);
    for (AuthorIdx a = 0; a < idx.author_ids_.size(); ++a) {
      idx.author_lookup_.emplace(idx.author_ids_[a], a);
    }
  }

  // Paper -> authors CSR (input author order within each paper).
  idx.paper_author_offsets_.reserve(idx.papers_.size() + 1);
  idx.paper_author_offsets_.push_back(0);
  for (const auto& rec : idx.papers_) {
    for (const auto& a : rec.author_ids) {
      idx.paper_author_data_.push_back(idx.author_lookup_.at(a));
    }
    idx.paper_author_offsets_.push_back(static_cast<uint32_t>(idx.paper_author_data_.size()));
  }

  // Author -> papers CSR; dense paper order ascending = sorted by paper id.
  {
    std::vector<uint32_t> counts(idx.author_ids_.size() + 1, 0);
    for (PaperIdx p = 0; p < idx.papers_.size(); ++p) {
      for (AuthorIdx a : idx.paper_authors(p)) ++counts[a + 1];
    }
    for (size_t i = 1; i < counts.size(); ++i) counts[i] += counts[i - 1];
    idx.author_paper_offsets_ = counts;
    idx.author_paper_data_.resize(idx.paper_author_data_.size());
    std::vector<uint32_t> cursor(idx.author_paper_offsets_.begin(),
                                 idx.author_paper_offsets_.end() - 1);
    for (PaperIdx p = 0; p < idx.papers_.size(); ++p) {
      for (AuthorIdx a : idx.paper_authors(p)) idx.author_paper_data_[cursor[a]++] = p;
    }
  }

  if (!idx.papers_.empty()) {
    idx.min_year_ = idx.max_year_ = idx.papers_[0].year;
  }
  for (PaperIdx p = 0; p < idx.papers_.size(); ++p) {
    const auto& rec = idx.papers_[p];
    idx.min_year_ = std::min(idx.min_year_, rec.year);
    idx.max_year_ = std::max(idx.max_year_, rec.year);
    idx.papers_by_year_[rec.year].push_back(p);
  }

  // Citation edges keyed by the citing paper's year, set semantics per
  // (cited, citing) pair; unresolvable references are dropped and tallied.
  std::vector<PaperIdx> cited_scratch;
  for (PaperIdx q = 0; q < idx.papers_.size(); ++q) {
    const auto& rec = idx.papers_[q];
    cited_scratch.clear();
    for (const auto& ref : rec.reference_ids) {
      auto it = idx.paper_lookup_.find(ref);
      if (it == idx.paper_lookup_.end()) {
        ++idx.dangling_references_;
      } else {
        cited_scratch.push_back(it->second);
      }
    }
    std::sort(cited_scratch.begin(), cited_scratch.end());
    auto last = std::unique(cited_scratch.begin(), cited_scratch.end());
    idx.duplicate_citations_ += static_cast<uint64_t>(cited_scratch.end() - last);
    cited_scratch.erase(last, cited_scratch.end());
    for (PaperIdx cited : cited_scratch) {
      idx.citations_by_year_[rec.year].push_back({cited, q});
    }
    idx.citation_count_ += cited_scratch.size();
  }
  for (auto& [year, edges] : idx.citations_by_year_) {
    std::sort(edges.begin(), edges.end(), [](const Citation& a, const Citation& b) {
      return a.cited != b.cited ? a.cited < b.cited : a.citing < b.citing;
    });
    idx.citation_years_.push_back(year);
  }

  return idx;
}

std::optional<PaperIdx> CorpusIndex::find_paper(std::string_view id) const {
  auto it = paper_lookup_.find(id);
  if (it == paper_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<AuthorIdx> CorpusIndex::find_author(std::string_view id) const {
  auto it = author_lookup_.find(id);
  if (it == author_lookup_.end()) return std::nullopt;
  return it->second;
}

std::span<const AuthorIdx> CorpusIndex::paper_authors(PaperIdx p) const {
  return {paper_author_data_.data() + paper_author_offsets_[p],
          paper_author_data_.data() + paper_author_offsets_[p + 1]};
}

std::span<const PaperIdx> CorpusIndex::author_papers(AuthorIdx a) const {
  return {author_paper_data_.data() + author_paper_offsets_[a],
          author_paper_data_.data() + author_paper_offsets_[a + 1]};
}

std::span<const PaperIdx> CorpusIndex::papers_in_year(int32_t year) const {
  auto it = papers_by_year_.find(year);
  if (it == papers_by_year_.end()) return {};
  return it->second;
}

std::span<const Citation> CorpusIndex::citations_in_year(int32_t year) const {
  auto it = citations_by_year_.find(year);
  if (it == citations_by_year_.end()) return {};
  return it->second;
}

void CorpusIndex::save(std::ostream& out) const {
  for (const auto& rec : papers_) {
    out << serialize_record(rec) << '\n';
  }
  if (!out) throw IoError("CorpusIndex::save: write failed");
}

}  // namespace xidx
