#pragma once
// Candidate generation: block on exact normalized (first, last) name equality,
// then keep candidates born 10-70 years (inclusive) before the child. The
// empty option (no parent among the candidates) is always implied.

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "genlink/records.hpp"
#include "genlink/stringsim.hpp"

namespace genlink {

struct CandidateOptions {
  int min_gap_years = 10;
  int max_gap_years = 70;
  // Bound on candidate-set size so the pairwise collective step stays O(c^2).
  size_t max_candidates = 256;
};

class CandidateIndex {
 public:
  CandidateIndex() = default;

  explicit CandidateIndex(const std::vector<BirthRecord>& records) { build(records); }

  void build(const std::vector<BirthRecord>& records) {
    records_ = &records;
    buckets_.clear();
    indexed_ = skipped_ = 0;
    for (uint32_t i = 0; i < records.size(); ++i) {
      const auto& r = records[i];
      if (r.norm_first.empty() || r.norm_last.empty()) {
        ++skipped_;
        continue;
      }
      buckets_[key(r.norm_first, r.norm_last)].push_back(i);
      ++indexed_;
    }
    for (auto& [k, bucket] : buckets_) {
      std::sort(bucket.begin(), bucket.end(), [&](uint32_t a, uint32_t b) {
        if (records[a].birth_date.year != records[b].birth_date.year)
          return records[a].birth_date.year < records[b].birth_date.year;
        return records[a].id < records[b].id;
      });
    }
  }

  std::span<const uint32_t> lookup(const std::string& norm_first,
                                   const std::string& norm_last) const {
    auto it = buckets_.find(key(norm_first, norm_last));
    if (it == buckets_.end()) return {};
    return it->second;
  }

  size_t bucket_count() const { return buckets_.size(); }
  size_t indexed_count() const { return indexed_; }
  size_t skipped_count() const { return skipped_; }
  const std::vector<BirthRecord>& records() const { return *records_; }

 private:
  static std::string key(const std::string& first, const std::string& last) {
    std::string k;
    k.reserve(first.size() + last.size() + 1);
    k += first;
    k.push_back('\x1f');
    k += last;
    return k;
  }

  const std::vector<BirthRecord>* records_ = nullptr;
  std::unordered_map<std::string, std::vector<uint32_t>> buckets_;
  size_t indexed_ = 0, skipped_ = 0;
};

struct CandidateSet {
  uint32_t child = 0;
  Role role = Role::mother;
  std::vector<uint32_t> candidates;  // record indexes; the empty option is implicit
  size_t truncated_from = 0;         // pre-cap size when the cap was applied
};

inline CandidateSet generate_candidates(const std::vector<BirthRecord>& records, uint32_t child,
                                        Role role, const CandidateIndex& index,
                                        const CandidateOptions& opts = {}) {
  CandidateSet set;
  set.child = child;
  set.role = role;
  const BirthRecord& rec = records[child];
  const std::string& first = rec.parent_norm_first(role);
  const std::string& last = rec.parent_norm_last(role);
  if (first.empty() || last.empty()) return set;

  const int child_year = rec.birth_date.year;
  const int lo_year = child_year - opts.max_gap_years;
  const int hi_year = child_year - opts.min_gap_years;
  auto bucket = index.lookup(first, last);
  auto begin = std::lower_bound(bucket.begin(), bucket.end(), lo_year,
                                [&](uint32_t idx, int y) { return records[idx].birth_date.year < y; });
  for (auto it = begin; it != bucket.end(); ++it) {
    if (records[*it].birth_date.year > hi_year) break;
    if (*it == child) continue;
    set.candidates.push_back(*it);
  }

  if (opts.max_candidates > 0 && set.candidates.size() > opts.max_candidates) {
    set.truncated_from = set.candidates.size();
    // Cheap prescreen: within a name bucket first/last are identical, so rank
    // by patronym similarity against the parent name on the child's record.
    const std::string& pat = rec.parent_norm_patronym(role);
    std::vector<std::pair<double, uint32_t>> scored;
    scored.reserve(set.candidates.size());
    for (uint32_t c : set.candidates)
      scored.emplace_back(jaro_winkler(pat, records[c].norm_patronym), c);
    std::stable_sort(scored.begin(), scored.end(), [&](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first > b.first;
      if (records[a.second].birth_date.year != records[b.second].birth_date.year)
        return records[a.second].birth_date.year < records[b.second].birth_date.year;
      return records[a.second].id < records[b.second].id;
    });
    set.candidates.clear();
    for (size_t i = 0; i < opts.max_candidates; ++i) set.candidates.push_back(scored[i].second);
    std::sort(set.candidates.begin(), set.candidates.end(), [&](uint32_t a, uint32_t b) {
      if (records[a].birth_date.year != records[b].birth_date.year)
        return records[a].birth_date.year < records[b].birth_date.year;
      return records[a].id < records[b].id;
    });
  }
  return set;
}

}  // namespace genlink
