#pragma once
// Vital-record types, name/occupation normalization, and CSV ingestion.
//
// Normalization: transliterate Nordic diacritics, lowercase, drop anything
// non-alphabetic, then map through an optional external dictionary. The
// canonical side of every dictionary entry is itself a fixed point, so the
// whole transform is idempotent.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "genlink/csv.hpp"
#include "genlink/errors.hpp"
#include "genlink/geo.hpp"

namespace genlink {

struct Date {
  int year = 0;
  std::optional<int> month;
  std::optional<int> day;

  bool operator==(const Date&) const = default;
};

enum class Role : uint8_t { mother = 0, father = 1 };

inline const char* role_name(Role r) { return r == Role::mother ? "mother" : "father"; }

inline std::optional<Role> parse_role(std::string_view s) {
  if (s == "mother") return Role::mother;
  if (s == "father") return Role::father;
  return std::nullopt;
}

struct BirthRecord {
  std::string id;

  // Child, raw and normalized.
  std::string child_first, child_middle, child_last, child_patronym;
  std::string norm_first, norm_middle, norm_last, norm_patronym;

  Date birth_date;
  std::string parish_id;
  std::optional<GeoPoint> location;

  // Parents as written on this record. A multi-token first-name field is
  // split: first token -> first, the rest -> middle.
  std::string father_first, father_last, father_patronym, father_occupation_raw;
  std::string father_norm_first, father_norm_middle, father_norm_last, father_norm_patronym;
  std::string mother_first, mother_last, mother_patronym;
  std::string mother_norm_first, mother_norm_middle, mother_norm_last, mother_norm_patronym;
  std::optional<int> mother_reported_age_years;

  const std::string& parent_norm_first(Role r) const {
    return r == Role::mother ? mother_norm_first : father_norm_first;
  }
  const std::string& parent_norm_middle(Role r) const {
    return r == Role::mother ? mother_norm_middle : father_norm_middle;
  }
  const std::string& parent_norm_last(Role r) const {
    return r == Role::mother ? mother_norm_last : father_norm_last;
  }
  const std::string& parent_norm_patronym(Role r) const {
    return r == Role::mother ? mother_norm_patronym : father_norm_patronym;
  }
};

struct DeathRecord {
  std::string id;
  std::string norm_first, norm_last, norm_patronym;
  Date death_date;
  std::optional<int> age_at_death_years;
  std::optional<GeoPoint> location;
};

// Lowercase, transliterate diacritics, keep letters only.
inline std::string rule_normalize(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  size_t i = 0;
  while (i < raw.size()) {
    unsigned char c = static_cast<unsigned char>(raw[i]);
    if (c < 0x80) {
      if (c >= 'a' && c <= 'z') out.push_back(static_cast<char>(c));
      else if (c >= 'A' && c <= 'Z') out.push_back(static_cast<char>(c - 'A' + 'a'));
      ++i;
      continue;
    }
    // Decode one UTF-8 code point; invalid bytes are dropped.
    uint32_t cp = 0;
    size_t len = 0;
    if ((c & 0xe0) == 0xc0) { cp = c & 0x1f; len = 2; }
    else if ((c & 0xf0) == 0xe0) { cp = c & 0x0f; len = 3; }
    else if ((c & 0xf8) == 0xf0) { cp = c & 0x07; len = 4; }
    else { ++i; continue; }
    if (i + len > raw.size()) break;
    bool ok = true;
    for (size_t k = 1; k < len; ++k) {
      unsigned char cc = static_cast<unsigned char>(raw[i + k]);
      if ((cc & 0xc0) != 0x80) { ok = false; break; }
      cp = (cp << 6) | (cc & 0x3f);
    }
    i += ok ? len : 1;
    if (!ok) continue;
    switch (cp) {
      case 0xe4: case 0xc4: case 0xe5: case 0xc5: case 0xe1: case 0xc1:
      case 0xe0: case 0xc0: case 0xe2: case 0xc2: case 0xe3: case 0xc3:
        out.push_back('a'); break;
      case 0xf6: case 0xd6: case 0xf3: case 0xd3: case 0xf2: case 0xd2:
      case 0xf4: case 0xd4: case 0xf5: case 0xd5: case 0xf8: case 0xd8:
        out.push_back('o'); break;
      case 0xfc: case 0xdc: case 0xfa: case 0xda: case 0xf9: case 0xd9:
      case 0xfb: case 0xdb:
        out.push_back('u'); break;
      case 0xe9: case 0xc9: case 0xe8: case 0xc8: case 0xea: case 0xca:
      case 0xeb: case 0xcb:
        out.push_back('e'); break;
      case 0xed: case 0xcd: case 0xec: case 0xcc: case 0xee: case 0xce:
      case 0xef: case 0xcf:
        out.push_back('i'); break;
      case 0xfd: case 0xdd: case 0xff:
        out.push_back('y'); break;
      case 0xe6: case 0xc6: out += "ae"; break;
      case 0xdf: out += "ss"; break;
      case 0xe7: case 0xc7: out.push_back('c'); break;
      case 0xf1: case 0xd1: out.push_back('n'); break;
      default: break;  // other non-letters dropped
    }
  }
  return out;
}

class NameDictionary {
 public:
  struct Entry {
    std::string canonical;
    std::string provenance;
  };

  NameDictionary() = default;

  // Two-column CSV raw,canonical. Both sides are rule-normalized on load.
  static NameDictionary load(const std::string& path) {
    NameDictionary dict;
    CsvReader reader(path);
    size_t raw_col = reader.col("raw"), canon_col = reader.col("canonical");
    std::vector<std::string> fields;
    while (reader.next(fields)) {
      if (fields.size() <= std::max(raw_col, canon_col))
        throw DataError(path + ": short row " + std::to_string(reader.row_number()));
      std::string key = rule_normalize(fields[raw_col]);
      std::string canonical = rule_normalize(fields[canon_col]);
      if (key.empty() || canonical.empty()) continue;
      dict.insert(key, canonical, path + ":" + std::to_string(reader.row_number()));
    }
    return dict;
  }

  void insert(const std::string& key, const std::string& canonical,
              const std::string& provenance = "builtin") {
    auto it = entries_.find(key);
    if (it != entries_.end() && it->second.canonical != canonical)
      throw DataError("dictionary: conflicting entries for '" + key + "'");
    // Canonical tokens must be fixed points; mapping a canonical elsewhere
    // would make normalization non-idempotent.
    auto self = entries_.find(canonical);
    if (self != entries_.end() && self->second.canonical != canonical)
      throw DataError("dictionary: canonical '" + canonical + "' is itself remapped");
    entries_[key] = Entry{canonical, provenance};
    if (key != canonical) entries_.emplace(canonical, Entry{canonical, "fixed-point"});
  }

  // Total lookup: unknown tokens pass through unchanged.
  const std::string& resolve(const std::string& token) const {
    auto it = entries_.find(token);
    return it == entries_.end() ? token : it->second.canonical;
  }

  bool contains(const std::string& token) const { return entries_.count(token) > 0; }
  size_t size() const { return entries_.size(); }

 private:
  std::unordered_map<std::string, Entry> entries_;
};

inline std::string normalize_name(std::string_view raw, const NameDictionary& dict) {
  std::string t = rule_normalize(raw);
  if (t.empty()) return t;
  return dict.resolve(t);
}

class OccupationDictionary {
 public:
  OccupationDictionary() = default;

  static OccupationDictionary load(const std::string& path) {
    OccupationDictionary dict;
    CsvReader reader(path);
    size_t raw_col = reader.col("raw"), canon_col = reader.col("canonical");
    std::vector<std::string> fields;
    while (reader.next(fields)) {
      if (fields.size() <= std::max(raw_col, canon_col))
        throw DataError(path + ": short row " + std::to_string(reader.row_number()));
      dict.insert(rule_normalize(fields[raw_col]), rule_normalize(fields[canon_col]));
    }
    return dict;
  }

  void insert(const std::string& key, const std::string& canonical) {
    if (key.empty() || canonical.empty()) return;
    auto it = entries_.find(key);
    if (it != entries_.end() && it->second != canonical)
      throw DataError("occupation dictionary: conflicting entries for '" + key + "'");
    entries_[key] = canonical;
    canonicals_.insert(canonical);
  }

  std::optional<std::string> lookup(const std::string& cleaned) const {
    auto it = entries_.find(cleaned);
    if (it != entries_.end()) return it->second;
    if (canonicals_.count(cleaned)) return cleaned;
    return std::nullopt;
  }

  size_t size() const { return entries_.size(); }

 private:
  std::unordered_map<std::string, std::string> entries_;
  std::unordered_set<std::string> canonicals_;
};

// Canonical occupation for a raw title, or nullopt when unresolvable.
inline std::optional<std::string> normalize_occupation(std::string_view raw,
                                                       const OccupationDictionary& dict) {
  std::string cleaned = rule_normalize(raw);
  if (cleaned.empty()) return std::nullopt;
  return dict.lookup(cleaned);
}

struct OccupationCoverage {
  size_t nonempty = 0;
  size_t resolved = 0;

  double fraction() const {
    return nonempty == 0 ? 0.0 : static_cast<double>(resolved) / static_cast<double>(nonempty);
  }
};

inline OccupationCoverage occupation_coverage(const std::vector<BirthRecord>& records,
                                              const OccupationDictionary& dict) {
  OccupationCoverage cov;
  for (const auto& r : records) {
    if (rule_normalize(r.father_occupation_raw).empty()) continue;
    ++cov.nonempty;
    if (normalize_occupation(r.father_occupation_raw, dict)) ++cov.resolved;
  }
  return cov;
}

struct RowDiagnostic {
  size_t row = 0;
  std::string message;
};

template <typename T>
struct IngestResult {
  std::vector<T> records;
  std::vector<RowDiagnostic> rejects;
  size_t rows_total = 0;
};

struct IngestOptions {
  int min_year = 1600;
  int max_year = 1920;
};

namespace detail {

// Splits a raw name field on whitespace: first token vs the rest. Handles
// records where several given names share one column.
inline void split_name_field(std::string_view raw, const NameDictionary& dict,
                             std::string& norm_first, std::string& norm_middle) {
  norm_first.clear();
  norm_middle.clear();
  size_t pos = 0;
  while (pos < raw.size()) {
    while (pos < raw.size() && (raw[pos] == ' ' || raw[pos] == '\t')) ++pos;
    size_t end = pos;
    while (end < raw.size() && raw[end] != ' ' && raw[end] != '\t') ++end;
    if (end > pos) {
      std::string tok = normalize_name(raw.substr(pos, end - pos), dict);
      if (!tok.empty()) {
        if (norm_first.empty()) norm_first = tok;
        else norm_middle += tok;
      }
    }
    pos = end;
  }
}

inline std::optional<GeoPoint> parse_location(const std::string& lat, const std::string& lon,
                                              std::string* error) {
  if (lat.empty() && lon.empty()) return std::nullopt;
  if (lat.empty() != lon.empty()) {
    *error = "incomplete coordinates";
    return std::nullopt;
  }
  auto la = parse_double(lat), lo = parse_double(lon);
  if (!la || !lo) {
    *error = "unparsable coordinates";
    return std::nullopt;
  }
  if (*la < -90.0 || *la > 90.0 || *lo < -180.0 || *lo > 180.0) {
    *error = "coordinates out of range";
    return std::nullopt;
  }
  return GeoPoint{*la, *lo};
}

}  // namespace detail

inline IngestResult<BirthRecord> ingest_birth_records(const std::string& path,
                                                      const NameDictionary& names,
                                                      const IngestOptions& opts = {}) {
  IngestResult<BirthRecord> result;
  CsvReader reader(path);
  const size_t c_id = reader.col("id");
  const size_t c_first = reader.col("child_first"), c_middle = reader.col("child_middle");
  const size_t c_last = reader.col("child_last"), c_pat = reader.col("child_patronym");
  const size_t c_by = reader.col("birth_year"), c_bm = reader.col("birth_month"),
               c_bd = reader.col("birth_day");
  const size_t c_parish = reader.col("parish_id"), c_lat = reader.col("lat"),
               c_lon = reader.col("lon");
  const size_t c_ff = reader.col("father_first"), c_fl = reader.col("father_last"),
               c_fp = reader.col("father_patronym"), c_fo = reader.col("father_occupation");
  const size_t c_mf = reader.col("mother_first"), c_ml = reader.col("mother_last"),
               c_mp = reader.col("mother_patronym"), c_ma = reader.col("mother_age");

  std::unordered_set<std::string> seen_ids;
  std::vector<std::string> f;
  while (reader.next(f)) {
    ++result.rows_total;
    const size_t row = reader.row_number();
    if (f.size() != reader.header().size()) {
      result.rejects.push_back({row, "wrong field count"});
      continue;
    }
    BirthRecord r;
    r.id = f[c_id];
    if (r.id.empty()) {
      result.rejects.push_back({row, "empty id"});
      continue;
    }
    if (!seen_ids.insert(r.id).second)
      throw DataError(path + ": duplicate id '" + r.id + "' at row " + std::to_string(row));

    auto year = parse_int(f[c_by]);
    if (!year) {
      result.rejects.push_back({row, "missing or unparsable birth_year"});
      continue;
    }
    if (*year < opts.min_year || *year > opts.max_year) {
      result.rejects.push_back({row, "birth year out of range [" + std::to_string(opts.min_year) +
                                         "," + std::to_string(opts.max_year) + "]"});
      continue;
    }
    r.birth_date.year = static_cast<int>(*year);
    if (auto m = parse_int(f[c_bm])) r.birth_date.month = static_cast<int>(*m);
    if (auto d = parse_int(f[c_bd])) r.birth_date.day = static_cast<int>(*d);

    std::string geo_error;
    r.location = detail::parse_location(f[c_lat], f[c_lon], &geo_error);
    if (!geo_error.empty()) {
      result.rejects.push_back({row, geo_error});
      continue;
    }
    r.parish_id = f[c_parish];

    r.child_first = f[c_first];
    r.child_middle = f[c_middle];
    r.child_last = f[c_last];
    r.child_patronym = f[c_pat];
    std::string extra_first_tokens;
    detail::split_name_field(r.child_first, names, r.norm_first, extra_first_tokens);
    r.norm_middle = extra_first_tokens;
    if (!r.child_middle.empty()) {
      std::string mid_first, mid_rest;
      detail::split_name_field(r.child_middle, names, mid_first, mid_rest);
      r.norm_middle += mid_first + mid_rest;
    }
    r.norm_last = normalize_name(r.child_last, names);
    r.norm_patronym = normalize_name(r.child_patronym, names);

    r.father_first = f[c_ff];
    r.father_last = f[c_fl];
    r.father_patronym = f[c_fp];
    r.father_occupation_raw = f[c_fo];
    detail::split_name_field(r.father_first, names, r.father_norm_first, r.father_norm_middle);
    r.father_norm_last = normalize_name(r.father_last, names);
    r.father_norm_patronym = normalize_name(r.father_patronym, names);

    r.mother_first = f[c_mf];
    r.mother_last = f[c_ml];
    r.mother_patronym = f[c_mp];
    detail::split_name_field(r.mother_first, names, r.mother_norm_first, r.mother_norm_middle);
    r.mother_norm_last = normalize_name(r.mother_last, names);
    r.mother_norm_patronym = normalize_name(r.mother_patronym, names);

    if (auto age = parse_int(f[c_ma])) {
      if (*age < 10 || *age > 100) {
        result.rejects.push_back({row, "mother_age out of range"});
        continue;
      }
      r.mother_reported_age_years = static_cast<int>(*age);
    }

    // A raw child name that normalizes away entirely leaves the record
    // unusable for matching; reject rather than keep a half-empty row.
    if ((!r.child_first.empty() && r.norm_first.empty()) ||
        (!r.child_last.empty() && r.norm_last.empty()) ||
        (!r.child_patronym.empty() && r.norm_patronym.empty())) {
      result.rejects.push_back({row, "name normalizes to empty"});
      seen_ids.erase(r.id);
      continue;
    }

    result.records.push_back(std::move(r));
  }
  return result;
}

inline IngestResult<DeathRecord> ingest_death_records(const std::string& path,
                                                      const NameDictionary& names,
                                                      const IngestOptions& opts = {}) {
  IngestResult<DeathRecord> result;
  CsvReader reader(path);
  const size_t c_id = reader.col("id"), c_first = reader.col("first"),
               c_last = reader.col("last"), c_pat = reader.col("patronym");
  const size_t c_dy = reader.col("death_year"), c_dm = reader.col("death_month"),
               c_dd = reader.col("death_day");
  const size_t c_age = reader.col("age_at_death"), c_lat = reader.col("lat"),
               c_lon = reader.col("lon");

  std::unordered_set<std::string> seen_ids;
  std::vector<std::string> f;
  while (reader.next(f)) {
    ++result.rows_total;
    const size_t row = reader.row_number();
    if (f.size() != reader.header().size()) {
      result.rejects.push_back({row, "wrong field count"});
      continue;
    }
    DeathRecord r;
    r.id = f[c_id];
    if (r.id.empty()) {
      result.rejects.push_back({row, "empty id"});
      continue;
    }
    if (!seen_ids.insert(r.id).second)
      throw DataError(path + ": duplicate id '" + r.id + "' at row " + std::to_string(row));

    auto year = parse_int(f[c_dy]);
    if (!year || *year < opts.min_year) {
      result.rejects.push_back({row, "missing or out-of-range death_year"});
      continue;
    }
    r.death_date.year = static_cast<int>(*year);
    if (auto m = parse_int(f[c_dm])) r.death_date.month = static_cast<int>(*m);
    if (auto d = parse_int(f[c_dd])) r.death_date.day = static_cast<int>(*d);

    if (auto age = parse_int(f[c_age])) {
      if (*age < 0 || *age > 120) {
        result.rejects.push_back({row, "age_at_death out of range [0,120]"});
        continue;
      }
      r.age_at_death_years = static_cast<int>(*age);
    }

    std::string geo_error;
    r.location = detail::parse_location(f[c_lat], f[c_lon], &geo_error);
    if (!geo_error.empty()) {
      result.rejects.push_back({row, geo_error});
      continue;
    }

    std::string rest;
    detail::split_name_field(f[c_first], names, r.norm_first, rest);
    r.norm_last = normalize_name(f[c_last], names);
    r.norm_patronym = normalize_name(f[c_pat], names);

    result.records.push_back(std::move(r));
  }
  return result;
}

}  // namespace genlink
