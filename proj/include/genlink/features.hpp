#pragma once
// The 20-component attribute-similarity vector for a (child, candidate
// parent) pair, and the deterministic death-record pre-matching that feeds
// the candidate-death components.
//
// Column layout (frozen; tests and the feature-dump format depend on it):
//   0  candidate_age              child birth year minus candidate birth year
//   1  reported_age_diff          |candidate_age - reported mother age|
//   2  reported_age_missing       1 when no age is reported (always 1 for fathers)
//   3  geo_distance_km            child birth place vs candidate birth place
//   4  geo_distance_missing       1 when either location is unknown
//   5  first_name_sim             Jaro-Winkler on normalized names, parent name
//   6  middle_name_sim            on the child's record vs the candidate's own
//   7  middle_name_missing        child name fields
//   8  last_name_sim
//   9  patronym_sim
//  10  patronym_missing
//  11  naive_bayes_prob           posterior of this candidate under NaiveBayes
//  12  is_mother_link             1 for mother links, 0 for father links
//  13  child_lat
//  14  child_lon
//  15  child_location_missing
//  16  child_birth_year
//  17  candidate_dead_before_birth  unambiguous death record strictly before birth
//  18  years_dead_before_birth      0 unless candidate_dead_before_birth = 1
//  19  death_link_missing           1 when the candidate has no linked death record
//
// Empty-vs-empty optional names score similarity 1 with the missing flag set;
// empty-vs-nonempty scores 0 with the flag set.

#include <array>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "genlink/candidates.hpp"
#include "genlink/geo.hpp"
#include "genlink/records.hpp"
#include "genlink/stringsim.hpp"

namespace genlink {

inline constexpr size_t kFeatureCount = 20;

enum FeatureId : size_t {
  kCandidateAge = 0,
  kReportedAgeDiff,
  kReportedAgeMissing,
  kGeoDistanceKm,
  kGeoDistanceMissing,
  kFirstNameSim,
  kMiddleNameSim,
  kMiddleNameMissing,
  kLastNameSim,
  kPatronymSim,
  kPatronymMissing,
  kNaiveBayesProb,
  kIsMotherLink,
  kChildLat,
  kChildLon,
  kChildLocationMissing,
  kChildBirthYear,
  kDeadBeforeBirth,
  kYearsDeadBeforeBirth,
  kDeathLinkMissing,
};

inline const std::array<const char*, kFeatureCount>& feature_names() {
  static const std::array<const char*, kFeatureCount> names = {
      "candidate_age",        "reported_age_diff",   "reported_age_missing",
      "geo_distance_km",      "geo_distance_missing", "first_name_sim",
      "middle_name_sim",      "middle_name_missing", "last_name_sim",
      "patronym_sim",         "patronym_missing",    "naive_bayes_prob",
      "is_mother_link",       "child_lat",           "child_lon",
      "child_location_missing", "child_birth_year",  "candidate_dead_before_birth",
      "years_dead_before_birth", "death_link_missing"};
  return names;
}

struct FeatureVector {
  std::array<double, kFeatureCount> v{};

  double& operator[](size_t i) { return v[i]; }
  double operator[](size_t i) const { return v[i]; }
};

struct DeathLink {
  uint32_t death = 0;  // index into the death-record vector
  int death_year = 0;
};

struct DeathLinkTable {
  std::unordered_map<uint32_t, DeathLink> by_birth;  // birth record index -> link
  size_t deaths_total = 0;
  size_t deaths_eligible = 0;   // all three rule inputs present
  size_t deaths_ambiguous = 0;  // more than one feasible birth record
  size_t deaths_unmatched = 0;  // zero feasible birth records
  size_t birth_conflicts = 0;   // links dropped because one birth drew several deaths

  const DeathLink* find(uint32_t birth) const {
    auto it = by_birth.find(birth);
    return it == by_birth.end() ? nullptr : &it->second;
  }
};

struct DeathMatchOptions {
  int age_tolerance_years = 1;
  double max_distance_km = 60.0;
};

// A death record is linked to a birth record only when exactly one birth
// record has the same normalized first name, last name, and patronym, a birth
// year consistent with the reported age at death within the tolerance, and a
// birth place within the distance bound. Births that attract more than one
// death record are dropped as ambiguous from the birth side.
inline DeathLinkTable match_death_records(const std::vector<BirthRecord>& births,
                                          const std::vector<DeathRecord>& deaths,
                                          const DeathMatchOptions& opts = {}) {
  DeathLinkTable table;
  table.deaths_total = deaths.size();

  std::unordered_map<std::string, std::vector<uint32_t>> by_name;
  for (uint32_t i = 0; i < births.size(); ++i) {
    const auto& b = births[i];
    if (b.norm_first.empty() || b.norm_last.empty()) continue;
    by_name[b.norm_first + '\x1f' + b.norm_last + '\x1f' + b.norm_patronym].push_back(i);
  }

  std::unordered_map<uint32_t, std::vector<uint32_t>> claims;  // birth -> death indexes
  for (uint32_t d = 0; d < deaths.size(); ++d) {
    const auto& death = deaths[d];
    if (!death.age_at_death_years || !death.location || death.norm_first.empty() ||
        death.norm_last.empty())
      continue;
    ++table.deaths_eligible;
    auto it = by_name.find(death.norm_first + '\x1f' + death.norm_last + '\x1f' +
                           death.norm_patronym);
    if (it == by_name.end()) {
      ++table.deaths_unmatched;
      continue;
    }
    const int implied_birth = death.death_date.year - *death.age_at_death_years;
    uint32_t feasible = 0;
    size_t n_feasible = 0;
    for (uint32_t b : it->second) {
      const auto& birth = births[b];
      if (std::abs(birth.birth_date.year - implied_birth) > opts.age_tolerance_years) continue;
      if (!birth.location) continue;
      if (haversine_km(*birth.location, *death.location) > opts.max_distance_km) continue;
      feasible = b;
      if (++n_feasible > 1) break;
    }
    if (n_feasible == 0) ++table.deaths_unmatched;
    else if (n_feasible > 1) ++table.deaths_ambiguous;
    else claims[feasible].push_back(d);
  }

  for (const auto& [birth, death_list] : claims) {
    if (death_list.size() == 1) {
      table.by_birth[birth] = DeathLink{death_list[0], deaths[death_list[0]].death_date.year};
    } else {
      table.birth_conflicts += death_list.size();
    }
  }
  return table;
}

namespace detail {

inline void optional_name_sim(const std::string& a, const std::string& b, double& sim,
                              double& missing) {
  if (a.empty() && b.empty()) {
    sim = 1.0;
    missing = 1.0;
  } else if (a.empty() || b.empty()) {
    sim = 0.0;
    missing = 1.0;
  } else {
    sim = jaro_winkler(a, b);
    missing = 0.0;
  }
}

}  // namespace detail

inline FeatureVector compute_features(const std::vector<BirthRecord>& records, uint32_t child,
                                      uint32_t candidate, Role role,
                                      const DeathLinkTable& deaths, double naive_bayes_prob) {
  const BirthRecord& c = records[child];
  const BirthRecord& p = records[candidate];
  FeatureVector f;

  const int candidate_age = c.birth_date.year - p.birth_date.year;
  f[kCandidateAge] = candidate_age;
  if (role == Role::mother && c.mother_reported_age_years) {
    f[kReportedAgeDiff] = std::abs(candidate_age - *c.mother_reported_age_years);
    f[kReportedAgeMissing] = 0.0;
  } else {
    f[kReportedAgeDiff] = 0.0;
    f[kReportedAgeMissing] = 1.0;
  }

  if (c.location && p.location) {
    f[kGeoDistanceKm] = haversine_km(*c.location, *p.location);
    f[kGeoDistanceMissing] = 0.0;
  } else {
    f[kGeoDistanceKm] = 0.0;
    f[kGeoDistanceMissing] = 1.0;
  }

  f[kFirstNameSim] = jaro_winkler(c.parent_norm_first(role), p.norm_first);
  detail::optional_name_sim(c.parent_norm_middle(role), p.norm_middle, f[kMiddleNameSim],
                            f[kMiddleNameMissing]);
  f[kLastNameSim] = jaro_winkler(c.parent_norm_last(role), p.norm_last);
  detail::optional_name_sim(c.parent_norm_patronym(role), p.norm_patronym, f[kPatronymSim],
                            f[kPatronymMissing]);

  f[kNaiveBayesProb] = naive_bayes_prob;
  f[kIsMotherLink] = role == Role::mother ? 1.0 : 0.0;

  if (c.location) {
    f[kChildLat] = c.location->lat;
    f[kChildLon] = c.location->lon;
    f[kChildLocationMissing] = 0.0;
  } else {
    f[kChildLat] = 0.0;
    f[kChildLon] = 0.0;
    f[kChildLocationMissing] = 1.0;
  }
  f[kChildBirthYear] = c.birth_date.year;

  if (const DeathLink* link = deaths.find(candidate)) {
    f[kDeathLinkMissing] = 0.0;
    if (link->death_year < c.birth_date.year) {
      f[kDeadBeforeBirth] = 1.0;
      f[kYearsDeadBeforeBirth] = c.birth_date.year - link->death_year;
    } else {
      f[kDeadBeforeBirth] = 0.0;
      f[kYearsDeadBeforeBirth] = 0.0;
    }
  } else {
    f[kDeadBeforeBirth] = 0.0;
    f[kYearsDeadBeforeBirth] = 0.0;
    f[kDeathLinkMissing] = 1.0;
  }
  return f;
}

}  // namespace genlink
