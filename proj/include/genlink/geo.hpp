#pragma once
// Great-circle distance on a spherical Earth.

#include <cmath>

namespace genlink {

struct GeoPoint {
  double lat = 0.0;  // degrees
  double lon = 0.0;  // degrees
};

inline constexpr double kEarthRadiusKm = 6371.0;

inline double haversine_km(const GeoPoint& p1, const GeoPoint& p2) {
  constexpr double deg = 0.017453292519943295;  // pi/180
  const double phi1 = p1.lat * deg, phi2 = p2.lat * deg;
  const double dphi = (p2.lat - p1.lat) * deg;
  const double dlam = (p2.lon - p1.lon) * deg;
  const double sp = std::sin(dphi / 2.0), sl = std::sin(dlam / 2.0);
  double a = sp * sp + std::cos(phi1) * std::cos(phi2) * sl * sl;
  a = std::min(1.0, std::max(0.0, a));
  return 2.0 * kEarthRadiusKm * std::atan2(std::sqrt(a), std::sqrt(1.0 - a));
}

}  // namespace genlink
