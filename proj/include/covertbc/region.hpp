#ifndef COVERTBC_REGION_HPP
#define COVERTBC_REGION_HPP

#include <utility>
#include <vector>

#include "covertbc/errors.hpp"

namespace covertbc {

/// Achievable-rate region sum_j L_j / L_j^* <= 1 described by its corner
/// capacities. More than two users requires the successively-degraded flag.
struct RegionSpec {
  std::vector<double> l_stars;  // nats per sqrt(channel use)
  bool degraded = false;
};

RegionSpec make_region(std::vector<double> l_stars, bool degraded = false);

/// True iff sum_j point[j]/l_stars[j] <= 1 + 1e-12. Coordinates with a zero
/// capacity must carry zero rate, otherwise UnsupportedRate.
bool region_contains(const std::vector<double>& point, const RegionSpec& region);

struct BoundaryPoint {
  std::vector<double> shares;  // on the share simplex, sums to 1 exactly
  std::vector<double> rates;   // shares[j] * l_stars[j]
};

/// Samples the boundary facet sum_j shares_j = 1 at the given resolution
/// (points per edge).
std::vector<BoundaryPoint> boundary(const RegionSpec& region, std::size_t resolution);

/// Two-code time-division schedule hitting the boundary point with share
/// split rho : 1-rho, plus the idle fraction left by an interior request.
struct TimeDivisionPlan {
  double rho;
  std::pair<double, double> delta_split;        // (delta', delta - delta')
  std::pair<long long, long long> block_split;  // (floor(rho n), n - floor(rho n))
  std::pair<double, double> log_m_targets;      // nats
  double idle_fraction;                         // 1 - l1/L1* - l2/L2*
};

TimeDivisionPlan time_division_plan(double l1, double l2, double delta, long long n,
                                    const RegionSpec& region);

/// Smallest key rate supporting (l1, l2):
/// max(0, (l1/L1* + l2/L2*) Lz* - l1 - l2).
double min_key_rate(double l1, double l2, const RegionSpec& region, double l_z_star);

struct KeyRatePoint {
  double l1;
  double l2;
  double l_key;
};

bool key_region_contains(const KeyRatePoint& point, const RegionSpec& region, double l_z_star);

}  // namespace covertbc

#endif
