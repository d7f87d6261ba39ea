#include "covertbc/region.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

namespace covertbc {

namespace {

constexpr double kRegionTol = 1e-12;

double share_sum(const std::vector<double>& point, const RegionSpec& region, const char* op) {
  if (point.size() != region.l_stars.size())
    throw DimensionMismatch("region-and-keys", op, "rate vector dimension mismatch");
  double sum = 0.0;
  for (std::size_t j = 0; j < point.size(); ++j) {
    if (point[j] < 0.0)
      throw OutOfRange("region-and-keys", op, "rates must be non-negative");
    if (region.l_stars[j] == 0.0) {
      if (point[j] > 0.0)
        throw UnsupportedRate(op, "positive rate on a zero-capacity coordinate " +
                                      std::to_string(j));
      continue;
    }
    sum += point[j] / region.l_stars[j];
  }
  return sum;
}

}  // namespace

RegionSpec make_region(std::vector<double> l_stars, bool degraded) {
  if (l_stars.empty())
    throw OutOfRange("region-and-keys", "make_region", "need at least one capacity");
  bool any_positive = false;
  for (double l : l_stars) {
    if (l < 0.0)
      throw OutOfRange("region-and-keys", "make_region", "capacities must be non-negative");
    if (l > 0.0) any_positive = true;
  }
  if (!any_positive)
    throw OutOfRange("region-and-keys", "make_region", "all capacities are zero");
  if (l_stars.size() > 2 && !degraded)
    throw OutOfRange("region-and-keys", "make_region",
                     "more than two users requires the successively-degraded flag");
  return RegionSpec{std::move(l_stars), degraded};
}

bool region_contains(const std::vector<double>& point, const RegionSpec& region) {
  return share_sum(point, region, "region_contains") <= 1.0 + kRegionTol;
}

std::vector<BoundaryPoint> boundary(const RegionSpec& region, std::size_t resolution) {
  if (resolution < 2)
    throw OutOfRange("region-and-keys", "boundary", "resolution must be >= 2");
  const std::size_t users = region.l_stars.size();
  std::vector<BoundaryPoint> points;
  const std::size_t levels = resolution - 1;

  std::vector<std::size_t> counts(users, 0);
  std::function<void(std::size_t, std::size_t)> recurse = [&](std::size_t index,
                                                              std::size_t remaining) {
    if (index == users - 1) {
      counts[index] = remaining;
      BoundaryPoint point;
      point.shares.resize(users);
      point.rates.resize(users);
      for (std::size_t j = 0; j < users; ++j) {
        point.shares[j] = static_cast<double>(counts[j]) / static_cast<double>(levels);
        point.rates[j] = point.shares[j] * region.l_stars[j];
      }
      points.push_back(std::move(point));
      return;
    }
    for (std::size_t c = 0; c <= remaining; ++c) {
      counts[index] = c;
      recurse(index + 1, remaining - c);
    }
  };
  recurse(0, levels);
  return points;
}

TimeDivisionPlan time_division_plan(double l1, double l2, double delta, long long n,
                                    const RegionSpec& region) {
  if (region.l_stars.size() != 2)
    throw OutOfRange("region-and-keys", "time_division_plan", "plan is for two users");
  if (!(delta >= 0.0) || n < 1)
    throw OutOfRange("region-and-keys", "time_division_plan", "invalid delta or n");
  double sum = share_sum({l1, l2}, region, "time_division_plan");
  if (sum > 1.0 + kRegionTol)
    throw OutsideRegion("time_division_plan",
                        "shares sum to " + std::to_string(sum) + " > 1");

  double share1 = region.l_stars[0] > 0.0 ? l1 / region.l_stars[0] : 0.0;
  // Shares scaled onto the boundary; an all-zero request defaults to rho = 0.
  double rho = sum > 0.0 ? share1 / sum : 0.0;
  TimeDivisionPlan plan;
  plan.rho = rho;
  plan.delta_split = {rho * delta, delta - rho * delta};
  long long block1 = static_cast<long long>(std::floor(rho * static_cast<double>(n)));
  plan.block_split = {block1, n - block1};
  plan.log_m_targets = {
      std::sqrt(rho * static_cast<double>(n) * plan.delta_split.first) * region.l_stars[0],
      std::sqrt((1.0 - rho) * static_cast<double>(n) * plan.delta_split.second) *
          region.l_stars[1]};
  plan.idle_fraction = std::max(0.0, 1.0 - sum);
  return plan;
}

double min_key_rate(double l1, double l2, const RegionSpec& region, double l_z_star) {
  if (region.l_stars.size() != 2)
    throw OutOfRange("region-and-keys", "min_key_rate", "defined for two users");
  double sum = share_sum({l1, l2}, region, "min_key_rate");
  if (sum > 1.0 + kRegionTol)
    throw OutsideRegion("min_key_rate", "rate pair outside the region");
  return std::max(0.0, sum * l_z_star - l1 - l2);
}

bool key_region_contains(const KeyRatePoint& point, const RegionSpec& region,
                         double l_z_star) {
  if (region.l_stars.size() != 2)
    throw OutOfRange("region-and-keys", "key_region_contains", "defined for two users");
  if (point.l_key < 0.0) return false;
  double sum;
  try {
    sum = share_sum({point.l1, point.l2}, region, "key_region_contains");
  } catch (const UnsupportedRate&) {
    return false;
  }
  if (sum > 1.0 + kRegionTol) return false;
  return point.l_key >= std::max(0.0, sum * l_z_star - point.l1 - point.l2) - kRegionTol;
}

}  // namespace covertbc
