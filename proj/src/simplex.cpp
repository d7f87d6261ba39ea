#include "covertbc/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace covertbc {

std::vector<double> project_to_simplex(std::vector<double> v) {
  // Sort-based projection [Held/Wolfe/Crowder]; exact up to rounding.
  std::vector<double> u = v;
  std::sort(u.begin(), u.end(), std::greater<double>());
  double cumulative = 0.0;
  double theta = 0.0;
  std::size_t support = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    cumulative += u[i];
    double candidate = (cumulative - 1.0) / static_cast<double>(i + 1);
    if (u[i] - candidate > 0.0) {
      theta = candidate;
      support = i + 1;
    }
  }
  (void)support;
  for (double& x : v) x = std::max(0.0, x - theta);
  double sum = 0.0;
  for (double x : v) sum += x;
  if (sum > 0.0) {
    for (double& x : v) x /= sum;
  } else {
    std::fill(v.begin(), v.end(), 1.0 / static_cast<double>(v.size()));
  }
  return v;
}

namespace {

void enumerate_compositions(std::size_t dim, std::size_t steps, std::vector<std::size_t>& counts,
                            std::size_t index, std::size_t remaining,
                            const std::function<void(const std::vector<double>&)>& visit,
                            std::vector<double>& point) {
  if (index == dim - 1) {
    counts[index] = remaining;
    for (std::size_t i = 0; i < dim; ++i)
      point[i] = static_cast<double>(counts[i]) / static_cast<double>(steps);
    visit(point);
    return;
  }
  for (std::size_t c = 0; c <= remaining; ++c) {
    counts[index] = c;
    enumerate_compositions(dim, steps, counts, index + 1, remaining - c, visit, point);
  }
}

}  // namespace

void for_each_simplex_grid_point(std::size_t dim, std::size_t steps,
                                 const std::function<void(const std::vector<double>&)>& visit) {
  std::vector<std::size_t> counts(dim, 0);
  std::vector<double> point(dim, 0.0);
  if (dim == 1) {
    point[0] = 1.0;
    visit(point);
    return;
  }
  enumerate_compositions(dim, steps, counts, 0, steps, visit, point);
}

namespace {

// Projected gradient ascent with Armijo backtracking from one start point.
std::pair<std::vector<double>, double> ascend(
    std::vector<double> p, const std::function<double(const std::vector<double>&)>& fn,
    const std::function<std::vector<double>(const std::vector<double>&)>& grad,
    std::size_t max_iterations) {
  const double kNegInf = -std::numeric_limits<double>::infinity();
  double value = fn(p);
  if (value == kNegInf) return {p, value};
  double step = 1.0;
  for (std::size_t it = 0; it < max_iterations; ++it) {
    std::vector<double> g = grad(p);
    double gnorm2 = 0.0;
    for (double gi : g) gnorm2 += gi * gi;
    if (gnorm2 < 1e-24) break;

    bool improved = false;
    for (int bt = 0; bt < 40; ++bt) {
      std::vector<double> trial(p.size());
      for (std::size_t i = 0; i < p.size(); ++i) trial[i] = p[i] + step * g[i];
      trial = project_to_simplex(std::move(trial));
      double trial_value = fn(trial);
      if (trial_value > value + 1e-16) {
        p = std::move(trial);
        value = trial_value;
        improved = true;
        step *= 1.3;
        break;
      }
      step *= 0.5;
      if (step < 1e-14) break;
    }
    if (!improved) break;
  }
  return {p, value};
}

}  // namespace

SimplexMaxResult maximize_on_simplex(
    std::size_t dim, const std::function<double(const std::vector<double>&)>& fn,
    const std::function<std::vector<double>(const std::vector<double>&)>& grad,
    const SimplexMaxOptions& options) {
  const double kNegInf = -std::numeric_limits<double>::infinity();
  SimplexMaxResult result;
  result.argmax.assign(dim, 1.0 / static_cast<double>(dim));
  result.value = kNegInf;
  result.grid_incumbent_value = kNegInf;

  if (dim == 1) {
    result.argmax = {1.0};
    result.value = fn(result.argmax);
    result.grid_incumbent_value = result.value;
    return result;
  }

  // Certification grid: dense for small dimensions, coarse plus a local
  // refinement pass otherwise.
  std::size_t steps = dim <= 3 ? options.grid_steps : options.coarse_grid_steps;
  std::vector<double> grid_best(dim, 1.0 / static_cast<double>(dim));
  double grid_best_value = kNegInf;
  for_each_simplex_grid_point(dim, steps, [&](const std::vector<double>& point) {
    double value = fn(point);
    if (value > grid_best_value) {
      grid_best_value = value;
      grid_best = point;
    }
  });
  if (dim > 3 && grid_best_value > kNegInf) {
    // Refine around the coarse incumbent on a shrunken lattice.
    std::vector<double> center = grid_best;
    double radius = 1.0 / static_cast<double>(options.coarse_grid_steps);
    for_each_simplex_grid_point(dim, options.coarse_grid_steps,
                                [&](const std::vector<double>& offset) {
                                  std::vector<double> point(dim);
                                  for (std::size_t i = 0; i < dim; ++i)
                                    point[i] = center[i] + radius * (offset[i] - 1.0 / dim);
                                  point = project_to_simplex(std::move(point));
                                  double value = fn(point);
                                  if (value > grid_best_value) {
                                    grid_best_value = value;
                                    grid_best = point;
                                  }
                                });
  }
  result.grid_incumbent_value = grid_best_value;

  // Multi-start ascent: grid incumbent, barycenter, Dirichlet(1) draws.
  std::vector<std::vector<double>> starts;
  starts.push_back(grid_best);
  starts.emplace_back(dim, 1.0 / static_cast<double>(dim));
  std::mt19937_64 rng(options.seed);
  std::exponential_distribution<double> expo(1.0);
  for (std::size_t s = 0; s < options.random_starts; ++s) {
    std::vector<double> draw(dim);
    double sum = 0.0;
    for (double& x : draw) {
      x = expo(rng);
      sum += x;
    }
    for (double& x : draw) x /= sum;
    starts.push_back(std::move(draw));
  }

  result.argmax = grid_best;
  result.value = grid_best_value;
  for (const auto& start : starts) {
    auto [p, value] = ascend(start, fn, grad, options.max_iterations);
    if (value > result.value) {
      result.value = value;
      result.argmax = std::move(p);
    }
  }
  return result;
}

}  // namespace covertbc
