#ifndef COVERTBC_SIMPLEX_HPP
#define COVERTBC_SIMPLEX_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace covertbc {

/// Euclidean projection onto the probability simplex.
std::vector<double> project_to_simplex(std::vector<double> v);

/// Enumerates the lattice { k/steps } over the dim-simplex and calls visit
/// for each point. steps >= 1, dim >= 1.
void for_each_simplex_grid_point(std::size_t dim, std::size_t steps,
                                 const std::function<void(const std::vector<double>&)>& visit);

struct SimplexMaxResult {
  std::vector<double> argmax;
  double value;
  double grid_incumbent_value;  // best value seen on the certification grid
};

struct SimplexMaxOptions {
  std::size_t grid_steps = 200;  // lattice resolution for dim <= 3
  std::size_t coarse_grid_steps = 20;
  std::size_t random_starts = 6;
  std::size_t max_iterations = 600;
  std::uint64_t seed = 0x5eed;
};

/// Maximizes fn over the dim-simplex: dense-grid certification followed by
/// multi-start projected gradient ascent with backtracking. Points where fn
/// returns -inf are skipped. grad must match fn; both are evaluated at
/// simplex-feasible points only.
SimplexMaxResult maximize_on_simplex(
    std::size_t dim, const std::function<double(const std::vector<double>&)>& fn,
    const std::function<std::vector<double>(const std::vector<double>&)>& grad,
    const SimplexMaxOptions& options = {});

}  // namespace covertbc

#endif
