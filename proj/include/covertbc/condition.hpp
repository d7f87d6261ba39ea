#ifndef COVERTBC_CONDITION_HPP
#define COVERTBC_CONDITION_HPP

#include <vector>

#include "covertbc/channel.hpp"

namespace covertbc {

struct ConditionVerdict {
  bool satisfied;
  int dominant_receiver;     // 1 or 2, whichever capacity is larger
  double worst_ratio;        // max over P_X of I(X;Y_dom)/I(X;Y_weak)
  Distribution witness_px;   // input attaining worst_ratio
  double threshold;          // L_dom^* / L_weak^*
  bool boundary_tie;         // worst_ratio within 1e-9 of the threshold
};

/// Mutual-information ratio I(px;Y_dom)/I(px;Y_weak) with the conventions the
/// verdict uses: +inf when only the denominator vanishes, -inf when both do.
double condition_ratio(const BroadcastSpec& spec, const Distribution& px, int dominant_receiver);

/// Decides the time-division optimality condition by maximizing the
/// mutual-information ratio over the full input simplex.
ConditionVerdict check_condition(const BroadcastSpec& spec);

/// Binary-input reduction: a line search over gamma in [0,1] of the ratio
/// D(W_gamma||W_0)/D(V_gamma||V_0), whose gamma -> 0 limit is the ratio of
/// chi-squared coefficients.
ConditionVerdict check_condition_binary(const BroadcastSpec& spec);

enum class CellVerdict : int { Unsatisfied = 0, Satisfied = 1, Degenerate = -1 };

struct ConditionMap {
  double grid_step;
  std::vector<double> q_values;                 // shared axis for q0 and q1
  std::vector<std::vector<CellVerdict>> cells;  // cells[i][j] at (q0=q[i], q1=q[j])
};

/// Sweeps V = [[1-q0, q0], [q1, 1-q1]] over a (q0,q1) lattice and records the
/// binary condition verdict per cell. Per-cell failures become Degenerate.
ConditionMap condition_map(const Channel& w, const Channel& warden, double grid_step);

/// Single-threaded reference for condition_map; identical output.
ConditionMap condition_map_serial(const Channel& w, const Channel& warden, double grid_step);

}  // namespace covertbc

#endif
