#pragma once

#include <algorithm>
#include <vector>

#include "boxpush/actions.hpp"
#include "boxpush/rng.hpp"
#include "boxpush/state.hpp"

namespace boxpush {

/// Dense 8192 x 6 action-value table, zero-initialized.
class QTable {
 public:
  QTable() : values_(static_cast<std::size_t>(kNumStates) * kNumActions, 0.0) {}

  double& at(StateId s, Action a) {
    return values_[static_cast<std::size_t>(s.value) * kNumActions +
                   action_ordinal(a)];
  }
  double at(StateId s, Action a) const {
    return values_[static_cast<std::size_t>(s.value) * kNumActions +
                   action_ordinal(a)];
  }

  double max_value(StateId s) const {
    const double* row = &values_[static_cast<std::size_t>(s.value) * kNumActions];
    return *std::max_element(row, row + kNumActions);
  }

  const std::vector<double>& raw() const { return values_; }

  bool operator==(const QTable&) const = default;

 private:
  std::vector<double> values_;
};

/// Epsilon-greedy selection; greedy ties are broken uniformly at random.
inline Action select_action(const QTable& table, StateId s, double epsilon,
                            Rng& rng) {
  if (rng.uniform01() < epsilon) {
    return static_cast<Action>(rng.uniform_int(kNumActions));
  }
  const double best = table.max_value(s);
  Action best_actions[kNumActions];
  int n_best = 0;
  for (Action a : kAllActions) {
    if (table.at(s, a) == best) best_actions[n_best++] = a;
  }
  return best_actions[n_best == 1 ? 0 : rng.uniform_int(n_best)];
}

/// Q(s,a) += alpha * (r + gamma * max_a' Q(s',a') - Q(s,a))
inline void td_update_single(QTable& table, StateId s, Action a, double r,
                             StateId s_next, double alpha, double gamma) {
  double& q = table.at(s, a);
  q += alpha * (r + gamma * table.max_value(s_next) - q);
}

/// Q(s,a) = (1-alpha) * Q(s,a) + alpha * (r + gamma * max_a' Q(s',a')).
/// Algebraically identical to td_update_single.
inline void td_update_independent(QTable& table, StateId s, Action a, double r,
                                  StateId s_next, double alpha, double gamma) {
  double& q = table.at(s, a);
  q = (1.0 - alpha) * q + alpha * (r + gamma * table.max_value(s_next));
}

/// Same arithmetic applied to the one table all agents write into.
inline void td_update_shared(QTable& shared, StateId s, Action a, double r,
                             StateId s_next, double alpha, double gamma) {
  td_update_independent(shared, s, a, r, s_next, alpha, gamma);
}

struct StateAction {
  StateId state;
  Action action = Action::TranslateForward;
};

/// Blends agent i's current entry with its neighbors' current entries:
///   Q_i(s_i,a_i) = omega * Q_i(s_i,a_i) + (1-omega) * sum_j Q_j(s_j,a_j)
/// With average_neighbors the sum is divided by the neighbor count, which
/// keeps repeated blending from inflating the table. An empty neighbor set
/// is a no-op unless shrink_when_alone is set, in which case the literal
/// empty sum scales the entry by omega.
inline void cooperative_blend(std::vector<QTable>& tables, int agent,
                              const std::vector<StateAction>& sa_pairs,
                              const std::vector<int>& neighbors, double omega,
                              bool average_neighbors = false,
                              bool shrink_when_alone = false) {
  if (neighbors.empty() && !shrink_when_alone) return;
  double neighbor_sum = 0.0;
  for (int j : neighbors) {
    neighbor_sum += tables[j].at(sa_pairs[j].state, sa_pairs[j].action);
  }
  if (average_neighbors && !neighbors.empty()) {
    neighbor_sum /= static_cast<double>(neighbors.size());
  }
  double& q = tables[agent].at(sa_pairs[agent].state, sa_pairs[agent].action);
  q = omega * q + (1.0 - omega) * neighbor_sum;
}

}  // namespace boxpush
