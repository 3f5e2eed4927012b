#pragma once

#include <optional>

#include "nomamec/model.hpp"

namespace nomamec {

// Exhaustive search over a rectangular grid of (p_n1, p_n2), evaluating the
// exact delay D_m + T_n and discarding points over the energy budget.
struct GridSpec {
  int p1_points = 2001;
  int p2_points = 2001;
  // p_n2 upper bound as a multiple of (E + D_m (e^{N/D_m} - 1) / |h_n|^2) / D_m.
  double p2_max_multiplier = 2.0;
  bool log_spacing = false;

  void validate() const;
  // Nested grid with every original point plus the midpoints.
  GridSpec refined() const;
};

struct GridPoint {
  double delay = 0.0;
  double p_n1 = 0.0;
  double p_n2 = 0.0;
  double t_n = 0.0;
  double energy_used = 0.0;
};

// Requires an OmaOnly or Hybrid budget (RegimeError otherwise). Returns
// nullopt when no grid point meets the budget.
std::optional<GridPoint> grid_min_delay(const Scenario& scenario, double energy,
                                        const GridSpec& spec = {});

}  // namespace nomamec
