#include "nomamec/oracle.hpp"

#include <cmath>
#include <vector>

#include <fmt/format.h>

namespace nomamec {

namespace {

// Smallest nonzero grid value relative to the axis maximum under log spacing.
constexpr double kLogFloor = 1e-6;

std::vector<double> p1_axis(double max, const GridSpec& spec) {
  const int n = spec.p1_points;
  std::vector<double> axis(n);
  axis[0] = 0.0;  // the OMA column
  for (int i = 1; i < n; ++i) {
    if (spec.log_spacing) {
      const double frac = static_cast<double>(i - 1) / static_cast<double>(n - 2 > 0 ? n - 2 : 1);
      axis[i] = max * std::pow(kLogFloor, 1.0 - frac);
    } else {
      axis[i] = max * (static_cast<double>(i) / static_cast<double>(n - 1));
    }
  }
  return axis;
}

std::vector<double> p2_axis(double max, const GridSpec& spec) {
  const int n = spec.p2_points;
  std::vector<double> axis(n);
  for (int j = 0; j < n; ++j) {
    if (spec.log_spacing) {
      const double frac = static_cast<double>(j) / static_cast<double>(n - 1);
      axis[j] = max * std::pow(kLogFloor, 1.0 - frac);
    } else {
      axis[j] = max * (static_cast<double>(j + 1) / static_cast<double>(n));
    }
  }
  return axis;
}

}  // namespace

void GridSpec::validate() const {
  if (p1_points < 2 || p2_points < 2) {
    throw InvalidInput(
        fmt::format("grid needs at least 2 points per axis (got {}x{})", p1_points, p2_points));
  }
  if (!(p2_max_multiplier >= 1.0) || !std::isfinite(p2_max_multiplier)) {
    throw InvalidInput(
        fmt::format("p2_max_multiplier must be finite and >= 1 (got {})", p2_max_multiplier));
  }
}

GridSpec GridSpec::refined() const {
  GridSpec out = *this;
  out.p1_points = 2 * p1_points - 1;
  out.p2_points = 2 * p2_points;
  return out;
}

std::optional<GridPoint> grid_min_delay(const Scenario& scenario, double energy,
                                        const GridSpec& spec) {
  spec.validate();
  const EnergyRegime regime = classify_regime(scenario, energy);
  if (regime != EnergyRegime::OmaOnly && regime != EnergyRegime::Hybrid) {
    throw RegimeError(fmt::format("grid oracle covers the OMA-only and hybrid regimes; E = {} is {}",
                                  energy, to_string(regime)));
  }
  const double d_m = scenario.d_m();
  const double p2_max =
      spec.p2_max_multiplier * (energy + d_m * scenario.unit_power()) / d_m;

  const std::vector<double> p1s = p1_axis(energy / d_m, spec);
  const std::vector<double> p2s = p2_axis(p2_max, spec);

  std::vector<double> remaining(p1s.size());
  for (std::size_t i = 0; i < p1s.size(); ++i) {
    remaining[i] = scenario.n_nats() - scenario.noma_phase_nats(p1s[i]);
  }
  std::vector<double> rates(p2s.size());
  for (std::size_t j = 0; j < p2s.size(); ++j) {
    rates[j] = std::log1p(scenario.h_n_sq() * p2s[j]);
  }

  std::optional<GridPoint> best;
  for (std::size_t i = 0; i < p1s.size(); ++i) {
    // T_n < 0 cannot occur below E2; clamp to zero as its definition requires.
    const double left = remaining[i] > 0.0 ? remaining[i] : 0.0;
    const double noma_energy = d_m * p1s[i];
    for (std::size_t j = 0; j < p2s.size(); ++j) {
      const double t_n = left / rates[j];
      const double used = noma_energy + t_n * p2s[j];
      if (!(used <= energy)) continue;
      const double delay = d_m + t_n;
      if (!best || delay < best->delay) {
        best = GridPoint{delay, p1s[i], p2s[j], t_n, used};
      }
    }
  }
  return best;
}

}  // namespace nomamec
