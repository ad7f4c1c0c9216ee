#pragma once

// Soft gains from the imaginary axis and hard gains from the closed right
// half-plane, for transfer matrices (with delays) and state-space models.

#include <functional>
#include <optional>
#include <vector>

#include "srg/gains.hpp"
#include "srg/lti_model.hpp"

namespace srg {

struct FrequencyGrid {
  /// Sorted, strictly increasing, starts at 0.
  std::vector<double> omega;
  double omega_max = 0.0;
  /// End of the uniformly spaced band added for delays; 0 when delay-free.
  double omega_linear = 0.0;
  /// Spectral scale the grid was built for.
  double scale = 1.0;
  int refine_budget = 10000;
  bool include_infinity = true;
};

/// Log-spaced grid on [1e-4 rho, omega_max] (default 1e4 rho) plus 0, and
/// for delays a uniform band of step pi/(16 tau) up to 64 pi / tau.
FrequencyGrid make_frequency_grid(const LtiModel& t, double omega_max = 0.0,
                                  int per_decade = 40);

struct Extremum {
  double location;
  double value;
};

/// Golden-section search on [lo, hi] until the bracket is below
/// 1e-8 (1 + |omega|). Endpoints are compared too; ties keep the interior.
Extremum refine_peak(const std::function<double(double)>& f, double lo, double hi,
                     bool maximize = true, int* evaluations = nullptr);

GainPair soft_gains(const LtiModel& t, double alpha, const FrequencyGrid& grid);
/// `realization`, when given, is a minimal realization of a delay-free t.
GainPair hard_gains(const LtiModel& t, double alpha, const FrequencyGrid& grid,
                    const StateSpace* realization = nullptr);

class FrequencyGainProvider : public GainProvider {
 public:
  FrequencyGainProvider(LtiModel model, GainMode mode, double omega_max = 0.0);
  GainPair gains(double alpha) const override;
  ProviderInfo info() const override;
  const FrequencyGrid& grid() const { return grid_; }
  const LtiModel& model() const { return model_; }

 private:
  LtiModel model_;
  GainMode mode_;
  FrequencyGrid grid_;
  std::optional<StateSpace> realization_;
  std::vector<std::string> warnings_;
};

}  // namespace srg
