#pragma once

// State-space gains through the Bounded Real Lemma. Feasibility of the
// gain bound gamma is decided by the imaginary-axis eigenvalues of the
// associated Hamiltonian matrix; the hard mode adds stability of A.

#include <string>
#include <vector>

#include "srg/gains.hpp"
#include "srg/lti_model.hpp"

namespace srg {

struct BrlQuery {
  const StateSpace* model = nullptr;
  double alpha = 0.0;
  GainMode mode = GainMode::soft;
  /// Relative width of the final gamma bracket.
  double tolerance = 1e-6;
};

struct BrlResult {
  double value = 0.0;
  Witness witness;
  int iterations = 0;
  std::vector<std::string> warnings;
};

/// True when the Hamiltonian for (A, B, C, D, gamma) has an eigenvalue on
/// the imaginary axis; requires gamma > sigma_max(D). The frequencies of
/// those eigenvalues are appended to `omegas` when given.
bool hamiltonian_has_imaginary_eigenvalue(const StateSpace& s, double gamma,
                                          std::vector<double>* omegas = nullptr);

BrlResult brl_max_gain(const BrlQuery& q);
BrlResult brl_min_gain(const BrlQuery& q);

class BrlGainProvider : public GainProvider {
 public:
  BrlGainProvider(StateSpace model, GainMode mode, double tolerance = 1e-6);
  GainPair gains(double alpha) const override;
  ProviderInfo info() const override;

 private:
  StateSpace model_;
  GainMode mode_;
  double tolerance_;
  double scale_;
  std::vector<std::string> warnings_;
};

}  // namespace srg
