#pragma once

// Gain pairs and the provider interface queried by the region engine.

#include <complex>
#include <string>
#include <vector>

namespace srg {

enum class GainMode { soft, hard };

const char* to_string(GainMode m);
GainMode parse_gain_mode(const std::string& s);

/// Where an extremal gain is attained, or why it is 0 or infinite.
struct Witness {
  enum class Kind {
    none,
    frequency,             // location = i*omega
    rhp_point,             // location = s with Re s >= 0
    pole,                  // infinite max gain
    zero,                  // zero min gain
    singular_feedthrough,  // D - alpha I singular
    infinity_limit,        // attained as |s| grows
    singular_vector,       // constant matrix
  };
  Kind kind = Kind::none;
  std::complex<double> location{};
  std::string note;
};

const char* to_string(Witness::Kind k);
/// Short text form used by the CSV writer, e.g. "pole@1+0i".
std::string describe(const Witness& w);

/// Extremal gains of T - alpha I. Infinite values are IEEE +inf.
struct GainPair {
  double min_gain = 0.0;
  double max_gain = 0.0;
  Witness min_witness;
  Witness max_witness;
  /// Oscillation left unresolved by the frequency grid.
  bool grid_limited = false;
  /// min_gain is the smallest sampled value, not a certified infimum.
  bool sampled = false;
  std::vector<std::string> warnings;
};

struct ProviderInfo {
  std::string kind;  // "matrix", "tf", "ss"
  GainMode mode = GainMode::soft;
  std::string method;  // "svd", "frequency", "bounded-real"
  /// The alpha grid is center + scale * tan(theta).
  double scale = 1.0;
  double center = 0.0;
};

class GainProvider {
 public:
  virtual ~GainProvider() = default;
  /// Deterministic; safe to call concurrently for distinct alpha.
  virtual GainPair gains(double alpha) const = 0;
  virtual ProviderInfo info() const = 0;
};

}  // namespace srg
