#include "srg/gains.hpp"

#include <charconv>
#include <cmath>

#include "srg/errors.hpp"
#include "srg/format.hpp"

namespace srg {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

const char* to_string(GainMode m) { return m == GainMode::soft ? "soft" : "hard"; }

GainMode parse_gain_mode(const std::string& s) {
  if (s == "soft") return GainMode::soft;
  if (s == "hard") return GainMode::hard;
  throw DomainError("unknown gain mode \"" + s + "\"");
}

const char* to_string(Witness::Kind k) {
  switch (k) {
    case Witness::Kind::none: return "none";
    case Witness::Kind::frequency: return "freq";
    case Witness::Kind::rhp_point: return "rhp";
    case Witness::Kind::pole: return "pole";
    case Witness::Kind::zero: return "zero";
    case Witness::Kind::singular_feedthrough: return "singular-D";
    case Witness::Kind::infinity_limit: return "inf-limit";
    case Witness::Kind::singular_vector: return "svd";
  }
  return "?";
}

std::string describe(const Witness& w) {
  switch (w.kind) {
    case Witness::Kind::none:
    case Witness::Kind::singular_feedthrough:
    case Witness::Kind::infinity_limit:
    case Witness::Kind::singular_vector:
      return to_string(w.kind);
    case Witness::Kind::frequency:
      return std::string("freq@") + format_double(w.location.imag());
    default:
      break;
  }
  std::string im = format_double(w.location.imag());
  if (im[0] != '-') im = "+" + im;
  return std::string(to_string(w.kind)) + "@" + format_double(w.location.real()) + im + "i";
}

}  // namespace srg
