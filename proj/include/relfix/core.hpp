#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace relfix {

// Validation tolerances shared across the library. Relative for metric
// axioms on possibly coords-derived tables, absolute for the contraction
// and bound inequalities.
inline constexpr double kRelTol = 1e-9;
inline constexpr double kAbsTol = 1e-12;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidInput : Error {
  using Error::Error;
};

struct MapEvalError : Error {
  explicit MapEvalError(const std::string& what, int component_index = -1)
      : Error(what), component(component_index) {}
  int component;
};

struct LimitMismatch : Error {
  using Error::Error;
};
struct NonConvergedTrace : Error {
  using Error::Error;
};
struct NotReachable : Error {
  using Error::Error;
};
struct EndpointMismatch : Error {
  using Error::Error;
};
struct DegenerateOrbit : Error {
  using Error::Error;
};
struct NoComparablePairs : Error {
  using Error::Error;
};

// --------------------------------------------------------------------------
// Deterministic counter-based RNG.
//
// value(i) = mix64(seed + (i+1) * 0x9E3779B97F4A7C15), with mix64 the
// SplitMix64 finalizer (constants 0xBF58476D1CE4E5B9, 0x94D049BB133111EB).
// Pure 64-bit integer arithmetic, so streams are identical on every platform
// and any sample index can be addressed without generating its predecessors.
// --------------------------------------------------------------------------

inline std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

inline std::uint64_t rng_value_at(std::uint64_t seed, std::uint64_t counter) {
  return mix64(seed + (counter + 1) * 0x9E3779B97F4A7C15ULL);
}

class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t counter = 0)
      : seed_(seed), counter_(counter) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t counter() const { return counter_; }

  std::uint64_t next_u64() { return rng_value_at(seed_, counter_++); }

  // Uniform in [0, 1), 53 mantissa bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double next_in(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  // Uniform in {0, ..., bound-1}. Modulo reduction: the tiny bias is
  // irrelevant here, cross-language reproducibility is not.
  std::uint64_t next_below(std::uint64_t bound) { return next_u64() % bound; }

  std::size_t next_index(std::size_t n) {
    return static_cast<std::size_t>(next_below(static_cast<std::uint64_t>(n)));
  }

  bool next_bool(double p) { return next_double() < p; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_;
};

// --------------------------------------------------------------------------
// Small real-vector helpers for the real backend.
// --------------------------------------------------------------------------

using Vec = std::vector<double>;

enum class Norm { L2, L1, Linf };

inline const char* norm_name(Norm n) {
  switch (n) {
    case Norm::L2:
      return "l2";
    case Norm::L1:
      return "l1";
    case Norm::Linf:
      return "linf";
  }
  return "l2";
}

inline std::optional<Norm> norm_from_name(const std::string& s) {
  if (s == "l2") return Norm::L2;
  if (s == "l1") return Norm::L1;
  if (s == "linf") return Norm::Linf;
  return std::nullopt;
}

inline double vec_dist(const Vec& a, const Vec& b, Norm norm = Norm::L2) {
  if (a.size() != b.size()) throw InvalidInput("vector dimensions differ");
  double acc = 0.0;
  switch (norm) {
    case Norm::L2:
      for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
      }
      return std::sqrt(acc);
    case Norm::L1:
      for (std::size_t i = 0; i < a.size(); ++i) acc += std::fabs(a[i] - b[i]);
      return acc;
    case Norm::Linf:
      for (std::size_t i = 0; i < a.size(); ++i)
        acc = std::max(acc, std::fabs(a[i] - b[i]));
      return acc;
  }
  return acc;
}

// 17 significant digits: round-trips any double through text.
inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace relfix
