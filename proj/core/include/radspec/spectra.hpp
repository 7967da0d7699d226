#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "radspec/logreal.hpp"
#include "radspec/symbol.hpp"

namespace radspec {

enum class SpaceKind {
  BergmanComplex,
  BergmanHarmonic,
  BergmanHelmholtz,
  BargmannComplex,
  BargmannHarmonic,
  BargmannHelmholtz,
  AgmonHormander,
};

inline constexpr SpaceKind kAllSpaceKinds[] = {
    SpaceKind::BergmanComplex,  SpaceKind::BergmanHarmonic,   SpaceKind::BergmanHelmholtz, SpaceKind::BargmannComplex,
    SpaceKind::BargmannHarmonic, SpaceKind::BargmannHelmholtz, SpaceKind::AgmonHormander,
};

std::string to_string(SpaceKind kind);
/// Accepts the enumerator spelling, case-insensitively.
SpaceKind parse_space_kind(std::string_view name);

bool is_bergman(SpaceKind kind) noexcept;
bool is_complex(SpaceKind kind) noexcept;

struct SpaceSpec {
  SpaceKind kind = SpaceKind::BergmanComplex;
  int d = 1;
  /// Ball radius; present exactly for Bergman kinds.
  std::optional<double> R;

  /// Throws DomainError if the invariants do not hold.
  void validate() const;
  double radius() const;

  static SpaceSpec bergman(SpaceKind kind, int d, double R);
  static SpaceSpec whole_space(SpaceKind kind, int d);

  friend bool operator==(const SpaceSpec&, const SpaceSpec&) = default;
};

/// d_k: C(k+d-1, d-1) for complex kinds, the dimension of degree-k spherical
/// harmonics in d variables otherwise. Throws DomainError on 64-bit overflow.
std::uint64_t multiplicity(const SpaceSpec& space, unsigned k);

/// Order of the Bessel functions used by the Helmholtz and AH kinds.
inline double bessel_order(const SpaceSpec& space, unsigned k) { return k + 0.5 * (space.d - 2); }

struct EigenvalueEntry {
  unsigned k = 0;
  LogReal value;
  std::uint64_t multiplicity = 1;
  double tol = 0.0;
  /// Log of the absolute error estimate carried over from quadrature.
  double log_abs_error = -std::numeric_limits<double>::infinity();
};

struct SpectrumTable {
  SpaceSpec space;
  std::string symbol_text;
  double tol = 1e-10;
  unsigned k_max = 0;
  std::vector<EigenvalueEntry> entries;
  /// Λ_{k_max}(|V|), the envelope used to certify counting queries.
  std::optional<LogReal> tail_bound;
};

EigenvalueEntry eigenvalue(const SpaceSpec& space, const RadialSymbol& v, unsigned k, double tol);

struct SpectrumOptions {
  /// 0 uses the hardware concurrency.
  unsigned threads = 0;
  /// Also compute the tail envelope Λ_{k_max}(|V|).
  bool tail_bound = true;
};

/// Entries for k = 0..k_max. Throws the first failure (QuadratureError messages name k).
SpectrumTable spectrum(const SpaceSpec& space, const RadialSymbol& v, unsigned k_max, double tol,
                       const SpectrumOptions& options = {});

/// Appends entries up to new_k_max and refreshes the tail envelope.
void extend_spectrum(SpectrumTable& table, const RadialSymbol& v, unsigned new_k_max,
                     const SpectrumOptions& options = {});

/// Smallest table (k_max doubled from `k_start`) whose envelope Λ_{k_max}(|V|) is below λ.
/// Throws InsufficientKmaxError once `k_cap` is exceeded.
SpectrumTable spectrum_until(const SpaceSpec& space, const RadialSymbol& v, double lambda, double tol,
                             unsigned k_start = 16, unsigned k_cap = 1u << 16, const SpectrumOptions& options = {});

}  // namespace radspec
