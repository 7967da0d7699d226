#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "radspec/logreal.hpp"
#include "radspec/spectra.hpp"

namespace radspec {

/// A block of `length` equal values in a nonincreasing sequence.
struct Run {
  LogReal value;
  std::uint64_t length = 0;
};

/// s-numbers and the signed sequences λ_n^±, run-length encoded.
/// All run values are positive magnitudes, strictly decreasing.
struct OrderedSpectrum {
  std::vector<Run> s_runs;
  std::vector<Run> pos_runs;
  std::vector<Run> neg_runs;

  std::uint64_t total() const noexcept;
};

/// Eigenvalues whose magnitudes agree to within `tie_tol` (relative) share a run.
/// Zero eigenvalues are dropped.
OrderedSpectrum order_spectrum(const SpectrumTable& table, double tie_tol = 0.0);

struct Counts {
  std::uint64_t n = 0;
  std::uint64_t n_plus = 0;
  std::uint64_t n_minus = 0;
};

/// n_±(λ) = Σ_{±Λ_k > λ} d_k. Throws InsufficientKmaxError unless the table's tail
/// envelope lies strictly below λ.
Counts counting(const SpectrumTable& table, double lambda);

struct CountingSample {
  double lambda = 0.0;
  Counts counts;
};

std::vector<CountingSample> counting(const SpectrumTable& table, std::span<const double> lambdas);

/// `points` values log-spaced from 10^max_log10 down to 10^min_log10.
std::vector<double> log_grid(double min_log10, double max_log10, int points);

/// Prefix k ↦ m_k, k = 0..N, of a bijection of the nonnegative integers.
struct BijectionPrefix {
  std::vector<std::uint64_t> map;

  std::size_t size() const noexcept { return map.size(); }
  bool injective() const;
  static BijectionPrefix identity(std::size_t n);
};

/// |F_β ∩ [0,N]| with F_β = {m_k : m_k ≤ βk}. Values in [0,N] whose preimage lies
/// past the prefix count as members, which is exact once β·(prefix length) ≥ N.
std::uint64_t reorder_share(const BijectionPrefix& b, double beta, std::uint64_t N);

/// m_k = ⌊βk⌋+1 away from powers of two; the powers of two take, in ascending
/// order, the smallest values the other indices never reach.
BijectionPrefix sharpness_bijection(double beta, std::uint64_t N);

/// Increasing indices k_1 < k_2 < ... with |a_{k_l}| ≤ b_{⌊k_l/β⌋} and
/// k_l ≤ ⌊β/(β-1)·l⌋ + 1 (l counted from 1). Requires the nonincreasing
/// rearrangement of |a| to be dominated by b termwise; throws DomainError otherwise.
std::vector<std::size_t> dense_subsequence(std::span<const double> a, std::span<const double> b, double beta);

/// (log N)^{-1} Σ_{m ∈ F_β ∩ [1,N]} 1/m.
double inverse_sum_ratio(const BijectionPrefix& b, double beta, std::uint64_t N);

}  // namespace radspec
