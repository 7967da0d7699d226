#include "radspec/ordering.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "radspec/errors.hpp"

namespace radspec {

namespace {

void check_beta(double beta) {
  if (!(beta > 1.0) || !std::isfinite(beta)) throw DomainError("beta must be a finite real > 1");
}

std::vector<Run> merge_runs(std::vector<Run> items, double tie_tol) {
  std::sort(items.begin(), items.end(), [](const Run& x, const Run& y) { return y.value < x.value; });
  std::vector<Run> runs;
  for (const Run& r : items) {
    if (!runs.empty() && (runs.back().value == r.value || relative_difference(r.value, runs.back().value) <= tie_tol))
      runs.back().length += r.length;
    else
      runs.push_back(r);
  }
  return runs;
}

// Values m_k ≤ N of the prefix lying above βk.
std::vector<char> excluded_values(const BijectionPrefix& b, double beta, std::uint64_t N) {
  check_beta(beta);
  if (beta * static_cast<double>(b.size()) < static_cast<double>(N))
    throw DomainError("prefix too short: need beta * length >= N");
  std::vector<char> out(N + 1, 0);
  for (std::size_t k = 0; k < b.size(); ++k) {
    const std::uint64_t m = b.map[k];
    if (m <= N && static_cast<double>(m) > beta * static_cast<double>(k)) out[m] = 1;
  }
  return out;
}

bool is_power_of_two(std::uint64_t k) { return k != 0 && (k & (k - 1)) == 0; }

}  // namespace

std::uint64_t OrderedSpectrum::total() const noexcept {
  std::uint64_t n = 0;
  for (const Run& r : s_runs) n += r.length;
  return n;
}

OrderedSpectrum order_spectrum(const SpectrumTable& table, double tie_tol) {
  std::vector<Run> all, pos, neg;
  for (const auto& e : table.entries) {
    if (e.value.is_zero()) continue;
    const Run r{e.value.abs(), e.multiplicity};
    all.push_back(r);
    (e.value.sign() > 0 ? pos : neg).push_back(r);
  }
  return {merge_runs(std::move(all), tie_tol), merge_runs(std::move(pos), tie_tol), merge_runs(std::move(neg), tie_tol)};
}

Counts counting(const SpectrumTable& table, double lambda) {
  if (!(lambda > 0)) throw DomainError("counting: lambda must be positive");
  const LogReal l(lambda);
  if (!table.tail_bound || !(*table.tail_bound < l)) {
    long required = -1;
    // Extrapolate the envelope from the decay of the last few |Λ_k|.
    const auto& es = table.entries;
    if (es.size() >= 4 && table.tail_bound && !table.tail_bound->is_zero()) {
      const auto& a = es[es.size() - 4].value;
      const auto& b = es.back().value;
      if (!a.is_zero() && !b.is_zero()) {
        const double slope = (b.log_abs() - a.log_abs()) / 3.0;
        if (slope < 0) {
          const double extra = (std::log(lambda) - table.tail_bound->log_abs()) / slope;
          required = static_cast<long>(table.k_max + std::ceil(std::max(extra, 1.0)));
        }
      }
    }
    throw InsufficientKmaxError("k_max=" + std::to_string(table.k_max) + " does not certify lambda=" +
                                    std::to_string(lambda) + (required > 0 ? "; try k_max >= " + std::to_string(required) : ""),
                                required);
  }
  Counts c;
  for (const auto& e : table.entries) {
    if (e.value > l) c.n_plus += e.multiplicity;
    else if (-e.value > l) c.n_minus += e.multiplicity;
  }
  c.n = c.n_plus + c.n_minus;
  return c;
}

std::vector<CountingSample> counting(const SpectrumTable& table, std::span<const double> lambdas) {
  std::vector<CountingSample> out;
  out.reserve(lambdas.size());
  for (double l : lambdas) out.push_back({l, counting(table, l)});
  return out;
}

std::vector<double> log_grid(double min_log10, double max_log10, int points) {
  if (!(min_log10 < max_log10) || points < 2) throw DomainError("log_grid: need min < max and at least 2 points");
  std::vector<double> g(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i)
    g[i] = std::pow(10.0, max_log10 + (min_log10 - max_log10) * i / (points - 1));
  return g;
}

bool BijectionPrefix::injective() const {
  std::vector<std::uint64_t> s(map);
  std::sort(s.begin(), s.end());
  return std::adjacent_find(s.begin(), s.end()) == s.end();
}

BijectionPrefix BijectionPrefix::identity(std::size_t n) {
  BijectionPrefix b;
  b.map.resize(n);
  std::iota(b.map.begin(), b.map.end(), std::uint64_t{0});
  return b;
}

std::uint64_t reorder_share(const BijectionPrefix& b, double beta, std::uint64_t N) {
  const auto ex = excluded_values(b, beta, N);
  return (N + 1) - static_cast<std::uint64_t>(std::count(ex.begin(), ex.end(), 1));
}

BijectionPrefix sharpness_bijection(double beta, std::uint64_t N) {
  check_beta(beta);
  BijectionPrefix b;
  b.map.resize(N + 1);
  std::vector<std::uint64_t> powers;
  for (std::uint64_t k = 0; k <= N; ++k) {
    if (is_power_of_two(k)) powers.push_back(k);
    else b.map[k] = static_cast<std::uint64_t>(std::floor(beta * static_cast<double>(k))) + 1;
  }
  // v is hit by a non-power k iff ⌊βk⌋ = v-1, i.e. k ∈ [(v-1)/β, v/β).
  auto reached = [beta](std::uint64_t v) {
    if (v == 0) return false;
    const auto lo = static_cast<std::uint64_t>(std::max(0.0, std::floor((v - 1.0) / beta) - 1.0));
    for (std::uint64_t k = lo; static_cast<double>(k) <= v / beta + 1.0; ++k)
      if (!is_power_of_two(k) && static_cast<std::uint64_t>(std::floor(beta * static_cast<double>(k))) + 1 == v)
        return true;
    return false;
  };
  std::uint64_t v = 0;
  for (std::uint64_t k : powers) {
    while (reached(v)) ++v;
    b.map[k] = v++;
  }
  return b;
}

std::vector<std::size_t> dense_subsequence(std::span<const double> a, std::span<const double> b, double beta) {
  check_beta(beta);
  const std::size_t n = a.size();
  if (b.size() < n) throw DomainError("dense_subsequence: b must be at least as long as a");
  for (std::size_t j = 0; j < b.size(); ++j) {
    if (!(b[j] > 0)) throw DomainError("dense_subsequence: b must be positive");
    if (j && b[j] > b[j - 1]) throw DomainError("dense_subsequence: b must be nonincreasing");
  }
  // sigma[j]: index of the j-th largest |a| (stable, so ties keep index order).
  std::vector<std::size_t> sigma(n);
  std::iota(sigma.begin(), sigma.end(), std::size_t{0});
  std::stable_sort(sigma.begin(), sigma.end(),
                   [&](std::size_t x, std::size_t y) { return std::fabs(a[x]) > std::fabs(a[y]); });
  for (std::size_t j = 0; j < n; ++j)
    if (std::fabs(a[sigma[j]]) > b[j])
      throw DomainError("dense_subsequence: rearrangement of |a| is not dominated by b at j=" + std::to_string(j));
  // k = σ(j) with k ≤ βj gives |a_k| = a*_j ≤ b_j ≤ b_{⌊k/β⌋}.
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < n; ++j)
    if (static_cast<double>(sigma[j]) <= beta * static_cast<double>(j)) out.push_back(sigma[j]);
  std::sort(out.begin(), out.end());
  return out;
}

double inverse_sum_ratio(const BijectionPrefix& b, double beta, std::uint64_t N) {
  if (N < 2) throw DomainError("inverse_sum_ratio: N must be at least 2");
  const auto ex = excluded_values(b, beta, N);
  double s = 0.0;
  for (std::uint64_t m = N; m >= 1; --m)
    if (!ex[m]) s += 1.0 / static_cast<double>(m);
  return s / std::log(static_cast<double>(N));
}

}  // namespace radspec
