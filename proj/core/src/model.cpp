// SPDX-License-Identifier: Apache-2.0

#include "rescurve/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace rescurve {

namespace {

constexpr double kEigenvalueFloorRel = 1e-14;
constexpr double kGammaFloor = 1e-12;  // |1+gamma| below this counts as gamma == -1

std::string at_index(int k) { return " at index " + std::to_string(k); }

}  // namespace

bool ConvergenceCurve::wide_range() const {
  double smallest = std::numeric_limits<double>::infinity();
  for (double v : values)
    if (v > 0.0) smallest = std::min(smallest, v);
  return values[0] / smallest > 1e12;
}

ConvergenceCurve validate_curve(std::vector<double> values) {
  if (values.size() < 2)
    fail(errc::non_admissible, "curve needs at least f(0) and f(1)");
  const int q = static_cast<int>(values.size()) - 1;
  for (int k = 0; k <= q; ++k) {
    if (!std::isfinite(values[static_cast<std::size_t>(k)]))
      fail(errc::non_admissible, "non-finite value" + at_index(k));
    if (values[static_cast<std::size_t>(k)] < 0.0)
      fail(errc::non_admissible, "negative value" + at_index(k));
  }
  if (values[0] <= 0.0) fail(errc::non_admissible, "f(0) must be positive");

  // Walk the strictly decreasing prefix.
  int s = 0;
  while (s < q && values[static_cast<std::size_t>(s + 1)] < values[static_cast<std::size_t>(s)])
    ++s;

  if (s == q) {
    // 0 is admissible only as the very last entry; an earlier zero would
    // have broken the strict decrease already.
    ConvergenceCurve out{std::move(values), CurveKind::decreasing, -1};
    if (out.values.back() == 0.0) out.kind = CurveKind::zero_tail;
    return out;
  }

  // Equality or increase at index s.
  if (values[static_cast<std::size_t>(s + 1)] > values[static_cast<std::size_t>(s)])
    fail(errc::non_admissible, "increase" + at_index(s + 1));
  // Flat from here on, or the curve is not admissible.
  for (int k = s + 1; k < q; ++k) {
    if (values[static_cast<std::size_t>(k + 1)] < values[static_cast<std::size_t>(k)])
      fail(errc::non_admissible, "stagnation followed by a decrease" + at_index(k + 1));
    if (values[static_cast<std::size_t>(k + 1)] > values[static_cast<std::size_t>(k)])
      fail(errc::non_admissible, "increase" + at_index(k + 1));
  }
  if (values[static_cast<std::size_t>(s)] == 0.0)
    fail(errc::non_admissible, "stagnation at value 0 before the final entry" + at_index(s));
  if (s == 0)
    fail(errc::non_admissible, "stagnation beginning" + at_index(0) + " (s must satisfy 0 < s < q)");
  return ConvergenceCurve{std::move(values), CurveKind::stagnating, s};
}

int RestartSchedule::total() const {
  return std::accumulate(cycles.begin(), cycles.end(), 0);
}

int RestartSchedule::completion_size(int blocks) const {
  int used = 0;
  for (int k = 1; k <= blocks; ++k) used += at(k);
  const int t = order - used - 1;
  if (t < 0)
    fail(errc::size_mismatch, "schedule exceeds order: sum of the first " +
                                  std::to_string(blocks) + " dimensions is " +
                                  std::to_string(used) + " but n = " + std::to_string(order));
  return t;
}

RestartSchedule validate_schedule(std::vector<int> cycles, int n) {
  if (n < 2) fail(errc::non_admissible, "matrix order must be at least 2");
  if (cycles.empty()) fail(errc::non_admissible, "schedule is empty");
  for (std::size_t k = 0; k < cycles.size(); ++k) {
    if (cycles[k] < 1 || cycles[k] > n - 1)
      fail(errc::non_admissible, "restart dimension " + std::to_string(cycles[k]) +
                                     at_index(static_cast<int>(k)) + " outside [1, n-1]");
  }
  RestartSchedule out{std::move(cycles), n};
  if (out.total() >= n)
    fail(errc::size_mismatch, "schedule exceeds order: sum " + std::to_string(out.total()) +
                                  " >= n = " + std::to_string(n));
  return out;
}

RestartSchedule uniform_schedule(int m, int q, int n) {
  if (q < 1) fail(errc::non_admissible, "cycle count must be positive");
  return validate_schedule(std::vector<int>(static_cast<std::size_t>(q), m), n);
}

SpectrumSpec validate_spectrum(std::vector<cx> eigenvalues, int n) {
  if (static_cast<int>(eigenvalues.size()) != n)
    fail(errc::non_admissible, "spectrum has " + std::to_string(eigenvalues.size()) +
                                   " entries, expected n = " + std::to_string(n));
  double largest = 0.0;
  for (const cx& ev : eigenvalues) {
    if (!std::isfinite(ev.real()) || !std::isfinite(ev.imag()))
      fail(errc::non_admissible, "non-finite eigenvalue");
    largest = std::max(largest, std::abs(ev));
  }
  for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
    if (std::abs(eigenvalues[i]) < kEigenvalueFloorRel * largest || eigenvalues[i] == 0.0)
      fail(errc::non_admissible,
           "eigenvalue" + at_index(static_cast<int>(i)) + " is zero or below the relative floor");
  }
  return SpectrumSpec{std::move(eigenvalues)};
}

cx MonicPolynomial::eval(cx x) const {
  // Horner on x^d - sum alpha_j x^j.
  cx acc = 1.0;
  for (int j = degree() - 1; j >= 0; --j) acc = acc * x - alpha(j);
  return acc;
}

MonicPolynomial poly_from_roots(std::span<const cx> roots) {
  if (roots.empty()) fail(errc::non_admissible, "empty root set");
  for (std::size_t i = 0; i < roots.size(); ++i)
    if (roots[i] == 0.0) fail(errc::zero_root, "root" + at_index(static_cast<int>(i)));
  // Standard coefficients c[j] of x^j with implicit leading 1, then negate.
  std::vector<cx> c{1.0};
  for (const cx& r : roots) {
    std::vector<cx> next(c.size() + 1, 0.0);
    for (std::size_t j = 0; j < c.size(); ++j) {
      next[j + 1] += c[j];
      next[j] -= r * c[j];
    }
    c = std::move(next);
  }
  MonicPolynomial p;
  p.alphas.resize(roots.size());
  for (std::size_t j = 0; j < roots.size(); ++j) p.alphas[j] = -c[j];
  return p;
}

VariantConfig validate_variant(VariantKind kind, cx gamma) {
  if (kind == VariantKind::nonconvergent && std::abs(gamma + 1.0) <= kGammaFloor)
    fail(errc::gamma_forbidden, "gamma must differ from -1");
  return VariantConfig{kind, gamma};
}

std::vector<std::vector<cx>> partition_spectrum(const SpectrumSpec& spectrum,
                                                const RestartSchedule& schedule, int blocks) {
  if (spectrum.order() != schedule.order)
    fail(errc::size_mismatch, "spectrum order differs from schedule order");
  if (blocks < 1 || blocks > schedule.length())
    fail(errc::size_mismatch, "block count outside schedule length");
  schedule.completion_size(blocks);  // rejects sum >= n; final run gets t+1 values
  std::vector<std::vector<cx>> parts;
  parts.reserve(static_cast<std::size_t>(blocks) + 1);
  auto it = spectrum.eigenvalues.begin();
  for (int k = 1; k <= blocks; ++k) {
    parts.emplace_back(it, it + schedule.at(k));
    it += schedule.at(k);
  }
  parts.emplace_back(it, spectrum.eigenvalues.end());
  return parts;
}

}  // namespace rescurve
