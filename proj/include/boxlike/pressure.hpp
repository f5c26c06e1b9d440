#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "boxlike/error.hpp"
#include "boxlike/gpmat.hpp"
#include "boxlike/lift.hpp"
#include "boxlike/matrix.hpp"

namespace boxlike {

/// Square matrix with nonnegative finite entries.
class NonnegMatrix {
 public:
  explicit NonnegMatrix(Matrix m) : m_(std::move(m)) {
    if (!m_.is_square() || m_.rows() == 0)
      throw Error(Errc::dimension_mismatch, "nonnegative matrix must be square and nonempty");
    for (double x : m_.data()) {
      if (!(x >= 0.0) || !std::isfinite(x))
        throw Error(Errc::numeric_failure, "entries must be nonnegative and finite");
    }
  }

  std::size_t dim() const noexcept { return m_.rows(); }
  double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  const Matrix& matrix() const noexcept { return m_; }

 private:
  Matrix m_;
};

namespace detail {

/// log rho(M) by repeated squaring with max-entry rescaling (Gelfand's
/// formula along the powers 2^m). Returns -inf for a nilpotent matrix.
///
/// The max-entry norm of M^n is not monotone in n, so a single small change
/// does not mean convergence (diag(1/2, 1/2) plus a unit off-diagonal entry
/// keeps max entry 1 after one squaring). The change test only applies once
/// 2^m exceeds 2^48.
inline double log_spectral_radius_by_squaring(const Matrix& m) {
  const std::size_t n = m.rows();
  Matrix cur = m;
  Matrix next(n);

  auto max_entry = [](const Matrix& x) {
    double v = 0.0;
    for (double e : x.data()) v = std::max(v, e);
    return v;
  };

  double c = max_entry(cur);
  if (c == 0.0) return -std::numeric_limits<double>::infinity();
  for (double& e : cur.data()) e /= c;
  // After m squarings cur = M^{2^m} / exp(2^m * estimate).
  double estimate = std::log(c);
  double weight = 1.0;

  for (int step = 0; step < 200; ++step) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) next(i, j) = 0.0;
      for (std::size_t l = 0; l < n; ++l) {
        const double x = cur(i, l);
        if (x == 0.0) continue;
        for (std::size_t j = 0; j < n; ++j) next(i, j) += x * cur(l, j);
      }
    }
    std::swap(cur, next);
    c = max_entry(cur);
    if (c == 0.0) return -std::numeric_limits<double>::infinity();
    for (double& e : cur.data()) e /= c;
    weight *= 0.5;
    const double delta = weight * std::log(c);
    estimate += delta;
    if (step >= 48 && std::abs(delta) < 1e-14) break;
  }
  return estimate;
}

inline double spectral_radius_2x2(double a, double b, double c, double d) {
  // (a+d)/2 + sqrt(((a-d)/2)^2 + bc); the discriminant is nonnegative for bc >= 0.
  const double half_gap = 0.5 * (a - d);
  return 0.5 * (a + d) + std::sqrt(half_gap * half_gap + b * c);
}

}  // namespace detail

/// Spectral radius of a nonnegative matrix. Closed form for dimensions 1 and 2.
inline double spectral_radius(const NonnegMatrix& m) {
  const Matrix& x = m.matrix();
  if (m.dim() == 1) return x(0, 0);
  if (m.dim() == 2) return detail::spectral_radius_2x2(x(0, 0), x(0, 1), x(1, 0), x(1, 1));
  return std::exp(detail::log_spectral_radius_by_squaring(x));
}

inline double log_spectral_radius(const NonnegMatrix& m) {
  if (m.dim() <= 2) return std::log(spectral_radius(m));
  return detail::log_spectral_radius_by_squaring(m.matrix());
}

enum class PressureBranch { zero_s, lifted, determinant };

constexpr std::string_view to_string(PressureBranch b) noexcept {
  switch (b) {
    case PressureBranch::zero_s: return "zero_s";
    case PressureBranch::lifted: return "lifted";
    case PressureBranch::determinant: return "determinant";
  }
  return "unknown";
}

struct PressureValue {
  double value = 0.0;
  PressureBranch branch = PressureBranch::zero_s;
  std::size_t k = 0;               // meaningful for the lifted branch
  double spectral_radius = 0.0;    // meaningful for the lifted branch
};

/// Throws unless the system is nonempty and all matrices share one dimension.
inline std::size_t check_system(std::span<const GenPermMatrix> maps) {
  if (maps.empty()) throw Error(Errc::empty_system, "system has no maps");
  const std::size_t d = maps.front().dim();
  for (const auto& a : maps)
    if (a.dim() != d) throw Error(Errc::dimension_mismatch, "maps have different dimensions");
  return d;
}

/// Sum of the lifts of all maps in the given basis.
inline NonnegMatrix lifted_sum(std::span<const GenPermMatrix> maps, double s, const LiftBasis& basis) {
  check_system(maps);
  Matrix sum(basis.size());
  for (const auto& a : maps) {
    const GenPermMatrix lifted = lift_ps(a, s, basis);
    for (std::size_t j = 0; j < lifted.dim(); ++j) sum(lifted.image(j), j) += lifted.scalar(j);
  }
  return NonnegMatrix(std::move(sum));
}

/// log rho of the lifted sum with an explicit k; valid for s in [k, k+1].
inline double lifted_log_pressure(std::span<const GenPermMatrix> maps, double s, std::size_t k) {
  const std::size_t d = check_system(maps);
  return log_spectral_radius(lifted_sum(maps, s, LiftBasis(d, k)));
}

/// log sum_i |det A_i|^{s/d}, computed as a log-sum-exp.
inline double determinant_log_pressure(std::span<const GenPermMatrix> maps, double s) {
  const std::size_t d = check_system(maps);
  std::vector<double> terms;
  terms.reserve(maps.size());
  for (const auto& a : maps) terms.push_back(s / static_cast<double>(d) * a.log_abs_det());
  const double top = *std::max_element(terms.begin(), terms.end());
  double acc = 0.0;
  for (double x : terms) acc += std::exp(x - top);
  return top + std::log(acc);
}

/// Pressure P(A, s) for s >= 0.
inline PressureValue pressure(std::span<const GenPermMatrix> maps, double s) {
  const std::size_t d = check_system(maps);
  if (!(s >= 0.0)) throw Error(Errc::negative_exponent, "s must be nonnegative");
  if (s == 0.0) return {std::log(static_cast<double>(maps.size())), PressureBranch::zero_s, 0, 0.0};
  if (s >= static_cast<double>(d)) return {determinant_log_pressure(maps, s), PressureBranch::determinant, 0, 0.0};

  const auto k = static_cast<std::size_t>(std::floor(s));
  const NonnegMatrix sum = lifted_sum(maps, s, LiftBasis(d, k));
  const double log_rho = log_spectral_radius(sum);
  if (!std::isfinite(log_rho)) throw Error(Errc::numeric_failure, "lifted sum has zero spectral radius");
  return {log_rho, PressureBranch::lifted, k, std::exp(log_rho)};
}

/// Sum of the planar modified lifts q_t.
inline NonnegMatrix modified_lifted_sum(std::span<const GenPermMatrix> maps, double s, double t) {
  check_system(maps);
  Matrix sum(2);
  for (const auto& a : maps) {
    const GenPermMatrix lifted = lift_qt(a, s, t);
    for (std::size_t j = 0; j < 2; ++j) sum(lifted.image(j), j) += lifted.scalar(j);
  }
  return NonnegMatrix(std::move(sum));
}

/// log of the growth rate of sum over words of alpha_1^t alpha_2^{s-t}.
inline double modified_pressure(std::span<const GenPermMatrix> maps, double s, double t) {
  return log_spectral_radius(modified_lifted_sum(maps, s, t));
}

}  // namespace boxlike
