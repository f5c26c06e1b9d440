#pragma once

// Dimension solvers built on the pressure: the affinity dimension in any
// dimension, the three-case planar formula, and the planar modified-pressure
// (packing/box) dimension for a given projection dimension t.

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "boxlike/error.hpp"
#include "boxlike/gpmat.hpp"
#include "boxlike/matrix.hpp"
#include "boxlike/pressure.hpp"
#include "boxlike/roots.hpp"

namespace boxlike {

enum class DimensionBranch {
  corollary_case1,   // 0 < s <= 1, planar
  corollary_case2,   // 1 <= s <= 2, planar
  determinant_case,  // s >= d
  general_lifted,    // 0 < s < d via the lifted spectral radius
  modified_pressure, // planar modified pressure for a given t
  degenerate_zero,   // single map: P(A, 0) = 0
};

constexpr std::string_view to_string(DimensionBranch b) noexcept {
  switch (b) {
    case DimensionBranch::corollary_case1: return "corollary_case1";
    case DimensionBranch::corollary_case2: return "corollary_case2";
    case DimensionBranch::determinant_case: return "determinant_case";
    case DimensionBranch::general_lifted: return "general_lifted";
    case DimensionBranch::modified_pressure: return "modified_pressure";
    case DimensionBranch::degenerate_zero: return "degenerate_zero";
  }
  return "unknown";
}

struct DimensionResult {
  double value = 0.0;
  DimensionBranch branch = DimensionBranch::general_lifted;
  double residual = 0.0;  // |P| for pressure solves, |rho - 1| or |sum - 1| for planar cases
  std::size_t iterations = 0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
};

inline constexpr double kSolverTolerance = 1e-12;
inline constexpr double kCertificateTolerance = 1e-11;

inline void check_contractive(std::span<const GenPermMatrix> maps) {
  for (std::size_t i = 0; i < maps.size(); ++i) {
    if (!(maps[i].norm() < 1.0))
      throw Error(Errc::not_contractive, "map " + std::to_string(i + 1) + " has operator norm >= 1");
  }
}

/// The unique s >= 0 with P(A, s) = 0.
inline DimensionResult affinity_dimension(std::span<const GenPermMatrix> maps) {
  const std::size_t d = check_system(maps);
  check_contractive(maps);
  if (maps.size() == 1) return {0.0, DimensionBranch::degenerate_zero, 0.0, 0, 0.0, 0.0};

  auto p = [&](double s) { return pressure(maps, s).value; };
  double lo = 0.0;
  double f_lo = p(0.0);
  double hi = static_cast<double>(d);
  double f_hi = p(hi);
  std::size_t extra = 1;
  for (int doubling = 0; f_hi > 0.0; ++doubling) {
    if (doubling > 60) throw Error(Errc::numeric_failure, "could not bracket the affinity dimension");
    lo = hi;
    f_lo = f_hi;
    hi *= 2.0;
    f_hi = p(hi);
    ++extra;
  }

  const auto root = detail::solve_decreasing(p, lo, f_lo, hi, f_hi);
  DimensionResult r;
  r.value = root.value;
  r.branch = root.value >= static_cast<double>(d) ? DimensionBranch::determinant_case : DimensionBranch::general_lifted;
  r.residual = std::abs(root.f_value);
  r.iterations = root.iterations + extra;
  r.bracket_lo = root.lo;
  r.bracket_hi = root.hi;
  return r;
}

/// Entries of a planar generalized permutation matrix in the two shapes
/// diag(a, d) and antidiag(b, c) = ((0, b), (c, 0)).
struct PlanarEntries {
  bool diagonal;
  double first;   // a or b
  double second;  // d or c
};

inline PlanarEntries planar_entries(const GenPermMatrix& m) {
  if (m.dim() != 2) throw Error(Errc::unsupported_dimension, "expected a 2x2 matrix");
  if (m.is_identity_perm()) return {true, m.scalar(0), m.scalar(1)};
  // column 0 sends e_1 to c e_2, column 1 sends e_2 to b e_1
  return {false, m.scalar(1), m.scalar(0)};
}

/// Case-1 matrix for 0 < s <= 1:
/// ((sum |a|^s, sum |b|^s), (sum |c|^s, sum |d|^s)).
inline Matrix corollary_case1_matrix(std::span<const GenPermMatrix> maps, double s) {
  Matrix m(2);
  for (const auto& a : maps) {
    const PlanarEntries e = planar_entries(a);
    const double x = std::pow(std::abs(e.first), s);
    const double y = std::pow(std::abs(e.second), s);
    if (e.diagonal) {
      m(0, 0) += x;
      m(1, 1) += y;
    } else {
      m(0, 1) += x;
      m(1, 0) += y;
    }
  }
  return m;
}

/// Case-2 matrix for 1 <= s <= 2:
/// ((sum |a||d|^{s-1}, sum |b||c|^{s-1}), (sum |b|^{s-1}|c|, sum |a|^{s-1}|d|)).
inline Matrix corollary_case2_matrix(std::span<const GenPermMatrix> maps, double s) {
  Matrix m(2);
  for (const auto& a : maps) {
    const PlanarEntries e = planar_entries(a);
    const double x = std::abs(e.first);
    const double y = std::abs(e.second);
    const double upper = x * std::pow(y, s - 1.0);
    const double lower = std::pow(x, s - 1.0) * y;
    if (e.diagonal) {
      m(0, 0) += upper;
      m(1, 1) += lower;
    } else {
      m(0, 1) += upper;
      m(1, 0) += lower;
    }
  }
  return m;
}

inline double determinant_sum(std::span<const GenPermMatrix> maps, double s) {
  double acc = 0.0;
  for (const auto& a : maps) acc += std::pow(a.abs_det(), s / 2.0);
  return acc;
}

/// Planar affinity dimension through the three explicit cases.
inline DimensionResult corollary_2d(std::span<const GenPermMatrix> maps) {
  const std::size_t d = check_system(maps);
  if (d != 2) throw Error(Errc::unsupported_dimension, "planar formula requires d = 2");
  check_contractive(maps);
  if (maps.size() == 1) throw Error(Errc::degenerate_dimension_zero, "a single map has affinity dimension 0");

  auto rho = [](const Matrix& m) { return spectral_radius(NonnegMatrix(m)); };
  const double n = static_cast<double>(maps.size());

  DimensionResult r;
  const double rho_at_one = rho(corollary_case1_matrix(maps, 1.0));
  const double det_at_two = determinant_sum(maps, 2.0);

  if (rho_at_one <= 1.0) {
    auto f = [&](double s) { return std::log(rho(corollary_case1_matrix(maps, s))); };
    const auto root = detail::solve_decreasing(f, 0.0, std::log(n), 1.0, std::log(rho_at_one));
    r.branch = DimensionBranch::corollary_case1;
    r.value = root.value;
    r.residual = std::abs(rho(corollary_case1_matrix(maps, root.value)) - 1.0);
    r.iterations = root.iterations;
    r.bracket_lo = root.lo;
    r.bracket_hi = root.hi;
  } else if (det_at_two < 1.0) {
    auto f = [&](double s) { return std::log(rho(corollary_case2_matrix(maps, s))); };
    const auto root = detail::solve_decreasing(f, 1.0, std::log(rho_at_one), 2.0, std::log(det_at_two));
    r.branch = DimensionBranch::corollary_case2;
    r.value = root.value;
    r.residual = std::abs(rho(corollary_case2_matrix(maps, root.value)) - 1.0);
    r.iterations = root.iterations;
    r.bracket_lo = root.lo;
    r.bracket_hi = root.hi;
  } else {
    auto f = [&](double s) { return std::log(determinant_sum(maps, s)); };
    double lo = 2.0;
    double hi = 4.0;
    double f_lo = std::log(det_at_two);
    double f_hi = f(hi);
    for (int doubling = 0; f_hi > 0.0; ++doubling) {
      if (doubling > 60) throw Error(Errc::numeric_failure, "could not bracket the determinant root");
      lo = hi;
      f_lo = f_hi;
      hi *= 2.0;
      f_hi = f(hi);
    }
    const auto root = detail::solve_decreasing(f, lo, f_lo, hi, f_hi);
    r.branch = DimensionBranch::determinant_case;
    r.value = root.value;
    r.residual = std::abs(determinant_sum(maps, root.value) - 1.0);
    r.iterations = root.iterations;
    r.bracket_lo = root.lo;
    r.bracket_hi = root.hi;
  }
  return r;
}

/// True iff the 2x2 matrix has 1 as an eigenvalue: 1 + det B = tr B.
inline bool eig1_test(const Matrix& m) {
  if (m.rows() != 2 || m.cols() != 2) throw Error(Errc::unsupported_dimension, "expected a 2x2 matrix");
  const double det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  return std::abs(1.0 + det - trace(m)) <= 1e-12;
}

/// The s in [t, 2t] at which the modified pressure vanishes.
inline DimensionResult fraser_dimension(std::span<const GenPermMatrix> maps, double t) {
  const std::size_t d = check_system(maps);
  if (d != 2) throw Error(Errc::unsupported_dimension, "modified pressure requires d = 2");
  if (!(t > 0.0 && t <= 1.0)) throw Error(Errc::invalid_t, "t must lie in (0, 1]");
  check_contractive(maps);

  auto f = [&](double s) { return modified_pressure(maps, s, t); };
  const double f_lo = f(t);
  const double f_hi = f(2.0 * t);
  if (f_lo < 0.0 || f_hi > 0.0)
    throw Error(Errc::no_root_in_range, "modified pressure has no zero in [t, 2t]");

  const auto root = detail::solve_decreasing(f, t, f_lo, 2.0 * t, f_hi);
  DimensionResult r;
  r.value = root.value;
  r.branch = DimensionBranch::modified_pressure;
  r.residual = std::abs(root.f_value);
  r.iterations = root.iterations;
  r.bracket_lo = root.lo;
  r.bracket_hi = root.hi;
  return r;
}

}  // namespace boxlike
