#pragma once

// Generalized permutation matrices: one nonzero entry in every row and column.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "boxlike/error.hpp"
#include "boxlike/matrix.hpp"

namespace boxlike {

/// A matrix acting by A e_j = scalars[j] * e_{perm[j]} (zero-based indices).
///
/// The permutation is stored in image form: perm[j] is the row holding the
/// single nonzero entry of column j.
class GenPermMatrix {
 public:
  GenPermMatrix(std::vector<std::size_t> perm, std::vector<double> scalars)
      : perm_(std::move(perm)), scalars_(std::move(scalars)) {
    if (perm_.empty()) throw Error(Errc::dimension_mismatch, "dimension must be positive");
    if (perm_.size() != scalars_.size())
      throw Error(Errc::dimension_mismatch, "perm and scalars differ in length");
    std::vector<bool> hit(perm_.size(), false);
    for (std::size_t target : perm_) {
      if (target >= perm_.size() || hit[target])
        throw Error(Errc::not_generalized_permutation, "perm is not a bijection");
      hit[target] = true;
    }
    for (double a : scalars_) {
      if (a == 0.0 || !std::isfinite(a))
        throw Error(Errc::not_generalized_permutation, "scalars must be nonzero and finite");
    }
  }

  static GenPermMatrix identity(std::size_t d) {
    std::vector<std::size_t> perm(d);
    for (std::size_t j = 0; j < d; ++j) perm[j] = j;
    return {std::move(perm), std::vector<double>(d, 1.0)};
  }

  static GenPermMatrix diagonal(std::vector<double> scalars) {
    std::vector<std::size_t> perm(scalars.size());
    for (std::size_t j = 0; j < perm.size(); ++j) perm[j] = j;
    return {std::move(perm), std::move(scalars)};
  }

  std::size_t dim() const noexcept { return perm_.size(); }
  std::span<const std::size_t> perm() const noexcept { return perm_; }
  std::span<const double> scalars() const noexcept { return scalars_; }
  std::size_t image(std::size_t j) const { return perm_[j]; }
  double scalar(std::size_t j) const { return scalars_[j]; }

  /// Operator norm, which for this class is the largest |scalar|.
  double norm() const {
    double n = 0.0;
    for (double a : scalars_) n = std::max(n, std::abs(a));
    return n;
  }

  double log_abs_det() const {
    double acc = 0.0;
    for (double a : scalars_) acc += std::log(std::abs(a));
    return acc;
  }

  double abs_det() const {
    double acc = 1.0;
    for (double a : scalars_) acc *= std::abs(a);
    return acc;
  }

  bool is_identity_perm() const {
    for (std::size_t j = 0; j < perm_.size(); ++j)
      if (perm_[j] != j) return false;
    return true;
  }

  friend bool operator==(const GenPermMatrix&, const GenPermMatrix&) = default;

 private:
  std::vector<std::size_t> perm_;
  std::vector<double> scalars_;
};

/// Recognizes a dense matrix as a generalized permutation matrix. Entries
/// below 1e-14 times the largest absolute entry count as zero.
inline GenPermMatrix from_dense(const Matrix& m) {
  if (!m.is_square() || m.rows() == 0)
    throw Error(Errc::dimension_mismatch, "matrix must be square and nonempty");
  const std::size_t d = m.rows();
  double largest = 0.0;
  for (double x : m.data()) {
    if (!std::isfinite(x)) throw Error(Errc::not_generalized_permutation, "non-finite entry");
    largest = std::max(largest, std::abs(x));
  }
  const double cutoff = 1e-14 * largest;
  auto nonzero = [&](double x) { return x != 0.0 && std::abs(x) >= cutoff; };

  std::vector<std::size_t> perm(d);
  std::vector<double> scalars(d);
  std::vector<std::size_t> row_count(d, 0);
  for (std::size_t j = 0; j < d; ++j) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < d; ++i) {
      if (nonzero(m(i, j))) {
        ++count;
        ++row_count[i];
        perm[j] = i;
        scalars[j] = m(i, j);
      }
    }
    if (count != 1)
      throw Error(Errc::not_generalized_permutation,
                  "column " + std::to_string(j + 1) + " has " + std::to_string(count) + " nonzero entries");
  }
  for (std::size_t i = 0; i < d; ++i) {
    if (row_count[i] != 1)
      throw Error(Errc::not_generalized_permutation,
                  "row " + std::to_string(i + 1) + " has " + std::to_string(row_count[i]) + " nonzero entries");
  }
  return {std::move(perm), std::move(scalars)};
}

inline Matrix to_dense(const GenPermMatrix& a) {
  Matrix m(a.dim());
  for (std::size_t j = 0; j < a.dim(); ++j) m(a.image(j), j) = a.scalar(j);
  return m;
}

/// AB e_j = a_{pi_B(j)} b_j e_{pi_A(pi_B(j))}.
inline GenPermMatrix multiply(const GenPermMatrix& a, const GenPermMatrix& b) {
  if (a.dim() != b.dim()) throw Error(Errc::dimension_mismatch, "cannot multiply matrices of different dimension");
  const std::size_t d = a.dim();
  std::vector<std::size_t> perm(d);
  std::vector<double> scalars(d);
  for (std::size_t j = 0; j < d; ++j) {
    const std::size_t mid = b.image(j);
    perm[j] = a.image(mid);
    scalars[j] = a.scalar(mid) * b.scalar(j);
  }
  return {std::move(perm), std::move(scalars)};
}

inline GenPermMatrix operator*(const GenPermMatrix& a, const GenPermMatrix& b) { return multiply(a, b); }

/// Singular values in decreasing order: the absolute values of the scalars.
inline std::vector<double> singular_values(const GenPermMatrix& a) {
  std::vector<double> sv(a.scalars().begin(), a.scalars().end());
  for (double& x : sv) x = std::abs(x);
  std::sort(sv.begin(), sv.end(), std::greater<>());
  return sv;
}

/// Singular value function phi^s. For s <= d this is
/// alpha_1 ... alpha_k * alpha_{k+1}^{s-k} with k = floor(s); for s >= d it is
/// |det A|^{s/d}.
inline double singular_value_function(const GenPermMatrix& a, double s) {
  if (!(s >= 0.0)) throw Error(Errc::negative_exponent, "s must be nonnegative");
  const std::size_t d = a.dim();
  const double dd = static_cast<double>(d);
  if (s >= dd) return std::exp(s / dd * a.log_abs_det());

  const std::vector<double> sv = singular_values(a);
  const auto k = static_cast<std::size_t>(std::floor(s));
  double value = 1.0;
  for (std::size_t i = 0; i < k; ++i) value *= sv[i];
  const double frac = s - static_cast<double>(k);
  if (frac > 0.0) value *= std::exp(frac * std::log(sv[k]));
  return value;
}

}  // namespace boxlike
