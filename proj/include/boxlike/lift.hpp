#pragma once

// Lifts of generalized permutation matrices whose operator norm reproduces
// the singular value function. Summing the lifts of a system gives a
// nonnegative matrix whose spectral radius is the exponential of the pressure.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "boxlike/error.hpp"
#include "boxlike/gpmat.hpp"

namespace boxlike {

/// Index set of pairs (S, l) with S a k-element subset of {0, ..., d-1} and
/// l outside S, ordered lexicographically by (sorted S, l).
class LiftBasis {
 public:
  struct Pair {
    std::vector<std::size_t> subset;  // sorted
    std::size_t free;
  };

  LiftBasis(std::size_t d, std::size_t k) : d_(d), k_(k) {
    if (d == 0 || d > 31) throw Error(Errc::invalid_k, "ambient dimension must be in [1, 31]");
    if (k >= d) throw Error(Errc::invalid_k, "k must satisfy 0 <= k < d");

    std::vector<std::size_t> subset(k);
    for (std::size_t i = 0; i < k; ++i) subset[i] = i;
    for (;;) {
      std::uint32_t mask = 0;
      for (std::size_t j : subset) mask |= 1u << j;
      for (std::size_t l = 0; l < d; ++l) {
        if (mask & (1u << l)) continue;
        index_.emplace(key(mask, l), pairs_.size());
        pairs_.push_back({subset, l});
      }
      // next k-combination in lexicographic order
      std::size_t i = k;
      while (i > 0 && subset[i - 1] == d - k + i - 1) --i;
      if (i == 0) break;
      ++subset[i - 1];
      for (std::size_t j = i; j < k; ++j) subset[j] = subset[j - 1] + 1;
    }
  }

  std::size_t ambient_dim() const noexcept { return d_; }
  std::size_t k() const noexcept { return k_; }
  std::size_t size() const noexcept { return pairs_.size(); }
  const std::vector<Pair>& pairs() const noexcept { return pairs_; }

  std::size_t index_of(std::uint32_t subset_mask, std::size_t free) const {
    return index_.at(key(subset_mask, free));
  }

 private:
  static std::uint64_t key(std::uint32_t mask, std::size_t free) {
    return (static_cast<std::uint64_t>(mask) << 8) | static_cast<std::uint64_t>(free);
  }

  std::size_t d_;
  std::size_t k_;
  std::vector<Pair> pairs_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
};

/// The lift p_s(A): e_{S,l} -> (prod_{j in S} |a_j|) |a_l|^{s-k} e_{pi(S), pi(l)}.
///
/// The formula is valid for s in [k, k+1]; at an integer s both neighbouring
/// bases are accepted, which is what the boundary identities compare.
inline GenPermMatrix lift_ps(const GenPermMatrix& a, double s, const LiftBasis& basis) {
  if (!(s >= 0.0)) throw Error(Errc::negative_exponent, "s must be nonnegative");
  if (basis.ambient_dim() != a.dim())
    throw Error(Errc::basis_mismatch, "basis dimension differs from matrix dimension");
  const double k = static_cast<double>(basis.k());
  if (s < k || s > k + 1.0) throw Error(Errc::basis_mismatch, "s must lie in [k, k+1] for the basis");

  const double frac = s - k;
  std::vector<double> log_abs(a.dim());
  for (std::size_t j = 0; j < a.dim(); ++j) log_abs[j] = std::log(std::abs(a.scalar(j)));

  const std::size_t n = basis.size();
  std::vector<std::size_t> perm(n);
  std::vector<double> scalars(n);
  for (std::size_t p = 0; p < n; ++p) {
    const auto& pair = basis.pairs()[p];
    double value = 1.0;
    std::uint32_t image_mask = 0;
    for (std::size_t j : pair.subset) {
      value *= std::abs(a.scalar(j));
      image_mask |= 1u << a.image(j);
    }
    value *= std::exp(frac * log_abs[pair.free]);
    perm[p] = basis.index_of(image_mask, a.image(pair.free));
    scalars[p] = value;
  }
  return {std::move(perm), std::move(scalars)};
}

/// Lift for s in [k, k+1] using the basis with k = floor(s), or k = d - 1 at s = d.
inline GenPermMatrix lift_ps(const GenPermMatrix& a, double s) {
  if (!(s >= 0.0)) throw Error(Errc::negative_exponent, "s must be nonnegative");
  const double d = static_cast<double>(a.dim());
  if (s > d) throw Error(Errc::basis_mismatch, "no lift for s > d");
  const auto k = s == d ? a.dim() - 1 : static_cast<std::size_t>(std::floor(s));
  return lift_ps(a, s, LiftBasis(a.dim(), k));
}

/// Planar lift q_t with norm alpha_1^t alpha_2^{s-t}:
/// q_t(A) e_j = |a_j|^t |a_{1-j}|^{s-t} e_{pi(j)}.
inline GenPermMatrix lift_qt(const GenPermMatrix& a, double s, double t) {
  if (a.dim() != 2) throw Error(Errc::unsupported_dimension, "modified lift is defined for d = 2 only");
  if (!(t > 0.0 && t <= 1.0 && s >= t && s <= 2.0 * t))
    throw Error(Errc::invalid_exponents, "require 0 < t <= 1 and t <= s <= 2t");
  const double l0 = std::log(std::abs(a.scalar(0)));
  const double l1 = std::log(std::abs(a.scalar(1)));
  std::vector<double> scalars{std::exp(t * l0 + (s - t) * l1), std::exp(t * l1 + (s - t) * l0)};
  return {{a.image(0), a.image(1)}, std::move(scalars)};
}

}  // namespace boxlike
