#pragma once

// Brute-force reference computations. Everything here follows the
// definitions directly and is slow; it exists to check the fast paths.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <future>
#include <span>
#include <vector>

#include "boxlike/error.hpp"
#include "boxlike/gpmat.hpp"
#include "boxlike/matrix.hpp"
#include "boxlike/pressure.hpp"

namespace boxlike::oracle {

inline constexpr std::uint64_t kMaxWords = 100'000'000;

struct OracleEstimate {
  unsigned depth = 0;
  double value = 0.0;  // (1/n) log sum over words of phi^s
  std::uint64_t word_count = 0;
};

namespace detail {

struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

// Words are enumerated in lexicographic order of (i_1, ..., i_n); the
// product for a word is A_{i_n} ... A_{i_1}, extended on the left.
inline void accumulate_words(std::span<const GenPermMatrix> maps, double s, unsigned remaining,
                             const GenPermMatrix& product, KahanSum& acc) {
  if (remaining == 0) {
    acc.add(singular_value_function(product, s));
    return;
  }
  for (const auto& a : maps) accumulate_words(maps, s, remaining - 1, multiply(a, product), acc);
}

}  // namespace detail

/// Number of words of the given length, or 0 if it exceeds `limit`.
inline std::uint64_t word_count(std::size_t symbols, unsigned depth, std::uint64_t limit = kMaxWords) {
  std::uint64_t count = 1;
  for (unsigned i = 0; i < depth; ++i) {
    if (count > limit / symbols) return 0;
    count *= symbols;
  }
  return count <= limit ? count : 0;
}

/// (1/n) log sum_{i_1..i_n} phi^s(A_{i_n} ... A_{i_1}) by full enumeration.
///
/// Work is split by the first symbol; partial sums are reduced in symbol
/// order so the result does not depend on `parallel`.
inline OracleEstimate pressure_estimate(std::span<const GenPermMatrix> maps, double s, unsigned depth,
                                        bool parallel = true) {
  check_system(maps);
  if (!(s >= 0.0)) throw Error(Errc::negative_exponent, "s must be nonnegative");
  if (depth == 0) throw Error(Errc::depth_too_large, "depth must be at least 1");
  const std::uint64_t words = word_count(maps.size(), depth);
  if (words == 0) throw Error(Errc::depth_too_large, "more than 1e8 words at this depth");

  std::vector<detail::KahanSum> partial(maps.size());
  auto run = [&](std::size_t first) {
    detail::accumulate_words(maps, s, depth - 1, maps[first], partial[first]);
  };
  if (parallel && maps.size() > 1 && words >= 4096) {
    std::vector<std::future<void>> jobs;
    for (std::size_t i = 0; i < maps.size(); ++i) jobs.push_back(std::async(std::launch::async, run, i));
    for (auto& j : jobs) j.get();
  } else {
    for (std::size_t i = 0; i < maps.size(); ++i) run(i);
  }

  detail::KahanSum total;
  for (const auto& p : partial) {
    total.add(p.sum);
    total.add(-p.carry);
  }
  return {depth, std::log(total.sum) / static_cast<double>(depth), words};
}

/// Naive triple-loop product.
inline Matrix dense_product(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw Error(Errc::dimension_mismatch, "inner dimensions differ");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      double acc = 0.0;
      for (std::size_t l = 0; l < a.cols(); ++l) acc += a(i, l) * b(l, j);
      c(i, j) = acc;
    }
  return c;
}

inline double dense_determinant(Matrix m) {
  if (!m.is_square()) throw Error(Errc::dimension_mismatch, "determinant of a non-square matrix");
  const std::size_t n = m.rows();
  double det = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t i = col + 1; i < n; ++i)
      if (std::abs(m(i, col)) > std::abs(m(pivot, col))) pivot = i;
    if (m(pivot, col) == 0.0) return 0.0;
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(pivot, j), m(col, j));
      det = -det;
    }
    det *= m(col, col);
    for (std::size_t i = col + 1; i < n; ++i) {
      const double factor = m(i, col) / m(col, col);
      for (std::size_t j = col; j < n; ++j) m(i, j) -= factor * m(col, j);
    }
  }
  return det;
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
inline std::vector<double> symmetric_eigenvalues(Matrix a, double tol = 1e-14) {
  if (!a.is_square()) throw Error(Errc::dimension_mismatch, "eigenvalues of a non-square matrix");
  const std::size_t n = a.rows();
  double scale = 0.0;
  for (double x : a.data()) scale = std::max(scale, std::abs(x));

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (std::sqrt(off) <= tol * std::max(scale, 1e-300)) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (a(p, q) == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - sn * akq;
          a(k, q) = sn * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - sn * aqk;
          a(q, k) = sn * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = a(i, i);
  return eig;
}

/// Singular values of any square matrix, as square roots of the eigenvalues
/// of A^T A, in decreasing order.
inline std::vector<double> dense_singular_values(const Matrix& m) {
  if (!m.is_square()) throw Error(Errc::dimension_mismatch, "singular values of a non-square matrix");
  const std::size_t n = m.rows();
  Matrix gram(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t l = 0; l < n; ++l) acc += m(l, i) * m(l, j);
      gram(i, j) = acc;
    }
  std::vector<double> sv = symmetric_eigenvalues(std::move(gram));
  for (double& x : sv) x = std::sqrt(std::max(x, 0.0));
  std::sort(sv.begin(), sv.end(), std::greater<>());
  return sv;
}

}  // namespace boxlike::oracle
