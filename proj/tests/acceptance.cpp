// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "boxlike/boxlike.hpp"
#include "cli_runner.hpp"
#include "test_support.hpp"

using namespace boxlike;
using boxlike::testing::random_gpm;
using boxlike::testing::random_system;
using boxlike::testing::rel_diff;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass;
  std::string detail;
};

std::vector<GenPermMatrix> example(const std::string& name) { return builtin_examples().at(name).linear_parts(); }

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* pattern, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

bool same_lift(const GenPermMatrix& a, const GenPermMatrix& b, double tol) {
  if (a.dim() != b.dim()) return false;
  for (std::size_t j = 0; j < a.dim(); ++j)
    if (a.image(j) != b.image(j) || rel_diff(a.scalar(j), b.scalar(j)) > tol) return false;
  return true;
}

Outcome ac1_example1_regression() {
  const auto start = Clock::now();
  const auto r = affinity_dimension(example("example1"));
  const double elapsed = seconds_since(start);
  const double err = std::abs(r.value - 1.4303520226239694);
  return {err <= 1e-11 && elapsed < 1.0, fmt("s*=%.17g |err|=%.2e time=%.3fs", r.value, err, elapsed)};
}

Outcome ac2_example1_certificate() {
  const double s = affinity_dimension(example("example1")).value;
  const double lhs = 13.0 / 27.0 * std::pow(7.0 / 9.0, s - 1.0) + 7.0 / 9.0 * std::pow(13.0 / 27.0, s - 1.0);
  const double err = std::abs(lhs - 1.0);
  return {err <= 1e-11, fmt("|(13/27)(7/9)^{s-1}+(7/9)(13/27)^{s-1}-1|=%.2e", err)};
}

Outcome ac3_example2_regression() {
  const auto start = Clock::now();
  const auto r = affinity_dimension(example("example2"));
  const double elapsed = seconds_since(start);
  const double err = std::abs(r.value - 1.5420266478629560);
  return {err <= 1e-11 && elapsed < 1.0, fmt("s*=%.17g |err|=%.2e time=%.3fs", r.value, err, elapsed)};
}

Outcome ac4_example2_certificate() {
  const auto maps = example("example2");
  const double s = affinity_dimension(maps).value;
  const double lhs = 1.0 + std::pow(9.0, -s) * (std::pow(4.0, s - 1.0) + std::pow(2.0, s + 1.0) + 4.0 -
                                                2.0 * std::pow(2.0 / 3.0, s - 1.0) -
                                                2.0 * std::pow(4.0 / 3.0, s - 1.0));
  const double rhs = (std::pow(2.0, s) + 4.0) / std::pow(3.0, s);
  const double err = std::abs(lhs - rhs);
  const bool eig = eig1_test(lifted_sum(maps, s, LiftBasis(2, 1)).matrix());
  return {err <= 1e-10 && eig, fmt("|lhs-rhs|=%.2e eig1_test=%s", err, eig ? "true" : "false")};
}

Outcome ac5_example2_subsystem() {
  auto maps = example("example2");
  double det_sum = 0.0;
  for (const auto& a : maps) det_sum += a.abs_det();
  maps.erase(maps.begin() + 2, maps.end());
  const double s = affinity_dimension(maps).value;
  const double err_dim = std::abs(s - 1.0);
  const double err_det = std::abs(det_sum - 2.0 / 3.0);
  return {err_dim <= 1e-11 && err_det <= 1e-14, fmt("dim(T1,T2)=%.17g sum|det|-2/3=%.2e", s, err_det)};
}

Outcome ac6_homomorphism_suite() {
  const auto start = Clock::now();
  std::mt19937_64 rng(20260601);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int ps_fail = 0, qt_fail = 0;
  for (int i = 0; i < 1000; ++i) {
    const std::size_t d = 2 + i % 3;
    const auto a = random_gpm(rng, d, 0.05, 2.0);
    const auto b = random_gpm(rng, d, 0.05, 2.0);
    const double s = unit(rng) * static_cast<double>(d);
    const auto la = lift_ps(a, s);
    if (!same_lift(lift_ps(a * b, s), la * lift_ps(b, s), 1e-12)) ++ps_fail;
    if (rel_diff(la.norm(), singular_value_function(a, s)) > 1e-12) ++ps_fail;
  }
  for (int i = 0; i < 1000; ++i) {
    const auto a = random_gpm(rng, 2, 0.05, 2.0);
    const auto b = random_gpm(rng, 2, 0.05, 2.0);
    const double t = 1e-3 + (1.0 - 1e-3) * unit(rng);
    const double s = t * (1.0 + unit(rng));
    const auto la = lift_qt(a, s, t);
    const auto sv = singular_values(a);
    if (!same_lift(lift_qt(a * b, s, t), la * lift_qt(b, s, t), 1e-12)) ++qt_fail;
    if (rel_diff(la.norm(), std::pow(sv[0], t) * std::pow(sv[1], s - t)) > 1e-12) ++qt_fail;
  }
  const double elapsed = seconds_since(start);
  return {ps_fail == 0 && qt_fail == 0 && elapsed < 10.0,
          fmt("p_s failures=%d q_t failures=%d time=%.2fs", ps_fail, qt_fail, elapsed)};
}

Outcome ac7_oracle_equivalence() {
  const auto start = Clock::now();
  std::mt19937_64 rng(20260602);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst_rel = 0.0;
  int monotone_fail = 0, bound_fail = 0;
  for (int i = 0; i < 25; ++i) {
    const std::size_t d = 1 + i % 3;
    const std::size_t n = 1 + (i / 3) % 3;
    const auto maps = random_system(rng, d, n);
    for (int j = 0; j < 3; ++j) {
      const double s = (j + unit(rng)) / 3.0 * (static_cast<double>(d) + 0.5);
      const double p = pressure(maps, s).value;
      double prev_gap = INFINITY;
      for (unsigned depth : {4u, 8u, 12u}) {
        const double est = oracle::pressure_estimate(maps, s, depth).value;
        const double gap = est - p;
        if (gap < -1e-12) ++bound_fail;
        if (gap > prev_gap + 1e-12) ++monotone_fail;
        prev_gap = gap;
        if (depth == 12) worst_rel = std::max(worst_rel, std::abs(std::exp(est) - std::exp(p)) / std::exp(p));
      }
    }
  }
  const double elapsed = seconds_since(start);
  return {worst_rel <= 0.05 && monotone_fail == 0 && bound_fail == 0 && elapsed < 300.0,
          fmt("worst depth-12 rel gap=%.4f monotone failures=%d bound failures=%d time=%.1fs", worst_rel,
              monotone_fail, bound_fail, elapsed)};
}

Outcome ac8_corollary_agreement() {
  std::mt19937_64 rng(20260603);
  double worst = 0.0, worst_cert = 0.0;
  int cases[3] = {0, 0, 0};
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 2 + i % 12;
    const double lo = i % 3 == 0 ? 0.02 : 0.3;
    const auto maps = random_system(rng, 2, n, lo, 0.98);
    const auto planar = corollary_2d(maps);
    const auto general = affinity_dimension(maps);
    worst = std::max(worst, std::abs(planar.value - general.value));
    const double s = planar.value;
    double cert = 0.0;
    switch (planar.branch) {
      case DimensionBranch::corollary_case1:
        cert = std::abs(spectral_radius(NonnegMatrix(corollary_case1_matrix(maps, s))) - 1.0);
        ++cases[0];
        break;
      case DimensionBranch::corollary_case2:
        cert = std::abs(spectral_radius(NonnegMatrix(corollary_case2_matrix(maps, s))) - 1.0);
        ++cases[1];
        break;
      default:
        cert = std::abs(determinant_sum(maps, s) - 1.0);
        ++cases[2];
        break;
    }
    worst_cert = std::max(worst_cert, cert);
  }
  return {worst <= 1e-11 && worst_cert <= 1e-11,
          fmt("max |corollary-general|=%.2e max certificate=%.2e cases=%d/%d/%d", worst, worst_cert, cases[0],
              cases[1], cases[2])};
}

Outcome ac9_boundary_continuity() {
  std::mt19937_64 rng(20260604);
  double worst_one = 0.0, worst_two = 0.0;
  for (int i = 0; i < 50; ++i) {
    const auto maps = random_system(rng, 2, 1 + i % 6);
    const double k0 = lifted_log_pressure(maps, 1.0, 0);
    const double k1 = lifted_log_pressure(maps, 1.0, 1);
    worst_one = std::max(worst_one, std::abs(k0 - k1));
    double det_sum = 0.0;
    for (const auto& a : maps) det_sum += a.abs_det();
    worst_two = std::max(worst_two, std::abs(lifted_log_pressure(maps, 2.0, 1) - std::log(det_sum)));
  }
  return {worst_one <= 1e-12 && worst_two <= 1e-12,
          fmt("max gap at s=1: %.2e, at s=2 vs log sum|det|: %.2e", worst_one, worst_two)};
}

Outcome ac10_example1_determinant() {
  const double p = pressure(example("example1"), 2.0).value;
  const double err = std::abs(p - std::log(182.0 / 243.0));
  return {err <= 1e-13, fmt("P(2)=%.17g log(182/243) err=%.2e", p, err)};
}

Outcome ac11_render_determinism() {
  const auto dir = std::filesystem::temp_directory_path();
  const auto a = dir / "boxlike_acceptance_a.ppm";
  const auto b = dir / "boxlike_acceptance_b.ppm";
  const std::string flags = " --width 800 --height 800 --iterations 1000000 --seed 2017";
  const int ra = boxlike::testing::run_cli("render example1 --out " + a.string() + flags).exit_code;
  const int rb = boxlike::testing::run_cli("render example1 --out " + b.string() + flags).exit_code;
  auto slurp = [](const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  };
  const std::string bytes_a = slurp(a);
  const std::string bytes_b = slurp(b);
  std::filesystem::remove(a);
  std::filesystem::remove(b);

  const std::string header = "P6\n800 800\n255\n";
  std::size_t lit = 0;
  if (bytes_a.size() == header.size() + 3 * 800 * 800 && bytes_a.compare(0, header.size(), header) == 0) {
    for (std::size_t i = header.size(); i < bytes_a.size(); i += 3)
      if (bytes_a[i] == '\0') ++lit;
  }
  const bool identical = !bytes_a.empty() && bytes_a == bytes_b;
  return {ra == 0 && rb == 0 && identical && lit >= 10000,
          fmt("exit=%d/%d identical=%s lit pixels=%zu", ra, rb, identical ? "yes" : "no", lit)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"AC1  example 1 affinity dimension", ac1_example1_regression},
      {"AC2  example 1 scalar equation certificate", ac2_example1_certificate},
      {"AC3  example 2 affinity dimension", ac3_example2_regression},
      {"AC4  example 2 eigenvalue-one identity", ac4_example2_certificate},
      {"AC5  example 2 sub-system and determinant sum", ac5_example2_subsystem},
      {"AC6  lift homomorphism and norm identities", ac6_homomorphism_suite},
      {"AC7  oracle equivalence", ac7_oracle_equivalence},
      {"AC8  planar formula vs general solver", ac8_corollary_agreement},
      {"AC9  boundary continuity at s=1 and s=2", ac9_boundary_continuity},
      {"AC10 example 1 determinant pressure", ac10_example1_determinant},
      {"AC11 render determinism", ac11_render_determinism},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("[%s] %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
