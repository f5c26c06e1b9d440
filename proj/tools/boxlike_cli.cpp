// Command-line front end: dimension solving, pressure curves, oracle checks
// and chaos-game rendering.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "boxlike/boxlike.hpp"

namespace {

using boxlike::Errc;
using nlohmann::json;

enum ExitCode : int { kOk = 0, kValidation = 2, kNumeric = 3, kIo = 4 };

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::no_root_in_range:
    case Errc::numeric_failure:
    case Errc::degenerate_dimension_zero:
      return kNumeric;
    case Errc::io_error:
      return kIo;
    default:
      return kValidation;
  }
}

std::string fmt(double x, int digits = 17) {
  std::ostringstream os;
  os << std::setprecision(digits) << x;
  return os.str();
}

json dimension_json(const boxlike::DimensionResult& r) {
  return {{"value", r.value},
          {"branch", std::string(to_string(r.branch))},
          {"residual", r.residual},
          {"iterations", r.iterations},
          {"bracket", {r.bracket_lo, r.bracket_hi}}};
}

std::string branch_label(const boxlike::PressureValue& p) {
  std::string s(to_string(p.branch));
  if (p.branch == boxlike::PressureBranch::lifted) s += "(k=" + std::to_string(p.k) + ")";
  return s;
}

int run_dim(const std::string& spec_name, const std::optional<double>& t, bool as_json) {
  const auto spec = boxlike::load_ifs(spec_name);
  const auto maps = spec.linear_parts();
  const auto r = t ? boxlike::fraser_dimension(maps, *t) : boxlike::affinity_dimension(maps);
  if (as_json) {
    json out = dimension_json(r);
    if (t) out["t"] = *t;
    std::cout << out.dump(2) << "\n";
    return kOk;
  }
  std::cout << "value      " << fmt(r.value) << "\n"
            << "branch     " << to_string(r.branch) << "\n"
            << "residual   " << fmt(r.residual, 3) << "\n"
            << "iterations " << r.iterations << "\n"
            << "bracket    [" << fmt(r.bracket_lo) << ", " << fmt(r.bracket_hi) << "]\n";
  return kOk;
}

int run_pressure(const std::string& spec_name, const std::optional<double>& s, const std::optional<double>& from,
                 const std::optional<double>& to, double step, bool csv) {
  const auto spec = boxlike::load_ifs(spec_name);
  const auto maps = spec.linear_parts();
  if (s) {
    const auto p = boxlike::pressure(maps, *s);
    if (csv) {
      std::cout << "s,pressure,branch\n" << fmt(*s) << "," << fmt(p.value) << "," << branch_label(p) << "\n";
    } else {
      std::cout << "P(" << fmt(*s) << ") = " << fmt(p.value) << "  [" << branch_label(p) << "]\n";
    }
    return kOk;
  }
  if (!from || !to) throw boxlike::Error(Errc::invalid_config, "give --s or both --from and --to");
  if (!(step > 0.0) || *to < *from) throw boxlike::Error(Errc::invalid_config, "need --step > 0 and --to >= --from");
  const auto count = static_cast<std::uint64_t>(std::floor((*to - *from) / step + 1e-9)) + 1;
  if (csv) std::cout << "s,pressure,branch\n";
  for (std::uint64_t i = 0; i < count; ++i) {
    const double si = *from + static_cast<double>(i) * step;
    const auto p = boxlike::pressure(maps, si);
    if (csv) {
      std::cout << fmt(si) << "," << fmt(p.value) << "," << branch_label(p) << "\n";
    } else {
      std::cout << std::left << std::setw(24) << fmt(si) << std::setw(26) << fmt(p.value) << branch_label(p) << "\n";
    }
  }
  return kOk;
}

int run_oracle(const std::string& spec_name, double s, unsigned depth, bool as_json) {
  const auto spec = boxlike::load_ifs(spec_name);
  const auto maps = spec.linear_parts();
  const auto est = boxlike::oracle::pressure_estimate(maps, s, depth);
  const auto formula = boxlike::pressure(maps, s);
  const double gap = est.value - formula.value;
  if (as_json) {
    json out{{"s", s},
             {"depth", est.depth},
             {"words", est.word_count},
             {"estimate", est.value},
             {"pressure", formula.value},
             {"gap", gap}};
    std::cout << out.dump(2) << "\n";
    return kOk;
  }
  std::cout << "depth      " << est.depth << " (" << est.word_count << " words)\n"
            << "estimate   " << fmt(est.value) << "\n"
            << "pressure   " << fmt(formula.value) << "  [" << branch_label(formula) << "]\n"
            << "gap        " << fmt(gap, 6) << "\n";
  return kOk;
}

boxlike::Viewport parse_viewport(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) v.push_back(boxlike::detail::parse_number_string(item));
  if (v.size() != 4) throw boxlike::Error(Errc::invalid_config, "viewport needs xmin,ymin,xmax,ymax");
  return {v[0], v[1], v[2], v[3]};
}

int run_render(const std::string& spec_name, boxlike::RenderConfig config, const std::string& viewport,
               const std::string& out) {
  const auto spec = boxlike::load_ifs(spec_name);
  if (!viewport.empty()) config.viewport = parse_viewport(viewport);
  const auto image = boxlike::render_chaos_game(spec, config);
  boxlike::write_ppm(image, out);
  std::cout << "wrote " << out << " (" << image.width() << "x" << image.height() << ", " << image.lit_count()
            << " lit pixels)\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pressure and affinity dimension of box-like self-affine iterated function systems"};
  app.require_subcommand(1);

  std::string spec_name;
  bool as_json = false;
  bool csv = false;

  auto* examples = app.add_subcommand("examples", "List builtin systems");

  auto* dim = app.add_subcommand("dim", "Solve for the affinity dimension (or the modified-pressure dimension with --t)");
  std::optional<double> t;
  dim->add_option("spec", spec_name, "Builtin name or JSON file")->required();
  dim->add_option("--t", t, "Box dimension of the axis projections, in (0, 1]");
  dim->add_flag("--json", as_json, "Machine-readable output");

  auto* pres = app.add_subcommand("pressure", "Evaluate the pressure at one s or along a grid");
  std::optional<double> s_value, from, to;
  double step = 0.1;
  pres->add_option("spec", spec_name, "Builtin name or JSON file")->required();
  auto* s_opt = pres->add_option("--s", s_value, "Exponent s >= 0");
  pres->add_option("--from", from, "Grid start")->excludes(s_opt);
  pres->add_option("--to", to, "Grid end")->excludes(s_opt);
  pres->add_option("--step", step, "Grid step")->capture_default_str();
  pres->add_flag("--csv", csv, "CSV rows s,pressure,branch");

  auto* orc = app.add_subcommand("oracle", "Compare the word-enumeration estimate with the pressure formula");
  double oracle_s = 1.0;
  unsigned depth = 8;
  orc->add_option("spec", spec_name, "Builtin name or JSON file")->required();
  orc->add_option("--s", oracle_s, "Exponent s >= 0")->required();
  orc->add_option("--depth", depth, "Word length")->capture_default_str();
  orc->add_flag("--json", as_json, "Machine-readable output");

  auto* ren = app.add_subcommand("render", "Render the attractor with the chaos game to a PPM file");
  boxlike::RenderConfig config;
  std::string viewport;
  std::string out_path;
  ren->add_option("spec", spec_name, "Builtin name or JSON file")->required();
  ren->add_option("--out", out_path, "Output PPM path")->required();
  ren->add_option("--width", config.width)->capture_default_str();
  ren->add_option("--height", config.height)->capture_default_str();
  ren->add_option("--iterations", config.iterations)->capture_default_str();
  ren->add_option("--burn-in", config.burn_in)->capture_default_str();
  ren->add_option("--seed", config.seed)->capture_default_str();
  ren->add_option("--viewport", viewport, "xmin,ymin,xmax,ymax (default 0,0,1,1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kValidation;
  }

  try {
    if (*examples) {
      for (const auto& [name, spec] : boxlike::builtin_examples())
        std::cout << name << "  d=" << spec.dim << "  N=" << spec.maps.size() << "\n";
      return kOk;
    }
    if (*dim) return run_dim(spec_name, t, as_json);
    if (*pres) return run_pressure(spec_name, s_value, from, to, step, csv);
    if (*orc) return run_oracle(spec_name, oracle_s, depth, as_json);
    if (*ren) return run_render(spec_name, config, viewport, out_path);
  } catch (const boxlike::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumeric;
  }
  return kOk;
}
