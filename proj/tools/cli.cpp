#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>
#include <optional>
#include <sstream>

#include "blockade/amplitude.hpp"
#include "blockade/error.hpp"
#include "blockade/lindblad.hpp"
#include "blockade/optimize.hpp"
#include "blockade/params_io.hpp"
#include "blockade/sweep.hpp"
#include "blockade/version.hpp"

namespace blockade::cli {
namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kSolver = 2;

struct ParamFlags {
  std::string preset = "weak";
  std::string params_file;
  std::optional<double> delta, lambda, J, g;
  bool flip = false;
};

void add_param_flags(CLI::App& cmd, ParamFlags& f) {
  cmd.add_option("--preset", f.preset, "Base parameter set")
      ->check(CLI::IsMember({"weak", "strong"}));
  cmd.add_option("--params", f.params_file, "JSON parameter file applied over the preset");
  cmd.add_option("--delta", f.delta, "Detuning (units of omega_m)");
  cmd.add_option("--lambda", f.lambda, "Parametric gain (units of omega_m)");
  cmd.add_option("--J", f.J, "Photon hopping (units of omega_m)");
  cmd.add_option("--g", f.g, "Optomechanical coupling (units of omega_m)");
  cmd.add_flag("--flip-axis", f.flip,
               "Read and print delta on the mirrored axis of the published figures");
}

SystemParams resolve(const ParamFlags& f) {
  SystemParams p = f.preset == "strong" ? strong_params() : weak_params();
  if (!f.params_file.empty()) p = load_params(f.params_file, p);
  if (f.delta) p.delta = f.flip ? -*f.delta : *f.delta;
  if (f.lambda) p.lambda_gain = *f.lambda;
  if (f.J) p.hop_J = *f.J;
  if (f.g) p.g_om = *f.g;
  p.validate();
  return p;
}

bool is_usage(ErrorCode c) {
  switch (c) {
    case ErrorCode::invalid_cutoff:
    case ErrorCode::invalid_params:
    case ErrorCode::unsupported_phase:
    case ErrorCode::invalid_grid:
    case ErrorCode::invalid_sweep:
    case ErrorCode::unknown_figure:
      return true;
    default:
      return false;
  }
}

const std::map<std::string, SweepMethod> kMethods{
    {"amp", SweepMethod::amplitude}, {"me", SweepMethod::lindblad}, {"both", SweepMethod::both}};
const std::map<std::string, CavitySelect> kCavities{
    {"1", CavitySelect::first}, {"2", CavitySelect::second}, {"both", CavitySelect::both}};
const std::map<std::string, SweepAxis> kAxes{{"delta", SweepAxis::delta},
                                              {"lambda", SweepAxis::lambda},
                                              {"J", SweepAxis::J},
                                              {"g", SweepAxis::g}};

nlohmann::json cell(const std::optional<double>& v, std::optional<ErrorCode> e = {}) {
  if (v) return *v;
  if (e) return "err:" + std::string(to_string(*e));
  return nullptr;
}

std::pair<double, double> default_range(SweepAxis axis, const SystemParams& p, bool flip) {
  switch (axis) {
    case SweepAxis::delta: {
      const SearchGrid g = default_grid(regime(p));
      return flip ? std::pair{-g.delta_hi, -g.delta_lo} : std::pair{g.delta_lo, g.delta_hi};
    }
    case SweepAxis::lambda: return {-5e-6, 5e-6};
    case SweepAxis::J: return {0.0, 10.0 * p.kappa};
    case SweepAxis::g: return {0.0, 0.25};
  }
  return {0.0, 1.0};
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Photon-blockade calculator for two coupled Kerr cavities with parametric gain",
               "blockade"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  ParamFlags pf;
  int cutoff = 0;
  int points = 0;
  std::string method = "both";
  std::string cavity;
  std::string out_path;

  auto* sweep = app.add_subcommand("sweep", "g2 sweep along one parameter axis (CSV)");
  add_param_flags(*sweep, pf);
  std::string axis = "delta";
  std::vector<double> range;
  sweep->add_option("--axis", axis, "Swept parameter")->check(CLI::IsMember(kAxes));
  sweep->add_option("--range", range, "lo hi of the axis")->expected(2);
  sweep->add_option("--points", points, "Number of points (default 201)");
  sweep->add_option("--method", method, "amp, me or both")->check(CLI::IsMember(kMethods));
  sweep->add_option("--cavity", cavity, "1, 2 or both")->check(CLI::IsMember(kCavities));
  sweep->add_option("--cutoff", cutoff, "Fock cutoff of the master equation (default 3)");
  sweep->add_option("--out", out_path, "CSV path; metadata goes next to it as .json");

  auto* optimize = app.add_subcommand("optimize", "Find (delta, lambda) pairs with c20 = 0");
  add_param_flags(*optimize, pf);
  optimize->add_option("--cavity", cavity, "1, 2 or both")->check(CLI::IsMember(kCavities));
  optimize->add_option("--cutoff", cutoff, "Fock cutoff of the g2 check (default 4)");
  optimize->add_option("--out", out_path, "Write the JSON list to a file");
  std::vector<double> delta_range, lambda_range;
  optimize->add_option("--delta-range", delta_range, "Search range of delta (lo hi)")
      ->expected(2);
  optimize->add_option("--lambda-range", lambda_range, "Search range of lambda (lo hi)")
      ->expected(2);

  auto* figure = app.add_subcommand("figure", "Regenerate a published figure dataset");
  std::string figure_id;
  figure->add_option("id", figure_id, "Panel id")->required()->check(CLI::IsMember(figure_ids()));
  figure->add_option("--points", points, "Points per curve (default 401)");
  figure->add_option("--cutoff", cutoff, "Fock cutoff of the master equation (default 3)");
  figure->add_option("--out", out_path, "Output directory (default ./fig<id>)");

  auto* g2 = app.add_subcommand("g2", "Single-point g2 by both methods (JSON)");
  add_param_flags(*g2, pf);
  g2->add_option("--method", method, "amp, me or both")->check(CLI::IsMember(kMethods));
  g2->add_option("--cutoff", cutoff, "Fock cutoff of the master equation (default 4)");

  auto* params = app.add_subcommand("params", "Print the resolved parameter set (JSON)");
  add_param_flags(*params, pf);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    const CLI::App* sub = nullptr;
    for (const auto* s : app.get_subcommands()) sub = s;
    err << (sub ? sub->help() : app.help());
    return kUsage;
  }

  try {
    if (params->parsed()) {
      const SystemParams p = resolve(pf);
      auto j = nlohmann::json::parse(params_to_json(p));
      j["regime"] = to_string(regime(p));
      out << j.dump(2) << '\n';
      return kOk;
    }

    if (g2->parsed()) {
      const SystemParams p = resolve(pf);
      const SweepMethod m = kMethods.at(method);
      nlohmann::json j{{"delta", pf.flip ? -p.delta : p.delta},
                       {"axis_flip", pf.flip},
                       {"lambda", p.lambda_gain}};
      int status = kOk;
      if (m != SweepMethod::lindblad) {
        try {
          const auto s = steady_amplitudes(p);
          for (Cavity c : {Cavity::first, Cavity::second}) {
            const auto key = "g2_" + std::to_string(index_of(c)) + "_amp";
            try {
              j[key] = g2_from_amplitudes(s, c);
            } catch (const Error& e) {
              j[key] = cell(std::nullopt, e.code());
            }
          }
          if (!s.warnings.empty()) j["amplitude_warnings"] = s.warnings;
        } catch (const Error& e) {
          j["g2_1_amp"] = j["g2_2_amp"] = cell(std::nullopt, e.code());
          status = kSolver;
        }
      }
      if (m != SweepMethod::amplitude) {
        const int c = cutoff > 0 ? cutoff : 4;
        try {
          const auto me = solve_master_equation(p, c);
          j["g2_1_me"] = cell(me.g2_1, ErrorCode::empty_mode);
          j["g2_2_me"] = cell(me.g2_2, ErrorCode::empty_mode);
          j["n1"] = me.n1;
          j["n2"] = me.n2;
          if (me.g2_1) j["statistics_1"] = to_string(classify_statistics(*me.g2_1));
          if (me.g2_2) j["statistics_2"] = to_string(classify_statistics(*me.g2_2));
        } catch (const Error& e) {
          j["g2_1_me"] = j["g2_2_me"] = cell(std::nullopt, e.code());
          status = kSolver;
        }
        j["cutoff"] = c;
      }
      out << j.dump(2) << '\n';
      return status;
    }

    if (optimize->parsed()) {
      const SystemParams p = resolve(pf);
      RootSearchOptions opts;
      if (cutoff > 0) opts.g2_cutoff = cutoff;
      const CavitySelect sel = cavity.empty() ? CavitySelect::first : kCavities.at(cavity);
      SearchGrid grid = default_grid(regime(p));
      if (delta_range.size() == 2) {
        grid.delta_lo = pf.flip ? -delta_range[1] : delta_range[0];
        grid.delta_hi = pf.flip ? -delta_range[0] : delta_range[1];
      }
      if (lambda_range.size() == 2) {
        grid.lambda_lo = lambda_range[0];
        grid.lambda_hi = lambda_range[1];
      }
      std::vector<OptimalPair> pairs;
      for (Cavity c : {Cavity::first, Cavity::second}) {
        if (sel != CavitySelect::both && (sel == CavitySelect::first) != (c == Cavity::first)) {
          continue;
        }
        const auto rs = find_optimal_pairs(p, c, grid, opts);
        if (rs.printed_formula_differs) {
          err << "warning: cavity " << index_of(c)
              << " roots of the closed-form coefficients differ from the projected solve\n";
        }
        pairs.insert(pairs.end(), rs.pairs.begin(), rs.pairs.end());
      }
      const std::string text = pairs_to_json(pairs, pf.flip, 2);
      if (out_path.empty()) {
        out << text << '\n';
      } else {
        std::ofstream f(out_path);
        f << text << '\n';
        if (!f) throw Error(ErrorCode::io_failure, "cannot write " + out_path);
      }
      return kOk;
    }

    if (figure->parsed()) {
      const std::filesystem::path dir = out_path.empty() ? "fig" + figure_id : out_path;
      const auto res =
          figure_dataset(figure_id, dir, points > 0 ? points : kFigurePoints, cutoff > 0 ? cutoff : 3);
      for (const auto& f : res.csv_files) out << f.string() << '\n';
      out << res.metadata_file.string() << '\n';
      return kOk;
    }

    if (sweep->parsed()) {
      SweepSpec spec;
      spec.base = resolve(pf);
      spec.axis = kAxes.at(axis);
      spec.axis_flip = pf.flip;
      std::tie(spec.lo, spec.hi) =
          range.size() == 2 ? std::pair{range[0], range[1]}
                            : default_range(spec.axis, spec.base, pf.flip);
      spec.points = points > 0 ? points : 201;
      spec.method = kMethods.at(method);
      spec.cavity = cavity.empty() ? CavitySelect::both : kCavities.at(cavity);
      spec.cutoff = cutoff > 0 ? cutoff : 3;
      const SweepResult r = run_sweep(spec);
      if (out_path.empty()) {
        write_csv(out, r);
      } else {
        write_sweep(r, out_path);
      }
      return kOk;
    }
  } catch (const Error& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
    return is_usage(e.code()) ? kUsage : kSolver;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kSolver;
  }
  return kUsage;
}

int cli_main(int argc, const char* const* argv) {
  return cli_main(argc, argv, std::cout, std::cerr);
}

}  // namespace blockade::cli
