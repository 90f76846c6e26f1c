#include <fstream>

#include "blockade/error.hpp"
#include "blockade/sweep.hpp"
#include "blockade/version.hpp"
#include "json_support.hpp"

namespace blockade {
namespace {

constexpr double kWeakLo = -0.01, kWeakHi = 0.01;
constexpr double kStrongLo = -0.02, kStrongHi = 0.1;

SweepSpec delta_sweep(const SystemParams& base, double lo, double hi, int points, int cutoff) {
  SweepSpec s;
  s.axis = SweepAxis::delta;
  s.lo = lo;
  s.hi = hi;
  s.points = points;
  s.method = SweepMethod::both;
  s.base = base;
  s.cavity = CavitySelect::both;
  s.axis_flip = true;
  s.cutoff = cutoff;
  return s;
}

template <typename Setter>
std::vector<FigureCurve> curves(const SweepSpec& proto, std::string_view name,
                                std::initializer_list<double> values, Setter set) {
  std::vector<FigureCurve> out;
  for (double v : values) {
    FigureCurve c{std::string(name) + "=" + format_double(v), proto};
    set(c.spec.base, v);
    out.push_back(std::move(c));
  }
  return out;
}

void set_lambda(SystemParams& p, double v) { p.lambda_gain = v; }
void set_g(SystemParams& p, double v) { p.g_om = v; }
void set_J(SystemParams& p, double v) { p.hop_J = v; }

const char* kFlipNote = "delta axis emitted as -(Hamiltonian delta), the axis of the published plots";

}  // namespace

const std::vector<std::string>& figure_ids() {
  static const std::vector<std::string> ids{"2a", "2b", "3a", "3b", "4a", "4b", "5a", "5b"};
  return ids;
}

FigurePlan figure_plan(std::string_view id, int points, int cutoff) {
  const SystemParams weak = weak_params();
  const SystemParams strong = strong_params();
  const SweepSpec weak_sweep = delta_sweep(weak, kWeakLo, kWeakHi, points, cutoff);
  const SweepSpec strong_sweep = delta_sweep(strong, kStrongLo, kStrongHi, points, cutoff);

  FigurePlan plan;
  plan.id = std::string(id);
  if (id == "2a") {
    plan.curves = curves(weak_sweep, "lambda", {0.0, 0.93e-6, 1.86e-6}, set_lambda);
    plan.notes = {kFlipNote,
                  "lambda values: 0, lambda_opt = 0.93e-6, 2 lambda_opt",
                  "caption pairs lambda_opt with delta = +0.73e-4 while the text lists "
                  "-0.73e-4; the c20 zero sits at emitted delta = -7.28e-5"};
  } else if (id == "2b") {
    plan.plotted = Cavity::second;
    plan.curves = curves(weak_sweep, "lambda", {0.0, 0.4e-6, 0.8e-6}, set_lambda);
    plan.notes = {kFlipNote,
                  "lambda values: 0, lambda_opt = 0.4e-6, 2 lambda_opt",
                  "caption pairs lambda_opt with delta = -0.47e-2 while the text lists "
                  "+0.47e-2"};
  } else if (id == "3a") {
    SweepSpec proto = weak_sweep;
    proto.base.lambda_gain = 0.93e-6;
    plan.curves = curves(proto, "g", {0.0, 0.02, 0.042}, set_g);
    plan.notes = {kFlipNote,
                  "g values: 0 and 0.042 from the text, 0.02 chosen as an intermediate value",
                  "caption does not state the axis flip; it is applied because the quoted "
                  "optimum (-34304.2 Hz) lies on the flipped axis"};
  } else if (id == "3b") {
    SweepSpec proto = weak_sweep;
    proto.base.lambda_gain = 0.93e-6;
    const double k = weak.kappa;
    plan.curves = curves(proto, "J", {0.0, 0.5 * k, 0.95 * k}, set_J);
    plan.notes = {kFlipNote,
                  "J values: 0 and 0.95 kappa from the text, 0.5 kappa chosen as an "
                  "intermediate value",
                  "caption does not state the axis flip; applied for consistency with 3a"};
  } else if (id == "4a") {
    plan.curves = curves(strong_sweep, "lambda", {0.0, 1.1e-6, 2.2e-6}, set_lambda);
    plan.notes = {kFlipNote, "lambda values: 0, lambda_opt = 1.1e-6, 2 lambda_opt"};
  } else if (id == "4b") {
    plan.plotted = Cavity::second;
    plan.curves = curves(strong_sweep, "lambda", {0.0, 0.01e-6, 0.02e-6}, set_lambda);
    plan.notes = {kFlipNote, "lambda values: 0, lambda_opt = 0.01e-6, 2 lambda_opt",
                  "caption labels this gain lambda^(1)_opt although the panel shows cavity 2 "
                  "and the cavity-2 table lists 0.01e-6 under delta^(2); taken verbatim"};
  } else if (id == "5a") {
    SweepSpec proto = strong_sweep;
    proto.axis = SweepAxis::lambda;
    proto.lo = -5e-6;
    proto.hi = 5e-6;
    proto.axis_flip = false;
    proto.base.delta = -0.024;
    plan.curves = curves(proto, "g", {0.0, 0.1, 0.2}, set_g);
    plan.notes = {"lambda axis; fixed delta = 2.4e-2 on the published axis (-2.4e-2 in the "
                  "Hamiltonian convention)",
                  "g values: 0 and 0.2 from the text, 0.1 chosen as an intermediate value",
                  "lambda range [-5e-6, 5e-6] is a repo choice"};
  } else if (id == "5b") {
    SweepSpec proto = strong_sweep;
    proto.base.lambda_gain = 1.1e-6;
    const double k = strong.kappa;
    plan.curves = curves(proto, "J", {0.0, 4.0 * k, 8.0 * k}, set_J);
    plan.notes = {kFlipNote,
                  "J values: 0 and 8 kappa from the text, 4 kappa chosen as an intermediate "
                  "value; the caption does not list them"};
  } else {
    throw Error(ErrorCode::unknown_figure, "unknown figure id '" + std::string(id) + "'");
  }
  return plan;
}

FigureOutput figure_dataset(std::string_view id, const std::filesystem::path& outdir,
                            int points, int cutoff) {
  const FigurePlan plan = figure_plan(id, points, cutoff);
  std::error_code ec;
  std::filesystem::create_directories(outdir, ec);
  if (ec) throw Error(ErrorCode::io_failure, "cannot create " + outdir.string());

  FigureOutput out;
  nlohmann::json meta{{"figure", plan.id},
                      {"version", kVersion},
                      {"plotted_cavity", index_of(plan.plotted)},
                      {"notes", plan.notes},
                      {"curves", nlohmann::json::array()}};
  for (std::size_t k = 0; k < plan.curves.size(); ++k) {
    const FigureCurve& curve = plan.curves[k];
    const SweepResult r = run_sweep(curve.spec);
    const auto name = "fig" + plan.id + "_" + std::to_string(k) + ".csv";
    const auto path = outdir / name;
    std::ofstream csv(path);
    if (!csv) throw Error(ErrorCode::io_failure, "cannot write " + path.string());
    write_csv(csv, r);
    if (!csv) throw Error(ErrorCode::io_failure, "write failed for " + path.string());
    out.csv_files.push_back(path);

    auto entry = nlohmann::json::parse(metadata_json(r, -1));
    entry["file"] = name;
    entry["label"] = curve.label;
    meta["curves"].push_back(std::move(entry));
  }

  out.metadata_file = outdir / ("fig" + plan.id + "_metadata.json");
  std::ofstream m(out.metadata_file);
  m << meta.dump(2) << '\n';
  if (!m) throw Error(ErrorCode::io_failure, "cannot write " + out.metadata_file.string());
  return out;
}

}  // namespace blockade
