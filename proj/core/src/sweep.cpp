#include "blockade/sweep.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>

#include "blockade/amplitude.hpp"
#include "blockade/lindblad.hpp"
#include "blockade/version.hpp"
#include "json_support.hpp"
#include "parallel.hpp"

namespace blockade {
namespace {

struct PointOutcome {
  SweepRow row;
  std::optional<Physicality> phys;
  double asymmetry = 0.0;
};

Cell failed(ErrorCode c) { return {std::nullopt, c}; }
Cell ok(double v) { return {v, std::nullopt}; }

bool wants(CavitySelect sel, Cavity c) {
  return sel == CavitySelect::both ||
         (sel == CavitySelect::first) == (c == Cavity::first);
}

void amplitude_point(const SystemParams& p, CavitySelect sel, SweepRow& row, bool fill_n) {
  AmplitudeState s;
  try {
    s = steady_amplitudes(p);
  } catch (const Error& e) {
    if (wants(sel, Cavity::first)) row.g2_1_amp = failed(e.code());
    if (wants(sel, Cavity::second)) row.g2_2_amp = failed(e.code());
    if (fill_n) row.n1 = row.n2 = failed(e.code());
    return;
  }
  const auto g2 = [&](Cavity c) {
    try {
      return ok(g2_from_amplitudes(s, c));
    } catch (const Error& e) {
      return failed(e.code());
    }
  };
  if (wants(sel, Cavity::first)) row.g2_1_amp = g2(Cavity::first);
  if (wants(sel, Cavity::second)) row.g2_2_amp = g2(Cavity::second);
  if (fill_n) {
    const double norm = std::norm(s.c00) + std::norm(s.c10) + std::norm(s.c01) +
                        std::norm(s.c11) + std::norm(s.c20) + std::norm(s.c02);
    row.n1 = ok((std::norm(s.c10) + std::norm(s.c11) + 2.0 * std::norm(s.c20)) / norm);
    row.n2 = ok((std::norm(s.c01) + std::norm(s.c11) + 2.0 * std::norm(s.c02)) / norm);
  }
}

void lindblad_point(const SystemParams& p, int cutoff, CavitySelect sel, PointOutcome& out) {
  SweepRow& row = out.row;
  try {
    const auto me = solve_master_equation(p, cutoff);
    out.phys = me.state.rho.physicality();
    out.asymmetry = me.state.asymmetry;
    row.n1 = ok(me.n1);
    row.n2 = ok(me.n2);
    const auto g2 = [](const std::optional<double>& v) {
      return v ? ok(*v) : failed(ErrorCode::empty_mode);
    };
    if (wants(sel, Cavity::first)) row.g2_1_me = g2(me.g2_1);
    if (wants(sel, Cavity::second)) row.g2_2_me = g2(me.g2_2);
  } catch (const Error& e) {
    if (wants(sel, Cavity::first)) row.g2_1_me = failed(e.code());
    if (wants(sel, Cavity::second)) row.g2_2_me = failed(e.code());
    row.n1 = row.n2 = failed(e.code());
  }
}

void write_cell(std::ostream& os, const Cell& c) {
  if (c.value) {
    os << format_double(*c.value);
  } else if (c.error) {
    os << "err:" << to_string(*c.error);
  }
}

}  // namespace

std::string_view to_string(SweepAxis a) noexcept {
  switch (a) {
    case SweepAxis::delta: return "delta";
    case SweepAxis::lambda: return "lambda";
    case SweepAxis::J: return "J";
    case SweepAxis::g: return "g";
  }
  return "?";
}

std::string_view to_string(SweepMethod m) noexcept {
  switch (m) {
    case SweepMethod::amplitude: return "amplitude";
    case SweepMethod::lindblad: return "lindblad";
    case SweepMethod::both: return "both";
  }
  return "?";
}

std::string_view to_string(CavitySelect c) noexcept {
  switch (c) {
    case CavitySelect::first: return "1";
    case CavitySelect::second: return "2";
    case CavitySelect::both: return "both";
  }
  return "?";
}

void SweepSpec::validate() const {
  if (points < 2) throw Error(ErrorCode::invalid_sweep, "a sweep needs at least 2 points");
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw Error(ErrorCode::invalid_sweep, "sweep range needs finite lo < hi");
  }
  if (method != SweepMethod::amplitude && cutoff < 1) {
    throw Error(ErrorCode::invalid_sweep, "master-equation cutoff must be >= 1");
  }
  base.validate();
}

double SweepSpec::axis_value(std::size_t i) const {
  if (i + 1 == static_cast<std::size_t>(points)) return hi;
  return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
}

SystemParams SweepSpec::params_at(std::size_t i) const {
  SystemParams p = base;
  const double x = axis_value(i);
  switch (axis) {
    case SweepAxis::delta: p.delta = axis_flip ? -x : x; break;
    case SweepAxis::lambda: p.lambda_gain = x; break;
    case SweepAxis::J: p.hop_J = x; break;
    case SweepAxis::g: p.g_om = x; break;
  }
  return p;
}

SweepResult run_sweep(const SweepSpec& spec) {
  spec.validate();
  const auto start = std::chrono::steady_clock::now();
  const auto n = static_cast<std::size_t>(spec.points);
  const bool amp = spec.method != SweepMethod::lindblad;
  const bool me = spec.method != SweepMethod::amplitude;

  std::vector<PointOutcome> points(n);
  detail::parallel_for(n, detail::worker_count(spec.threads), [&](std::size_t i) {
    PointOutcome& out = points[i];
    out.row.axis_value = spec.axis_value(i);
    SystemParams p;
    try {
      p = spec.params_at(i);
      p.validate();
    } catch (const Error& e) {
      for (Cell* c : {&out.row.g2_1_amp, &out.row.g2_2_amp, &out.row.g2_1_me, &out.row.g2_2_me,
                      &out.row.n1, &out.row.n2}) {
        *c = failed(e.code());
      }
      return;
    }
    if (amp) amplitude_point(p, spec.cavity, out.row, !me);
    if (me) lindblad_point(p, spec.cutoff, spec.cavity, out);
  });

  SweepResult r;
  r.spec = spec;
  r.rows.reserve(n);
  r.physicality.min_eigenvalue = std::numeric_limits<double>::infinity();
  for (auto& pt : points) {
    if (pt.phys) {
      auto& log = r.physicality;
      ++log.states;
      log.max_trace_error = std::max(log.max_trace_error, pt.phys->trace_error);
      log.max_asymmetry = std::max(log.max_asymmetry, pt.asymmetry);
      log.min_eigenvalue = std::min(log.min_eigenvalue, pt.phys->min_eigenvalue);
    }
    r.rows.push_back(pt.row);
  }
  if (r.physicality.states == 0) r.physicality.min_eigenvalue = 0.0;
  if (amp && spec.base.drive_E > kWeakDriveRatio * spec.base.kappa) {
    r.notes.emplace_back("drive exceeds 0.1 kappa: amplitude truncation is unreliable");
  }
  r.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::string format_double(double v) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

void write_csv(std::ostream& os, const SweepResult& r) {
  os << to_string(r.spec.axis) << ",g2_1_amp,g2_2_amp,g2_1_me,g2_2_me,n1,n2\n";
  for (const auto& row : r.rows) {
    os << format_double(row.axis_value);
    for (const Cell* c :
         {&row.g2_1_amp, &row.g2_2_amp, &row.g2_1_me, &row.g2_2_me, &row.n1, &row.n2}) {
      os << ',';
      write_cell(os, *c);
    }
    os << '\n';
  }
}

std::string metadata_json(const SweepResult& r, int indent) {
  const SweepSpec& s = r.spec;
  nlohmann::json j{
      {"version", kVersion},
      {"axis", to_string(s.axis)},
      {"range", {s.lo, s.hi}},
      {"points", s.points},
      {"method", to_string(s.method)},
      {"cavity", to_string(s.cavity)},
      {"axis_flip", s.axis_flip},
      {"axis_note", s.axis_flip && s.axis == SweepAxis::delta
                        ? "emitted delta = -(Hamiltonian delta)"
                        : "emitted values are Hamiltonian values"},
      {"params", detail::params_json(s.base)},
      {"cutoffs",
       {{"master_equation", s.method == SweepMethod::amplitude ? nlohmann::json(nullptr)
                                                                : nlohmann::json(s.cutoff)},
        {"amplitude_photons", 2}}},
      {"physicality",
       {{"states", r.physicality.states},
        {"max_trace_error", r.physicality.max_trace_error},
        {"max_asymmetry", r.physicality.max_asymmetry},
        {"min_eigenvalue", r.physicality.min_eigenvalue}}},
      {"wall_time_s", r.wall_time_s},
      {"notes", r.notes},
  };
  if (s.method == SweepMethod::both) {
    nlohmann::json band = nlohmann::json::object();
    for (Cavity c : {Cavity::first, Cavity::second}) {
      if (!wants(s.cavity, c)) continue;
      const auto rep = agreement_band(r, c);
      band[std::to_string(index_of(c))] = {{"compared", rep.compared},
                                           {"exempt", rep.exempt},
                                           {"violations", rep.violations},
                                           {"max_deviation", rep.max_deviation}};
    }
    j["agreement_band"] = std::move(band);
  }
  return j.dump(indent);
}

void write_sweep(const SweepResult& r, const std::filesystem::path& csv_path) {
  std::ofstream csv(csv_path);
  if (!csv) throw Error(ErrorCode::io_failure, "cannot write " + csv_path.string());
  write_csv(csv, r);

  auto meta_path = csv_path;
  meta_path.replace_extension(".json");
  std::ofstream meta(meta_path);
  if (!meta) throw Error(ErrorCode::io_failure, "cannot write " + meta_path.string());
  meta << metadata_json(r) << '\n';
  if (!csv || !meta) throw Error(ErrorCode::io_failure, "write failed for " + csv_path.string());
}

AgreementReport agreement_band(const SweepResult& r, Cavity cavity, double band, double floor) {
  AgreementReport rep;
  const bool first = cavity == Cavity::first;
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    const auto& row = r.rows[i];
    const Cell& amp = first ? row.g2_1_amp : row.g2_2_amp;
    const Cell& me = first ? row.g2_1_me : row.g2_2_me;
    if (!amp.value || !me.value) continue;
    if (*me.value < floor) {
      ++rep.exempt;
      continue;
    }
    ++rep.compared;
    const double dev = std::abs(std::log10(*amp.value) - std::log10(*me.value));
    rep.max_deviation = std::max(rep.max_deviation, std::isfinite(dev) ? dev : HUGE_VAL);
    if (!(dev <= band)) {
      ++rep.violations;
      rep.violating_rows.push_back(i);
    }
  }
  return rep;
}

std::vector<std::size_t> local_minima(const SweepResult& r, Cell SweepRow::*column) {
  std::vector<std::size_t> out;
  for (std::size_t i = 1; i + 1 < r.rows.size(); ++i) {
    const Cell& a = r.rows[i - 1].*column;
    const Cell& b = r.rows[i].*column;
    const Cell& c = r.rows[i + 1].*column;
    if (a.value && b.value && c.value && *b.value < *a.value && *b.value < *c.value) {
      out.push_back(i);
    }
  }
  return out;
}

}  // namespace blockade
