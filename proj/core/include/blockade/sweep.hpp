#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "blockade/error.hpp"
#include "blockade/model.hpp"

namespace blockade {

enum class SweepAxis { delta, lambda, J, g };
enum class SweepMethod { amplitude, lindblad, both };
enum class CavitySelect { first, second, both };

std::string_view to_string(SweepAxis a) noexcept;
std::string_view to_string(SweepMethod m) noexcept;
std::string_view to_string(CavitySelect c) noexcept;

struct SweepSpec {
  SweepAxis axis = SweepAxis::delta;
  /// Range of the emitted axis values. With axis_flip on a delta sweep the
  /// Hamiltonian detuning at value x is -x.
  double lo = 0.0;
  double hi = 0.0;
  int points = 201;
  SweepMethod method = SweepMethod::both;
  SystemParams base;
  CavitySelect cavity = CavitySelect::both;
  bool axis_flip = false;
  int cutoff = 3;
  unsigned threads = 0;

  /// Throws Error(invalid_sweep) unless points >= 2, lo < hi and the cutoff
  /// is positive; also validates `base`.
  void validate() const;

  double axis_value(std::size_t i) const;
  /// Parameters at point i, in the Hamiltonian convention.
  SystemParams params_at(std::size_t i) const;
};

/// A numeric result or the error that prevented it. Cells of columns that
/// were not requested hold neither.
struct Cell {
  std::optional<double> value;
  std::optional<ErrorCode> error;

  bool empty() const noexcept { return !value && !error; }
};

struct SweepRow {
  double axis_value = 0.0;
  Cell g2_1_amp, g2_2_amp, g2_1_me, g2_2_me;
  Cell n1, n2;
};

/// Worst case over every master-equation steady state of a sweep.
struct PhysicalityLog {
  std::size_t states = 0;
  double max_trace_error = 0.0;
  double max_asymmetry = 0.0;  ///< before Hermitization
  double min_eigenvalue = 0.0;
};

struct SweepResult {
  SweepSpec spec;
  PhysicalityLog physicality;
  std::vector<SweepRow> rows;
  double wall_time_s = 0.0;
  std::vector<std::string> notes;
};

/// Evaluates every point on a worker pool. Per-point solver errors are stored
/// in the affected cells and the sweep continues. Rows are in axis order and
/// their contents do not depend on the worker count.
SweepResult run_sweep(const SweepSpec& spec);

/// Header row, then one row per point. Floats use the shortest round-trip
/// decimal form; failed cells are written as "err:<code>".
void write_csv(std::ostream& os, const SweepResult& r);
std::string metadata_json(const SweepResult& r, int indent = 2);

/// Writes `csv_path` and its metadata to the same path with a .json
/// extension. Throws Error(io_failure).
void write_sweep(const SweepResult& r, const std::filesystem::path& csv_path);

std::string format_double(double v);

struct AgreementReport {
  std::size_t compared = 0;
  std::size_t exempt = 0;      ///< rows with g2_me below the floor
  std::size_t violations = 0;  ///< compared rows outside the band
  double max_deviation = 0.0;  ///< max |log10 g2_amp - log10 g2_me| over compared rows
  std::vector<std::size_t> violating_rows;
};

/// Compares the amplitude and master-equation g2 of one cavity. Rows where
/// either cell failed are skipped.
AgreementReport agreement_band(const SweepResult& r, Cavity cavity, double band = 0.3,
                               double floor = 1e-3);

/// Indices of strict interior local minima of a column.
std::vector<std::size_t> local_minima(const SweepResult& r, Cell SweepRow::*column);

inline constexpr int kFigurePoints = 401;

/// Panels of the published figures that have datasets.
const std::vector<std::string>& figure_ids();

struct FigureOutput {
  std::vector<std::filesystem::path> csv_files;
  std::filesystem::path metadata_file;
};

/// Writes one CSV per curve plus `<id>_metadata.json` into `outdir`.
/// Throws Error(unknown_figure) for an unknown id.
FigureOutput figure_dataset(std::string_view id, const std::filesystem::path& outdir,
                            int points = kFigurePoints, int cutoff = 3);

/// The sweeps behind figure_dataset(), without writing anything.
struct FigureCurve {
  std::string label;  ///< e.g. "lambda=9.3e-07"
  SweepSpec spec;
};
struct FigurePlan {
  std::string id;
  Cavity plotted = Cavity::first;
  std::vector<FigureCurve> curves;
  std::vector<std::string> notes;
};
FigurePlan figure_plan(std::string_view id, int points = kFigurePoints, int cutoff = 3);

}  // namespace blockade
