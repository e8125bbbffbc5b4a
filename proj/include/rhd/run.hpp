#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "rhd/limiter.hpp"
#include "rhd/time_stepper.hpp"

namespace rhd {

/// Everything a batch run needs. Negative numbers mean "use the scenario or
/// scheme default"; an unset s0 means "use the scenario's exact entropy
/// floor".
struct RunConfig {
  std::string scenario;

  // Inline initial condition instead of a built-in scenario (1D):
  // kind "constant" uses `ic_left` everywhere; "riemann" splits
  // left/right at `ic_split`. States are primitive (rho, v, p).
  std::string ic_kind;
  std::array<double, 3> ic_left{1.0, 0.0, 1.0};
  std::array<double, 3> ic_right{1.0, 0.0, 1.0};
  double ic_split = 0.5;
  std::array<double, 2> ic_domain{0.0, 1.0};
  std::string ic_boundary = "outflow";

  int degree = 1;
  std::array<int, 2> cells{0, 0};
  double cfl = -1.0;
  double dt = -1.0;
  double dt_coeff = -1.0;  // dt = dt_coeff * dx^dt_power when set
  double dt_power = 1.0;
  double t_final = -1.0;
  LimiterMode limiter = LimiterMode::irp;
  TimeScheme scheme = TimeScheme::ssprk3;
  double gamma = -1.0;
  double s0 = std::numeric_limits<double>::quiet_NaN();
  std::string outdir;
  double snapshot_interval = -1.0;  // < 0: final snapshot only
  bool monitor = true;
  std::uint64_t seed = 0;
  int threads = 0;

  void validate() const;
};

struct SMinRecord {
  double t;
  double points;
  double averages;
};

struct RunSummary {
  std::string scenario;
  int degree = 0;
  std::array<int, 2> cells{0, 0};
  int steps = 0;
  double t_end = 0.0;
  double gamma = 0.0;
  double s0 = 0.0;
  bool has_error_norms = false;
  double l1 = std::numeric_limits<double>::quiet_NaN();
  double l2 = std::numeric_limits<double>::quiet_NaN();
  double smin_points_min = std::numeric_limits<double>::infinity();
  double smin_points_max = -std::numeric_limits<double>::infinity();
  double smin_averages_min = std::numeric_limits<double>::infinity();
  double smin_averages_max = -std::numeric_limits<double>::infinity();
  bool irp_verdict = false;
  double wall_seconds = 0.0;
  std::vector<SMinRecord> smin_series;
};

RunSummary run(const RunConfig& config);

/// Convergence study: one run per resolution, with orders
/// log2(e_N / e_2N) between consecutive rows.
struct ConvergenceRow {
  int cells = 0;
  double l1 = 0.0;
  double l1_order = std::numeric_limits<double>::quiet_NaN();
  double l2 = 0.0;
  double l2_order = std::numeric_limits<double>::quiet_NaN();
};

std::vector<ConvergenceRow> convergence_table(
    const RunConfig& base, const std::vector<int>& resolutions);

std::string format_convergence_table(const std::vector<ConvergenceRow>& rows);

// --- plain-text run configuration (`key = value` lines) -------------------

RunConfig parse_config_text(const std::string& text);
RunConfig load_config_file(const std::string& path);

LimiterMode parse_limiter_mode(const std::string& word);
TimeScheme parse_time_scheme(const std::string& word);
const char* limiter_mode_name(LimiterMode mode);
const char* time_scheme_name(TimeScheme scheme);

// --- snapshot files --------------------------------------------------------

/// One parsed snapshot row: cell-centre coordinates, conserved averages,
/// recovered primitives and specific entropy.
struct SnapshotRow {
  std::vector<double> position;
  std::vector<double> conserved;
  std::vector<double> primitive;
  double entropy;
};

template <int Dim>
void write_snapshot(const std::string& path, const DgSolution<Dim>& sol,
                    const Eos<double>& eos, const RunConfig& config);

std::vector<SnapshotRow> read_snapshot(const std::string& path);

void write_smin_series(const std::string& path,
                       const std::vector<SMinRecord>& series);

void write_summary_json(const std::string& path, const RunSummary& summary,
                        const RunConfig& config);

}  // namespace rhd
