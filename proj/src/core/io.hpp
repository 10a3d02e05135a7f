#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "core/causality.hpp"
#include "core/grid.hpp"
#include "core/kernels.hpp"
#include "core/models.hpp"
#include "core/wavesim.hpp"

namespace aw {

// All CSV output uses a header row and %.17g formatting so that re-import
// reproduces the doubles bit-exactly.

void write_signal_csv(const std::string& path, const TimeSignal& f);

// Reads a two-column (t, value) CSV; the time column must be a uniform
// power-of-two-length grid (as produced by write_signal_csv).
TimeSignal read_signal_csv(const std::string& path);

// Reads a two-column (t, f) CSV as a source profile; the time column must
// match the supplied grid sample-for-sample within 1e-9*dt.
SourcePulse source_from_csv(const std::string& path, const SpectralGrid& g);

// Matrix export: header "r" followed by the time stamps, one row per radius.
void write_field_csv(const std::string& path, const std::vector<double>& radii,
                     const SpectralGrid& g, const std::vector<std::vector<double>>& values);

struct FieldData {
  std::vector<double> radii;
  std::vector<double> times;
  std::vector<std::vector<double>> values;
};
FieldData read_field_csv(const std::string& path);

// Row-major float64 matrix plus a JSON sidecar describing grid, radii and
// model so the binary is self-describing.
void write_field_binary(const std::string& bin_path, const std::string& sidecar_path,
                        const std::vector<double>& radii, const SpectralGrid& g,
                        const std::vector<std::vector<double>>& values,
                        const AttenuationModel& m);

nlohmann::json report_to_json(const CausalityReport& rep);
nlohmann::json front_fit_to_json(const FrontFit& fit);
void write_json(const std::string& path, const nlohmann::json& j);

struct SweepRow {
  std::string kind;
  double gamma = 0.0;
  double alpha0 = 0.0;
  double tau0 = 0.0;
  double alpha1 = 0.0;
  double r = 0.0;
  double metric = 0.0;
  std::string classification;
  double front_speed = 0.0;
  double kk_residual = 0.0;
};
void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows);

// Self-contained single-trace SVG line chart. Traces longer than a few
// thousand points are stride-downsampled for drawing only. timestamp=false
// omits the generation-time comment so outputs are bit-reproducible.
void write_svg_line(const std::string& path, const std::vector<double>& xs,
                    const std::vector<double>& ys, const std::string& title,
                    const std::string& xlabel, const std::string& ylabel,
                    bool timestamp);

}  // namespace aw
