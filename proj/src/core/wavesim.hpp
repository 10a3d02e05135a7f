#pragma once

#include <string>
#include <utility>
#include <vector>

#include "core/grid.hpp"
#include "core/models.hpp"

namespace aw {

// Point-source time profile; zero before t = 0 by construction.
struct SourcePulse {
  SpectralGrid grid;
  std::vector<double> samples;
  std::string description;
};

struct PressureField {
  SpectralGrid grid;
  std::vector<double> radii;
  std::vector<std::vector<double>> values;  // values[i][j] = p(radii[i], t_j)
  AttenuationModel model;
};

// Validates length and the vanishing-before-zero invariant.
SourcePulse make_source(const SpectralGrid& g, std::vector<double> samples,
                        std::string description);

// exp(-(t-center)^2 / (2 width^2)) clipped to zero for t < 0; center and
// width must be positive and the pulse must fit the window.
SourcePulse gaussian_source(const SpectralGrid& g, double center, double width);

// Attenuated pressure at each radius: the spherical spreading of the source
// convolved with the attenuation kernel and delayed by r/c0, evaluated as
//   F{p}(r, omega) = exp(-beta*(r, omega)) * exp(i omega r / c0)
//                    * F{src}(omega) / (4 pi r)
// and inverted per radius. The physical arrival must fit the window.
PressureField propagate(const AttenuationModel& m, const SourcePulse& src,
                        const std::vector<double>& radii);

// p(r, t) per radius by linear interpolation in time.
std::vector<std::pair<double, double>> snapshot(const PressureField& field, double t);

// Same interpolation over loose rows (shared by the field containers).
std::vector<std::pair<double, double>> snapshot_rows(
    const SpectralGrid& g, const std::vector<double>& radii,
    const std::vector<std::vector<double>>& values, double t);

}  // namespace aw
