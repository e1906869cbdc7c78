#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "warpft/errors.hpp"
#include "warpft/numerics.hpp"

namespace warpft {

// Uniform 1-D grid: node(i) = start + i * step, i = 0 .. count-1.
struct GridSpec {
  double start = 0.0;
  double step = 1.0;
  std::size_t count = 2;

  void validate() const;
  double node(std::size_t i) const { return start + static_cast<double>(i) * step; }
  double end() const { return node(count - 1); }
  std::vector<double> nodes() const;
};

// Coordinate labels shared by the transform pipelines:
//   x, k      raw space / wavenumber
//   W, K      warped space / wavenumber
//   t         raw time
//   Omega     warped frequency
//   omega     raw frequency
enum class Coord { X, W, SmallK, BigK, T, BigOmega, SmallOmega };

std::string to_string(Coord c);
Coord coord_from_string(const std::string& s);

// Complex samples on a strictly increasing coordinate grid. `grid` is kept
// when the signal was built from a GridSpec; transforms use it to run
// phase-recurrence evaluation on provably uniform nodes.
struct SampledSignal {
  Coord coord = Coord::X;
  std::vector<double> nodes;
  std::vector<cplx> samples;
  std::optional<GridSpec> grid;

  SampledSignal() = default;
  SampledSignal(Coord c, const GridSpec& g);
  SampledSignal(Coord c, std::vector<double> n, std::vector<cplx> s);

  std::size_t size() const { return nodes.size(); }
  bool uniform() const { return grid.has_value(); }
  void validate() const;
};

enum class Measure { Dx, DW };
enum class ProfileCoord { X, W, Y };

std::string to_string(Measure m);
Measure measure_from_string(const std::string& s);
std::string to_string(ProfileCoord c);
ProfileCoord profile_coord_from_string(const std::string& s);

// Nonnegative real density samples on a strictly increasing grid, tagged
// with the measure its values integrate against.
struct DensityProfile {
  ProfileCoord coord = ProfileCoord::W;
  Measure measure = Measure::DW;
  std::vector<double> nodes;
  std::vector<double> values;

  DensityProfile() = default;
  DensityProfile(ProfileCoord c, Measure m, std::vector<double> n,
                 std::vector<double> v);

  std::size_t size() const { return nodes.size(); }
  double mass() const;
  void validate() const;
};

// Mean-square-displacement series: msd over times, with local log-log
// slopes between consecutive samples (slopes.size() == times.size() - 1).
struct MsdSeries {
  std::vector<double> times;
  std::vector<double> msd;
  std::vector<double> slopes;

  void validate() const;
};

}  // namespace warpft
