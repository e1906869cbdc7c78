#include "warpft/grid.hpp"

#include <cmath>

namespace warpft {

void GridSpec::validate() const {
  if (!std::isfinite(start) || !std::isfinite(step))
    throw ValidationError("grid: non-finite start/step");
  if (!(step > 0.0)) throw ValidationError("grid: step must be > 0");
  if (count < 2) throw ValidationError("grid: count must be >= 2");
  if (!std::isfinite(end())) throw ValidationError("grid: non-finite end");
}

std::vector<double> GridSpec::nodes() const {
  validate();
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = node(i);
  return out;
}

std::string to_string(Coord c) {
  switch (c) {
    case Coord::X: return "x";
    case Coord::W: return "W";
    case Coord::SmallK: return "k";
    case Coord::BigK: return "K";
    case Coord::T: return "t";
    case Coord::BigOmega: return "Omega";
    case Coord::SmallOmega: return "omega";
  }
  throw ValidationError("unknown coordinate label");
}

Coord coord_from_string(const std::string& s) {
  if (s == "x") return Coord::X;
  if (s == "W") return Coord::W;
  if (s == "k") return Coord::SmallK;
  if (s == "K") return Coord::BigK;
  if (s == "t") return Coord::T;
  if (s == "Omega") return Coord::BigOmega;
  if (s == "omega") return Coord::SmallOmega;
  throw ValidationError("unknown coordinate label: " + s);
}

SampledSignal::SampledSignal(Coord c, const GridSpec& g) : coord(c), grid(g) {
  g.validate();
  nodes = g.nodes();
  samples.assign(g.count, cplx{0.0, 0.0});
}

SampledSignal::SampledSignal(Coord c, std::vector<double> n, std::vector<cplx> s)
    : coord(c), nodes(std::move(n)), samples(std::move(s)) {
  validate();
}

void SampledSignal::validate() const {
  if (nodes.size() != samples.size())
    throw ValidationError("signal: node/sample size mismatch");
  if (nodes.size() < 2) throw ValidationError("signal: need at least 2 nodes");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!std::isfinite(nodes[i])) throw ValidationError("signal: non-finite node");
    if (i + 1 < nodes.size() && !(nodes[i] < nodes[i + 1]))
      throw ValidationError("signal: nodes must be strictly increasing");
    if (!std::isfinite(samples[i].real()) || !std::isfinite(samples[i].imag()))
      throw ValidationError("signal: non-finite sample");
  }
}

std::string to_string(Measure m) { return m == Measure::Dx ? "dx" : "dW"; }

Measure measure_from_string(const std::string& s) {
  if (s == "dx") return Measure::Dx;
  if (s == "dW") return Measure::DW;
  throw ValidationError("unknown measure label: " + s);
}

std::string to_string(ProfileCoord c) {
  switch (c) {
    case ProfileCoord::X: return "x";
    case ProfileCoord::W: return "W";
    case ProfileCoord::Y: return "y";
  }
  throw ValidationError("unknown profile coordinate");
}

ProfileCoord profile_coord_from_string(const std::string& s) {
  if (s == "x") return ProfileCoord::X;
  if (s == "W") return ProfileCoord::W;
  if (s == "y") return ProfileCoord::Y;
  throw ValidationError("unknown profile coordinate: " + s);
}

DensityProfile::DensityProfile(ProfileCoord c, Measure m, std::vector<double> n,
                               std::vector<double> v)
    : coord(c), measure(m), nodes(std::move(n)), values(std::move(v)) {}

double DensityProfile::mass() const { return trapezoid(nodes, values); }

void DensityProfile::validate() const {
  if (nodes.size() != values.size())
    throw ValidationError("profile: node/value size mismatch");
  if (nodes.size() < 2) throw ValidationError("profile: need at least 2 nodes");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!std::isfinite(nodes[i])) throw ValidationError("profile: non-finite node");
    if (i + 1 < nodes.size() && !(nodes[i] < nodes[i + 1]))
      throw ValidationError("profile: nodes must be strictly increasing");
    if (!std::isfinite(values[i])) throw ValidationError("profile: non-finite value");
    if (values[i] < 0.0) throw ValidationError("profile: negative density value");
  }
  if (!(mass() > 0.0)) throw ValidationError("profile: total mass must be > 0");
}

void MsdSeries::validate() const {
  if (times.size() < 2) throw ValidationError("msd series: need at least 2 times");
  if (msd.size() != times.size())
    throw ValidationError("msd series: time/msd size mismatch");
  if (slopes.size() + 1 != times.size())
    throw ValidationError("msd series: slopes must have times.size()-1 entries");
  for (std::size_t i = 0; i + 1 < times.size(); ++i)
    if (!(times[i] < times[i + 1]))
      throw ValidationError("msd series: times must be strictly increasing");
}

}  // namespace warpft
