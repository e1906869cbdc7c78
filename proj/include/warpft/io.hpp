#pragma once

#include <string>
#include <vector>

#include "warpft/chirp.hpp"
#include "warpft/grid.hpp"
#include "warpft/warp.hpp"

namespace warpft {

// %.17g with a lowercase exponent; throws NumericError on non-finite input
// so nan/inf can never reach an output file.
std::string format_double(double v);

// Signal CSV, header `coord,re,im`: coordinate value, real part, imaginary
// part per row, 17 significant digits. The coordinate label itself is
// carried by the surrounding config, not the file.
void write_signal_csv(const std::string& path, const SampledSignal& s);
SampledSignal read_signal_csv(const std::string& path, Coord coord);

// Density CSV, header `coord,value`.
void write_profile_csv(const std::string& path, const DensityProfile& p);
DensityProfile read_profile_csv(const std::string& path, ProfileCoord coord,
                                Measure measure);

// MSD CSV, header `t,msd,slope`. The slope column holds the log-log slope
// of the interval ending at that row; the first row's slope field is empty.
void write_msd_csv(const std::string& path, const MsdSeries& series);
MsdSeries read_msd_csv(const std::string& path);

// Warp JSON: {"kind":"odd_poly","coeffs":[...]} or
// {"kind":"signed_monomial","scale":C,"exponent":beta}; {"kind":"identity"}
// is accepted on input as shorthand for odd_poly [1].
std::string warp_to_json(const Warp& w);
Warp warp_from_json_text(const std::string& text);

// Grid JSON: {"start":..., "step":..., "count":...}.
std::string grid_to_json(const GridSpec& g);
GridSpec grid_from_json_text(const std::string& text);

// Harmonization report JSON with the warp coefficients that produced it.
std::string report_to_json(const HarmonizationReport& r,
                           const std::vector<double>& coeffs);

// Estimate JSON: the best candidate's report fields plus the search size.
std::string estimate_to_json(const WarpEstimate& e);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace warpft
