#include "warpft/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "warpft/errors.hpp"

namespace warpft {

namespace {

using nlohmann::json;

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string::size_type pos = 0;
  while (true) {
    const auto comma = line.find(',', pos);
    if (comma == std::string::npos) {
      out.push_back(line.substr(pos));
      return out;
    }
    out.push_back(line.substr(pos, comma - pos));
    pos = comma + 1;
  }
}

double parse_double(const std::string& field, const std::string& where) {
  const char* begin = field.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0')
    throw ValidationError(where + ": cannot parse number '" + field + "'");
  return v;
}

// Reads all lines, strips one trailing '\r' per line, drops a final empty
// line produced by the trailing newline.
std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

void expect_header(const std::vector<std::string>& lines,
                   const std::string& header, const std::string& path) {
  if (lines.empty() || lines[0] != header)
    throw ValidationError(path + ": expected header '" + header + "'");
}

json parse_json(const std::string& text, const std::string& where) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ValidationError(where + ": invalid JSON");
  return j;
}

double json_number(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key) || !j[key].is_number())
    throw ValidationError(where + ": missing numeric field '" + key + "'");
  return j[key].get<double>();
}

void append_coeffs(std::string& out, const std::vector<double>& coeffs) {
  out += "[";
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (i) out += ",";
    out += format_double(coeffs[i]);
  }
  out += "]";
}

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string format_double(double v) {
  if (!std::isfinite(v))
    throw NumericError("refusing to format a non-finite number");
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_signal_csv(const std::string& path, const SampledSignal& s) {
  s.validate();
  std::string out = "coord,re,im\n";
  for (std::size_t i = 0; i < s.size(); ++i) {
    out += format_double(s.nodes[i]);
    out += ',';
    out += format_double(s.samples[i].real());
    out += ',';
    out += format_double(s.samples[i].imag());
    out += '\n';
  }
  write_text_file(path, out);
}

SampledSignal read_signal_csv(const std::string& path, Coord coord) {
  const auto lines = read_lines(path);
  expect_header(lines, "coord,re,im", path);
  std::vector<double> nodes;
  std::vector<cplx> samples;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = split_fields(lines[i]);
    if (f.size() != 3)
      throw ValidationError(path + ": expected 3 fields per row");
    nodes.push_back(parse_double(f[0], path));
    samples.emplace_back(parse_double(f[1], path), parse_double(f[2], path));
  }
  return SampledSignal(coord, std::move(nodes), std::move(samples));
}

void write_profile_csv(const std::string& path, const DensityProfile& p) {
  p.validate();
  std::string out = "coord,value\n";
  for (std::size_t i = 0; i < p.size(); ++i) {
    out += format_double(p.nodes[i]);
    out += ',';
    out += format_double(p.values[i]);
    out += '\n';
  }
  write_text_file(path, out);
}

DensityProfile read_profile_csv(const std::string& path, ProfileCoord coord,
                                Measure measure) {
  const auto lines = read_lines(path);
  expect_header(lines, "coord,value", path);
  DensityProfile p;
  p.coord = coord;
  p.measure = measure;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = split_fields(lines[i]);
    if (f.size() != 2)
      throw ValidationError(path + ": expected 2 fields per row");
    p.nodes.push_back(parse_double(f[0], path));
    p.values.push_back(parse_double(f[1], path));
  }
  p.validate();
  return p;
}

void write_msd_csv(const std::string& path, const MsdSeries& series) {
  series.validate();
  std::string out = "t,msd,slope\n";
  for (std::size_t i = 0; i < series.times.size(); ++i) {
    out += format_double(series.times[i]);
    out += ',';
    out += format_double(series.msd[i]);
    out += ',';
    if (i > 0) out += format_double(series.slopes[i - 1]);
    out += '\n';
  }
  write_text_file(path, out);
}

MsdSeries read_msd_csv(const std::string& path) {
  const auto lines = read_lines(path);
  expect_header(lines, "t,msd,slope", path);
  MsdSeries series;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = split_fields(lines[i]);
    if (f.size() != 3)
      throw ValidationError(path + ": expected 3 fields per row");
    series.times.push_back(parse_double(f[0], path));
    series.msd.push_back(parse_double(f[1], path));
    if (!f[2].empty()) series.slopes.push_back(parse_double(f[2], path));
  }
  series.validate();
  return series;
}

std::string warp_to_json(const Warp& w) {
  std::string out;
  if (const auto* p = std::get_if<Warp::OddPolynomial>(&w.form())) {
    out = "{\"kind\":\"odd_poly\",\"coeffs\":";
    append_coeffs(out, p->coeffs);
    out += "}";
  } else {
    const auto& m = std::get<Warp::SignedMonomial>(w.form());
    out = "{\"kind\":\"signed_monomial\",\"scale\":" + format_double(m.scale) +
          ",\"exponent\":" + format_double(m.exponent) + "}";
  }
  return out;
}

Warp warp_from_json_text(const std::string& text) {
  const json j = parse_json(text, "warp");
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw ValidationError("warp: expected an object with a 'kind' field");
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "identity") return Warp::identity();
  if (kind == "odd_poly") {
    if (!j.contains("coeffs") || !j["coeffs"].is_array())
      throw ValidationError("warp: odd_poly needs a 'coeffs' array");
    std::vector<double> coeffs;
    for (const auto& c : j["coeffs"]) {
      if (!c.is_number()) throw ValidationError("warp: non-numeric coefficient");
      coeffs.push_back(c.get<double>());
    }
    return Warp::odd_polynomial(std::move(coeffs));
  }
  if (kind == "signed_monomial")
    return Warp::signed_monomial(json_number(j, "scale", "warp"),
                                 json_number(j, "exponent", "warp"));
  throw ValidationError("warp: unknown kind '" + kind + "'");
}

std::string grid_to_json(const GridSpec& g) {
  return "{\"start\":" + format_double(g.start) +
         ",\"step\":" + format_double(g.step) +
         ",\"count\":" + std::to_string(g.count) + "}";
}

GridSpec grid_from_json_text(const std::string& text) {
  const json j = parse_json(text, "grid");
  if (!j.is_object()) throw ValidationError("grid: expected an object");
  GridSpec g;
  g.start = json_number(j, "start", "grid");
  g.step = json_number(j, "step", "grid");
  if (!j.contains("count") || !j["count"].is_number_unsigned())
    throw ValidationError("grid: 'count' must be a nonnegative integer");
  g.count = j["count"].get<std::size_t>();
  g.validate();
  return g;
}

std::string report_to_json(const HarmonizationReport& r,
                           const std::vector<double>& coeffs) {
  std::string out = "{\"omega_big_peak\":" + format_double(r.omega_big_peak) +
                    ",\"omega_peak\":" + format_double(r.omega_peak) +
                    ",\"harmonic_residual\":" + format_double(r.harmonic_residual) +
                    ",\"objective\":" + format_double(r.objective) +
                    ",\"coeffs\":";
  append_coeffs(out, coeffs);
  out += "}";
  return out;
}

std::string estimate_to_json(const WarpEstimate& e) {
  std::string out = "{\"omega_big_peak\":" + format_double(e.best_report.omega_big_peak) +
                    ",\"omega_peak\":" + format_double(e.best_report.omega_peak) +
                    ",\"harmonic_residual\":" + format_double(e.best_report.harmonic_residual) +
                    ",\"objective\":" + format_double(e.objective) +
                    ",\"coeffs\":";
  append_coeffs(out, e.coeffs);
  out += ",\"evaluations\":" + std::to_string(e.evaluations);
  out += ",\"grid\":\"" + json_escape(e.grid) + "\"}";
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path);
  out << content;
  if (!out) throw ValidationError("write failed for " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path);
  std::ostringstream body;
  body << in.rdbuf();
  return body.str();
}

}  // namespace warpft
