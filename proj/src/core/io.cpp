#include "core/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <stdexcept>

#include "core/errors.hpp"

namespace aw {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::string& path, std::ios::openmode extra = {}) {
  std::ofstream out(path, std::ios::out | std::ios::trunc | extra);
  if (!out) fail(errc::io_failure, "cannot open for writing: " + path);
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::io_failure, "cannot open for reading: " + path);
  return in;
}

void finish(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) fail(errc::io_failure, "write failed: " + path);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      cells.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  cells.push_back(cur);
  return cells;
}

// from_chars rather than stod: subnormal values round-trip instead of
// raising a spurious underflow error.
double parse_double(const std::string& s, const std::string& path) {
  const char* first = s.data();
  const char* last = s.data() + s.size();
  while (first < last && std::isspace(static_cast<unsigned char>(*first))) ++first;
  while (last > first && std::isspace(static_cast<unsigned char>(last[-1]))) --last;
  double v = 0.0;
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc{} || res.ptr != last)
    fail(errc::io_failure, "malformed number '" + s + "' in " + path);
  return v;
}

}  // namespace

void write_signal_csv(const std::string& path, const TimeSignal& f) {
  auto out = open_out(path);
  out << "t," << (f.unit.empty() ? "value" : f.unit) << "\n";
  for (std::size_t j = 0; j < f.grid.n; ++j)
    out << fmt17(f.grid.time(j)) << ',' << fmt17(f.samples[j]) << '\n';
  finish(out, path);
}

TimeSignal read_signal_csv(const std::string& path) {
  auto in = open_in(path);
  std::string line;
  if (!std::getline(in, line)) fail(errc::io_failure, "empty file: " + path);
  const auto header = split_csv_line(line);
  std::vector<double> ts, vs;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != 2) fail(errc::io_failure, "expected 2 columns in " + path);
    ts.push_back(parse_double(cells[0], path));
    vs.push_back(parse_double(cells[1], path));
  }
  if (ts.size() < 8) fail(errc::io_failure, "too few rows in " + path);
  const double dt = ts[1] - ts[0];
  TimeSignal f;
  f.grid = make_grid(ts.size(), dt, ts[0]);
  for (std::size_t j = 0; j < ts.size(); ++j) {
    if (std::abs(ts[j] - f.grid.time(j)) > 1e-9 * dt)
      fail(errc::io_failure, "time column is not uniform in " + path);
  }
  f.samples = std::move(vs);
  if (header.size() >= 2) f.unit = header[1];
  return f;
}

SourcePulse source_from_csv(const std::string& path, const SpectralGrid& g) {
  const TimeSignal f = read_signal_csv(path);
  if (f.grid.n != g.n)
    fail(errc::invalid_argument, "source row count does not match the grid");
  for (std::size_t j = 0; j < g.n; ++j) {
    if (std::abs(f.grid.time(j) - g.time(j)) > 1e-9 * g.dt)
      fail(errc::invalid_argument, "source time column does not match the grid");
  }
  return make_source(g, f.samples, "csv:" + path);
}

void write_field_csv(const std::string& path, const std::vector<double>& radii,
                     const SpectralGrid& g, const std::vector<std::vector<double>>& values) {
  if (values.size() != radii.size())
    fail(errc::invalid_argument, "field row count does not match radii");
  auto out = open_out(path);
  out << "r";
  for (std::size_t j = 0; j < g.n; ++j) out << ',' << fmt17(g.time(j));
  out << '\n';
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (values[i].size() != g.n)
      fail(errc::invalid_argument, "field column count does not match the grid");
    out << fmt17(radii[i]);
    for (std::size_t j = 0; j < g.n; ++j) out << ',' << fmt17(values[i][j]);
    out << '\n';
  }
  finish(out, path);
}

FieldData read_field_csv(const std::string& path) {
  auto in = open_in(path);
  std::string line;
  if (!std::getline(in, line)) fail(errc::io_failure, "empty file: " + path);
  const auto head = split_csv_line(line);
  if (head.size() < 2 || head[0] != "r")
    fail(errc::io_failure, "missing field header in " + path);

  FieldData fd;
  fd.times.reserve(head.size() - 1);
  for (std::size_t j = 1; j < head.size(); ++j)
    fd.times.push_back(parse_double(head[j], path));
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != head.size())
      fail(errc::io_failure, "ragged row in " + path);
    fd.radii.push_back(parse_double(cells[0], path));
    std::vector<double> row;
    row.reserve(cells.size() - 1);
    for (std::size_t j = 1; j < cells.size(); ++j)
      row.push_back(parse_double(cells[j], path));
    fd.values.push_back(std::move(row));
  }
  return fd;
}

void write_field_binary(const std::string& bin_path, const std::string& sidecar_path,
                        const std::vector<double>& radii, const SpectralGrid& g,
                        const std::vector<std::vector<double>>& values,
                        const AttenuationModel& m) {
  if (values.size() != radii.size())
    fail(errc::invalid_argument, "field row count does not match radii");
  auto out = open_out(bin_path, std::ios::binary);
  for (const auto& row : values) {
    if (row.size() != g.n)
      fail(errc::invalid_argument, "field column count does not match the grid");
    out.write(reinterpret_cast<const char*>(row.data()),
              static_cast<std::streamsize>(row.size() * sizeof(double)));
  }
  finish(out, bin_path);

  nlohmann::json side{{"schema_version", 1},
                      {"dtype", "float64"},
                      {"layout", "row-major"},
                      {"rows", radii.size()},
                      {"cols", g.n},
                      {"radii", radii},
                      {"grid", {{"n", g.n}, {"dt", g.dt}, {"t0", g.t0}}},
                      {"model", model_to_json(m)}};
  write_json(sidecar_path, side);
}

nlohmann::json report_to_json(const CausalityReport& rep) {
  return nlohmann::json{{"schema_version", 1},
                        {"metric", rep.metric},
                        {"epsilon", rep.epsilon},
                        {"classification", causality_name(rep.classification)},
                        {"threshold", rep.threshold},
                        {"windowed", rep.windowed},
                        {"truncation_bound", rep.truncation_bound}};
}

nlohmann::json front_fit_to_json(const FrontFit& fit) {
  return nlohmann::json{{"schema_version", 1},
                        {"radii", fit.radii},
                        {"arrivals", fit.arrivals},
                        {"slope", fit.slope},
                        {"intercept", fit.intercept},
                        {"r_squared", fit.r_squared},
                        {"front_speed", fit.front_speed}};
}

void write_json(const std::string& path, const nlohmann::json& j) {
  auto out = open_out(path);
  out << j.dump(2) << '\n';
  finish(out, path);
}

void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows) {
  auto out = open_out(path);
  out << "kind,gamma,alpha0,tau0,alpha1,r,metric,classification,front_speed,kk_residual\n";
  for (const auto& row : rows) {
    out << row.kind << ',' << fmt17(row.gamma) << ',' << fmt17(row.alpha0) << ','
        << fmt17(row.tau0) << ',' << fmt17(row.alpha1) << ',' << fmt17(row.r) << ','
        << fmt17(row.metric) << ',' << row.classification << ','
        << fmt17(row.front_speed) << ',' << fmt17(row.kk_residual) << '\n';
  }
  finish(out, path);
}

void write_svg_line(const std::string& path, const std::vector<double>& xs,
                    const std::vector<double>& ys, const std::string& title,
                    const std::string& xlabel, const std::string& ylabel,
                    bool timestamp) {
  if (xs.size() != ys.size() || xs.empty())
    fail(errc::invalid_argument, "plot needs matching non-empty x/y arrays");

  const int W = 960, H = 540, ml = 70, mr = 20, mt = 40, mb = 50;
  double xmin = xs[0], xmax = xs[0], ymin = ys[0], ymax = ys[0];
  for (std::size_t i = 0; i < xs.size(); ++i) {
    xmin = std::min(xmin, xs[i]);
    xmax = std::max(xmax, xs[i]);
    ymin = std::min(ymin, ys[i]);
    ymax = std::max(ymax, ys[i]);
  }
  if (xmax == xmin) xmax = xmin + 1.0;
  if (ymax == ymin) {
    ymax += 0.5;
    ymin -= 0.5;
  }
  const double pad = 0.05 * (ymax - ymin);
  ymin -= pad;
  ymax += pad;

  auto px = [&](double x) {
    return ml + (x - xmin) / (xmax - xmin) * (W - ml - mr);
  };
  auto py = [&](double y) {
    return H - mb - (y - ymin) / (ymax - ymin) * (H - mt - mb);
  };
  auto fmt6 = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return std::string(buf);
  };

  const std::size_t stride = xs.size() > 4000 ? (xs.size() + 3999) / 4000 : 1;

  auto out = open_out(path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n";
  if (timestamp) {
    std::time_t now = std::time(nullptr);
    char buf[64];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    out << "<!-- generated " << buf << " -->\n";
  }
  out << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
  out << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"16\">"
      << title << "</text>\n";

  for (int i = 0; i <= 4; ++i) {
    const double xv = xmin + (xmax - xmin) * i / 4.0;
    const double yv = ymin + (ymax - ymin) * i / 4.0;
    out << "<line x1=\"" << fmt6(px(xv)) << "\" y1=\"" << H - mb << "\" x2=\"" << fmt6(px(xv))
        << "\" y2=\"" << H - mb + 5 << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << fmt6(px(xv)) << "\" y=\"" << H - mb + 18
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << fmt6(xv)
        << "</text>\n";
    out << "<line x1=\"" << ml - 5 << "\" y1=\"" << fmt6(py(yv)) << "\" x2=\"" << ml << "\" y2=\""
        << fmt6(py(yv)) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << ml - 8 << "\" y=\"" << fmt6(py(yv) + 4)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << fmt6(yv)
        << "</text>\n";
  }
  out << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << W - ml - mr << "\" height=\""
      << H - mt - mb << "\" fill=\"none\" stroke=\"black\"/>\n";
  out << "<text x=\"" << W / 2 << "\" y=\"" << H - 12
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << xlabel
      << "</text>\n";
  out << "<text x=\"16\" y=\"" << H / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
         "transform=\"rotate(-90 16 "
      << H / 2 << ")\">" << ylabel << "</text>\n";

  out << "<polyline fill=\"none\" stroke=\"#1f6fb2\" stroke-width=\"1\" points=\"";
  for (std::size_t i = 0; i < xs.size(); i += stride)
    out << fmt6(px(xs[i])) << ',' << fmt6(py(ys[i])) << ' ';
  if ((xs.size() - 1) % stride != 0)
    out << fmt6(px(xs.back())) << ',' << fmt6(py(ys.back()));
  out << "\"/>\n</svg>\n";
  finish(out, path);
}

}  // namespace aw
