#include "predsched/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "predsched/instance_io.hpp"

namespace predsched {

namespace {

std::string quote(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t c = 0; c < line.size(); ++c) {
    const char ch = line[c];
    if (quoted) {
      if (ch == '"' && c + 1 < line.size() && line[c + 1] == '"') {
        fields.back() += '"';
        ++c;
      } else if (ch == '"') {
        quoted = false;
      } else {
        fields.back() += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.emplace_back();
    } else {
      fields.back() += ch;
    }
  }
  if (quoted) throw Error("unterminated quote in CSV line: " + line);
  return fields;
}

template <typename T>
T parse_integer(const std::string& s) {
  T value{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw Error("bad integer '" + s + "' in CSV");
  return value;
}

std::string series_name(const std::string& algorithm, const std::optional<double>& lambda) {
  if (!lambda) return algorithm;
  std::string s = algorithm;
  s.insert(s.size() - 1, "," + format_double(*lambda));
  return s;
}

std::string fmt(double v) {
  char buf[32];
  const int len = std::snprintf(buf, sizeof buf, "%.2f", v);
  return std::string(buf, static_cast<std::size_t>(len));
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<ExperimentRecord>& records) {
  out << kCsvHeader << '\n';
  for (const auto& r : records) {
    out << quote(r.experiment) << ',' << quote(r.distribution) << ',' << r.n << ',' << r.m << ',' << quote(r.algorithm)
        << ',' << (r.lambda ? format_double(*r.lambda) : "") << ',' << format_double(r.x) << ',' << r.run << ','
        << r.seed << ',' << format_double(r.objective) << ',' << format_double(r.baseline) << ','
        << format_double(r.ratio) << ',' << format_double(r.eta_s) << ',' << format_double(r.ell1) << '\n';
  }
}

std::string format_csv(const std::vector<ExperimentRecord>& records) {
  std::ostringstream out;
  write_csv(out, records);
  return out.str();
}

void save_csv(const std::string& path, const std::vector<ExperimentRecord>& records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  write_csv(out, records);
  if (!out) throw Error("write failed for " + path);
}

std::vector<ExperimentRecord> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw Error("CSV header mismatch");
  std::vector<ExperimentRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 14) throw Error("CSV row has " + std::to_string(f.size()) + " fields, expected 14");
    ExperimentRecord r;
    r.experiment = f[0];
    r.distribution = f[1];
    r.n = parse_integer<int>(f[2]);
    r.m = parse_integer<int>(f[3]);
    r.algorithm = f[4];
    if (!f[5].empty()) r.lambda = parse_double(f[5]);
    r.x = parse_double(f[6]);
    r.run = parse_integer<int>(f[7]);
    r.seed = parse_integer<std::uint64_t>(f[8]);
    r.objective = parse_double(f[9]);
    r.baseline = parse_double(f[10]);
    r.ratio = parse_double(f[11]);
    r.eta_s = parse_double(f[12]);
    r.ell1 = parse_double(f[13]);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<ExperimentRecord> load_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  return read_csv(in);
}

std::string render_svg(const std::vector<ExperimentRecord>& records, const std::string& title) {
  const auto cells = summarize(records);
  if (cells.empty()) throw Error("no successful records to plot");
  std::map<std::string, std::vector<const CellSummary*>> series;
  double x_lo = cells.front().x, x_hi = x_lo, y_lo = cells.front().mean_ratio, y_hi = y_lo;
  for (const auto& c : cells) {
    series[series_name(c.algorithm, c.lambda)].push_back(&c);
    x_lo = std::min(x_lo, c.x);
    x_hi = std::max(x_hi, c.x);
    y_lo = std::min(y_lo, c.mean_ratio - c.ci_half_width);
    y_hi = std::max(y_hi, c.mean_ratio + c.ci_half_width);
  }
  if (x_hi == x_lo) x_hi = x_lo + 1.0;
  const double pad = std::max(1e-3, 0.05 * (y_hi - y_lo));
  y_lo -= pad;
  y_hi += pad;

  constexpr double W = 720, H = 440, L = 70, R = 200, T = 40, B = 50;
  const auto sx = [&](double x) { return L + (x - x_lo) / (x_hi - x_lo) * (W - L - R); };
  const auto sy = [&](double y) { return H - B - (y - y_lo) / (y_hi - y_lo) * (H - T - B); };
  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"};

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!title.empty()) svg << "<text x=\"" << L << "\" y=\"24\" font-size=\"14\">" << title << "</text>\n";
  svg << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double yv = y_lo + (y_hi - y_lo) * k / 4.0;
    const double xv = x_lo + (x_hi - x_lo) * k / 4.0;
    svg << "<text x=\"" << L - 6 << "\" y=\"" << fmt(sy(yv) + 4) << "\" text-anchor=\"end\">" << fmt(yv) << "</text>\n";
    svg << "<text x=\"" << fmt(sx(xv)) << "\" y=\"" << H - B + 18 << "\" text-anchor=\"middle\">" << fmt(xv) << "</text>\n";
  }
  svg << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 10 << "\" text-anchor=\"middle\">"
      << (records.front().experiment == "online" ? "round" : "noise std") << "</text>\n";
  svg << "<text transform=\"translate(16," << (T + H - B) / 2 << ") rotate(-90)\" text-anchor=\"middle\">mean ratio</text>\n";

  std::size_t idx = 0;
  for (const auto& [name, points] : series) {
    const char* color = palette[idx % (sizeof palette / sizeof *palette)];
    std::string band, line;
    for (const auto* p : points) band += fmt(sx(p->x)) + "," + fmt(sy(p->mean_ratio + p->ci_half_width)) + " ";
    for (auto it = points.rbegin(); it != points.rend(); ++it) {
      band += fmt(sx((*it)->x)) + "," + fmt(sy((*it)->mean_ratio - (*it)->ci_half_width)) + " ";
    }
    for (const auto* p : points) line += fmt(sx(p->x)) + "," + fmt(sy(p->mean_ratio)) + " ";
    band.pop_back();
    line.pop_back();
    svg << "<polygon points=\"" << band << "\" fill=\"" << color << "\" fill-opacity=\"0.2\" stroke=\"none\"/>\n";
    svg << "<polyline points=\"" << line << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    const double ly = T + 16.0 * static_cast<double>(idx);
    svg << "<line x1=\"" << W - R + 10 << "\" y1=\"" << ly << "\" x2=\"" << W - R + 30 << "\" y2=\"" << ly
        << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << W - R + 36 << "\" y=\"" << ly + 4 << "\">" << name << "</text>\n";
    ++idx;
  }
  svg << "</svg>\n";
  return svg.str();
}

void save_svg(const std::string& path, const std::vector<ExperimentRecord>& records, const std::string& title) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << render_svg(records, title);
  if (!out) throw Error("write failed for " + path);
}

}  // namespace predsched
