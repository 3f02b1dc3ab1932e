#include "cli_support.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>

namespace bertrand::cli {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) v = 0.0;  // drop the sign of negative zero
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

double round12(double v) {
  if (!std::isfinite(v)) return v;
  const std::string s = format_number(v);
  double out = 0.0;
  std::from_chars(s.data(), s.data() + s.size(), out);
  return out;
}

void CsvWriter::header(const std::vector<std::string>& columns) { row(columns); }

void CsvWriter::row(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << ',';
    const std::string& c = cells[i];
    if (c.find_first_of(",\"\n") == std::string::npos) {
      out_ << c;
    } else {
      out_ << '"';
      for (char ch : c) {
        if (ch == '"') out_ << '"';
        out_ << ch;
      }
      out_ << '"';
    }
  }
  out_ << '\n';
}

nlohmann::ordered_json rounded(nlohmann::ordered_json j) {
  if (j.is_number_float()) {
    const double v = j.get<double>();
    if (!std::isfinite(v)) return nullptr;
    return round12(v);
  }
  if (j.is_array() || j.is_object()) {
    for (auto& item : j) item = rounded(item);
  }
  return j;
}

std::string render_svg(const std::vector<SvgCurve>& curves, const std::vector<std::string>& comment,
                       bool equal_aspect) {
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& c : curves)
    for (const auto& [x, y] : c.points) {
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  if (!(xmin <= xmax)) xmin = xmax = ymin = ymax = 0.0;
  constexpr double size = 1000.0, margin = 40.0;
  double sx = (xmax > xmin) ? (size - 2 * margin) / (xmax - xmin) : 1.0;
  double sy = (ymax > ymin) ? (size - 2 * margin) / (ymax - ymin) : 1.0;
  if (equal_aspect) sx = sy = std::min(sx, sy);
  const double ox = margin + 0.5 * ((size - 2 * margin) - sx * (xmax - xmin));
  const double oy = margin + 0.5 * ((size - 2 * margin) - sy * (ymax - ymin));

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"1000\" height=\"1000\" "
         "viewBox=\"0 0 1000 1000\">\n";
  out += "<!--\n";
  for (const auto& line : comment) {
    std::string safe = line;
    for (std::size_t p; (p = safe.find("--")) != std::string::npos;) safe.replace(p, 2, "- -");
    out += "  " + safe + "\n";
  }
  out += "-->\n";
  out += "<rect x=\"0\" y=\"0\" width=\"1000\" height=\"1000\" fill=\"white\"/>\n";
  for (const auto& c : curves) {
    out += "<polyline fill=\"none\" stroke=\"" + c.stroke + "\" stroke-width=\"2\" points=\"";
    bool first = true;
    auto emit = [&](double x, double y) {
      if (!first) out += ' ';
      first = false;
      const double px = ox + sx * (x - xmin);
      const double py = size - (oy + sy * (y - ymin));  // y axis up
      out += format_number(std::round(px * 100.0) / 100.0) + "," +
             format_number(std::round(py * 100.0) / 100.0);
    };
    for (const auto& [x, y] : c.points) emit(x, y);
    if (c.closed && !c.points.empty()) emit(c.points.front().first, c.points.front().second);
    out += "\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

unsigned thread_count() {
  const char* env = std::getenv("BERTRAND_ATOMS_THREADS");
  unsigned n = 0;
  if (env && *env) {
    const std::string_view s(env);
    const auto res = std::from_chars(s.data(), s.data() + s.size(), n);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
      throw std::invalid_argument("BERTRAND_ATOMS_THREADS must be a non-negative integer");
  }
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  return n;
}

}  // namespace bertrand::cli
