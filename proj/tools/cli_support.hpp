#pragma once

// Output plumbing for the command-line tool: locale-independent number
// formatting, CSV rows, JSON rounding, SVG polylines and an ordered parallel map.

#include <cstddef>
#include <functional>
#include <future>
#include <ostream>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

namespace bertrand::cli {

/// Shortest representation with at most 12 significant digits, '.' decimal
/// separator regardless of locale.
std::string format_number(double v);

/// v rounded to 12 significant digits (what format_number prints).
double round12(double v);

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void header(const std::vector<std::string>& columns);
  /// Each cell is already formatted text; cells containing ',' or '"' are quoted.
  void row(const std::vector<std::string>& cells);

 private:
  std::ostream& out_;
};

/// Recursively rounds every floating-point value to 12 significant digits.
nlohmann::ordered_json rounded(nlohmann::ordered_json j);

struct SvgCurve {
  std::vector<std::pair<double, double>> points;
  std::string stroke = "#1f4e79";
  bool closed = false;
};

/// SVG 1.1 document with one <polyline> per curve in a normalized
/// 0..1000 viewBox. `equal_aspect` keeps x and y on the same scale.
/// `comment` lines go into a single XML comment.
std::string render_svg(const std::vector<SvgCurve>& curves, const std::vector<std::string>& comment,
                       bool equal_aspect);

/// Worker count from BERTRAND_ATOMS_THREADS; unset or 0 means hardware
/// concurrency. Malformed values throw std::invalid_argument.
unsigned thread_count();

/// results[i] = f(i) for i < n, evaluated on up to thread_count() threads.
/// Output order never depends on scheduling. The first exception is rethrown.
template <class T>
std::vector<T> parallel_map(std::size_t n, const std::function<T(std::size_t)>& f) {
  std::vector<T> results(n);
  const std::size_t workers = std::min<std::size_t>(thread_count(), n == 0 ? 1 : n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) results[i] = f(i);
    return results;
  }
  std::vector<std::future<void>> jobs;
  jobs.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < n; i += workers) results[i] = f(i);
    }));
  }
  for (auto& j : jobs) j.get();
  return results;
}

}  // namespace bertrand::cli
