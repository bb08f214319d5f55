#include "adhoc/bench/plots.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "adhoc/errors.hpp"

namespace adhoc::bench {

namespace fs = std::filesystem;

namespace {

constexpr double kWidth = 640, kHeight = 400, kMargin = 60;

const char* planner_color(PlannerKind p) {
  switch (p) {
    case PlannerKind::EZQ: return "#d62728";
    case PlannerKind::NeverQuery: return "#1f77b4";
    case PlannerKind::BaselineRandom: return "#7f7f7f";
    case PlannerKind::BlCostProb: return "#2ca02c";
    case PlannerKind::BlToolbox: return "#9467bd";
  }
  return "#000000";
}

struct Scale {
  double lo, hi, out_lo, out_hi;
  double operator()(double v) const {
    if (hi <= lo) return (out_lo + out_hi) / 2;
    return out_lo + (v - lo) / (hi - lo) * (out_hi - out_lo);
  }
};

void write_file(const fs::path& path, const std::string& text, std::vector<std::string>& written) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("failed writing " + path.string());
  written.push_back(path.string());
}

std::string svg_open(const std::string& title) {
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
    << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    << "<text x=\"" << kWidth / 2 << "\" y=\"20\" text-anchor=\"middle\">" << title << "</text>\n";
  return s.str();
}

std::string axes(const Scale& x, const Scale& y, const std::string& xlabel, const std::string& ylabel) {
  std::ostringstream s;
  s << "<line x1=\"" << kMargin << "\" y1=\"" << kHeight - kMargin << "\" x2=\"" << kWidth - kMargin
    << "\" y2=\"" << kHeight - kMargin << "\" stroke=\"black\"/>\n"
    << "<line x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\"" << kMargin << "\" y2=\""
    << kHeight - kMargin << "\" stroke=\"black\"/>\n"
    << "<text x=\"" << kMargin << "\" y=\"" << kHeight - kMargin + 16 << "\">" << format_number(x.lo)
    << "</text>\n"
    << "<text x=\"" << kWidth - kMargin << "\" y=\"" << kHeight - kMargin + 16 << "\" text-anchor=\"end\">"
    << format_number(x.hi) << "</text>\n"
    << "<text x=\"" << kMargin - 4 << "\" y=\"" << kHeight - kMargin << "\" text-anchor=\"end\">"
    << format_number(y.lo) << "</text>\n"
    << "<text x=\"" << kMargin - 4 << "\" y=\"" << kMargin + 4 << "\" text-anchor=\"end\">"
    << format_number(y.hi) << "</text>\n"
    << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 20 << "\" text-anchor=\"middle\">" << xlabel
    << "</text>\n"
    << "<text x=\"16\" y=\"" << kHeight / 2 << "\" transform=\"rotate(-90 16 " << kHeight / 2
    << ")\" text-anchor=\"middle\">" << ylabel << "</text>\n";
  return s.str();
}

std::string legend(const std::vector<PlannerKind>& planners) {
  std::ostringstream s;
  double y = kMargin;
  for (PlannerKind p : planners) {
    s << "<rect x=\"" << kWidth - kMargin - 110 << "\" y=\"" << y - 9 << "\" width=\"10\" height=\"10\" fill=\""
      << planner_color(p) << "\"/>\n"
      << "<text x=\"" << kWidth - kMargin - 95 << "\" y=\"" << y << "\">" << to_string(p) << "</text>\n";
    y += 16;
  }
  return s.str();
}

std::string marginal_cost_svg(PriorKind prior, const std::vector<SummaryRow>& rows) {
  std::map<PlannerKind, std::vector<std::pair<double, double>>> series;
  double xlo = 0, xhi = 0, yhi = 0;
  bool first = true;
  for (const auto& r : rows) {
    if (r.prior != prior) continue;
    series[r.planner].push_back({r.per_station_cost, r.mean_marginal_cost});
    if (first) xlo = xhi = r.per_station_cost;
    xlo = std::min(xlo, r.per_station_cost);
    xhi = std::max(xhi, r.per_station_cost);
    yhi = std::max(yhi, r.mean_marginal_cost);
    first = false;
  }
  const Scale x{xlo, xhi, kMargin, kWidth - kMargin};
  const Scale y{0.0, yhi > 0 ? yhi : 1.0, kHeight - kMargin, kMargin};
  std::ostringstream s;
  s << svg_open("Marginal cost (" + to_string(prior) + ")")
    << axes(x, y, "per-station query cost", "mean marginal cost");
  std::vector<PlannerKind> planners;
  for (const auto& [planner, pts] : series) {
    planners.push_back(planner);
    s << "<polyline fill=\"none\" stroke=\"" << planner_color(planner) << "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i)
      s << (i ? " " : "") << format_number(x(pts[i].first)) << ',' << format_number(y(pts[i].second));
    s << "\"/>\n";
    for (const auto& [cx, cy] : pts)
      s << "<circle cx=\"" << format_number(x(cx)) << "\" cy=\"" << format_number(y(cy))
        << "\" r=\"3\" fill=\"" << planner_color(planner) << "\"/>\n";
  }
  s << legend(planners) << "</svg>\n";
  return s.str();
}

std::string histogram_svg(PriorKind prior, double cost, const std::map<HistogramKey, int>& hist) {
  std::map<PlannerKind, std::map<int, int>> counts;
  int tmax = 1, cmax = 1;
  for (const auto& [key, n] : hist) {
    const auto& [p, c, planner, t] = key;
    if (p != prior || c != cost) continue;
    counts[planner][t] = n;
    tmax = std::max(tmax, t);
    cmax = std::max(cmax, n);
  }
  const Scale x{0.5, tmax + 0.5, kMargin, kWidth - kMargin};
  const Scale y{0.0, static_cast<double>(cmax), kHeight - kMargin, kMargin};
  const double slot = (kWidth - 2 * kMargin) / tmax;
  const double bar = counts.empty() ? slot : slot / static_cast<double>(counts.size());
  std::ostringstream s;
  s << svg_open("Queries per timestep (" + to_string(prior) + ", per-station cost " + format_number(cost) + ")")
    << axes(x, y, "timestep", "queries");
  std::vector<PlannerKind> planners;
  int k = 0;
  for (const auto& [planner, ts] : counts) {
    planners.push_back(planner);
    for (const auto& [t, n] : ts) {
      const double left = x(t - 0.5) + k * bar;
      s << "<rect x=\"" << format_number(left) << "\" y=\"" << format_number(y(n)) << "\" width=\""
        << format_number(bar) << "\" height=\"" << format_number(y(0) - y(n)) << "\" fill=\""
        << planner_color(planner) << "\"/>\n";
    }
    ++k;
  }
  s << legend(planners) << "</svg>\n";
  return s.str();
}

}  // namespace

std::vector<std::string> emit_plots(const SweepResults& results, const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create plot directory " + dir + ": " + ec.message());
  std::vector<std::string> written;
  const auto summary = summarize(results);

  std::ostringstream mc;
  mc << "prior,planner,per_station_cost,mean_marginal_cost,stderr_marginal_cost\n";
  for (const auto& r : summary)
    mc << to_string(r.prior) << ',' << to_string(r.planner) << ',' << format_number(r.per_station_cost) << ','
       << format_number(r.mean_marginal_cost) << ',' << format_number(r.stderr_marginal_cost) << '\n';
  write_file(fs::path(dir) / "marginal_cost.csv", mc.str(), written);

  std::ostringstream qh;
  qh << "prior,planner,per_station_cost,timestep,query_count\n";
  for (const auto& [key, n] : results.histogram) {
    const auto& [prior, cost, planner, t] = key;
    qh << to_string(prior) << ',' << to_string(planner) << ',' << format_number(cost) << ',' << t << ',' << n
       << '\n';
  }
  write_file(fs::path(dir) / "query_histogram.csv", qh.str(), written);

  std::map<PriorKind, double> lowest_cost;
  for (const auto& r : summary) {
    auto it = lowest_cost.find(r.prior);
    if (it == lowest_cost.end() || r.per_station_cost < it->second) lowest_cost[r.prior] = r.per_station_cost;
  }
  for (const auto& [prior, cost] : lowest_cost) {
    write_file(fs::path(dir) / ("marginal_cost_" + to_string(prior) + ".svg"), marginal_cost_svg(prior, summary),
               written);
    write_file(fs::path(dir) / ("query_histogram_" + to_string(prior) + ".svg"),
               histogram_svg(prior, cost, results.histogram), written);
  }
  return written;
}

}  // namespace adhoc::bench
