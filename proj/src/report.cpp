#include "specneumann/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace specneumann {

namespace {

std::string format_error(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2e", v);
  return buf;
}

std::string format_cond(double v) {
  char buf[32];
  if (v >= 100.0)
    std::snprintf(buf, sizeof(buf), "%.0f", v);
  else
    std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

}  // namespace

std::string format_csv(const std::vector<RunReport>& reports) {
  std::ostringstream out;
  out << "n,N,max_error,cond,q,seconds\n";
  for (const RunReport& r : reports) {
    char seconds[32];
    std::snprintf(seconds, sizeof(seconds), "%.3f", r.seconds);
    out << r.degree << ',' << r.basis_size << ',' << format_error(r.max_error) << ','
        << format_cond(r.condition) << ',' << r.quadrature_order << ',' << seconds << '\n';
  }
  return out.str();
}

std::vector<RunReport> parse_csv(const std::string& text) {
  std::vector<RunReport> reports;
  std::stringstream stream(text);
  std::string line;
  bool first = true;
  while (std::getline(stream, line)) {
    if (line.empty()) continue;
    if (first) {
      first = false;
      if (line.rfind("n,", 0) == 0) continue;  // header
    }
    RunReport r;
    char err[64], cond[64];
    if (std::sscanf(line.c_str(), "%d,%d,%63[^,],%63[^,],%d,%lf", &r.degree, &r.basis_size,
                    err, cond, &r.quadrature_order, &r.seconds) < 5)
      throw std::invalid_argument("csv: malformed row '" + line + "'");
    r.max_error = std::strtod(err, nullptr);
    r.condition = std::strtod(cond, nullptr);
    reports.push_back(r);
  }
  return reports;
}

void write_csv_file(const std::string& path, const std::vector<RunReport>& reports) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << format_csv(reports);
}

std::vector<RunReport> read_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_csv(buffer.str());
}

LineFit least_squares_fit(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw std::invalid_argument("least_squares_fit: need matching lists of >= 2 points");
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx, dy = ys[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw std::invalid_argument("least_squares_fit: degenerate abscissae");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return fit;
}

ConvergenceSummary convergence_summary(const std::vector<RunReport>& reports) {
  if (reports.size() < 4)
    throw std::invalid_argument("convergence_summary: need at least 4 rows");
  ConvergenceSummary summary;

  std::vector<double> ns, log_err, log_n, log_cond;
  for (const RunReport& r : reports) {
    if (std::isfinite(r.max_error) && r.max_error > 0.0) {
      ns.push_back(r.degree);
      log_err.push_back(std::log10(r.max_error));
    }
    if (r.condition > 0.0 && r.basis_size > 0) {
      log_n.push_back(std::log(static_cast<double>(r.basis_size)));
      log_cond.push_back(std::log(r.condition));
    }
  }
  if (ns.size() < 2 || log_n.size() < 2)
    throw std::invalid_argument("convergence_summary: not enough usable rows");

  // A constant column has slope 0 by convention rather than a throw.
  const auto all_equal = [](const std::vector<double>& v) {
    for (double x : v)
      if (x != v.front()) return false;
    return true;
  };
  if (all_equal(log_err)) {
    summary.error_fit = LineFit{0.0, log_err.front(), 1.0};
  } else {
    summary.error_fit = least_squares_fit(ns, log_err);
  }
  if (all_equal(log_cond)) {
    summary.cond_fit = LineFit{0.0, log_cond.front(), 1.0};
  } else {
    summary.cond_fit = least_squares_fit(log_n, log_cond);
  }
  summary.rows_used_error = static_cast<int>(ns.size());
  summary.rows_used_cond = static_cast<int>(log_n.size());
  return summary;
}

}  // namespace specneumann
