#pragma once

#include "specneumann/cases.hpp"

#include <string>
#include <vector>

namespace specneumann {

/// CSV with header `n,N,max_error,cond,q,seconds`; errors in scientific
/// notation with three significant digits, conditions as integers once
/// they reach 100.
std::string format_csv(const std::vector<RunReport>& reports);
std::vector<RunReport> parse_csv(const std::string& text);

void write_csv_file(const std::string& path, const std::vector<RunReport>& reports);
std::vector<RunReport> read_csv_file(const std::string& path);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

LineFit least_squares_fit(const std::vector<double>& xs, const std::vector<double>& ys);

/// Convergence fits over a sweep: log10(error) against the degree, and
/// log(cond) against log(N). Needs at least 4 rows.
struct ConvergenceSummary {
  LineFit error_fit;  // log10(max_error) vs n
  LineFit cond_fit;   // log(cond) vs log(N); slope is the growth exponent
  int rows_used_error = 0;
  int rows_used_cond = 0;
};

ConvergenceSummary convergence_summary(const std::vector<RunReport>& reports);

}  // namespace specneumann
