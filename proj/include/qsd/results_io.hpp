#pragma once

#include <cstdint>
#include <string>
#include <vector>

// Flat CSV schemas for evaluation results and Monte Carlo batches, plus the
// reader used by the plot command.  Numbers are written with snprintf in the
// C locale; costs carry 17 significant digits.

namespace qsd {

struct ResultRow {
  std::string scheme;
  int n;
  double theta_deg;
  double q_plus;
  double nu;
  double cost;
};

struct BatchRow {
  std::string scheme;
  int n;
  double theta_deg;
  double q_plus;
  double nu;
  std::int64_t trials;
  std::int64_t errors;
  double error_rate;
  double std_err;
  std::uint64_t seed;
};

inline constexpr const char* kResultHeader = "scheme,N,theta_deg,q_plus,nu,cost";
inline constexpr const char* kBatchHeader =
    "scheme,N,theta_deg,q_plus,nu,trials,errors,error_rate,std_err,seed";

void write_results_csv(const std::vector<ResultRow>& rows,
                       const std::string& path);
void write_batch_csv(const std::vector<BatchRow>& rows,
                     const std::string& path);

/// Either kind of results file, distinguished by header.
struct ParsedResults {
  std::vector<ResultRow> theory;
  std::vector<BatchRow> batches;
};

/// Reads one results or batch CSV, appending into out.  Malformed rows
/// raise std::runtime_error with "path:line: ...".
void read_results_csv(const std::string& path, ParsedResults& out);

}  // namespace qsd
