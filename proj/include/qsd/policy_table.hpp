#pragma once

#include <Eigen/Dense>
#include <string>

#include "qsd/discrimination.hpp"

// The globally-optimal scheme is represented by a table of measurement
// angles: row n (1-based, the copy about to be measured) by belief grid
// point.  Expected residual costs R_n (n = 0..N, row n being the expected
// final error after n measurements under optimal continuation) are retained
// alongside, which makes re-evaluating the scheme's cost at any prior a
// single interpolation.

namespace qsd {

struct PolicyTable {
  int horizon = 0;        // N, number of copies
  Eigen::ArrayXd grid;    // G uniform belief samples, grid(0)=0, grid(G-1)=1
  Eigen::MatrixXd angles;  // N x G, angles(n-1, i) = phi_n at grid(i)
  Eigen::MatrixXd values;  // (N+1) x G, values(n, i) = R_n at grid(i)
  bool has_values = true;  // false for tables imported without the column

  int grid_size() const { return static_cast<int>(grid.size()); }
  double spacing() const { return 1.0 / (grid.size() - 1); }

  /// Expected final error of the scheme started at the given prior,
  /// i.e. R_0 linearly interpolated.  Requires value rows.
  double cost_at(double prior) const;
};

/// Uniform belief grid over [0, 1] with G >= 3 samples.
Eigen::ArrayXd uniform_grid(int size);

/// Linear interpolation of a grid-sampled function at p in [0, 1].
/// Exact on grid points.
double interpolate(const Eigen::ArrayXd& grid, const Eigen::ArrayXd& row,
                   double p);

/// Measurement angle prescribed for copy n at belief p (row n interpolated
/// between the two bracketing grid angles).
double interpolate_angle(const PolicyTable& table, int n, double p);

/// Restriction of a horizon-N table to its final m rows, relabeled as a
/// horizon-m table.  The backward recursion depends only on the number of
/// copies remaining, so this equals build_table(prob, m, G) row for row.
PolicyTable sub_horizon(const PolicyTable& table, int m);

/// CSV export, header "n,p,phi_rad,residual_cost", rows in (n ascending,
/// p ascending) order, 17 significant digits.  residual_cost for row (n, p)
/// is R_{n-1}(p), the cost-to-go at belief p just before measurement n; the
/// column is omitted for tables without value rows.
void write_table_csv(const PolicyTable& table, const std::string& path);

/// Inverse of write_table_csv; re-exporting the imported table reproduces
/// the file byte for byte.  Throws std::runtime_error with the offending
/// path/line on malformed input.
PolicyTable read_table_csv(const std::string& path);

}  // namespace qsd
