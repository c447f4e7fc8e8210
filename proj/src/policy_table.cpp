#include "qsd/policy_table.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace qsd {

Eigen::ArrayXd uniform_grid(int size) {
  if (size < 3) throw std::invalid_argument("grid size must be >= 3");
  return Eigen::ArrayXd::LinSpaced(size, 0.0, 1.0);
}

namespace {

// Shared lerp over one matrix row; avoids materializing the row.
double interpolate_row(const Eigen::MatrixXd& m, int row, double p) {
  const int last = static_cast<int>(m.cols()) - 1;
  if (p <= 0.0) return m(row, 0);
  if (p >= 1.0) return m(row, last);
  const double x = p * last;
  int lo = static_cast<int>(x);
  if (lo >= last) lo = last - 1;
  const double t = x - lo;
  return m(row, lo) + t * (m(row, lo + 1) - m(row, lo));
}

}  // namespace

double interpolate(const Eigen::ArrayXd& grid, const Eigen::ArrayXd& row,
                   double p) {
  const int last = static_cast<int>(grid.size()) - 1;
  if (p <= 0.0) return row(0);
  if (p >= 1.0) return row(last);
  const double x = p * last;
  int lo = static_cast<int>(x);
  if (lo >= last) lo = last - 1;
  const double t = x - lo;
  return row(lo) + t * (row(lo + 1) - row(lo));
}

double PolicyTable::cost_at(double prior) const {
  if (!has_values)
    throw std::logic_error("policy table carries no value rows");
  return interpolate_row(values, 0, prior);
}

double interpolate_angle(const PolicyTable& table, int n, double p) {
  if (n < 1 || n > table.horizon)
    throw std::out_of_range("copy index outside table horizon");
  return interpolate_row(table.angles, n - 1, p);
}

PolicyTable sub_horizon(const PolicyTable& table, int m) {
  if (m < 1 || m > table.horizon)
    throw std::out_of_range("sub-horizon outside table horizon");
  PolicyTable out;
  out.horizon = m;
  out.grid = table.grid;
  out.angles = table.angles.bottomRows(m);
  out.values = table.values.bottomRows(m + 1);
  return out;
}

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void write_table_csv(const PolicyTable& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << (table.has_values ? "n,p,phi_rad,residual_cost" : "n,p,phi_rad")
      << '\n';
  const int g = table.grid_size();
  for (int n = 1; n <= table.horizon; ++n) {
    for (int i = 0; i < g; ++i) {
      out << n << ',' << format_double(table.grid(i)) << ','
          << format_double(table.angles(n - 1, i));
      if (table.has_values) out << ',' << format_double(table.values(n - 1, i));
      out << '\n';
    }
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

PolicyTable read_table_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);

  auto fail = [&](int line, const std::string& what) {
    throw std::runtime_error(path + ":" + std::to_string(line) + ": " + what);
  };

  std::string line;
  int line_no = 1;
  if (!std::getline(in, line)) fail(1, "empty file");
  if (line != "n,p,phi_rad,residual_cost" && line != "n,p,phi_rad")
    fail(1, "unexpected header");
  const bool has_values = line == "n,p,phi_rad,residual_cost";

  struct Row {
    int n;
    double p, phi, value;
  };
  std::vector<Row> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    Row r{0, 0.0, 0.0, 0.0};
    std::istringstream ss(line);
    char sep1 = 0, sep2 = 0, sep3 = 0;
    ss >> r.n >> sep1 >> r.p >> sep2 >> r.phi;
    if (has_values) ss >> sep3 >> r.value;
    if (!ss || sep1 != ',' || sep2 != ',' || (has_values && sep3 != ','))
      fail(line_no, "malformed row");
    rows.push_back(r);
  }
  if (rows.empty()) fail(line_no, "no data rows");

  int horizon = 0;
  for (const Row& r : rows) horizon = std::max(horizon, r.n);
  if (horizon < 1) fail(line_no, "no valid copy indices");
  if (rows.size() % horizon != 0) fail(line_no, "ragged table");
  const int g = static_cast<int>(rows.size()) / horizon;
  if (g < 3) fail(line_no, "grid too small");

  PolicyTable table;
  table.horizon = horizon;
  table.has_values = has_values;
  table.grid = uniform_grid(g);
  table.angles.resize(horizon, g);
  table.values = Eigen::MatrixXd::Zero(horizon + 1, g);
  for (int n = 1; n <= horizon; ++n) {
    for (int i = 0; i < g; ++i) {
      const Row& r = rows[static_cast<size_t>(n - 1) * g + i];
      const int row_line = 1 + (n - 1) * g + i + 1;
      if (r.n != n) fail(row_line, "rows out of order");
      if (std::abs(r.p - table.grid(i)) > 1e-12)
        fail(row_line, "non-uniform belief grid");
      table.grid(i) = r.p;  // preserve the file's exact doubles
      table.angles(n - 1, i) = r.phi;
      table.values(n - 1, i) = r.value;
    }
  }
  // Terminal row is not stored in the file; it is pinned by definition.
  for (int i = 0; i < g; ++i)
    table.values(horizon, i) = std::min(table.grid(i), 1.0 - table.grid(i));
  return table;
}

}  // namespace qsd
