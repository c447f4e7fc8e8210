#include "qsd/results_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qsd {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  return fields;
}

double parse_double(const std::string& s, bool& ok) {
  try {
    size_t pos = 0;
    const double v = std::stod(s, &pos);
    ok = pos == s.size();
    return v;
  } catch (const std::exception&) {
    ok = false;
    return 0.0;
  }
}

long long parse_int(const std::string& s, bool& ok) {
  try {
    size_t pos = 0;
    const long long v = std::stoll(s, &pos);
    ok = pos == s.size();
    return v;
  } catch (const std::exception&) {
    ok = false;
    return 0;
  }
}

}  // namespace

void write_results_csv(const std::vector<ResultRow>& rows,
                       const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << kResultHeader << '\n';
  for (const ResultRow& r : rows) {
    out << r.scheme << ',' << r.n << ',' << fmt(r.theta_deg) << ','
        << fmt(r.q_plus) << ',' << fmt(r.nu) << ',' << fmt17(r.cost) << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

void write_batch_csv(const std::vector<BatchRow>& rows,
                     const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << kBatchHeader << '\n';
  for (const BatchRow& r : rows) {
    out << r.scheme << ',' << r.n << ',' << fmt(r.theta_deg) << ','
        << fmt(r.q_plus) << ',' << fmt(r.nu) << ',' << r.trials << ','
        << r.errors << ',' << fmt17(r.error_rate) << ',' << fmt17(r.std_err)
        << ',' << r.seed << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

void read_results_csv(const std::string& path, ParsedResults& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);

  auto fail = [&](int line, const std::string& what) {
    throw std::runtime_error(path + ":" + std::to_string(line) + ": " + what);
  };

  std::string line;
  int line_no = 1;
  if (!std::getline(in, line)) fail(1, "empty file");
  const bool is_batch = line == kBatchHeader;
  if (!is_batch && line != kResultHeader) fail(1, "unrecognized header");

  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const std::vector<std::string> f = split_csv(line);
    bool ok = true;
    if (is_batch) {
      if (f.size() != 10) fail(line_no, "expected 10 fields");
      BatchRow r;
      r.scheme = f[0];
      bool o1, o2, o3, o4, o5, o6, o7, o8, o9;
      r.n = static_cast<int>(parse_int(f[1], o1));
      r.theta_deg = parse_double(f[2], o2);
      r.q_plus = parse_double(f[3], o3);
      r.nu = parse_double(f[4], o4);
      r.trials = parse_int(f[5], o5);
      r.errors = parse_int(f[6], o6);
      r.error_rate = parse_double(f[7], o7);
      r.std_err = parse_double(f[8], o8);
      r.seed = static_cast<std::uint64_t>(parse_int(f[9], o9));
      ok = o1 && o2 && o3 && o4 && o5 && o6 && o7 && o8 && o9;
      if (!ok) fail(line_no, "malformed batch row");
      out.batches.push_back(r);
    } else {
      if (f.size() != 6) fail(line_no, "expected 6 fields");
      ResultRow r;
      r.scheme = f[0];
      bool o1, o2, o3, o4, o5;
      r.n = static_cast<int>(parse_int(f[1], o1));
      r.theta_deg = parse_double(f[2], o2);
      r.q_plus = parse_double(f[3], o3);
      r.nu = parse_double(f[4], o4);
      r.cost = parse_double(f[5], o5);
      ok = o1 && o2 && o3 && o4 && o5;
      if (!ok) fail(line_no, "malformed result row");
      out.theory.push_back(r);
    }
  }
}

}  // namespace qsd
