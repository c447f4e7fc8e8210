#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "qsd/optimizer.hpp"
#include "qsd/policy_table.hpp"
#include "qsd/results_io.hpp"
#include "qsd/svg_plot.hpp"

using namespace qsd;

namespace {

const double kTheta15 = 15.0 * kPi / 180.0;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string tmp_path(const std::string& name) {
  return std::string("qsd_test_") + name;
}

}  // namespace

TEST_CASE("uniform grid and interpolation") {
  const Eigen::ArrayXd grid = uniform_grid(5);
  CHECK(grid(0) == 0.0);
  CHECK(grid(4) == 1.0);
  CHECK(grid(2) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK_THROWS_AS(uniform_grid(2), std::invalid_argument);

  Eigen::ArrayXd row(5);
  row << 1.0, 3.0, 2.0, 5.0, 4.0;
  CHECK(interpolate(grid, row, 0.25) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(interpolate(grid, row, 0.375) == doctest::Approx(2.5).epsilon(1e-14));
  CHECK(interpolate(grid, row, -0.5) == 1.0);
  CHECK(interpolate(grid, row, 1.5) == 4.0);
}

TEST_CASE("policy table CSV round trip") {
  DiscriminationProblem prob(kTheta15, 0.5, 0.2);
  const PolicyTable table = build_table(prob, 3, 21);
  const std::string path = tmp_path("table.csv");
  const std::string path2 = tmp_path("table2.csv");
  write_table_csv(table, path);

  const PolicyTable loaded = read_table_csv(path);
  CHECK(loaded.horizon == 3);
  CHECK(loaded.grid_size() == 21);
  CHECK((loaded.angles - table.angles).cwiseAbs().maxCoeff() == 0.0);
  // rows 0..N-1 of the values travel through the file; the terminal row is
  // pinned by definition
  CHECK((loaded.values - table.values).cwiseAbs().maxCoeff() == 0.0);

  write_table_csv(loaded, path2);
  CHECK(slurp(path) == slurp(path2));

  std::remove(path.c_str());
  std::remove(path2.c_str());
}

TEST_CASE("policy table CSV without the residual column") {
  const std::string path = tmp_path("bare_table.csv");
  const std::string path2 = tmp_path("bare_table2.csv");
  PolicyTable bare;
  bare.horizon = 2;
  bare.has_values = false;
  bare.grid = uniform_grid(5);
  bare.angles.resize(2, 5);
  for (int n = 1; n <= 2; ++n)
    for (int i = 0; i < 5; ++i) bare.angles(n - 1, i) = 0.1 * n + 0.01 * i;
  bare.values = Eigen::MatrixXd::Zero(3, 5);
  write_table_csv(bare, path);
  CHECK(slurp(path).find("n,p,phi_rad\n") == 0);

  const PolicyTable loaded = read_table_csv(path);
  CHECK(loaded.horizon == 2);
  CHECK_FALSE(loaded.has_values);
  CHECK(interpolate_angle(loaded, 2, 0.5) ==
        doctest::Approx(0.22).epsilon(1e-12));
  CHECK_THROWS_AS(loaded.cost_at(0.5), std::logic_error);
  write_table_csv(loaded, path2);
  CHECK(slurp(path) == slurp(path2));
  std::remove(path.c_str());
  std::remove(path2.c_str());
}

TEST_CASE("policy table CSV rejects malformed input") {
  const std::string path = tmp_path("bad_table.csv");
  SUBCASE("bad header") {
    std::ofstream(path) << "a,b,c\n1,0,0.5,0\n";
    CHECK_THROWS_WITH_AS(read_table_csv(path),
                         doctest::Contains(":1:"), std::runtime_error);
  }
  SUBCASE("malformed row") {
    std::ofstream(path) << "n,p,phi_rad,residual_cost\n1,0,oops,0\n";
    CHECK_THROWS_WITH_AS(read_table_csv(path),
                         doctest::Contains(":2:"), std::runtime_error);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(read_table_csv("does_not_exist.csv"), std::runtime_error);
  }
  std::remove(path.c_str());
}

TEST_CASE("results CSV") {
  const std::string path = tmp_path("results.csv");
  std::vector<ResultRow> rows{{"unbiased", 1, 15.0, 0.5, 0.1, 0.275},
                              {"collective", 2, 15.0, 0.5, 0.1, 0.2}};
  write_results_csv(rows, path);
  ParsedResults parsed;
  read_results_csv(path, parsed);
  REQUIRE(parsed.theory.size() == 2);
  CHECK(parsed.batches.empty());
  CHECK(parsed.theory[0].scheme == "unbiased");
  CHECK(parsed.theory[0].cost == 0.275);
  CHECK(parsed.theory[1].n == 2);
  std::remove(path.c_str());
}

TEST_CASE("batch CSV") {
  const std::string path = tmp_path("batch.csv");
  std::vector<BatchRow> rows{
      {"unbiased", 10, 15.0, 0.5, 0.1, 2000, 150, 0.075, 0.0059, 42}};
  write_batch_csv(rows, path);
  ParsedResults parsed;
  read_results_csv(path, parsed);
  REQUIRE(parsed.batches.size() == 1);
  CHECK(parsed.theory.empty());
  CHECK(parsed.batches[0].trials == 2000);
  CHECK(parsed.batches[0].seed == 42);
  CHECK(parsed.batches[0].std_err == 0.0059);
  std::remove(path.c_str());
}

TEST_CASE("results CSV parse errors carry the line number") {
  const std::string path = tmp_path("bad_results.csv");
  std::ofstream(path) << kResultHeader << "\nunbiased,1,15,0.5,0.1\n";
  ParsedResults parsed;
  CHECK_THROWS_WITH_AS(read_results_csv(path, parsed),
                       doctest::Contains(":2:"), std::runtime_error);
  std::remove(path.c_str());
}

TEST_CASE("SVG plot") {
  const std::string path = tmp_path("plot.svg");
  SUBCASE("empty input writes nothing") {
    PlotSpec spec;
    spec.x_label = "copies measured";
    CHECK_THROWS_AS(write_svg_plot(spec, path), std::runtime_error);
    CHECK_FALSE(std::ifstream(path).good());
  }
  SUBCASE("lines and error-bar markers render") {
    PlotSpec spec;
    spec.x_label = "copies measured";
    PlotSeries theory{"unbiased", true, {{1, 0.25}, {2, 0.25}, {3, 0.156}}};
    PlotSeries mc{"unbiased (MC)", false, {{1, 0.26, 0.01}, {3, 0.15, 0.008}}};
    spec.series = {theory, mc};
    write_svg_plot(spec, path);
    const std::string svg = slurp(path);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("<polyline") != std::string::npos);
    CHECK(svg.find("<circle") != std::string::npos);
    CHECK(svg.find("unbiased (MC)") != std::string::npos);
    std::remove(path.c_str());
  }
}
