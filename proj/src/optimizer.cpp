#include "qsd/optimizer.hpp"

#include <cmath>
#include <tuple>
#include <limits>

namespace qsd {

namespace {

constexpr int kScanPoints = 1801;
constexpr double kScanStep = kHalfPi / kScanPoints;
constexpr double kAngleTol = 1e-10;

// Linear interpolation on the uniform [0, 1] belief grid.
inline double lerp01(const Eigen::ArrayXd& row, double p) {
  const int last = static_cast<int>(row.size()) - 1;
  if (p <= 0.0) return row(0);
  if (p >= 1.0) return row(last);
  const double x = p * last;
  int lo = static_cast<int>(x);
  if (lo >= last) lo = last - 1;
  const double t = x - lo;
  return row(lo) + t * (row(lo + 1) - row(lo));
}

// Expected interpolated cost-to-go given the two Plus-click probabilities
// a_plus = Pr(Plus | +, phi), a_minus = Pr(Plus | -, phi).  Zero-probability
// outcomes carry zero weight.
inline double residual_from_probs(const Eigen::ArrayXd& next, double p,
                                  double a_plus, double a_minus) {
  double res = 0.0;
  const double marg_plus = a_plus * p + a_minus * (1.0 - p);
  if (marg_plus > 0.0) res += marg_plus * lerp01(next, a_plus * p / marg_plus);
  const double b_plus = 1.0 - a_plus;
  const double b_minus = 1.0 - a_minus;
  const double marg_minus = b_plus * p + b_minus * (1.0 - p);
  if (marg_minus > 0.0)
    res += marg_minus * lerp01(next, b_plus * p / marg_minus);
  return res;
}

inline double plus_prob(const DiscriminationProblem& prob, Sign s,
                        double phi) {
  const double st = s == Sign::Plus ? prob.theta : -prob.theta;
  return 0.5 * (1.0 + (1.0 - prob.nu) * std::cos(2.0 * (phi - st)));
}

inline double residual_at(const DiscriminationProblem& prob,
                          const Eigen::ArrayXd& next, double p, double phi) {
  return residual_from_probs(next, p, plus_prob(prob, Sign::Plus, phi),
                             plus_prob(prob, Sign::Minus, phi));
}

// Plus-click probabilities at the fixed scan angles, shared across every
// grid point and row of a table build.
struct ScanCache {
  Eigen::ArrayXd a_plus;
  Eigen::ArrayXd a_minus;

  explicit ScanCache(const DiscriminationProblem& prob)
      : a_plus(kScanPoints), a_minus(kScanPoints) {
    for (int j = 0; j < kScanPoints; ++j) {
      const double phi = j * kScanStep;
      a_plus(j) = plus_prob(prob, Sign::Plus, phi);
      a_minus(j) = plus_prob(prob, Sign::Minus, phi);
    }
  }
};

template <typename F>
std::pair<double, double> golden_section(double lo, double hi, F&& f) {
  static const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  static const double invphi2 = 1.0 - invphi;
  double a = lo, b = hi;
  double h = b - a;
  double c = a + invphi2 * h;
  double d = a + invphi * h;
  double fc = f(c), fd = f(d);
  while (h > kAngleTol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      h = b - a;
      c = a + invphi2 * h;
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      h = b - a;
      d = a + invphi * h;
      fd = f(d);
    }
  }
  return fc < fd ? std::make_pair(c, fc) : std::make_pair(d, fd);
}

std::pair<double, double> optimize_with_cache(
    const DiscriminationProblem& prob, const Eigen::ArrayXd& next, double p,
    const ScanCache& cache) {
  int best = 0;
  double best_val = std::numeric_limits<double>::infinity();
  for (int j = 0; j < kScanPoints; ++j) {
    const double v = residual_from_probs(next, p, cache.a_plus(j),
                                         cache.a_minus(j));
    if (v < best_val) {
      best_val = v;
      best = j;
    }
  }
  // The objective is pi/2-periodic, so a bracket reaching past either end of
  // [0, pi/2) is fine; the result is canonicalized below.
  auto objective = [&](double phi) { return residual_at(prob, next, p, phi); };
  auto [phi, value] = golden_section((best - 1) * kScanStep,
                                     (best + 1) * kScanStep, objective);
  // Ties (degenerate beliefs, symmetric wells) resolve to the smaller angle:
  // keep the scan's first minimizer unless refinement strictly improved it.
  // The margin keeps float dust on flat plateaus from dislodging the
  // tie-break; genuine refinement gains sit far above it.
  if (!(value < best_val - 1e-15)) {
    phi = best * kScanStep;
    value = best_val;
  }
  return {canonicalize_angle(phi).phi, value};
}

}  // namespace

ValueRow terminal_values(const Eigen::ArrayXd& grid) {
  ValueRow row;
  row.beliefs = grid;
  row.costs = grid.min(1.0 - grid);
  return row;
}

double expected_residual(const DiscriminationProblem& prob,
                         const ValueRow& next_values, double p, double phi) {
  return residual_at(prob, next_values.costs, p, phi);
}

std::pair<double, double> optimize_angle(const DiscriminationProblem& prob,
                                         const ValueRow& next_values,
                                         double p) {
  const ScanCache cache(prob);
  return optimize_with_cache(prob, next_values.costs, p, cache);
}

PolicyTable build_table(const DiscriminationProblem& prob, int horizon,
                        int grid_size) {
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  PolicyTable table;
  table.horizon = horizon;
  table.grid = uniform_grid(grid_size);
  const int g = table.grid_size();
  table.angles.resize(horizon, g);
  table.values.resize(horizon + 1, g);
  table.values.row(horizon) =
      table.grid.min(1.0 - table.grid).matrix().transpose();

  const ScanCache cache(prob);
  Eigen::ArrayXd next(g);
  for (int n = horizon; n >= 1; --n) {
    next = table.values.row(n).transpose().array();
    for (int i = 0; i < g; ++i) {
      const double p = table.grid(i);
      double phi, value;
      if (n == horizon) {
        // The final measurement is the single-copy Helstrom measurement;
        // no search is needed.
        phi = helstrom_angle(prob, p);
        value = residual_at(prob, next, p, phi);
      } else {
        std::tie(phi, value) = optimize_with_cache(prob, next, p, cache);
      }
      table.angles(n - 1, i) = phi;
      table.values(n - 1, i) = value;
    }
  }
  return table;
}

}  // namespace qsd
