#include "ascent.hpp"

#include <algorithm>
#include <cmath>

#include "tslab/rng.hpp"

namespace tslab::detail {

namespace {

class Climber {
 public:
  Climber(std::size_t n, const Objective& objective, const AscentOptions& options)
      : n_(n), objective_(objective), options_(options) {}

  double eval(const std::vector<double>& y) {
    ++evaluations_;
    const double v = objective_(y);
    return std::isfinite(v) ? v : -1.0;
  }

  double climb(std::vector<double>& y) {
    double value = eval(y);
    for (unsigned sweep = 0; sweep < options_.max_sweeps; ++sweep) {
      const double before = value;
      for (std::size_t k = 0; k < n_; ++k) value = coordinate_step(y, k, value);
      normalise(y);
      if (value <= before * (1.0 + 1e-10) + 1e-15) break;
    }
    return value;
  }

  unsigned evaluations() const { return evaluations_; }

 private:
  double coordinate_step(std::vector<double>& y, std::size_t k, double current) {
    const double lo = options_.lo;
    const double hi = 1.0;
    const double step = (hi - lo) / options_.grid;
    const double original = y[k];
    double best_t = original;
    double best_v = current;
    std::size_t best_i = options_.grid + 1;
    for (std::size_t i = 0; i <= options_.grid; ++i) {
      y[k] = lo + step * static_cast<double>(i);
      const double v = eval(y);
      if (v > best_v) {
        best_v = v;
        best_t = y[k];
        best_i = i;
      }
    }
    // Golden-section refinement around the best grid point, or around the
    // current value when no grid point improved on it.
    double a = std::max(lo, (best_i <= options_.grid ? best_t : original) - step);
    double b = std::min(hi, (best_i <= options_.grid ? best_t : original) + step);
    constexpr double r = 0.6180339887498949;
    double c = b - r * (b - a);
    double d = a + r * (b - a);
    y[k] = c;
    double fc = eval(y);
    y[k] = d;
    double fd = eval(y);
    for (unsigned it = 0; it < options_.golden_steps; ++it) {
      if (fc >= fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - r * (b - a);
        y[k] = c;
        fc = eval(y);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + r * (b - a);
        y[k] = d;
        fd = eval(y);
      }
    }
    if (fc > best_v) {
      best_v = fc;
      best_t = c;
    }
    if (fd > best_v) {
      best_v = fd;
      best_t = d;
    }
    y[k] = best_t;
    return best_v;
  }

  static void normalise(std::vector<double>& y) {
    double m = 0.0;
    for (double v : y) m = std::max(m, std::fabs(v));
    if (m > 0.0)
      for (double& v : y) v /= m;
  }

  std::size_t n_;
  const Objective& objective_;
  AscentOptions options_;
  unsigned evaluations_ = 0;
};

}  // namespace

AscentResult maximize(std::size_t n, const Objective& objective, const AscentOptions& options) {
  AscentResult best;
  best.value = -1.0;
  if (n == 0) return best;
  std::vector<std::vector<double>> starts;
  if (options.standard_starts) {
    starts.emplace_back(n, 1.0);
    for (std::size_t k = 0; k < n; ++k) {
      std::vector<double> e(n, 0.0);
      e[k] = 1.0;
      starts.push_back(std::move(e));
    }
  }
  Rng rng(options.seed);
  for (unsigned r = 0; r < options.random_starts; ++r) {
    std::vector<double> y(n);
    for (double& v : y) v = options.lo + (1.0 - options.lo) * rng.unit();
    starts.push_back(std::move(y));
  }
  Climber climber(n, objective, options);
  for (auto& y : starts) {
    const double v = climber.climb(y);
    if (v > best.value) {
      best.value = v;
      best.point = y;
    }
  }
  best.evaluations = climber.evaluations();
  return best;
}

}  // namespace tslab::detail
