// Brute-force resolvent of F = sum_{i<j} |y_i - y_j| on (R^dim)^n:
//
//   J_lambda x = argmin_y  lambda * F(y) + 1/2 |y - x|^2.
//
// The minimizer fuses some coordinates into clusters. For every partition of
// {0..n-1} the objective restricted to "coordinates fused along the partition"
// is smooth in the cluster centers as long as the centers stay apart, so it is
// solved with damped Newton. Each restricted minimizer is feasible for the full
// problem, and the true minimizer is the restricted minimizer of its own fusion
// pattern, so the lowest objective over all partitions is the answer.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "hretract/flow.hpp"
#include "hretract/geometry.hpp"

namespace hretract {

namespace {

using Vec = std::vector<double>;

struct Problem {
  std::size_t n;
  std::size_t dim;
  double lambda;
  Vec x;  // n * dim, row-major
};

double full_objective(const Problem& pb, const Vec& y) {
  double f = 0.0;
  for (std::size_t i = 0; i < pb.n; ++i) {
    for (std::size_t j = i + 1; j < pb.n; ++j) {
      double s = 0.0;
      for (std::size_t c = 0; c < pb.dim; ++c) s += std::pow(y[i * pb.dim + c] - y[j * pb.dim + c], 2);
      f += std::sqrt(s);
    }
  }
  double q = 0.0;
  for (std::size_t k = 0; k < y.size(); ++k) q += std::pow(y[k] - pb.x[k], 2);
  return pb.lambda * f + 0.5 * q;
}

// Solves A z = b in place (A is m x m, symmetric positive definite here).
bool solve_dense(Vec a, Vec b, std::size_t m, Vec& z) {
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < m; ++r) {
      if (std::abs(a[r * m + col]) > std::abs(a[piv * m + col])) piv = r;
    }
    if (std::abs(a[piv * m + col]) < 1e-300) return false;
    if (piv != col) {
      for (std::size_t c = 0; c < m; ++c) std::swap(a[col * m + c], a[piv * m + c]);
      std::swap(b[col], b[piv]);
    }
    for (std::size_t r = col + 1; r < m; ++r) {
      const double f = a[r * m + col] / a[col * m + col];
      for (std::size_t c = col; c < m; ++c) a[r * m + c] -= f * a[col * m + c];
      b[r] -= f * b[col];
    }
  }
  z.assign(m, 0.0);
  for (std::size_t r = m; r-- > 0;) {
    double s = b[r];
    for (std::size_t c = r + 1; c < m; ++c) s -= a[r * m + c] * z[c];
    z[r] = s / a[r * m + r];
  }
  return true;
}

class ReducedProblem {
 public:
  ReducedProblem(const Problem& pb, const std::vector<std::size_t>& label, std::size_t clusters)
      : pb_(pb), m_(clusters), weight_(clusters, 0.0), mean_(clusters * pb.dim, 0.0) {
    for (std::size_t i = 0; i < pb.n; ++i) {
      weight_[label[i]] += 1.0;
      for (std::size_t c = 0; c < pb.dim; ++c) mean_[label[i] * pb.dim + c] += pb.x[i * pb.dim + c];
    }
    for (std::size_t a = 0; a < m_; ++a) {
      for (std::size_t c = 0; c < pb.dim; ++c) mean_[a * pb.dim + c] /= weight_[a];
    }
  }

  const Vec& means() const { return mean_; }

  double value(const Vec& centers) const {
    const std::size_t d = pb_.dim;
    double v = 0.0;
    for (std::size_t a = 0; a < m_; ++a) {
      double q = 0.0;
      for (std::size_t c = 0; c < d; ++c) q += std::pow(centers[a * d + c] - mean_[a * d + c], 2);
      v += 0.5 * weight_[a] * q;
      for (std::size_t b = a + 1; b < m_; ++b) v += pb_.lambda * weight_[a] * weight_[b] * gap(centers, a, b);
    }
    return v;
  }

  double gap(const Vec& centers, std::size_t a, std::size_t b) const {
    double s = 0.0;
    for (std::size_t c = 0; c < pb_.dim; ++c) s += std::pow(centers[a * pb_.dim + c] - centers[b * pb_.dim + c], 2);
    return std::sqrt(s);
  }

  double min_gap(const Vec& centers) const {
    double g = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < m_; ++a) {
      for (std::size_t b = a + 1; b < m_; ++b) g = std::min(g, gap(centers, a, b));
    }
    return g;
  }

  void gradient_hessian(const Vec& centers, Vec& g, Vec& h) const {
    const std::size_t d = pb_.dim;
    const std::size_t size = m_ * d;
    g.assign(size, 0.0);
    h.assign(size * size, 0.0);
    for (std::size_t a = 0; a < m_; ++a) {
      for (std::size_t c = 0; c < d; ++c) {
        g[a * d + c] += weight_[a] * (centers[a * d + c] - mean_[a * d + c]);
        h[(a * d + c) * size + a * d + c] += weight_[a];
      }
    }
    for (std::size_t a = 0; a < m_; ++a) {
      for (std::size_t b = a + 1; b < m_; ++b) {
        const double r = gap(centers, a, b);
        const double w = pb_.lambda * weight_[a] * weight_[b];
        Vec u(d);
        for (std::size_t c = 0; c < d; ++c) u[c] = (centers[a * d + c] - centers[b * d + c]) / r;
        for (std::size_t c = 0; c < d; ++c) {
          g[a * d + c] += w * u[c];
          g[b * d + c] -= w * u[c];
          for (std::size_t e = 0; e < d; ++e) {
            const double p = w * ((c == e ? 1.0 : 0.0) - u[c] * u[e]) / r;
            h[(a * d + c) * size + a * d + e] += p;
            h[(b * d + c) * size + b * d + e] += p;
            h[(a * d + c) * size + b * d + e] -= p;
            h[(b * d + c) * size + a * d + e] -= p;
          }
        }
      }
    }
  }

  std::size_t clusters() const { return m_; }

 private:
  const Problem& pb_;
  std::size_t m_;
  Vec weight_;
  Vec mean_;
};

// Newton on a reduced problem. Empty when the centers collide (the minimizer
// belongs to a coarser partition, which is enumerated separately) or Newton
// fails to converge.
std::optional<Vec> solve_reduced(const ReducedProblem& rp, double scale) {
  Vec centers = rp.means();
  const std::size_t m = rp.clusters();
  const double collide = 1e-10 * scale;
  if (m > 1 && rp.min_gap(centers) <= collide) return std::nullopt;
  if (m == 1) return centers;

  Vec g, h, step;
  double current = rp.value(centers);
  double gnorm = std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < 100; ++iter) {
    rp.gradient_hessian(centers, g, h);
    gnorm = 0.0;
    for (double v : g) gnorm += v * v;
    gnorm = std::sqrt(gnorm);
    if (gnorm <= 1e-12 * scale) return centers;

    for (double& v : g) v = -v;
    if (!solve_dense(h, g, centers.size(), step)) break;

    // Objective differences near the minimizer drop below rounding, so
    // steps within a few ulps of no change are still taken.
    const double slack = 1e-14 * std::max(1.0, std::abs(current));
    double alpha = 1.0;
    Vec trial(centers.size());
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      for (std::size_t k = 0; k < centers.size(); ++k) trial[k] = centers[k] + alpha * step[k];
      if (rp.min_gap(trial) > collide) {
        const double v = rp.value(trial);
        if (v <= current + slack) {
          accepted = true;
          current = std::min(v, current);
          break;
        }
      }
      alpha *= 0.5;
    }
    if (!accepted) break;
    centers = trial;
  }
  // Stationary to rounding is good enough; anything else is an iterate
  // heading into a collision of centers.
  if (gnorm <= 1e-9 * scale) return centers;
  return std::nullopt;
}

// Restricted growth strings enumerate set partitions of {0..n-1}.
bool next_partition(std::vector<std::size_t>& label, std::vector<std::size_t>& max_prefix) {
  const std::size_t n = label.size();
  for (std::size_t i = n; i-- > 1;) {
    if (label[i] <= max_prefix[i - 1]) {
      ++label[i];
      for (std::size_t k = i + 1; k < n; ++k) label[k] = 0;
      for (std::size_t k = i; k < n; ++k) max_prefix[k] = std::max(max_prefix[k - 1], label[k]);
      return true;
    }
  }
  return false;
}

}  // namespace

Tuple oracle_full_resolvent(const Tuple& x, double lambda) {
  if (x.space().kind() != SpaceKind::euclidean) {
    throw ValidationError("oracle_full_resolvent: euclidean backend only");
  }
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw ValidationError("oracle_full_resolvent: lambda must be a positive finite number");
  }
  const std::size_t n = x.size();
  const auto dim = static_cast<std::size_t>(x.space().dim());
  if (n * dim > kOracleMaxScalars) {
    throw ValidationError("oracle_full_resolvent: n * dim = " + std::to_string(n * dim) + " exceeds " +
                          std::to_string(kOracleMaxScalars));
  }
  if (n < 2) return x;

  Problem pb{n, dim, lambda, Vec(n * dim)};
  double scale = lambda;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < dim; ++c) {
      pb.x[i * dim + c] = x[i][c];
      scale = std::max(scale, std::abs(x[i][c]));
    }
  }

  std::vector<std::size_t> label(n, 0), max_prefix(n, 0);
  Vec best;
  double best_value = std::numeric_limits<double>::infinity();
  do {
    const std::size_t clusters = *std::max_element(label.begin(), label.end()) + 1;
    ReducedProblem rp(pb, label, clusters);
    auto centers = solve_reduced(rp, scale);
    if (!centers) continue;
    Vec y(n * dim);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t c = 0; c < dim; ++c) y[i * dim + c] = (*centers)[label[i] * dim + c];
    }
    const double v = full_objective(pb, y);
    if (v < best_value) {
      best_value = v;
      best = std::move(y);
    }
  } while (next_partition(label, max_prefix));

  std::vector<Point> coords;
  for (std::size_t i = 0; i < n; ++i) {
    coords.push_back(Point::raw_vector(SpaceKind::euclidean, Vec(best.begin() + i * dim, best.begin() + (i + 1) * dim)));
  }
  return Tuple(x.space(), std::move(coords));
}

}  // namespace hretract
