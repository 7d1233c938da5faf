#include "sha/cobyla.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace sha {

void OptimizerConfig::validate() const {
  if (max_iterations < 1) throw std::invalid_argument("OptimizerConfig: max_iterations must be >= 1");
  if (!(initial_trust_radius > 0.0) || !(final_tolerance > 0.0)) {
    throw std::invalid_argument("OptimizerConfig: trust radii must be positive");
  }
  // 0 disables the progress rule.
  if (!(progress_threshold >= 0.0)) throw std::invalid_argument("OptimizerConfig: progress_threshold must be >= 0");
  if (final_tolerance > initial_trust_radius) {
    throw std::invalid_argument("OptimizerConfig: final_tolerance exceeds initial_trust_radius");
  }
  if (progress_window < 1) throw std::invalid_argument("OptimizerConfig: progress_window must be >= 1");
}

namespace {

using Vec = std::vector<double>;
using Mat = std::vector<Vec>;  // row-major

double dot(const Vec& a, const Vec& b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

// Simplex around the pivot x_opt. Column j of `sim` (stored as offsets[j]) is
// vertex j minus x_opt; `simi` holds the rows of the inverse matrix.
class Simplex {
 public:
  Simplex(const Objective& f, const OptimizerConfig& cfg, Vec x0)
      : f_(f), cfg_(cfg), n_(x0.size()), x_opt_(std::move(x0)) {}

  MinimizeResult run() {
    MinimizeResult out;
    if (n_ == 0) {
      // Nothing to move: record the single value the objective can take.
      out.fx = f_(std::span<const double>(x_opt_));
      out.losses = {out.fx};
      out.iterations = 1;
      out.reason = StopReason::no_parameters;
      return out;
    }
    rho_ = cfg_.initial_trust_radius;
    delta_ = rho_;
    if (!initialize()) return finish(StopReason::budget);

    // Simplex geometry factors and the radius update constants.
    const double alpha = 0.25, beta = 2.1, gamma = 0.5, delta_far = 1.1;
    bool last_step_good = false;

    for (;;) {
      const Vec g = gradient();

      std::size_t worst_far = 0, worst_flat = 0;
      double max_eta = -1.0, min_sig = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < n_; ++j) {
        const double eta = norm(offsets_[j]);
        const double sig = 1.0 / norm(simi_[j]);
        if (eta > max_eta) { max_eta = eta; worst_far = j; }
        if (sig < min_sig) { min_sig = sig; worst_flat = j; }
      }
      const bool acceptable = max_eta <= beta * delta_ && min_sig >= alpha * delta_;

      if (!acceptable && !last_step_good) {
        const std::size_t j = max_eta > beta * delta_ ? worst_far : worst_flat;
        Vec dx = simi_[j];
        const double scale = std::max(gamma * delta_, rho_) / norm(dx);
        for (auto& v : dx) v *= scale;
        if (dot(g, dx) > 0.0) for (auto& v : dx) v = -v;
        if (!evaluate_and_replace(dx, j)) return finish(StopReason::budget);
        if (stop_) return finish(StopReason::progress);
        continue;
      }
      last_step_good = false;

      const double gnorm = norm(g);
      if (gnorm == 0.0 || !std::isfinite(gnorm)) {
        if (!reduce_rho()) return finish(StopReason::trust_radius);
        continue;
      }
      Vec dx(n_);
      for (std::size_t i = 0; i < n_; ++i) dx[i] = -delta_ * g[i] / gnorm;
      const double predicted = delta_ * gnorm;
      const double f_before = f_opt_;

      // Vertex to drop: the one whose removal keeps the simplex volume
      // largest, favouring vertices far from the pivot.
      std::size_t drop = n_;
      double best_score = 0.0;
      for (std::size_t j = 0; j < n_; ++j) {
        const double sigma = std::abs(dot(simi_[j], dx));
        const double dist = norm(offsets_[j]);
        const double score = sigma * std::max(1.0, dist / (delta_far * delta_));
        if (score > best_score) { best_score = score; drop = j; }
      }
      if (drop == n_) {
        if (!reduce_rho()) return finish(StopReason::trust_radius);
        continue;
      }
      const double step = delta_;
      if (!evaluate_and_replace(dx, drop)) return finish(StopReason::budget);
      if (stop_) return finish(StopReason::progress);

      const double ratio = (f_before - f_opt_) / predicted;
      const bool at_floor = delta_ <= rho_;
      if (ratio <= 0.1) {
        delta_ = 0.5 * step;
      } else if (ratio <= 0.7) {
        delta_ = std::max(0.5 * delta_, step);
      } else {
        delta_ = std::max(0.5 * delta_, 2.0 * step);
      }
      if (delta_ <= 1.5 * rho_) delta_ = rho_;
      if (ratio > 0.1) {
        last_step_good = true;
      } else if (acceptable && at_floor) {
        if (!reduce_rho()) return finish(StopReason::trust_radius);
      }
    }
  }

 private:
  bool initialize() {
    f_opt_ = call(x_opt_);
    offsets_.assign(n_, Vec(n_, 0.0));
    simi_.assign(n_, Vec(n_, 0.0));
    fv_.assign(n_, 0.0);
    for (std::size_t j = 0; j < n_; ++j) {
      if (exhausted()) return false;
      offsets_[j][j] = rho_;
      simi_[j][j] = 1.0 / rho_;
      Vec x = x_opt_;
      x[j] += rho_;
      fv_[j] = call(x);
    }
    const auto best = static_cast<std::size_t>(std::min_element(fv_.begin(), fv_.end()) - fv_.begin());
    if (fv_[best] < f_opt_) make_pivot(best);
    initialized_ = true;
    return true;
  }

  bool exhausted() const { return losses_.size() >= cfg_.max_iterations; }

  double call(const Vec& x) {
    const double v = f_(std::span<const double>(x));
    losses_.push_back(v);
    best_so_far_.push_back(best_so_far_.empty() ? v : std::min(best_so_far_.back(), v));
    const std::size_t t = losses_.size();
    const std::size_t warmup = n_ + 1 + cfg_.progress_window;
    if (t >= warmup) {
      const double gain = best_so_far_[t - 1 - cfg_.progress_window] - best_so_far_[t - 1];
      if (gain < cfg_.progress_threshold) stop_ = true;
    }
    return v;
  }

  // Evaluates x_opt + dx, installs it as vertex j and re-pivots if it is the
  // new best. Returns false if the budget was already exhausted.
  bool evaluate_and_replace(const Vec& dx, std::size_t j) {
    if (exhausted()) return false;
    Vec x = x_opt_;
    for (std::size_t i = 0; i < n_; ++i) x[i] += dx[i];
    const double fx = call(x);

    const double sigma = dot(simi_[j], dx);
    if (std::abs(sigma) > 1e-14) {
      offsets_[j] = dx;
      fv_[j] = fx;
      for (auto& v : simi_[j]) v /= sigma;
      for (std::size_t i = 0; i < n_; ++i) {
        if (i == j) continue;
        const double c = dot(simi_[i], dx);
        for (std::size_t k = 0; k < n_; ++k) simi_[i][k] -= c * simi_[j][k];
      }
      if (fx < f_opt_) make_pivot(j);
    }
    return true;
  }

  // Vertex j becomes the pivot; the old pivot takes slot j.
  void make_pivot(std::size_t j) {
    const Vec shift = offsets_[j];
    for (std::size_t i = 0; i < n_; ++i) x_opt_[i] += shift[i];
    for (std::size_t k = 0; k < n_; ++k) {
      if (k == j) continue;
      for (std::size_t i = 0; i < n_; ++i) offsets_[k][i] -= shift[i];
    }
    for (auto& v : offsets_[j]) v = -v;
    Vec row(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t k = 0; k < n_; ++k) row[k] -= simi_[i][k];
    }
    simi_[j] = std::move(row);
    std::swap(fv_[j], f_opt_);
  }

  // Gradient of the interpolating linear model: solves sim^T g = fv - f_opt.
  Vec gradient() const {
    Vec g(n_, 0.0);
    for (std::size_t j = 0; j < n_; ++j) {
      const double df = fv_[j] - f_opt_;
      for (std::size_t i = 0; i < n_; ++i) g[i] += simi_[j][i] * df;
    }
    return g;
  }

  // Halves the resolution rho (never below rhoend) and resets the trust radius to it.
  bool reduce_rho() {
    if (rho_ <= cfg_.final_tolerance) return false;
    rho_ *= 0.5;
    if (rho_ <= 1.5 * cfg_.final_tolerance) rho_ = cfg_.final_tolerance;
    delta_ = rho_;
    return true;
  }

  MinimizeResult finish(StopReason reason) {
    MinimizeResult out;
    out.x = x_opt_;
    out.fx = f_opt_;
    if (!initialized_) {
      // Budget ran out while building the simplex: report the best point seen.
      for (std::size_t j = 0; j < fv_.size() && j < losses_.size() - 1; ++j) {
        if (fv_[j] < out.fx) {
          out.fx = fv_[j];
          out.x = x_opt_;
          out.x[j] += offsets_[j][j];
        }
      }
    }
    out.losses = std::move(losses_);
    out.iterations = out.losses.size();
    out.reason = stop_ ? StopReason::progress : reason;
    return out;
  }

  const Objective& f_;
  const OptimizerConfig& cfg_;
  std::size_t n_;
  Vec x_opt_;
  double f_opt_ = 0.0;
  double rho_ = 1.0;    // resolution, only decreases
  double delta_ = 1.0;  // trust radius, >= rho_
  Mat offsets_;
  Mat simi_;
  Vec fv_;
  Vec losses_;
  Vec best_so_far_;
  bool stop_ = false;
  bool initialized_ = false;
};

}  // namespace

MinimizeResult minimize(const Objective& f, std::vector<double> x0, const OptimizerConfig& cfg) {
  cfg.validate();
  return Simplex(f, cfg, std::move(x0)).run();
}

}  // namespace sha
