/**
 * Copyright 2026 The mpemb Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "mpemb/logreg.h"

#include <cmath>
#include <spdlog/spdlog.h>

#include "mpemb/error.h"

namespace mpemb {

void LogRegConfig::Validate() const {
  if (l2 < 0.0) throw ConfigError("l2 strength must be >= 0");
  if (!(tolerance > 0.0)) throw ConfigError("tolerance must be > 0");
  if (max_iterations < 1) throw ConfigError("max iterations must be >= 1");
}

double LogRegModel::Decision(std::span<const double> x) const {
  double s = bias;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    s += weights[k] * (x[k] - mean[k]) / scale[k];
  }
  return s;
}

namespace {

double Softplus(double x) {
  return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

double Sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

// Parameters are laid out as [w_1 .. w_d, b].
class Objective {
 public:
  Objective(const std::vector<std::vector<double>>& z, std::span<const int> y,
            double l2)
      : z_(z), y_(y), l2_(l2), d_(z.empty() ? 0 : z[0].size()) {}

  double Value(const std::vector<double>& p) const {
    double loss = 0.0;
    for (std::size_t i = 0; i < z_.size(); ++i) {
      const double s = Margin(p, i);
      loss += y_[i] ? Softplus(-s) : Softplus(s);
    }
    loss /= static_cast<double>(z_.size());
    double reg = 0.0;
    for (std::size_t k = 0; k < d_; ++k) reg += p[k] * p[k];
    return loss + 0.5 * l2_ * reg;
  }

  double Gradient(const std::vector<double>& p, std::vector<double>& g) const {
    g.assign(d_ + 1, 0.0);
    double loss = 0.0;
    for (std::size_t i = 0; i < z_.size(); ++i) {
      const double s = Margin(p, i);
      loss += y_[i] ? Softplus(-s) : Softplus(s);
      const double r = Sigmoid(s) - y_[i];
      for (std::size_t k = 0; k < d_; ++k) g[k] += r * z_[i][k];
      g[d_] += r;
    }
    const double n = static_cast<double>(z_.size());
    double reg = 0.0;
    for (std::size_t k = 0; k <= d_; ++k) g[k] /= n;
    for (std::size_t k = 0; k < d_; ++k) {
      g[k] += l2_ * p[k];
      reg += p[k] * p[k];
    }
    return loss / n + 0.5 * l2_ * reg;
  }

  std::size_t size() const { return d_ + 1; }

 private:
  double Margin(const std::vector<double>& p, std::size_t i) const {
    double s = p[d_];
    for (std::size_t k = 0; k < d_; ++k) s += p[k] * z_[i][k];
    return s;
  }

  const std::vector<std::vector<double>>& z_;
  std::span<const int> y_;
  double l2_;
  std::size_t d_;
};

double Norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

LogRegModel TrainLogReg(const std::vector<std::vector<double>>& x,
                        std::span<const int> y, const LogRegConfig& cfg) {
  cfg.Validate();
  if (x.size() != y.size()) {
    throw ExperimentError("feature and label counts differ");
  }
  std::size_t positives = 0;
  for (int label : y) {
    if (label != 0 && label != 1) throw ExperimentError("labels must be 0 or 1");
    positives += static_cast<std::size_t>(label);
  }
  if (positives < 2 || x.size() - positives < 2) {
    throw ExperimentError(
        "logistic regression needs at least two examples of each class");
  }
  const std::size_t d = x[0].size();
  for (const auto& row : x) {
    if (row.size() != d) throw DimensionMismatchError("ragged feature matrix");
    for (double v : row) {
      if (!std::isfinite(v)) throw ExperimentError("non-finite feature value");
    }
  }

  LogRegModel model;
  model.mean.assign(d, 0.0);
  model.scale.assign(d, 1.0);
  const double n = static_cast<double>(x.size());
  if (cfg.standardize) {
    for (const auto& row : x) {
      for (std::size_t k = 0; k < d; ++k) model.mean[k] += row[k] / n;
    }
    for (std::size_t k = 0; k < d; ++k) {
      double var = 0.0;
      for (const auto& row : x) {
        var += (row[k] - model.mean[k]) * (row[k] - model.mean[k]);
      }
      const double sd = std::sqrt(var / n);
      model.scale[k] = sd > 1e-12 ? sd : 1.0;
    }
  }
  std::vector<std::vector<double>> z(x.size(), std::vector<double>(d));
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t k = 0; k < d; ++k) {
      z[i][k] = (x[i][k] - model.mean[k]) / model.scale[k];
    }
  }

  const Objective f(z, y, cfg.l2);
  std::vector<double> p(f.size(), 0.0), prev = p, look(f.size()), g, trial(f.size());
  std::vector<double> best = p;
  double best_value = f.Value(p);
  double step = 1.0;
  double momentum_t = 1.0;
  int it = 0;
  for (; it < cfg.max_iterations; ++it) {
    // Nesterov look-ahead point.
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * momentum_t * momentum_t));
    const double beta = (momentum_t - 1.0) / t_next;
    for (std::size_t k = 0; k < p.size(); ++k) look[k] = p[k] + beta * (p[k] - prev[k]);
    const double f_look = f.Gradient(look, g);
    const double g2 = Norm(g) * Norm(g);
    double f_trial = 0.0;
    for (int tries = 0; tries < 60; ++tries) {
      for (std::size_t k = 0; k < p.size(); ++k) trial[k] = look[k] - step * g[k];
      f_trial = f.Value(trial);
      if (f_trial <= f_look - 0.5 * step * g2) break;
      step *= 0.5;
    }
    prev = p;
    p = trial;
    momentum_t = t_next;
    if (f_trial > best_value) {
      // Restart momentum when the objective goes up.
      momentum_t = 1.0;
      prev = p;
    } else {
      best_value = f_trial;
      best = p;
    }
    std::vector<double> g_now;
    f.Gradient(p, g_now);
    model.gradient_norm = Norm(g_now);
    if (model.gradient_norm < cfg.tolerance) {
      model.converged = true;
      best = p;
      ++it;
      break;
    }
    step *= 2.0;
  }
  model.iterations = it;
  if (!model.converged) {
    std::vector<double> g_best;
    f.Gradient(best, g_best);
    model.gradient_norm = Norm(g_best);
    spdlog::warn(
        "logistic regression stopped after {} iterations with gradient norm "
        "{:.3g}; using the best iterate",
        it, model.gradient_norm);
  }
  model.weights.assign(best.begin(), best.begin() + static_cast<std::ptrdiff_t>(d));
  model.bias = best[d];
  return model;
}

double MacroF1(std::span<const int> predictions, std::span<const int> labels) {
  if (predictions.size() != labels.size()) {
    throw ExperimentError("prediction and label counts differ");
  }
  if (labels.empty()) throw ExperimentError("macro F1 of an empty set");
  double sum = 0.0;
  for (int c = 0; c <= 1; ++c) {
    std::size_t tp = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      const bool p = predictions[i] == c, l = labels[i] == c;
      tp += p && l;
      fp += p && !l;
      fn += !p && l;
    }
    const std::size_t denom = 2 * tp + fp + fn;
    sum += denom == 0 ? 0.0 : 2.0 * static_cast<double>(tp) / static_cast<double>(denom);
  }
  return sum / 2.0;
}

}  // namespace mpemb
