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

#ifndef MPEMB_LOGREG_H_
#define MPEMB_LOGREG_H_

#include <span>
#include <vector>

namespace mpemb {

struct LogRegConfig {
  /// Strength of the (l2 / 2) ||w||^2 penalty; the bias is not penalized.
  double l2 = 1e-4;
  /// Stop once the gradient norm of the objective drops below this.
  double tolerance = 1e-6;
  int max_iterations = 1000;
  /// Standardize features with train-set mean and deviation.
  bool standardize = true;

  void Validate() const;
};

struct LogRegModel {
  std::vector<double> mean;
  std::vector<double> scale;
  std::vector<double> weights;
  double bias = 0.0;
  bool converged = false;
  int iterations = 0;
  double gradient_norm = 0.0;

  double Decision(std::span<const double> x) const;
  int Predict(std::span<const double> x) const { return Decision(x) > 0.0; }
};

/// Binary logistic regression (labels 0/1) by accelerated full-batch
/// gradient descent with backtracking. On hitting the iteration limit a
/// warning is logged and the iterate with the lowest objective is returned.
/// Throws ExperimentError on non-finite features or fewer than two examples
/// of either class.
LogRegModel TrainLogReg(const std::vector<std::vector<double>>& x,
                        std::span<const int> y, const LogRegConfig& cfg = {});

/// Mean of the F1 scores of classes 0 and 1. A class absent from both
/// predictions and labels scores 0.
double MacroF1(std::span<const int> predictions, std::span<const int> labels);

}  // namespace mpemb

#endif  // MPEMB_LOGREG_H_
