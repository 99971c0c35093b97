// Copyright 2026 The Triplescore Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TRIPLESCORE_NEGATIVE_SAMPLING_H_
#define TRIPLESCORE_NEGATIVE_SAMPLING_H_

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace triplescore {

// Logistic function and log σ(x), both stable for large |x|.
inline double Sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  double e = std::exp(x);
  return e / (1.0 + e);
}

inline double LogSigmoid(double x) {
  if (x >= 0) return -std::log1p(std::exp(-x));
  return x - std::log1p(std::exp(x));
}

template <typename Real>
double Dot(std::span<const Real> a, std::span<const Real> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sum += static_cast<double>(a[i]) * static_cast<double>(b[i]);
  }
  return sum;
}

// One term of the negative-sampling loss for hidden vector h and output
// vector u, with score f = u·h:
//   positive target:  -log σ(f)
//   noise target:     -log σ(-f)
// `slope` is dLoss/df; the gradient is slope·h for u and slope·u for h.
struct LossTerm {
  double loss;
  double slope;
};

template <typename Real>
LossTerm NegativeSamplingTerm(std::span<const Real> hidden,
                              std::span<const Real> output, bool positive) {
  double f = Dot(hidden, output);
  if (positive) return {-LogSigmoid(f), Sigmoid(f) - 1.0};
  return {-LogSigmoid(-f), Sigmoid(f)};
}

// Full loss and gradients for one (hidden, positive, negatives) tuple:
//   L = -log σ(u_pos·h) - Σ_k log σ(-u_k·h)
struct NegativeSamplingGradient {
  double loss = 0.0;
  std::vector<double> hidden;
  std::vector<double> positive;
  std::vector<std::vector<double>> negatives;
};

inline NegativeSamplingGradient ComputeNegativeSamplingGradient(
    std::span<const double> hidden, std::span<const double> positive,
    const std::vector<std::span<const double>> &negatives) {
  const std::size_t dim = hidden.size();
  NegativeSamplingGradient grad;
  grad.hidden.assign(dim, 0.0);

  auto accumulate = [&](std::span<const double> output, bool is_positive,
                        std::vector<double> *grad_output) {
    LossTerm term = NegativeSamplingTerm<double>(hidden, output, is_positive);
    grad.loss += term.loss;
    grad_output->resize(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      (*grad_output)[i] = term.slope * hidden[i];
      grad.hidden[i] += term.slope * output[i];
    }
  };

  accumulate(positive, true, &grad.positive);
  grad.negatives.resize(negatives.size());
  for (std::size_t k = 0; k < negatives.size(); ++k) {
    accumulate(negatives[k], false, &grad.negatives[k]);
  }
  return grad;
}

}  // namespace triplescore

#endif  // TRIPLESCORE_NEGATIVE_SAMPLING_H_
