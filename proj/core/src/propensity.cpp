// Copyright 2026 The eolpay Authors
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

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "eolpay/error.hpp"
#include "eolpay/estimation.hpp"
#include "eolpay/linalg.hpp"

namespace eolpay {

namespace {

constexpr double kScoreFloor = 1e-12;

double log_sigmoid(double eta) { return eta >= 0 ? -std::log1p(std::exp(-eta)) : eta - std::log1p(std::exp(eta)); }

double sigmoid(double eta) {
  return eta >= 0 ? 1.0 / (1.0 + std::exp(-eta)) : std::exp(eta) / (1.0 + std::exp(eta));
}

double linear_predictor(const PatientRecord& r, std::span<const double> coef) {
  double eta = coef[0];
  for (std::size_t k = 0; k < r.covariates.size(); ++k) eta += coef[k + 1] * r.covariates[k];
  return eta;
}

double log_likelihood(const Cohort& cohort, std::span<const double> coef) {
  double ll = 0.0;
  for (const PatientRecord& r : cohort) {
    const double eta = linear_predictor(r, coef);
    ll += r.treatment == 1 ? log_sigmoid(eta) : log_sigmoid(-eta);
  }
  return ll;
}

void require_full_rank(const Cohort& cohort, std::size_t dim) {
  // Column-normalised Gram matrix of the design [1, Z].
  Matrix gram(dim, dim);
  for (const PatientRecord& r : cohort) {
    for (std::size_t a = 0; a < dim; ++a) {
      const double xa = a == 0 ? 1.0 : r.covariates[a - 1];
      for (std::size_t b = a; b < dim; ++b) {
        const double xb = b == 0 ? 1.0 : r.covariates[b - 1];
        gram(a, b) += xa * xb;
      }
    }
  }
  for (std::size_t a = 0; a < dim; ++a) {
    for (std::size_t b = 0; b < a; ++b) gram(a, b) = gram(b, a);
  }
  std::vector<double> norms(dim);
  for (std::size_t a = 0; a < dim; ++a) norms[a] = std::sqrt(gram(a, a));
  for (std::size_t a = 0; a < dim; ++a) {
    if (norms[a] == 0.0) {
      throw Error(ErrorKind::collinear, fmt::format("covariate z{} is identically zero", a));
    }
  }
  for (std::size_t a = 0; a < dim; ++a) {
    for (std::size_t b = 0; b < dim; ++b) gram(a, b) /= norms[a] * norms[b];
  }
  const RrefResult reduced = rref(gram, 1e-10);
  if (reduced.rank < dim) {
    throw Error(ErrorKind::collinear,
                fmt::format("design matrix [1, Z] has rank {} < {}", reduced.rank, dim));
  }
}

}  // namespace

PropensityModel fit_propensity(const Cohort& cohort, const IterationOptions& options) {
  if (cohort.empty()) throw Error(ErrorKind::insufficient_data, "cohort is empty");
  validate_cohort(cohort);
  const std::size_t p = covariate_dimension(cohort);
  const std::size_t dim = p + 1;
  const auto treated = static_cast<std::size_t>(
      std::count_if(cohort.begin(), cohort.end(), [](const PatientRecord& r) { return r.treatment == 1; }));
  const std::size_t controls = cohort.size() - treated;
  if (treated < dim || controls < dim) {
    throw Error(ErrorKind::insufficient_data,
                fmt::format("need at least {} records per arm, got {} treated and {} controls "
                            "(no treatment contrast)",
                            dim, treated, controls));
  }
  require_full_rank(cohort, dim);

  PropensityModel model;
  model.coefficients.assign(dim, 0.0);
  double ll = log_likelihood(cohort, model.coefficients);
  Matrix information(dim, dim);
  std::vector<double> score(dim);

  auto evaluate_derivatives = [&](std::span<const double> coef) {
    std::fill(score.begin(), score.end(), 0.0);
    information = Matrix(dim, dim);
    for (const PatientRecord& r : cohort) {
      const double mu = sigmoid(linear_predictor(r, coef));
      const double weight = mu * (1.0 - mu);
      const double resid = r.treatment - mu;
      for (std::size_t a = 0; a < dim; ++a) {
        const double xa = a == 0 ? 1.0 : r.covariates[a - 1];
        score[a] += resid * xa;
        for (std::size_t b = a; b < dim; ++b) {
          const double xb = b == 0 ? 1.0 : r.covariates[b - 1];
          information(a, b) += weight * xa * xb;
        }
      }
    }
    for (std::size_t a = 0; a < dim; ++a) {
      for (std::size_t b = 0; b < a; ++b) information(a, b) = information(b, a);
    }
  };

  evaluate_derivatives(model.coefficients);
  for (model.iterations = 0; model.iterations < options.max_iterations; ++model.iterations) {
    model.score_norm = max_abs(score);
    if (model.score_norm <= options.gradient_tolerance) {
      model.converged = true;
      break;
    }
    std::vector<double> step;
    try {
      step = solve_linear_system(information, score);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::singular_matrix) throw;
      throw Error(ErrorKind::separation,
                  fmt::format("information matrix became singular at iteration {} ({})",
                              model.iterations, e.message()));
    }
    std::vector<double> candidate(dim);
    double scale = 1.0;
    double candidate_ll = 0.0;
    for (int halving = 0; halving < 40; ++halving) {
      for (std::size_t k = 0; k < dim; ++k) candidate[k] = model.coefficients[k] + scale * step[k];
      candidate_ll = log_likelihood(cohort, candidate);
      if (candidate_ll >= ll - 1e-12 * (1.0 + std::abs(ll))) break;
      scale *= 0.5;
    }
    model.coefficients = candidate;
    ll = candidate_ll;
    evaluate_derivatives(model.coefficients);
  }
  model.score_norm = max_abs(score);
  model.converged = model.converged || model.score_norm <= options.gradient_tolerance;
  model.log_likelihood = ll;

  model.scores.reserve(cohort.size());
  for (const PatientRecord& r : cohort) {
    const double s = sigmoid(linear_predictor(r, model.coefficients));
    if (!(s > kScoreFloor && s < 1.0 - kScoreFloor)) {
      throw Error(ErrorKind::separation,
                  fmt::format("record {} has fitted score {:.3e}; treatment is separable", r.id, s));
    }
    model.scores.push_back(s);
  }

  model.standard_errors.assign(dim, 0.0);
  try {
    for (std::size_t k = 0; k < dim; ++k) {
      std::vector<double> unit(dim, 0.0);
      unit[k] = 1.0;
      const std::vector<double> column = solve_linear_system(information, unit);
      model.standard_errors[k] = std::sqrt(std::max(0.0, column[k]));
    }
  } catch (const Error&) {
    std::fill(model.standard_errors.begin(), model.standard_errors.end(), std::nan(""));
  }
  return model;
}

}  // namespace eolpay
