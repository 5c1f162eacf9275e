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
#include <limits>
#include <numeric>

#include <fmt/format.h>

#include "eolpay/error.hpp"
#include "eolpay/estimation.hpp"
#include "eolpay/linalg.hpp"

namespace eolpay {

namespace {

/// Records sorted by descending time with centred covariates.
struct CoxData {
  std::size_t n = 0;
  std::size_t p = 0;
  std::vector<int> time;
  std::vector<char> event;
  std::vector<double> x;  // n x p, row-major

  std::span<const double> row(std::size_t i) const { return {x.data() + i * p, p}; }
};

CoxData prepare(const Cohort& group) {
  CoxData d;
  d.n = group.size();
  d.p = covariate_dimension(group);
  std::vector<std::size_t> order(d.n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return group[a].event_time > group[b].event_time;
  });
  std::vector<double> mean(d.p, 0.0);
  for (const PatientRecord& r : group) {
    for (std::size_t k = 0; k < d.p; ++k) mean[k] += r.covariates[k];
  }
  for (double& m : mean) m /= static_cast<double>(d.n);
  d.time.reserve(d.n);
  d.event.reserve(d.n);
  d.x.reserve(d.n * d.p);
  for (std::size_t i : order) {
    d.time.push_back(group[i].event_time);
    d.event.push_back(group[i].event_observed ? 1 : 0);
    for (std::size_t k = 0; k < d.p; ++k) d.x.push_back(group[i].covariates[k] - mean[k]);
  }
  return d;
}

struct CoxDerivatives {
  double log_likelihood = 0.0;
  std::vector<double> gradient;
  Matrix information;  // negative Hessian
};

CoxDerivatives evaluate(const CoxData& d, std::span<const double> beta, bool second_order) {
  const std::size_t p = d.p;
  std::vector<double> eta(d.n);
  double shift = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < d.n; ++i) {
    const auto xi = d.row(i);
    eta[i] = std::inner_product(xi.begin(), xi.end(), beta.begin(), 0.0);
    shift = std::max(shift, eta[i]);
  }

  CoxDerivatives out;
  out.gradient.assign(p, 0.0);
  if (second_order) out.information = Matrix(p, p);
  double s0 = 0.0;
  std::vector<double> s1(p, 0.0);
  Matrix s2 = second_order ? Matrix(p, p) : Matrix();

  std::size_t i = 0;
  while (i < d.n) {
    std::size_t j = i;
    while (j < d.n && d.time[j] == d.time[i]) {
      const double w = std::exp(eta[j] - shift);
      const auto xj = d.row(j);
      s0 += w;
      for (std::size_t a = 0; a < p; ++a) {
        s1[a] += w * xj[a];
        if (second_order) {
          for (std::size_t b = a; b < p; ++b) s2(a, b) += w * xj[a] * xj[b];
        }
      }
      ++j;
    }
    std::size_t deaths = 0;
    for (std::size_t k = i; k < j; ++k) {
      if (!d.event[k]) continue;
      ++deaths;
      out.log_likelihood += eta[k] - shift;
      const auto xk = d.row(k);
      for (std::size_t a = 0; a < p; ++a) out.gradient[a] += xk[a];
    }
    if (deaths > 0) {
      // Breslow: all tied deaths share the full risk set.
      const double dd = static_cast<double>(deaths);
      out.log_likelihood -= dd * std::log(s0);
      for (std::size_t a = 0; a < p; ++a) out.gradient[a] -= dd * s1[a] / s0;
      if (second_order) {
        for (std::size_t a = 0; a < p; ++a) {
          for (std::size_t b = a; b < p; ++b) {
            out.information(a, b) += dd * (s2(a, b) / s0 - (s1[a] / s0) * (s1[b] / s0));
          }
        }
      }
    }
    i = j;
  }
  if (second_order) {
    for (std::size_t a = 0; a < p; ++a) {
      for (std::size_t b = 0; b < a; ++b) out.information(a, b) = out.information(b, a);
    }
  }
  return out;
}

}  // namespace

double cox_log_partial_likelihood(const Cohort& group, std::span<const double> beta) {
  const CoxData d = prepare(group);
  if (beta.size() != d.p) throw Error(ErrorKind::dimension_mismatch, "beta dimension");
  return evaluate(d, beta, false).log_likelihood;
}

std::vector<double> cox_gradient(const Cohort& group, std::span<const double> beta) {
  const CoxData d = prepare(group);
  if (beta.size() != d.p) throw Error(ErrorKind::dimension_mismatch, "beta dimension");
  return evaluate(d, beta, false).gradient;
}

CoxFit fit_cox(const Cohort& group, const IterationOptions& options) {
  if (group.empty()) throw Error(ErrorKind::insufficient_data, "Cox group is empty");
  validate_cohort(group);
  const CoxData d = prepare(group);
  const std::size_t p = d.p;

  std::size_t events = 0;
  std::vector<int> event_times;
  for (std::size_t i = 0; i < d.n; ++i) {
    if (!d.event[i]) continue;
    ++events;
    if (event_times.empty() || event_times.back() != d.time[i]) event_times.push_back(d.time[i]);
  }
  if (event_times.size() < 2) {
    throw Error(ErrorKind::insufficient_data,
                fmt::format("need at least 2 distinct event times, got {}", event_times.size()));
  }
  if (events < p + 1) {
    throw Error(ErrorKind::insufficient_data,
                fmt::format("need at least {} events, got {}", p + 1, events));
  }
  for (std::size_t k = 0; k < p; ++k) {
    double sq = 0.0;
    for (std::size_t i = 0; i < d.n; ++i) sq += d.x[i * p + k] * d.x[i * p + k];
    if (sq / static_cast<double>(d.n) <= 1e-12) {
      throw Error(ErrorKind::collinear,
                  fmt::format("covariate z{} is constant; its coefficient is not estimable", k + 1));
    }
  }

  CoxFit fit;
  fit.events = events;
  fit.beta.assign(p, 0.0);
  CoxDerivatives cur = evaluate(d, fit.beta, true);
  fit.likelihood_trace.push_back(cur.log_likelihood);

  for (fit.iterations = 0;; ++fit.iterations) {
    fit.gradient_norm = max_abs(cur.gradient);
    if (fit.gradient_norm <= options.gradient_tolerance) break;
    if (fit.iterations >= options.max_iterations) {
      throw Error(ErrorKind::non_convergence,
                  fmt::format("Cox fit did not converge in {} iterations (|gradient| = {:.3e})",
                              options.max_iterations, fit.gradient_norm));
    }
    std::vector<double> step;
    try {
      step = solve_linear_system(cur.information, cur.gradient);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::singular_matrix) throw;
      throw Error(ErrorKind::collinear,
                  fmt::format("Cox information matrix is singular ({})", e.message()));
    }
    std::vector<double> candidate(p);
    CoxDerivatives next;
    double scale = 1.0;
    bool accepted = false;
    for (int halving = 0; halving < 40; ++halving) {
      for (std::size_t k = 0; k < p; ++k) candidate[k] = fit.beta[k] + scale * step[k];
      next = evaluate(d, candidate, true);
      // Accept non-decreasing steps up to round-off in the likelihood sum.
      if (next.log_likelihood >=
          cur.log_likelihood - 1e-13 * (1.0 + std::abs(cur.log_likelihood))) {
        accepted = true;
        break;
      }
      scale *= 0.5;
    }
    if (!accepted) {
      throw Error(ErrorKind::non_convergence, "step halving failed to increase the likelihood");
    }
    fit.beta = candidate;
    cur = std::move(next);
    fit.likelihood_trace.push_back(cur.log_likelihood);
    if (max_abs(fit.beta) > kMaxCoxCoefficient) {
      throw Error(ErrorKind::monotone_likelihood,
                  fmt::format("|beta|_inf = {:.1f} exceeds {}; partial likelihood is monotone",
                              max_abs(fit.beta), kMaxCoxCoefficient));
    }
  }
  fit.log_partial_likelihood = cur.log_likelihood;

  fit.standard_errors.assign(p, 0.0);
  for (std::size_t k = 0; k < p; ++k) {
    std::vector<double> unit(p, 0.0);
    unit[k] = 1.0;
    const std::vector<double> column = solve_linear_system(cur.information, unit);
    fit.standard_errors[k] = std::sqrt(std::max(0.0, column[k]));
  }
  return fit;
}

}  // namespace eolpay
