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

#include "eolpay/contract_solvers.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "eolpay/error.hpp"

namespace eolpay {

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::free_payment: return "free";
    case ModelKind::non_negative: return "nonneg";
    case ModelKind::non_negative_misclassified: return "nonneg-w";
    case ModelKind::risk_averse: return "risk-averse";
  }
  return "unknown";
}

ModelKind parse_model_kind(std::string_view text) {
  for (ModelKind kind : {ModelKind::free_payment, ModelKind::non_negative,
                         ModelKind::non_negative_misclassified, ModelKind::risk_averse}) {
    if (text == to_string(kind)) return kind;
  }
  throw Error(ErrorKind::parse,
              fmt::format("unknown model \"{}\" (expected free, nonneg, nonneg-w, risk-averse)", text));
}

BindingCertificate check_binding_solvability(const ModelParams& params) {
  const NormalizedSystem sys = build_normalized_system(params);
  Matrix stacked(3, 4);
  for (std::size_t c = 0; c < 4; ++c) {
    stacked(0, c) = sys.c0[c];
    stacked(1, c) = sys.c1[c];
    stacked(2, c) = sys.c2[c];
  }
  RrefResult reduced = rref(stacked);
  BindingCertificate cert;
  cert.s1 = survival_summary(params).s1;
  cert.rank = reduced.rank;
  cert.pivot_columns = reduced.pivot_columns;
  cert.min_pivot = reduced.min_pivot;
  cert.ill_conditioned = reduced.ill_conditioned;
  cert.reduced = std::move(reduced.reduced);
  cert.solvable = cert.rank == 3 && 1.0 - cert.s1 > kBindingMargin;
  return cert;
}

FreePaymentSolution solve_free_payment(const ModelParams& params, double p11) {
  const BindingCertificate cert = check_binding_solvability(params);
  if (!cert.solvable) {
    throw Error(ErrorKind::degenerate,
                fmt::format("binding system not solvable: 1 - s1 = {:.3e} (rank {})", 1.0 - cert.s1,
                            cert.rank));
  }
  const double d_pi0 = params.pi10 - params.pi00;
  if (d_pi0 <= kProbabilityEpsilon) {
    throw Error(ErrorKind::degenerate, "pi10 == pi00 leaves p00 and p10 undetermined");
  }
  const double g = params.gamma;
  const double pi00 = params.pi00;
  const double pi01 = params.pi01;
  const double pi10 = params.pi10;
  const double pi11 = params.pi11;
  const auto [s0, s1] = survival_summary(params);
  const double f = params.disutility_f;
  const double q = p11 / f;  // closed forms are derived for F = 1 and scale linearly
  const double den = d_pi0 * (1 - s1);
  const double d_pi1 = pi11 - pi01;

  const double p00 = (-q * d_pi1 * s0 +
                      g * (pi00 * pi01 - 2 * pi00 * pi11 + pi00 + pi10 * pi11 - pi10) +
                      pi00 * d_pi1) /
                     den;
  const double p01 = (-q * s1 - g + 1) / (1 - s1);
  const double p10 = (q * d_pi1 * (1 - s0) +
                      g * (pi00 * pi01 - 2 * pi00 * pi11 + pi00 - pi01 + pi10 * pi11 - pi10 + pi11) -
                      (1 - pi00) * d_pi1) /
                     den;

  FreePaymentSolution sol;
  sol.contract = {f * p00, f * p01, f * p10, p11};
  sol.free_p11 = p11;
  sol.sensitivity = {-d_pi1 * s0 / den, -s1 / (1 - s1), d_pi1 * (1 - s0) / den};
  sol.expected_payment = dot(build_normalized_system(params).c0, sol.contract.as_vector());
  return sol;
}

NonNegativeSolution solve_non_negative(const ModelParams& params, double t) {
  const NormalizedSystem sys = build_normalized_system(params);
  if (!satisfies_assumption2(params)) {
    throw Error(ErrorKind::assumption2_violated,
                fmt::format("pi01 pi10 = {} equals pi00 pi11 = {}", params.pi01 * params.pi10,
                            params.pi00 * params.pi11));
  }
  if (!(t >= 0.0 && t <= 1.0)) {
    throw Error(ErrorKind::out_of_range, fmt::format("t = {} must lie in [0, 1]", t));
  }
  const double f = params.disutility_f;
  const double pi11 = params.pi11;
  NonNegativeSolution sol;
  sol.t = t;
  sol.contract = {0.0, f * t, 0.0, f * (1.0 / pi11 - (1.0 - pi11) / pi11 * t)};
  const Vec4 p = sol.contract.as_vector();
  sol.slack_v1 = dot(sys.c1, p) - sys.b1;
  sol.slack_v2 = dot(sys.c2, p) - sys.b2;
  sol.optimal_value = dot(sys.c0, p) - sys.b0;
  return sol;
}

MisclassifiedSolution solve_non_negative_misclassified(const ModelParams& params) {
  const NormalizedSystem sys = build_normalized_system(params);
  if (!satisfies_assumption2(params)) {
    throw Error(ErrorKind::assumption2_violated,
                fmt::format("pi01 pi10 = {} equals pi00 pi11 = {}", params.pi01 * params.pi10,
                            params.pi00 * params.pi11));
  }
  const double f = params.disutility_f;
  const double g = params.gamma;
  const double ratio = params.pi01 * params.w1 / params.pi11;
  MisclassifiedSolution sol;
  sol.contract = {0.0, 0.0, 0.0, f / params.pi11};
  const Vec4 p = sol.contract.as_vector();
  sol.slack_v1 = dot(sys.c1, p) - sys.b1;
  sol.slack_v2 = dot(sys.c2, p) - sys.b2;
  sol.value = f * (g * (1.0 - ratio - params.w0) + ratio);
  sol.objective_at_contract = dot(misclassified_objective(params), p) - sys.b0;
  sol.perfect_value = f * g;
  return sol;
}

double false_positive_share(const ModelParams& params) {
  const double fp = params.pi01 * params.w1;
  const double total = params.pi11 * params.w0 + fp;
  return total > 0.0 ? fp / total : 0.0;
}

KktReport kkt_residuals(const ModelParams& params, const UtilityTransform& g, const Vec4& w,
                        const KktMultipliers& m) {
  const NormalizedSystem sys = build_normalized_system(params);
  KktReport report;
  for (std::size_t k = 0; k < 4; ++k) {
    const double grad = sys.c0[k] * g.inverse_derivative(w[k]);
    const double r = grad - m.lambda1 * sys.c1[k] - m.lambda2 * sys.c2[k] - m.mu[k];
    report.stationarity = std::max(report.stationarity, std::abs(r));
  }
  const double g1 = dot(sys.c1, w) - sys.b1;
  const double g2 = dot(sys.c2, w) - sys.b2;
  report.primal_infeasibility = std::max({0.0, -g1, -g2});
  for (double wk : w) report.primal_infeasibility = std::max(report.primal_infeasibility, -wk);
  report.dual_infeasibility = std::max({0.0, -m.lambda1, -m.lambda2});
  for (double mu : m.mu) report.dual_infeasibility = std::max(report.dual_infeasibility, -mu);
  report.complementarity = std::max(std::abs(m.lambda1 * g1), std::abs(m.lambda2 * g2));
  for (std::size_t k = 0; k < 4; ++k) {
    report.complementarity = std::max(report.complementarity, std::abs(m.mu[k] * w[k]));
  }
  return report;
}

RiskAverseSolution solve_risk_averse(const ModelParams& params, const UtilityTransform& g) {
  validate_transform(g);
  const NormalizedSystem sys = build_normalized_system(params);
  const double f = params.disutility_f;

  RiskAverseSolution sol;
  sol.w_contract = {0.0, f, 0.0, f};
  Vec4 payments{};
  for (std::size_t k = 0; k < 4; ++k) payments[k] = g.inverse(sol.w_contract[k]);
  sol.contract = Contract::from_vector(payments);
  sol.optimal_value = dot(sys.c0, sol.contract.as_vector()) - sys.b0;

  // Both incentive constraints bind at W, so mu01 = mu11 = 0. The p01 and p11 rows of
  // the stationarity system are solved by lambda1 = gamma (g^-1)'(F), lambda2 = 0 exactly
  // (c0 restricted to those entries is gamma times c1); the p00 and p10 rows then give mu.
  // Solving the 4x4 system numerically instead leaves lambda2 at -1e-15 or so.
  const double d_zero = g.inverse_derivative(0.0);
  const double d_f = g.inverse_derivative(f);
  sol.multipliers.lambda1 = params.gamma * d_f;
  sol.multipliers.lambda2 = 0.0;
  sol.multipliers.mu = {sys.c0[0] * d_zero - sol.multipliers.lambda1 * sys.c1[0], 0.0,
                        sys.c0[2] * d_zero - sol.multipliers.lambda1 * sys.c1[2], 0.0};
  sol.kkt = kkt_residuals(params, g, sol.w_contract, sol.multipliers);
  return sol;
}

StandardFormLP non_negative_lp(const ModelParams& params, const Vec4& objective) {
  const NormalizedSystem sys = build_normalized_system(params);
  StandardFormLP lp;
  lp.objective = {objective[0], objective[1], objective[2], objective[3], 0.0, 0.0};
  lp.eq_matrix = Matrix(2, 6);
  for (std::size_t c = 0; c < 4; ++c) {
    lp.eq_matrix(0, c) = sys.c1[c];
    lp.eq_matrix(1, c) = sys.c2[c];
  }
  lp.eq_matrix(0, 4) = -1.0;
  lp.eq_matrix(1, 5) = -1.0;
  lp.eq_rhs = {sys.b1, sys.b2};
  return lp;
}

namespace {

ConstraintCheck check(std::string name, double lhs, double rhs, double tol) {
  return {std::move(name), lhs, rhs, lhs - rhs, lhs - rhs >= -tol};
}

}  // namespace

ContractCertificate verify_contract(const ModelParams& params, const Contract& contract,
                                    ModelKind model, const UtilityTransform& g,
                                    const VerifyOptions& options) {
  const NormalizedSystem sys = build_normalized_system(params);
  const double tol = options.feasibility_tolerance;
  const Vec4 p = contract.as_vector();
  ContractCertificate cert;
  cert.model = model;

  Vec4 constrained = p;
  if (model == ModelKind::risk_averse) {
    for (double& x : constrained) x = x >= 0.0 ? g(x) : std::nan("");
  }
  if (model == ModelKind::free_payment) {
    cert.constraints.push_back(check("expected_payment_nonnegative", dot(sys.c0, p), sys.b0, tol));
  }
  cert.constraints.push_back(check("incentive_good_responder", dot(sys.c1, constrained), sys.b1, tol));
  cert.constraints.push_back(check("incentive_bad_responder", dot(sys.c2, constrained), sys.b2, tol));
  if (model != ModelKind::free_payment) {
    constexpr const char* names[4] = {"p00_nonnegative", "p01_nonnegative", "p10_nonnegative",
                                      "p11_nonnegative"};
    for (std::size_t k = 0; k < 4; ++k) cert.constraints.push_back(check(names[k], p[k], 0.0, tol));
  }
  cert.feasible = std::all_of(cert.constraints.begin(), cert.constraints.end(),
                              [](const ConstraintCheck& c) { return c.satisfied; });

  const double f = params.disutility_f;
  switch (model) {
    case ModelKind::free_payment:
      cert.expected_payment = dot(sys.c0, p);
      cert.optimal_value = 0.0;
      break;
    case ModelKind::non_negative:
      cert.expected_payment = dot(sys.c0, p);
      cert.optimal_value = params.gamma * f;
      break;
    case ModelKind::non_negative_misclassified: {
      cert.expected_payment = dot(misclassified_objective(params), p);
      const double ratio = params.pi01 * params.w1 / params.pi11;
      cert.optimal_value = f * (params.gamma * (1.0 - ratio - params.w0) + ratio);
      break;
    }
    case ModelKind::risk_averse:
      cert.expected_payment = dot(sys.c0, p);
      cert.optimal_value = dot(sys.c0, {g.inverse(0.0), g.inverse(f), g.inverse(0.0), g.inverse(f)});
      break;
  }
  cert.optimality_gap = cert.expected_payment - cert.optimal_value;
  cert.near_optimal =
      cert.feasible && std::abs(cert.optimality_gap) <=
                           options.near_optimal_tolerance * std::max(1.0, std::abs(cert.optimal_value));
  return cert;
}

ContractCertificate verify_contract(const ModelParams& params, const Contract& contract,
                                    ModelKind model, const VerifyOptions& options) {
  return verify_contract(params, contract, model, UtilityTransform::identity(), options);
}

}  // namespace eolpay
