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

#include "cli.hpp"

#include <cmath>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "eolpay/contract_solvers.hpp"
#include "eolpay/error.hpp"
#include "eolpay/estimation.hpp"
#include "eolpay/fixture.hpp"
#include "eolpay/io.hpp"
#include "eolpay/simulation.hpp"
#include "eolpay/verification.hpp"

namespace eolpay::cli {

namespace {

using ojson = nlohmann::ordered_json;
namespace fs = std::filesystem;

// Published reference figures, shown next to our own numbers.
constexpr double kReportedP11 = 1.18;
constexpr double kReportedGap = 0.12;
constexpr double kReportedPayment = 0.44;
constexpr double kReportedMatchedSurvival = 0.64;
constexpr double kReportedMatchedPayment = 0.55;
constexpr double kReportedHighSurvival = 0.83;
constexpr double kReportedHighPayment = 0.94;
constexpr double kReportedLowSurvival = 0.35;

ojson nullable(double v) { return std::isfinite(v) ? ojson(v) : ojson(); }

ojson params_json(const ModelParams& p) {
  return {{"pi", {{"00", nullable(p.pi00)}, {"01", nullable(p.pi01)}, {"10", nullable(p.pi10)},
                  {"11", nullable(p.pi11)}}},
          {"gamma", nullable(p.gamma)},
          {"phi", p.phi},
          {"F", p.disutility_f},
          {"w0", p.w0},
          {"w1", p.w1}};
}

ojson contract_json(const Contract& c) {
  return {{"p00", c.p00}, {"p01", c.p01}, {"p10", c.p10}, {"p11", c.p11}};
}

void emit(std::ostream& out, const std::string& path, const std::string& text) {
  if (path.empty()) {
    out << text;
  } else {
    write_text_file(path, text);
  }
}

std::string with_suffix(const std::string& path, const std::string& suffix) {
  fs::path p(path);
  const fs::path stem = p.parent_path() / p.stem();
  return stem.string() + suffix;
}

// ---------------------------------------------------------------------------
// solve

struct SolveArgs {
  std::string model = "nonneg";
  std::string params;
  double t = 0.0;
  double p11 = 1.0;
  std::string g = "power:0.5";
  std::optional<double> f_dollars;
  std::string out;
};

double slack_of(const ContractCertificate& cert, std::string_view name) {
  for (const ConstraintCheck& c : cert.constraints) {
    if (c.name == name) return c.slack;
  }
  return std::nan("");
}

ojson solve_document(const ModelParams& params, const SolveArgs& args) {
  const ModelKind kind = parse_model_kind(args.model);
  ojson doc;
  doc["model"] = std::string(to_string(kind));
  doc["params"] = params_json(params);

  Contract contract;
  ContractCertificate cert;
  switch (kind) {
    case ModelKind::free_payment: {
      const FreePaymentSolution s = solve_free_payment(params, args.p11);
      const BindingCertificate b = check_binding_solvability(params);
      contract = s.contract;
      cert = verify_contract(params, contract, kind);
      doc["free_p11"] = s.free_p11;
      doc["sensitivity"] = {{"p00", s.sensitivity[0]}, {"p01", s.sensitivity[1]}, {"p10", s.sensitivity[2]}};
      doc["binding"] = {{"solvable", b.solvable},
                        {"s1", b.s1},
                        {"rank", b.rank},
                        {"min_pivot", b.min_pivot},
                        {"ill_conditioned", b.ill_conditioned}};
      break;
    }
    case ModelKind::non_negative: {
      const NonNegativeSolution s = solve_non_negative(params, args.t);
      contract = s.contract;
      cert = verify_contract(params, contract, kind);
      doc["t"] = s.t;
      break;
    }
    case ModelKind::non_negative_misclassified: {
      const MisclassifiedSolution s = solve_non_negative_misclassified(params);
      contract = s.contract;
      cert = verify_contract(params, contract, kind);
      doc["perfect_value"] = s.perfect_value;
      doc["false_positive_share"] = false_positive_share(params);
      break;
    }
    case ModelKind::risk_averse: {
      const UtilityTransform g = parse_transform(args.g);
      validate_transform(g);
      const RiskAverseSolution s = solve_risk_averse(params, g);
      contract = s.contract;
      cert = verify_contract(params, contract, kind, g);
      doc["transform"] = g.name;
      doc["utility_contract"] = s.w_contract;
      doc["multipliers"] = {{"lambda1", s.multipliers.lambda1},
                            {"lambda2", s.multipliers.lambda2},
                            {"mu", s.multipliers.mu}};
      doc["kkt"] = {{"stationarity", s.kkt.stationarity},
                    {"primal_infeasibility", s.kkt.primal_infeasibility},
                    {"dual_infeasibility", s.kkt.dual_infeasibility},
                    {"complementarity", s.kkt.complementarity},
                    {"passed", s.kkt.passed()}};
      break;
    }
  }

  const double v1 = slack_of(cert, "incentive_good_responder");
  const double v2 = slack_of(cert, "incentive_bad_responder");
  doc["contract"] = contract_json(contract);
  doc["slacks"] = {{"v1", v1}, {"v2", v2}};
  doc["optimal_value"] = cert.optimal_value;
  doc["expected_payment"] = cert.expected_payment;
  ojson constraints = ojson::array();
  for (const ConstraintCheck& c : cert.constraints) {
    constraints.push_back(
        {{"name", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"slack", c.slack}, {"satisfied", c.satisfied}});
  }
  doc["certificate"] = {{"feasible", cert.feasible},
                        {"near_optimal", cert.near_optimal},
                        {"optimality_gap", cert.optimality_gap},
                        {"constraints", constraints}};

  if (args.f_dollars) {
    const double scale = *args.f_dollars / params.disutility_f;
    ojson dollars = {{"F", *args.f_dollars}};
    dollars["contract"] = {{"p00", format_dollars(contract.p00 * scale)},
                           {"p01", format_dollars(contract.p01 * scale)},
                           {"p10", format_dollars(contract.p10 * scale)},
                           {"p11", format_dollars(contract.p11 * scale)}};
    dollars["incentive_gap"] = format_dollars(v2 * scale);
    dollars["expected_payment"] = format_dollars(cert.expected_payment * scale);
    dollars["optimal_value"] = format_dollars(cert.optimal_value * scale);
    doc["dollars"] = dollars;
  }
  return doc;
}

// ---------------------------------------------------------------------------
// estimate

struct EstimateArgs {
  std::string cohort;
  double cutoff = 0.0;
  std::string caliper = "none";
  std::string criterion = "death-before-discharge";
  std::string orientation = "survival";
  double phi = 1.0;
  double f = 1.0;
  int bins = 40;
  std::string out;
  std::string diagnostics;
  std::string histogram;
};

std::optional<double> parse_caliper(const std::string& text) {
  if (text == "none") return std::nullopt;
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || !(value >= 0.0)) {
    throw Error(ErrorKind::parse, fmt::format("--caliper expects a nonnegative number or none, got \"{}\"", text));
  }
  return value;
}

PipelineConfig pipeline_config(const EstimateArgs& a) {
  PipelineConfig config;
  config.cutoff = a.cutoff;
  config.matching.caliper = parse_caliper(a.caliper);
  config.criterion = OutcomeCriterion::parse(a.criterion);
  config.orientation = parse_orientation(a.orientation);
  config.phi = a.phi;
  config.disutility_f = a.f;
  config.histogram_bins = a.bins;
  return config;
}

int run_estimate(const EstimateArgs& a, std::ostream& out, std::ostream& err) {
  const PipelineConfig config = pipeline_config(a);
  const Cohort cohort = load_cohort_csv(a.cohort);
  const PipelineResult result = run_pipeline(cohort, config);
  for (const std::string& w : result.diagnostics.warnings) err << "warning: " << w << '\n';

  emit(out, a.out, params_json(result.params).dump(2) + "\n");
  std::string diagnostics_path = a.diagnostics;
  std::string histogram_path = a.histogram;
  if (!a.out.empty()) {
    if (diagnostics_path.empty()) diagnostics_path = with_suffix(a.out, ".diagnostics.json");
    if (histogram_path.empty()) histogram_path = with_suffix(a.out, ".histogram.csv");
  }
  if (!diagnostics_path.empty()) write_text_file(diagnostics_path, diagnostics_to_json(result) + "\n");
  if (!histogram_path.empty()) write_text_file(histogram_path, histogram_to_csv(result.diagnostics.histogram));
  return kExitOk;
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateArgs {
  std::string params;
  std::string contract = "from-solver";
  double t = 0.0;
  std::size_t n = 1000000;
  std::uint64_t seed = kDefaultSeed;
  std::optional<double> w0;
  std::optional<double> w1;
  std::string out;
  std::string format = "csv";
};

int run_simulate(const SimulateArgs& a, std::ostream& out) {
  const ReportFormat format = parse_report_format(a.format);
  const ModelParams params = load_params(a.params);
  const Contract contract =
      a.contract == "from-solver" ? solve_non_negative(params, a.t).contract : load_contract(a.contract);
  std::optional<ResponderNoise> noise;
  if (a.w0 || a.w1) noise = ResponderNoise{a.w0.value_or(params.w0), a.w1.value_or(params.w1)};
  const PolicyComparison cmp = compare_policies(params, contract, a.n, a.seed, noise);
  const std::string text =
      format == ReportFormat::json ? comparison_to_json(cmp) + "\n" : render_reports(cmp.reports, format);
  emit(out, a.out, text);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyArgs {
  std::size_t trials = 100;
  std::uint64_t seed = kDefaultSeed;
  std::string params;
  std::string contract;
  std::string model = "nonneg";
  std::string g = "power:0.5";
  std::string out;
};

int run_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  if (!a.contract.empty()) {
    if (a.params.empty()) throw Error(ErrorKind::parse, "--contract needs --params");
    const ModelParams params = load_params(a.params);
    const Contract contract = load_contract(a.contract);
    const ModelKind kind = parse_model_kind(a.model);
    const UtilityTransform g =
        kind == ModelKind::risk_averse ? parse_transform(a.g) : UtilityTransform::identity();
    const ContractCertificate cert = verify_contract(params, contract, kind, g);
    ojson constraints = ojson::array();
    for (const ConstraintCheck& c : cert.constraints) {
      constraints.push_back(
          {{"name", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"slack", c.slack}, {"satisfied", c.satisfied}});
    }
    const ojson doc = {{"model", std::string(to_string(kind))},
                       {"contract", contract_json(contract)},
                       {"feasible", cert.feasible},
                       {"near_optimal", cert.near_optimal},
                       {"expected_payment", cert.expected_payment},
                       {"optimal_value", cert.optimal_value},
                       {"optimality_gap", cert.optimality_gap},
                       {"constraints", constraints}};
    emit(out, a.out, doc.dump(2) + "\n");
    return cert.feasible ? kExitOk : kExitDomain;
  }

  const OracleReport report = run_oracle_checks(a.trials, a.seed);
  ojson disagreements = ojson::array();
  for (const OracleTrial& t : report.disagreements) disagreements.push_back(params_json(t.params));
  const ojson doc = {{"trials", report.trials},
                     {"seed", a.seed},
                     {"agreements", report.agreements},
                     {"worst",
                      {{"nonneg_value_error", report.worst_nonneg_value_error},
                       {"nonneg_segment_distance", report.worst_nonneg_segment_distance},
                       {"misclassified_value_error", report.worst_misclassified_value_error},
                       {"free_payment_error", report.worst_free_payment_error},
                       {"risk_averse_kkt", report.worst_risk_averse_kkt}}},
                     {"disagreements", disagreements}};
  emit(out, a.out, doc.dump(2) + "\n");
  err << fmt::format("{}/{} oracle-vs-closed-form agreements\n", report.agreements, report.trials);
  return report.agreements == report.trials ? kExitOk : kExitDomain;
}

// ---------------------------------------------------------------------------
// reproduce

struct ReproduceArgs {
  std::string cohort;
  std::size_t n = 100000;
  std::uint64_t seed = kDefaultSeed;
  std::size_t sim_n = 1000000;
  double f_dollars = 10000.0;
  std::string out_dir;
  std::string format = "table";
};

struct Row {
  std::string quantity;
  double obtained = 0.0;
  std::optional<double> expected;  // value the verdict is taken against
  std::optional<double> reference;
  double tolerance = 0.0;
  std::string verdict;
  std::string note;
};

Row check_row(std::string quantity, double obtained, double expected, std::optional<double> reference,
              double tolerance, std::string note = {}) {
  const bool ok = std::abs(obtained - expected) <= tolerance;
  return {std::move(quantity), obtained, expected, reference, tolerance, ok ? "PASS" : "FAIL", std::move(note)};
}

Row flag_row(std::string quantity, bool value, std::string note) {
  return {std::move(quantity), value ? 1.0 : 0.0, 1.0, 1.0, 0.0, value ? "PASS" : "FAIL", std::move(note)};
}

std::string render_table(const std::vector<Row>& rows) {
  auto num = [](const std::optional<double>& v) { return v ? fmt::format("{:.4f}", *v) : std::string("-"); };
  std::string out = fmt::format("{:<26} {:>12} {:>12} {:>12} {:>9}  {:<7} {}\n", "quantity", "obtained",
                                "expected", "reference", "tol", "verdict", "note");
  out += std::string(100, '-') + "\n";
  for (const Row& r : rows) {
    out += fmt::format("{:<26} {:>12.4f} {:>12} {:>12} {:>9.4f}  {:<7} {}\n", r.quantity, r.obtained,
                       num(r.expected), num(r.reference), r.tolerance, r.verdict, r.note);
  }
  return out;
}

int run_reproduce(const ReproduceArgs& a, std::ostream& out) {
  if (a.format != "table" && a.format != "json") {
    throw Error(ErrorKind::parse, fmt::format("unknown format \"{}\" (expected table or json)", a.format));
  }
  const ModelParams planted = ModelParams::table_one();
  Cohort cohort;
  if (a.cohort.empty()) {
    FixtureOptions fo;
    fo.n = a.n;
    fo.seed = a.seed;
    cohort = make_fixture(fo).cohort;
  } else {
    cohort = load_cohort_csv(a.cohort);
  }
  const PipelineResult est = run_pipeline(cohort);
  const ModelParams& p = est.params;
  const NonNegativeSolution sol = solve_non_negative(p, 0.0);
  const PolicyComparison cmp = compare_policies(p, sol.contract, a.sim_n, a.seed);

  const Policy matched{PolicyKind::matched_optimal, sol.contract, std::nullopt};
  const Policy high{PolicyKind::pure_high, sol.contract, std::nullopt};
  const Policy low{PolicyKind::pure_low, sol.contract, std::nullopt};
  const PolicyExpectation em = expected_outcome(p, matched);
  const PolicyExpectation eh = expected_outcome(p, high);
  const PolicyExpectation el = expected_outcome(p, low);
  const PolicyReport& rm = cmp.reports[0];
  const PolicyReport& rh = cmp.reports[1];
  const PolicyReport& rl = cmp.reports[2];
  const std::string not_reproducible = "reference figure not reproducible under the model";

  std::vector<Row> rows;
  rows.push_back(check_row("pi00_hat", p.pi00, planted.pi00, planted.pi00, 0.02, "planted"));
  rows.push_back(check_row("pi01_hat", p.pi01, planted.pi01, planted.pi01, 0.02, "planted"));
  rows.push_back(check_row("pi10_hat", p.pi10, planted.pi10, planted.pi10, 0.02, "planted"));
  rows.push_back(check_row("pi11_hat", p.pi11, planted.pi11, planted.pi11, 0.02, "planted"));
  rows.push_back(check_row("gamma_hat", p.gamma, planted.gamma, planted.gamma, 0.02, "planted"));
  rows.push_back(check_row("p11 (t=0)", sol.contract.p11, kReportedP11, kReportedP11, 0.03, "1/pi11"));
  rows.push_back(check_row("incentive gap v2", sol.slack_v2, kReportedGap, kReportedGap, 0.03, "1 - pi01/pi11"));
  rows.push_back(check_row("expected payment", sol.optimal_value, kReportedPayment, kReportedPayment, 0.02, "gamma"));
  const double usd = a.f_dollars / p.disutility_f;
  rows.push_back(check_row("p11 dollars", sol.contract.p11 * usd, kReportedP11 * a.f_dollars, 11800.0 * a.f_dollars / 1e4,
                           0.03 * a.f_dollars, format_dollars(sol.contract.p11 * usd)));
  rows.push_back(check_row("incentive gap dollars", sol.slack_v2 * usd, kReportedGap * a.f_dollars,
                           1200.0 * a.f_dollars / 1e4, 0.03 * a.f_dollars, format_dollars(sol.slack_v2 * usd)));
  rows.push_back(check_row("expected payment dollars", sol.optimal_value * usd, kReportedPayment * a.f_dollars,
                           4400.0 * a.f_dollars / 1e4, 0.02 * a.f_dollars, format_dollars(sol.optimal_value * usd)));
  rows.push_back(check_row("matched survival", rm.survival_rate, em.survival, kReportedMatchedSurvival, 0.004,
                           not_reproducible));
  rows.push_back(check_row("matched payment", rm.mean_payment, em.payment, kReportedMatchedPayment, 0.004,
                           not_reproducible));
  rows.push_back(check_row("pure-high survival", rh.survival_rate, eh.survival, kReportedHighSurvival, 0.004,
                           not_reproducible));
  rows.push_back(check_row("pure-high payment", rh.mean_payment, eh.payment, kReportedHighPayment, 0.005));
  rows.push_back(check_row("pure-low survival", rl.survival_rate, el.survival, kReportedLowSurvival, 0.004,
                           not_reproducible));
  rows.push_back(flag_row("avg ratio dominance", cmp.avg_ratio_dominates, "matched-optimal vs pure-high"));
  rows.push_back(flag_row("marginal ratio dominance", cmp.marginal_ratio_dominates,
                          "holds only with the reference figures"));

  ojson bundle;
  bundle["estimated_params"] = params_json(p);
  bundle["contract"] = contract_json(sol.contract);
  bundle["incentive_gap"] = sol.slack_v2;
  bundle["expected_payment"] = sol.optimal_value;
  bundle["policies"] = nlohmann::ordered_json::parse(comparison_to_json(cmp));
  ojson table = ojson::array();
  for (const Row& r : rows) {
    table.push_back({{"quantity", r.quantity},
                     {"obtained", r.obtained},
                     {"expected", r.expected ? ojson(*r.expected) : ojson()},
                     {"reference", r.reference ? ojson(*r.reference) : ojson()},
                     {"tolerance", r.tolerance},
                     {"verdict", r.verdict},
                     {"note", r.note}});
  }
  bundle["table"] = table;

  if (!a.out_dir.empty()) {
    const fs::path dir(a.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error(ErrorKind::io, fmt::format("{}: {}", dir.string(), ec.message()));
    write_text_file(dir / "params.json", params_json(p).dump(2) + "\n");
    write_text_file(dir / "diagnostics.json", diagnostics_to_json(est) + "\n");
    write_text_file(dir / "histogram.csv", histogram_to_csv(est.diagnostics.histogram));
    write_text_file(dir / "contract.json", contract_json(sol.contract).dump(2) + "\n");
    write_text_file(dir / "policies.csv", reports_to_csv(cmp.reports));
    write_text_file(dir / "policies.dat", reports_to_bars(cmp.reports));
    write_text_file(dir / "reproduce.json", bundle.dump(2) + "\n");
  }
  out << (a.format == "json" ? bundle.dump(2) + "\n" : render_table(rows));
  return kExitOk;
}

// ---------------------------------------------------------------------------
// fixture

struct FixtureArgs {
  std::size_t n = 100000;
  std::uint64_t seed = kDefaultSeed;
  std::string planted;
  std::string out;
};

int run_fixture(const FixtureArgs& a, std::ostream& out) {
  FixtureOptions fo;
  fo.n = a.n;
  fo.seed = a.seed;
  if (!a.planted.empty()) fo.planted = load_params(a.planted);
  emit(out, a.out, cohort_to_csv(make_fixture(fo).cohort));
  return kExitOk;
}

}  // namespace

std::string format_dollars(double amount) {
  const std::string digits = fmt::format("{:.2f}", std::abs(amount));
  const std::size_t dot = digits.find('.');
  const std::string integer = digits.substr(0, dot);
  std::string grouped;
  for (std::size_t i = 0; i < integer.size(); ++i) {
    if (i > 0 && (integer.size() - i) % 3 == 0) grouped += ',';
    grouped += integer[i];
  }
  const bool negative = amount < 0 && digits != "0.00";
  return (negative ? "-$" : "$") + grouped + digits.substr(dot);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Optimal end-of-life care payment contracts: solve, estimate, simulate, verify."};
  app.name("eolpay");
  app.require_subcommand(1);

  SolveArgs solve;
  CLI::App* solve_cmd = app.add_subcommand("solve", "Compute an optimal contract");
  solve_cmd->add_option("--model", solve.model, "free | nonneg | nonneg-w | risk-averse")->capture_default_str();
  solve_cmd->add_option("--params", solve.params, "Parameter JSON file")->required();
  solve_cmd->add_option("--t", solve.t, "Member of the non-negative optimal family (0 = largest gap)")
      ->capture_default_str();
  solve_cmd->add_option("--p11", solve.p11, "Free-payment anchor p11")->capture_default_str();
  solve_cmd->add_option("--g", solve.g, "Utility transform: power:a or log")->capture_default_str();
  solve_cmd->add_option("--f-dollars", solve.f_dollars, "Dollar value of one F unit");
  solve_cmd->add_option("--out", solve.out, "Output JSON path (default stdout)");

  EstimateArgs estimate;
  CLI::App* estimate_cmd = app.add_subcommand("estimate", "Estimate model parameters from a cohort CSV");
  estimate_cmd->add_option("--cohort", estimate.cohort, "Cohort CSV (id,e,t,los,event,z1..zp)")->required();
  estimate_cmd->add_option("--cutoff", estimate.cutoff, "Response-score cutoff")->capture_default_str();
  estimate_cmd->add_option("--caliper", estimate.caliper, "Matching caliper or none")->capture_default_str();
  estimate_cmd->add_option("--criterion", estimate.criterion, "death-before-discharge | death-within:<days>")
      ->capture_default_str();
  estimate_cmd->add_option("--orientation", estimate.orientation, "survival | mortality")->capture_default_str();
  estimate_cmd->add_option("--phi", estimate.phi, "Payer weight phi")->capture_default_str();
  estimate_cmd->add_option("--F", estimate.f, "Provider disutility F")->capture_default_str();
  estimate_cmd->add_option("--bins", estimate.bins, "Score histogram bins")->capture_default_str();
  estimate_cmd->add_option("--out", estimate.out, "Parameter JSON path (default stdout)");
  estimate_cmd->add_option("--diagnostics", estimate.diagnostics, "Diagnostics JSON path");
  estimate_cmd->add_option("--histogram", estimate.histogram, "Score histogram CSV path");

  SimulateArgs simulate;
  CLI::App* simulate_cmd = app.add_subcommand("simulate", "Compare matched-optimal, pure-high and pure-low policies");
  simulate_cmd->add_option("--params", simulate.params, "Parameter JSON file")->required();
  simulate_cmd->add_option("--contract", simulate.contract, "Contract JSON file or from-solver")
      ->capture_default_str();
  simulate_cmd->add_option("--t", simulate.t, "Family member used with from-solver")->capture_default_str();
  simulate_cmd->add_option("--n", simulate.n, "Patients per policy")->capture_default_str()->check(CLI::PositiveNumber);
  simulate_cmd->add_option("--seed", simulate.seed, "Master seed")->capture_default_str();
  simulate_cmd->add_option("--w0", simulate.w0, "Pr(observed 0 | good responder)");
  simulate_cmd->add_option("--w1", simulate.w1, "Pr(observed 1 | bad responder)");
  simulate_cmd->add_option("--out", simulate.out, "Output path (default stdout)");
  simulate_cmd->add_option("--format", simulate.format, "csv | json | bars")->capture_default_str();

  VerifyArgs verify;
  CLI::App* verify_cmd = app.add_subcommand("verify", "Check closed forms against the LP oracle, or certify a contract");
  verify_cmd->add_option("--trials", verify.trials, "Random parameter draws")->capture_default_str();
  verify_cmd->add_option("--seed", verify.seed, "Seed")->capture_default_str();
  verify_cmd->add_option("--params", verify.params, "Parameter JSON (with --contract)");
  verify_cmd->add_option("--contract", verify.contract, "Contract JSON to certify");
  verify_cmd->add_option("--model", verify.model, "Model the contract is certified against")->capture_default_str();
  verify_cmd->add_option("--g", verify.g, "Utility transform for risk-averse")->capture_default_str();
  verify_cmd->add_option("--out", verify.out, "Output JSON path (default stdout)");

  ReproduceArgs reproduce;
  CLI::App* reproduce_cmd = app.add_subcommand("reproduce", "Estimate, solve and simulate on the synthetic fixture");
  reproduce_cmd->add_option("--cohort", reproduce.cohort, "Use this cohort CSV instead of the generated fixture");
  reproduce_cmd->add_option("--n", reproduce.n, "Fixture size")->capture_default_str()->check(CLI::PositiveNumber);
  reproduce_cmd->add_option("--seed", reproduce.seed, "Seed for fixture and simulation")->capture_default_str();
  reproduce_cmd->add_option("--sim-n", reproduce.sim_n, "Patients per simulated policy")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  reproduce_cmd->add_option("--f-dollars", reproduce.f_dollars, "Dollar value of one F unit")->capture_default_str();
  reproduce_cmd->add_option("--out-dir", reproduce.out_dir, "Write the full report bundle here");
  reproduce_cmd->add_option("--format", reproduce.format, "table | json")->capture_default_str();

  FixtureArgs fixture;
  CLI::App* fixture_cmd = app.add_subcommand("fixture", "Write the synthetic cohort as CSV");
  fixture_cmd->add_option("--n", fixture.n, "Records")->capture_default_str()->check(CLI::PositiveNumber);
  fixture_cmd->add_option("--seed", fixture.seed, "Seed")->capture_default_str();
  fixture_cmd->add_option("--planted", fixture.planted, "Parameter JSON with the planted cell rates");
  fixture_cmd->add_option("--out", fixture.out, "CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (solve_cmd->parsed()) {
      const ojson doc = solve_document(load_params(solve.params), solve);
      emit(out, solve.out, doc.dump(2) + "\n");
      return kExitOk;
    }
    if (estimate_cmd->parsed()) return run_estimate(estimate, out, err);
    if (simulate_cmd->parsed()) return run_simulate(simulate, out);
    if (verify_cmd->parsed()) return run_verify(verify, out, err);
    if (reproduce_cmd->parsed()) return run_reproduce(reproduce, out);
    if (fixture_cmd->parsed()) return run_fixture(fixture, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.is_input_error() ? kExitInput : kExitDomain;
  }
  return kExitInput;
}

}  // namespace eolpay::cli
