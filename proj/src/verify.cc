// Copyright 2026 The rrkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rrkit/verify.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "absl/strings/str_cat.h"
#include "rrkit/design.h"
#include "rrkit/device.h"
#include "rrkit/estimation.h"
#include "rrkit/format.h"
#include "rrkit/oracle.h"
#include "rrkit/privacy.h"
#include "rrkit/status.h"

namespace rrkit {
namespace {

constexpr double kPosteriorTolerance = 1e-12;
constexpr double kRelativeTolerance = 1e-12;
constexpr double kUnbiasednessTolerance = 1e-10;
constexpr double kGuaranteeSlack = 1e-9;
constexpr double kRoundTripTolerance = 1e-10;
constexpr double kTightnessNudge = 1e-6;
constexpr std::int64_t kVarianceSampleSize = 100;

const std::vector<double>& PGrid() {
  static const std::vector<double> grid = {0.1, 0.2, 0.3, 0.4, 0.5,
                                           0.6, 0.7, 0.8, 0.9};
  return grid;
}

double RelativeError(double got, double want) {
  return std::abs(got - want) / std::abs(want);
}

SupportSpec IntegerSupport(std::size_t m) {
  std::vector<double> values(m);
  std::iota(values.begin(), values.end(), 0.0);
  return *SupportSpec::AllStigmatizing(std::move(values));
}

// Tracks the worst value of a statistic plus any error hit while computing
// it inside a grid callback.
class Tracker {
 public:
  explicit Tracker(CheckResult& result) : result_(result) {
    result_.worst = -std::numeric_limits<double>::infinity();
  }

  // Returns the statistic so it can double as a grid objective.
  double Record(double value) {
    ++result_.cases;
    if (std::isnan(value)) value = std::numeric_limits<double>::infinity();
    result_.worst = std::max(result_.worst, value);
    return value;
  }
  double Fail(const absl::Status& status) {
    status_.Update(status);
    return Record(std::numeric_limits<double>::infinity());
  }
  const absl::Status& status() const { return status_; }

 private:
  CheckResult& result_;
  absl::Status status_;
};

absl::Status ForEachGridPopulation(
    std::size_t m, double step,
    const std::function<double(const PopulationModel&)>& body) {
  oracle::GridSearchOptions grid;
  grid.step = step;
  return oracle::SimplexGridSearch(body, oracle::Extremum::kMax, m, grid)
      .status();
}

void Finish(CheckResult& result, const Tracker& tracker) {
  result.passed = tracker.status().ok() &&
                  (result.strict ? result.worst < result.tolerance
                                 : result.worst <= result.tolerance);
  if (!tracker.status().ok()) {
    result.detail = std::string(tracker.status().message());
  }
}

absl::StatusOr<CheckResult> CheckPosterior(double step) {
  CheckResult result{.name = "posterior_closed_form_vs_bayes_enumeration",
                     .tolerance = kPosteriorTolerance};
  Tracker tracker(result);
  for (std::size_t m : {2, 3, 4}) {
    for (double p : PGrid()) {
      const Device device = *Device::Create(p, m);
      RRKIT_RETURN_IF_ERROR(ForEachGridPopulation(
          m, step, [&](const PopulationModel& pop) {
            absl::StatusOr<SquareMatrix> closed =
                RevealingProbabilities(device, pop);
            absl::StatusOr<SquareMatrix> bayes =
                oracle::BayesPosterior(device, pop);
            if (!closed.ok()) return tracker.Fail(closed.status());
            if (!bayes.ok()) return tracker.Fail(bayes.status());
            double worst = SquareMatrix::MaxAbsDifference(*closed, *bayes);
            for (std::size_t j = 0; j < m; ++j) {
              worst = std::max(worst, std::abs(closed->ColumnSum(j) - 1.0));
            }
            return tracker.Record(worst);
          }));
    }
  }
  Finish(result, tracker);
  return result;
}

absl::StatusOr<CheckResult> CheckAlpha(double step) {
  CheckResult result{.name = "alpha_full_max_vs_diagonal_and_bayes",
                     .tolerance = kPosteriorTolerance};
  Tracker tracker(result);
  for (std::size_t m : {2, 3, 4}) {
    for (double p : PGrid()) {
      const Device device = *Device::Create(p, m);
      RRKIT_RETURN_IF_ERROR(ForEachGridPopulation(
          m, step, [&](const PopulationModel& pop) {
            absl::StatusOr<AlphaResult> alpha = AlphaMeasure(device, pop);
            absl::StatusOr<double> brute = oracle::BruteForceAlpha(device, pop);
            if (!alpha.ok()) return tracker.Fail(alpha.status());
            if (!brute.ok()) return tracker.Fail(brute.status());
            double diagonal = 0.0;
            for (std::size_t j = 0; j < m; ++j) {
              diagonal = std::max(diagonal, alpha->alpha_ij(j, j));
            }
            return tracker.Record(
                std::max({std::abs(alpha->alpha - diagonal),
                          std::abs(alpha->alpha - alpha->alpha_reduced),
                          std::abs(alpha->alpha - *brute)}));
          }));
    }
  }
  Finish(result, tracker);
  return result;
}

absl::StatusOr<CheckResult> CheckMeanVariance(const VerifyOptions& options) {
  CheckResult result{.name = "variance_mean_vs_multinomial_identity",
                     .tolerance = kRelativeTolerance};
  Tracker tracker(result);
  for (std::size_t m : {2, 3, 4}) {
    const SupportSpec support = IntegerSupport(m);
    for (double p : PGrid()) {
      const Device device = *Device::Create(p, m);
      RRKIT_RETURN_IF_ERROR(ForEachGridPopulation(
          m, options.grid_step, [&](const PopulationModel& pop) {
            absl::StatusOr<double> got =
                options.variance_mean(device, support, pop,
                                      kVarianceSampleSize);
            absl::StatusOr<double> want = oracle::MultinomialVariance(
                device, support, pop, kVarianceSampleSize);
            if (!got.ok()) return tracker.Fail(got.status());
            if (!want.ok()) return tracker.Fail(want.status());
            return tracker.Record(RelativeError(*got, *want));
          }));
    }
  }
  Finish(result, tracker);
  return result;
}

absl::StatusOr<CheckResult> CheckMeanVarianceEnumeration(
    const VerifyOptions& options) {
  CheckResult result{.name = "variance_mean_vs_full_enumeration",
                     .tolerance = kRelativeTolerance};
  Tracker tracker(result);
  const double step = std::max(options.grid_step, 0.1);
  for (std::size_t m : {2, 3}) {
    const SupportSpec support = IntegerSupport(m);
    for (std::int64_t n = 1; n <= 4; ++n) {
      for (double p : {0.3, 0.5, 0.8}) {
        const Device device = *Device::Create(p, m);
        RRKIT_RETURN_IF_ERROR(ForEachGridPopulation(
            m, step, [&](const PopulationModel& pop) {
              absl::StatusOr<double> got =
                  options.variance_mean(device, support, pop, n);
              absl::StatusOr<double> want =
                  oracle::EnumeratedVariance(device, support, pop, n);
              if (!got.ok()) return tracker.Fail(got.status());
              if (!want.ok()) return tracker.Fail(want.status());
              return tracker.Record(RelativeError(*got, *want));
            }));
      }
    }
  }
  Finish(result, tracker);
  return result;
}

absl::StatusOr<CheckResult> CheckProportionVariance(
    const VerifyOptions& options) {
  CheckResult result{.name = "avg_variance_proportions_vs_lambda_form",
                     .tolerance = kRelativeTolerance};
  Tracker tracker(result);
  for (std::size_t m : {2, 3, 4}) {
    for (double p : PGrid()) {
      const Device device = *Device::Create(p, m);
      RRKIT_RETURN_IF_ERROR(ForEachGridPopulation(
          m, options.grid_step, [&](const PopulationModel& pop) {
            absl::StatusOr<double> got = options.avg_variance_proportions(
                device, pop, kVarianceSampleSize);
            absl::StatusOr<double> want = oracle::ProportionVarianceSum(
                device, pop, kVarianceSampleSize);
            if (!got.ok()) return tracker.Fail(got.status());
            if (!want.ok()) return tracker.Fail(want.status());
            return tracker.Record(RelativeError(*got, *want));
          }));
    }
  }
  Finish(result, tracker);
  return result;
}

absl::StatusOr<CheckResult> CheckUnbiasedness(double grid_step) {
  CheckResult result{.name = "unbiasedness_by_enumeration",
                     .tolerance = kUnbiasednessTolerance};
  Tracker tracker(result);
  const double step = std::max(grid_step, 0.1);
  for (std::size_t m : {2, 3}) {
    const SupportSpec support = IntegerSupport(m);
    for (std::int64_t n = 1; n <= 4; ++n) {
      for (double p : {0.3, 0.5, 0.8}) {
        const Device device = *Device::Create(p, m);
        RRKIT_RETURN_IF_ERROR(ForEachGridPopulation(
            m, step, [&](const PopulationModel& pop) {
              absl::StatusOr<std::vector<double>> lambda =
                  oracle::ResponseMarginal(device, pop);
              if (!lambda.ok()) return tracker.Fail(lambda.status());
              double expected_mu = 0.0;
              std::vector<double> expected_pi(m, 0.0);
              absl::Status inner;
              absl::Status st = oracle::EnumerateMultinomial(
                  *lambda, n,
                  [&](std::span<const std::int64_t> counts, double prob) {
                    absl::StatusOr<ResponseSample> sample =
                        ResponseSample::Create(
                            std::vector<std::int64_t>(counts.begin(),
                                                      counts.end()));
                    if (!sample.ok()) {
                      inner.Update(sample.status());
                      return;
                    }
                    absl::StatusOr<ProportionEstimates> est =
                        EstimateProportions(*sample, device);
                    absl::StatusOr<double> mu =
                        EstimateMean(*sample, device, support);
                    if (!est.ok() || !mu.ok()) {
                      inner.Update(est.status());
                      inner.Update(mu.status());
                      return;
                    }
                    expected_mu += prob * *mu;
                    for (std::size_t i = 0; i < m; ++i) {
                      expected_pi[i] += prob * est->raw[i];
                    }
                  });
              st.Update(inner);
              if (!st.ok()) return tracker.Fail(st);
              double worst =
                  std::abs(expected_mu - PopulationMean(support, pop));
              for (std::size_t i = 0; i < m; ++i) {
                worst = std::max(worst, std::abs(expected_pi[i] - pop[i]));
              }
              return tracker.Record(worst);
            }));
      }
    }
  }
  Finish(result, tracker);
  return result;
}

// Worst (alpha - xi) over the grid plus adversarial point at p = p0.
absl::StatusOr<CheckResult> CheckAlphaGuarantee(double step) {
  CheckResult result{.name = "alpha_guarantee_at_p0",
                     .tolerance = kGuaranteeSlack};
  Tracker tracker(result);
  for (std::size_t m : {2, 3, 4}) {
    for (double xi : {0.1, 0.2, 0.3, 0.4}) {
      RRKIT_ASSIGN_OR_RETURN(double p0, P0AllStigmatizing(m, xi));
      RRKIT_ASSIGN_OR_RETURN(Device device, Device::Create(p0, m));
      oracle::GridSearchOptions grid;
      grid.step = step;
      grid.extra_points.push_back(oracle::AlphaAdversarialPopulation(m, xi));
      RRKIT_ASSIGN_OR_RETURN(
          oracle::GridSearchResult worst,
          oracle::SimplexGridSearch(
              [&](const PopulationModel& pop) {
                absl::StatusOr<double> a = oracle::BruteForceAlpha(device, pop);
                return a.ok() ? *a : tracker.Fail(a.status());
              },
              oracle::Extremum::kMax, m, grid));
      tracker.Record(worst.value - xi);
    }
  }
  Finish(result, tracker);
  return result;
}

// Worst (xi - alpha) at the adversarial point with p just above p0; must be
// negative.
absl::StatusOr<CheckResult> CheckAlphaTightness() {
  CheckResult result{.name = "alpha_guarantee_tight_above_p0",
                     .tolerance = 0.0,
                     .strict = true};
  Tracker tracker(result);
  for (std::size_t m : {2, 3, 4}) {
    for (double xi : {0.1, 0.2, 0.3, 0.4}) {
      RRKIT_ASSIGN_OR_RETURN(double p0, P0AllStigmatizing(m, xi));
      RRKIT_ASSIGN_OR_RETURN(Device device,
                             Device::Create(p0 + kTightnessNudge, m));
      RRKIT_ASSIGN_OR_RETURN(
          PopulationModel pop,
          PopulationModel::Create(oracle::AlphaAdversarialPopulation(m, xi)));
      RRKIT_ASSIGN_OR_RETURN(double alpha, oracle::BruteForceAlpha(device, pop));
      tracker.Record(xi - alpha);
    }
  }
  Finish(result, tracker);
  return result;
}

struct BetaCase {
  std::size_t m;
  std::vector<std::size_t> nonstigmatizing;
  double xi;
  double c;
};

const std::vector<BetaCase>& BetaCases() {
  static const std::vector<BetaCase> cases = {
      {2, {0}, 0.1, 0.15}, {3, {0}, 0.1, 0.15}, {3, {0}, 0.2, 0.5},
      {4, {0}, 0.1, 0.3},  {4, {0, 1}, 0.1, 0.15}, {4, {0, 1}, 0.3, 0.6},
  };
  return cases;
}

// Worst (xi - beta) over the constrained grid at p = p0.
absl::StatusOr<CheckResult> CheckBetaGuarantee(double step) {
  CheckResult result{.name = "beta_guarantee_at_p0",
                     .tolerance = kGuaranteeSlack};
  Tracker tracker(result);
  for (const BetaCase& bc : BetaCases()) {
    RRKIT_ASSIGN_OR_RETURN(double p0, P0NonStigmatizing(bc.m, bc.xi, bc.c));
    RRKIT_ASSIGN_OR_RETURN(Device device, Device::Create(p0, bc.m));
    oracle::GridSearchOptions grid;
    grid.step = step;
    grid.constraint = oracle::MassConstraint{bc.nonstigmatizing, bc.c};
    grid.extra_points.push_back(
        oracle::BetaAdversarialPopulation(bc.m, bc.c, bc.nonstigmatizing));
    RRKIT_ASSIGN_OR_RETURN(
        oracle::GridSearchResult worst,
        oracle::SimplexGridSearch(
            [&](const PopulationModel& pop) {
              absl::StatusOr<double> b =
                  oracle::BruteForceBeta(device, pop, bc.nonstigmatizing);
              return b.ok() ? *b : -tracker.Fail(b.status());
            },
            oracle::Extremum::kMin, bc.m, grid));
    tracker.Record(bc.xi - worst.value);
  }
  Finish(result, tracker);
  return result;
}

// Worst (beta - xi) at the adversarial point with p just above p0; must be
// negative.
absl::StatusOr<CheckResult> CheckBetaTightness() {
  CheckResult result{.name = "beta_guarantee_tight_above_p0",
                     .tolerance = 0.0,
                     .strict = true};
  Tracker tracker(result);
  for (const BetaCase& bc : BetaCases()) {
    RRKIT_ASSIGN_OR_RETURN(double p0, P0NonStigmatizing(bc.m, bc.xi, bc.c));
    RRKIT_ASSIGN_OR_RETURN(Device device,
                           Device::Create(p0 + kTightnessNudge, bc.m));
    RRKIT_ASSIGN_OR_RETURN(
        PopulationModel pop,
        PopulationModel::Create(oracle::BetaAdversarialPopulation(
            bc.m, bc.c, bc.nonstigmatizing)));
    RRKIT_ASSIGN_OR_RETURN(
        double beta, oracle::BruteForceBeta(device, pop, bc.nonstigmatizing));
    tracker.Record(beta - bc.xi);
  }
  Finish(result, tracker);
  return result;
}

absl::StatusOr<CheckResult> CheckBoundRoundTrip() {
  CheckResult result{.name = "p0_vs_guaranteed_bound_round_trip",
                     .tolerance = kRoundTripTolerance};
  Tracker tracker(result);
  for (std::size_t m = 2; m <= 10; ++m) {
    for (int k = 1; k <= 19; ++k) {
      const double xi = 0.05 * k;
      RRKIT_ASSIGN_OR_RETURN(double p0, P0AllStigmatizing(m, xi));
      RRKIT_ASSIGN_OR_RETURN(Device device, Device::Create(p0, m));
      tracker.Record(std::abs(GuaranteedAlphaBound(device) - xi));
      for (double c = xi + 0.05; c < 0.999; c += 0.1) {
        RRKIT_ASSIGN_OR_RETURN(double p0b, P0NonStigmatizing(m, xi, c));
        RRKIT_ASSIGN_OR_RETURN(Device dev_b, Device::Create(p0b, m));
        RRKIT_ASSIGN_OR_RETURN(double bound, GuaranteedBetaBound(dev_b, c));
        tracker.Record(std::abs(bound - xi));
      }
    }
  }
  Finish(result, tracker);
  return result;
}

// Largest (Var(p_{k+1}) - Var(p_k)) over p-grids; must be negative.
absl::StatusOr<CheckResult> CheckMonotonicity(const VerifyOptions& options) {
  CheckResult result{.name = "variances_strictly_decreasing_in_p",
                     .tolerance = 0.0,
                     .strict = true};
  Tracker tracker(result);
  const double step = std::max(options.grid_step, 0.1);
  for (std::size_t m : {2, 3, 4}) {
    const SupportSpec support = IntegerSupport(m);
    RRKIT_RETURN_IF_ERROR(ForEachGridPopulation(
        m, step, [&](const PopulationModel& pop) {
          double prev_mu = std::numeric_limits<double>::infinity();
          double prev_pi = std::numeric_limits<double>::infinity();
          double worst = -std::numeric_limits<double>::infinity();
          for (double p : PGrid()) {
            const Device device = *Device::Create(p, m);
            absl::StatusOr<double> v_mu = options.variance_mean(
                device, support, pop, kVarianceSampleSize);
            absl::StatusOr<double> v_pi = options.avg_variance_proportions(
                device, pop, kVarianceSampleSize);
            if (!v_mu.ok()) return tracker.Fail(v_mu.status());
            if (!v_pi.ok()) return tracker.Fail(v_pi.status());
            if (std::isfinite(prev_mu)) {
              worst = std::max({worst, *v_mu - prev_mu, *v_pi - prev_pi});
            }
            prev_mu = *v_mu;
            prev_pi = *v_pi;
          }
          return tracker.Record(worst);
        }));
  }
  Finish(result, tracker);
  return result;
}

}  // namespace

bool VerifyReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.passed; });
}

absl::StatusOr<VerifyReport> RunVerification(const VerifyOptions& options) {
  VerifyOptions opts = options;
  if (!opts.variance_mean) opts.variance_mean = VarianceMeanTheoretical;
  if (!opts.avg_variance_proportions) {
    opts.avg_variance_proportions = AvgVarianceProportionsTheoretical;
  }
  // Validates the step before any work.
  RRKIT_RETURN_IF_ERROR(
      ForEachGridPopulation(2, opts.grid_step,
                            [](const PopulationModel&) { return 0.0; }));

  VerifyReport report;
  auto add = [&](absl::StatusOr<CheckResult> check) -> absl::Status {
    RRKIT_RETURN_IF_ERROR(check.status());
    report.checks.push_back(*std::move(check));
    return absl::OkStatus();
  };
  RRKIT_RETURN_IF_ERROR(add(CheckPosterior(opts.grid_step)));
  RRKIT_RETURN_IF_ERROR(add(CheckAlpha(opts.grid_step)));
  RRKIT_RETURN_IF_ERROR(add(CheckMeanVariance(opts)));
  RRKIT_RETURN_IF_ERROR(add(CheckMeanVarianceEnumeration(opts)));
  RRKIT_RETURN_IF_ERROR(add(CheckProportionVariance(opts)));
  RRKIT_RETURN_IF_ERROR(add(CheckUnbiasedness(opts.grid_step)));
  RRKIT_RETURN_IF_ERROR(add(CheckAlphaGuarantee(opts.grid_step)));
  RRKIT_RETURN_IF_ERROR(add(CheckAlphaTightness()));
  RRKIT_RETURN_IF_ERROR(add(CheckBetaGuarantee(opts.grid_step)));
  RRKIT_RETURN_IF_ERROR(add(CheckBetaTightness()));
  RRKIT_RETURN_IF_ERROR(add(CheckBoundRoundTrip()));
  RRKIT_RETURN_IF_ERROR(add(CheckMonotonicity(opts)));
  return report;
}

std::string FormatVerifyReport(const VerifyReport& report) {
  std::string out;
  for (const CheckResult& c : report.checks) {
    absl::StrAppend(&out, c.passed ? "PASS " : "FAIL ", c.name,
                    " cases=", c.cases,
                    " worst=", FormatSignificant17(c.worst),
                    c.strict ? " required<" : " required<=",
                    FormatShortest(c.tolerance));
    if (!c.detail.empty()) absl::StrAppend(&out, " (", c.detail, ")");
    out += '\n';
  }
  absl::StrAppend(&out, report.all_passed() ? "ALL CHECKS PASSED"
                                            : "VERIFICATION FAILED",
                  "\n");
  return out;
}

}  // namespace rrkit
