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

#include "rrkit/cli.h"

#include <charconv>
#include <cstdlib>
#include <optional>
#include <string_view>
#include <thread>

#include "CLI11.hpp"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "rrkit/design.h"
#include "rrkit/documents.h"
#include "rrkit/estimation.h"
#include "rrkit/privacy.h"
#include "rrkit/simulation.h"
#include "rrkit/status.h"

namespace rrkit {
namespace {

int ExitCodeFor(const absl::Status& status) {
  const std::string code = ErrorCodeOf(status);
  if (code == ErrorCodeName(ErrorCode::kIoError)) return kExitIo;
  if (code == ErrorCodeName(ErrorCode::kInternal)) {
    return kExitVerificationFailed;
  }
  return kExitInvalidInput;
}

int ReportError(const absl::Status& status, std::ostream& err) {
  OrderedJson doc;
  doc["code"] = ErrorCodeOf(status);
  doc["message"] = std::string(status.message());
  err << doc.dump() << '\n';
  return ExitCodeFor(status);
}

absl::Status Emit(std::string_view document, const std::string& out_path,
                  std::ostream& out) {
  if (out_path.empty()) {
    out << document;
    return absl::OkStatus();
  }
  return WriteFile(out_path, document);
}

template <typename T>
absl::StatusOr<T> ParseNumber(std::string_view text) {
  T value{};
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    return InvalidInput(ErrorCode::kBadGrid,
                        absl::StrCat("cannot parse '", std::string(text), "' as a number"));
  }
  return value;
}

template <typename T>
absl::StatusOr<std::vector<T>> ParseList(const std::string& text,
                                         const char* flag) {
  std::vector<T> out;
  for (absl::string_view piece : absl::StrSplit(text, ',')) {
    if (piece.empty()) {
      return InvalidInput(ErrorCode::kBadGrid,
                          absl::StrCat(flag, " has an empty entry"));
    }
    RRKIT_ASSIGN_OR_RETURN(
        T value, ParseNumber<T>(std::string_view(piece.data(), piece.size())));
    out.push_back(value);
  }
  return out;
}

// Uses --p when given, otherwise the designed p0 of the survey's policy.
absl::StatusOr<Device> ResolveDevice(const SurveyDefinition& survey,
                                     std::optional<double> p) {
  if (p.has_value()) return Device::Create(*p, survey.support.size());
  if (!survey.policy.has_value()) {
    return InvalidInput(ErrorCode::kMissingP,
                        "pass --p or give the survey a 'privacy' policy");
  }
  RRKIT_ASSIGN_OR_RETURN(DesignCertificate cert,
                         DesignDevice(*survey.policy, survey.support));
  return cert.device;
}

struct Options {
  std::string survey;
  std::string out;
  std::string counts;
  std::string per_replicate;
  std::string m_list;
  std::string xi_list;
  std::string format = "csv";
  double p = 0.0;
  bool p_given = false;
  std::int64_t n = 0;
  std::int64_t replicates = 0;
  std::uint64_t seed = 42;
  double grid_step = 0.05;
};

absl::StatusOr<std::string> DesignCommand(const Options& opt) {
  RRKIT_ASSIGN_OR_RETURN(SurveyDefinition survey, LoadSurvey(opt.survey));
  if (!survey.policy.has_value()) {
    return InvalidInput(ErrorCode::kMissingPolicy,
                        "survey has no 'privacy' policy");
  }
  RRKIT_ASSIGN_OR_RETURN(DesignCertificate cert,
                         DesignDevice(*survey.policy, survey.support));
  return DumpJson(CertificateToJson(cert));
}

absl::StatusOr<std::string> TableCommand(const Options& opt) {
  RRKIT_ASSIGN_OR_RETURN(std::vector<std::size_t> m_values,
                         ParseList<std::size_t>(opt.m_list, "--m"));
  RRKIT_ASSIGN_OR_RETURN(std::vector<double> xi_values,
                         ParseList<double>(opt.xi_list, "--xi"));
  RRKIT_ASSIGN_OR_RETURN(P0Table table, MakeP0Table(std::move(m_values),
                                                    std::move(xi_values)));
  if (opt.format == "json") return DumpJson(P0TableToJson(table));
  return P0TableToCsv(table);
}

absl::StatusOr<std::string> SimulateCommand(const Options& opt) {
  RRKIT_ASSIGN_OR_RETURN(SurveyDefinition survey, LoadSurvey(opt.survey));
  if (!survey.population.has_value()) {
    return InvalidInput(ErrorCode::kMissingPi,
                        "simulation needs the survey's 'pi'");
  }
  RRKIT_ASSIGN_OR_RETURN(
      Device device,
      ResolveDevice(survey, opt.p_given ? std::optional<double>(opt.p)
                                        : std::nullopt));
  SimulationConfig config{
      .support = survey.support,
      .population = *survey.population,
      .device = device,
      .n = opt.n,
      .replicates = opt.replicates,
      .seed = opt.seed,
      .keep_replicates = !opt.per_replicate.empty(),
  };
  RRKIT_ASSIGN_OR_RETURN(SimulationSummary summary,
                         RunReplicates(config, ThreadsFromEnvironment()));
  if (!opt.per_replicate.empty()) {
    RRKIT_RETURN_IF_ERROR(
        WriteFile(opt.per_replicate, ReplicatesToCsv(summary)));
  }
  return DumpJson(SimulationSummaryToJson(summary));
}

absl::StatusOr<std::string> EstimateCommand(const Options& opt) {
  RRKIT_ASSIGN_OR_RETURN(SurveyDefinition survey, LoadSurvey(opt.survey));
  RRKIT_ASSIGN_OR_RETURN(std::vector<std::int64_t> counts,
                         LoadCounts(opt.counts));
  if (counts.size() != survey.support.size()) {
    return InvalidInput(ErrorCode::kDimensionMismatch,
                        absl::StrCat("counts have ", counts.size(),
                                     " entries but the survey has ",
                                     survey.support.size(), " values"));
  }
  RRKIT_ASSIGN_OR_RETURN(
      Device device,
      ResolveDevice(survey, opt.p_given ? std::optional<double>(opt.p)
                                        : std::nullopt));
  RRKIT_ASSIGN_OR_RETURN(ResponseSample sample,
                         ResponseSample::Create(std::move(counts)));
  RRKIT_ASSIGN_OR_RETURN(EstimateReport report,
                         Estimate(sample, device, survey.support));
  return DumpJson(EstimateReportToJson(report));
}

absl::StatusOr<std::string> PrivacyCommand(const Options& opt) {
  RRKIT_ASSIGN_OR_RETURN(SurveyDefinition survey, LoadSurvey(opt.survey));
  if (!survey.population.has_value()) {
    return InvalidInput(ErrorCode::kMissingPi,
                        "privacy assessment needs the survey's 'pi'");
  }
  if (!survey.policy.has_value()) {
    return InvalidInput(ErrorCode::kMissingPolicy,
                        "survey has no 'privacy' policy");
  }
  RRKIT_ASSIGN_OR_RETURN(
      Device device,
      ResolveDevice(survey, opt.p_given ? std::optional<double>(opt.p)
                                        : std::nullopt));
  RRKIT_ASSIGN_OR_RETURN(
      PrivacyReport report,
      AssessPrivacy(device, *survey.population, *survey.policy));
  return DumpJson(PrivacyReportToJson(report, device.p()));
}

int VerifyCommand(const Options& opt, const CliHooks& hooks, std::ostream& out,
                  std::ostream& err) {
  VerifyOptions verify = hooks.verify_overrides.value_or(VerifyOptions{});
  verify.grid_step = opt.grid_step;
  absl::StatusOr<VerifyReport> report = RunVerification(verify);
  if (!report.ok()) return ReportError(report.status(), err);
  if (absl::Status st = Emit(FormatVerifyReport(*report), opt.out, out);
      !st.ok()) {
    return ReportError(st, err);
  }
  return report->all_passed() ? kExitOk : kExitVerificationFailed;
}

}  // namespace

int ThreadsFromEnvironment() {
  if (const char* env = std::getenv(kThreadsEnvVar); env != nullptr) {
    int value = 0;
    const std::string_view text(env);
    auto [ptr, ec] =
        std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec == std::errc() && ptr == text.data() + text.size() && value > 0) {
      return value;
    }
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err, const CliHooks& hooks) {
  Options opt;
  CLI::App app{"Design, simulate and verify randomized response surveys.",
               "rrkit"};
  app.require_subcommand(1);

  CLI::App* design = app.add_subcommand(
      "design", "Optimal device parameter p0 for the survey's privacy policy");
  design->add_option("--survey", opt.survey, "Survey definition JSON")
      ->required();
  design->add_option("--out", opt.out, "Write the certificate here");

  CLI::App* table = app.add_subcommand(
      "table", "p0 table for all-stigmatizing surveys");
  table->add_option("--m", opt.m_list, "Comma-separated support sizes")
      ->required();
  table->add_option("--xi", opt.xi_list, "Comma-separated privacy levels")
      ->required();
  table->add_option("--format", opt.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  table->add_option("--out", opt.out, "Write the table here");

  CLI::App* simulate =
      app.add_subcommand("simulate", "Monte Carlo replication of a survey");
  simulate->add_option("--survey", opt.survey, "Survey definition JSON")
      ->required();
  simulate->add_option("--n", opt.n, "Respondents per survey")->required();
  simulate->add_option("--replicates", opt.replicates, "Number of surveys")
      ->required();
  simulate->add_option("--seed", opt.seed, "Root seed");
  CLI::Option* sim_p =
      simulate->add_option("--p", opt.p, "Device parameter (default: p0)");
  simulate->add_option("--out", opt.out, "Write the summary here");
  simulate->add_option("--per-replicate", opt.per_replicate,
                       "Write per-replicate estimates as CSV here");

  CLI::App* estimate = app.add_subcommand(
      "estimate", "Estimate the mean and proportions from response counts");
  estimate->add_option("--survey", opt.survey, "Survey definition JSON")
      ->required();
  estimate->add_option("--counts", opt.counts, "Response counts JSON")
      ->required();
  CLI::Option* est_p =
      estimate->add_option("--p", opt.p, "Device parameter (default: p0)");
  estimate->add_option("--out", opt.out, "Write the report here");

  CLI::App* privacy = app.add_subcommand(
      "privacy", "Privacy measures of a device for a known population");
  privacy->add_option("--survey", opt.survey, "Survey definition JSON")
      ->required();
  CLI::Option* priv_p =
      privacy->add_option("--p", opt.p, "Device parameter (default: p0)");
  privacy->add_option("--out", opt.out, "Write the report here");

  CLI::App* verify = app.add_subcommand(
      "verify", "Check closed forms against brute-force oracles");
  verify->add_option("--grid-step", opt.grid_step,
                     "Simplex grid resolution (must divide 1)");
  verify->add_option("--out", opt.out, "Write the report here");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    return ReportError(InvalidInput(ErrorCode::kUsage, e.what()), err);
  }
  opt.p_given = (sim_p->count() + est_p->count() + priv_p->count()) > 0;

  if (verify->parsed()) return VerifyCommand(opt, hooks, out, err);

  absl::StatusOr<std::string> document;
  if (design->parsed()) {
    document = DesignCommand(opt);
  } else if (table->parsed()) {
    document = TableCommand(opt);
  } else if (simulate->parsed()) {
    document = SimulateCommand(opt);
  } else if (estimate->parsed()) {
    document = EstimateCommand(opt);
  } else if (privacy->parsed()) {
    document = PrivacyCommand(opt);
  }
  if (!document.ok()) return ReportError(document.status(), err);
  if (absl::Status st = Emit(*document, opt.out, out); !st.ok()) {
    return ReportError(st, err);
  }
  return kExitOk;
}

}  // namespace rrkit
