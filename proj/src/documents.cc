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

#include "rrkit/documents.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include "absl/strings/str_cat.h"
#include "rrkit/format.h"
#include "rrkit/status.h"

namespace rrkit {
namespace {

using Json = nlohmann::json;

absl::Status ParseError(std::string_view message) {
  return InvalidInput(ErrorCode::kParseError, message);
}

absl::StatusOr<Json> ParseText(std::string_view text) {
  Json doc = Json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) return ParseError("input is not valid JSON");
  return doc;
}

absl::StatusOr<double> NumberField(const Json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    return ParseError(absl::StrCat("missing required key '", key, "'"));
  }
  if (!it->is_number()) {
    return ParseError(absl::StrCat("key '", key, "' must be a number"));
  }
  return it->get<double>();
}

absl::StatusOr<std::vector<double>> NumberArray(const Json& value,
                                                const char* key) {
  if (!value.is_array()) {
    return ParseError(absl::StrCat("key '", key, "' must be an array"));
  }
  std::vector<double> out;
  for (const Json& v : value) {
    if (!v.is_number()) {
      return ParseError(
          absl::StrCat("key '", key, "' must contain only numbers"));
    }
    out.push_back(v.get<double>());
  }
  return out;
}

absl::StatusOr<std::vector<std::size_t>> IndexArray(const Json& value,
                                                    const char* key) {
  if (!value.is_array()) {
    return ParseError(absl::StrCat("key '", key, "' must be an array"));
  }
  std::vector<std::size_t> out;
  for (const Json& v : value) {
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
      return ParseError(absl::StrCat(
          "key '", key, "' must contain only non-negative integers"));
    }
    out.push_back(v.get<std::size_t>());
  }
  return out;
}

absl::StatusOr<PrivacyPolicy> ParsePolicy(const Json& obj,
                                          std::size_t m) {
  if (!obj.is_object()) return ParseError("'privacy' must be an object");
  auto mode_it = obj.find("mode");
  if (mode_it == obj.end() || !mode_it->is_string()) {
    return ParseError("'privacy.mode' must be a string");
  }
  const std::string mode = mode_it->get<std::string>();
  RRKIT_ASSIGN_OR_RETURN(double xi, NumberField(obj, "xi"));
  if (mode == PrivacyModeName(PrivacyMode::kAllStigmatizing)) {
    return PrivacyPolicy::AllStigmatizing(xi);
  }
  if (mode == PrivacyModeName(PrivacyMode::kNonStigmatizingSubset)) {
    RRKIT_ASSIGN_OR_RETURN(double c, NumberField(obj, "c"));
    auto idx_it = obj.find("nonstigmatizing");
    if (idx_it == obj.end()) {
      return ParseError("missing required key 'nonstigmatizing'");
    }
    RRKIT_ASSIGN_OR_RETURN(std::vector<std::size_t> indices,
                           IndexArray(*idx_it, "nonstigmatizing"));
    for (std::size_t idx : indices) {
      if (idx >= m) {
        return InvalidInput(ErrorCode::kIndexOutOfRange,
                            absl::StrCat("non-stigmatizing index ", idx,
                                         " is outside [0, ", m, ")"));
      }
    }
    return PrivacyPolicy::NonStigmatizingSubset(xi, c, std::move(indices));
  }
  return ParseError(absl::StrCat("unknown privacy mode '", mode, "'"));
}

OrderedJson DoubleArray(std::span<const double> values) {
  OrderedJson out = OrderedJson::array();
  for (double v : values) out.push_back(v);
  return out;
}

OrderedJson MatrixToJson(const SquareMatrix& matrix) {
  OrderedJson rows = OrderedJson::array();
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    rows.push_back(DoubleArray(matrix.row(i)));
  }
  return rows;
}

void DumpRecursive(const OrderedJson& value, int depth, std::string& out) {
  const std::string indent(static_cast<std::size_t>(depth) * 2, ' ');
  const std::string child_indent(static_cast<std::size_t>(depth + 1) * 2, ' ');
  switch (value.type()) {
    case OrderedJson::value_t::number_float: {
      const double v = value.get<double>();
      out += std::isfinite(v) ? FormatSignificant17(v) : "null";
      return;
    }
    case OrderedJson::value_t::array: {
      if (value.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      bool flat = true;
      for (const auto& v : value) flat = flat && v.is_primitive();
      out += '[';
      bool first = true;
      for (const auto& v : value) {
        if (!first) out += flat ? ", " : ",";
        first = false;
        if (!flat) out += "\n" + child_indent;
        DumpRecursive(v, depth + 1, out);
      }
      if (!flat) out += "\n" + indent;
      out += ']';
      return;
    }
    case OrderedJson::value_t::object: {
      if (value.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (const auto& [key, v] : value.items()) {
        if (!first) out += ',';
        first = false;
        out += "\n" + child_indent;
        out += OrderedJson(key).dump();
        out += ": ";
        DumpRecursive(v, depth + 1, out);
      }
      out += "\n" + indent + "}";
      return;
    }
    default:
      out += value.dump();
      return;
  }
}

}  // namespace

absl::StatusOr<SurveyDefinition> ParseSurvey(std::string_view text) {
  RRKIT_ASSIGN_OR_RETURN(Json doc, ParseText(text));
  if (!doc.is_object()) return ParseError("survey must be a JSON object");

  auto values_it = doc.find("values");
  if (values_it == doc.end()) {
    return ParseError("missing required key 'values'");
  }
  RRKIT_ASSIGN_OR_RETURN(std::vector<double> values,
                         NumberArray(*values_it, "values"));

  auto stigma_it = doc.find("stigmatizing");
  if (stigma_it == doc.end()) {
    return ParseError("missing required key 'stigmatizing'");
  }
  if (!stigma_it->is_array()) {
    return ParseError("key 'stigmatizing' must be an array");
  }
  std::vector<bool> stigmatizing;
  for (const Json& v : *stigma_it) {
    if (!v.is_boolean()) {
      return ParseError("key 'stigmatizing' must contain only booleans");
    }
    stigmatizing.push_back(v.get<bool>());
  }
  RRKIT_ASSIGN_OR_RETURN(
      SupportSpec support,
      SupportSpec::Create(std::move(values), std::move(stigmatizing)));
  SurveyDefinition survey{std::move(support), std::nullopt, std::nullopt};

  if (auto pi_it = doc.find("pi"); pi_it != doc.end() && !pi_it->is_null()) {
    RRKIT_ASSIGN_OR_RETURN(std::vector<double> pi, NumberArray(*pi_it, "pi"));
    if (pi.size() != survey.support.size()) {
      return InvalidInput(ErrorCode::kDimensionMismatch,
                          absl::StrCat("'pi' has ", pi.size(),
                                       " entries but there are ",
                                       survey.support.size(), " values"));
    }
    RRKIT_ASSIGN_OR_RETURN(survey.population,
                           PopulationModel::Create(std::move(pi)));
  }

  if (auto pol_it = doc.find("privacy");
      pol_it != doc.end() && !pol_it->is_null()) {
    RRKIT_ASSIGN_OR_RETURN(PrivacyPolicy policy,
                           ParsePolicy(*pol_it, survey.support.size()));
    RRKIT_ASSIGN_OR_RETURN(survey.policy,
                           ValidatePolicy(policy, survey.support));
  }
  return survey;
}

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return MakeError(absl::StatusCode::kNotFound, ErrorCode::kIoError,
                     absl::StrCat("cannot open '", path, "'"));
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

absl::Status WriteFile(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    return MakeError(absl::StatusCode::kUnavailable, ErrorCode::kIoError,
                     absl::StrCat("cannot write '", path, "'"));
  }
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) {
    return MakeError(absl::StatusCode::kUnavailable, ErrorCode::kIoError,
                     absl::StrCat("write to '", path, "' failed"));
  }
  return absl::OkStatus();
}

absl::StatusOr<SurveyDefinition> LoadSurvey(const std::string& path) {
  RRKIT_ASSIGN_OR_RETURN(std::string text, ReadFile(path));
  return ParseSurvey(text);
}

absl::StatusOr<std::vector<std::int64_t>> ParseCounts(std::string_view text) {
  RRKIT_ASSIGN_OR_RETURN(Json doc, ParseText(text));
  const Json* array = &doc;
  if (doc.is_object()) {
    auto it = doc.find("counts");
    if (it == doc.end()) return ParseError("missing required key 'counts'");
    array = &*it;
  }
  if (!array->is_array()) return ParseError("counts must be an array");
  std::vector<std::int64_t> counts;
  for (const Json& v : *array) {
    if (!v.is_number_integer()) {
      return ParseError("counts must contain only integers");
    }
    counts.push_back(v.get<std::int64_t>());
  }
  return counts;
}

absl::StatusOr<std::vector<std::int64_t>> LoadCounts(const std::string& path) {
  RRKIT_ASSIGN_OR_RETURN(std::string text, ReadFile(path));
  return ParseCounts(text);
}

std::string DumpJson(const OrderedJson& value) {
  std::string out;
  DumpRecursive(value, 0, out);
  out += '\n';
  return out;
}

OrderedJson EstimateReportToJson(const EstimateReport& report) {
  OrderedJson out;
  out["mu_hat"] = report.mu_hat;
  out["pi_hat_raw"] = DoubleArray(report.pi_hat_raw);
  out["pi_hat_truncated"] = DoubleArray(report.pi_hat_truncated);
  out["var_mu_plugin"] = report.var_mu_plugin;
  out["flags"] = report.flags;
  return out;
}

OrderedJson PrivacyReportToJson(const PrivacyReport& report, double p) {
  OrderedJson out;
  out["mode"] = std::string(PrivacyModeName(report.mode));
  out["p"] = p;
  if (report.alpha.has_value()) {
    out["alpha"] = report.alpha->alpha;
    OrderedJson argmax = OrderedJson::array();
    for (const IndexPair& ij : report.alpha->argmax) {
      argmax.push_back({ij.true_index, ij.response});
    }
    out["alpha_argmax"] = std::move(argmax);
  } else {
    out["alpha"] = nullptr;
    out["alpha_argmax"] = nullptr;
  }
  if (report.beta.has_value()) {
    out["beta"] = report.beta->beta;
    out["beta_argmin"] = report.beta->argmin;
  } else {
    out["beta"] = nullptr;
    out["beta_argmin"] = nullptr;
  }
  out["posterior"] = MatrixToJson(report.posterior);
  out["guaranteed_bound"] = report.guaranteed_bound;
  return out;
}

OrderedJson CertificateToJson(const DesignCertificate& certificate) {
  OrderedJson out;
  out["p0"] = certificate.p0;
  out["mode"] = std::string(PrivacyModeName(certificate.mode));
  out["xi"] = certificate.xi;
  if (certificate.c.has_value()) {
    out["c"] = *certificate.c;
  } else {
    out["c"] = nullptr;
  }
  out["m"] = certificate.m;
  out["t"] = certificate.t;
  out["guarantee_statement"] = certificate.guarantee_statement;
  return out;
}

OrderedJson P0TableToJson(const P0Table& table) {
  OrderedJson out;
  out["decimals"] = kTableDecimals;
  out["xi"] = DoubleArray(table.xi_values);
  OrderedJson rows = OrderedJson::array();
  for (std::size_t r = 0; r < table.m_values.size(); ++r) {
    OrderedJson row;
    row["m"] = table.m_values[r];
    row["p0"] = DoubleArray(table.exact[r]);
    OrderedJson display = OrderedJson::array();
    for (double v : table.rounded[r]) {
      display.push_back(FormatFixed(v, kTableDecimals));
    }
    row["p0_rounded"] = std::move(display);
    rows.push_back(std::move(row));
  }
  out["rows"] = std::move(rows);
  return out;
}

OrderedJson SimulationSummaryToJson(const SimulationSummary& summary) {
  OrderedJson out;
  out["replicates"] = summary.replicates;
  out["n"] = summary.n;
  out["seed"] = summary.seed;
  out["p"] = summary.p;
  out["mu_true"] = summary.mu_true;
  out["mean_mu_hat"] = summary.mean_mu_hat;
  out["theoretical_var"] = summary.theoretical_var;
  if (summary.empirical_var.has_value()) {
    out["empirical_var"] = *summary.empirical_var;
    out["variance_ratio"] = *summary.variance_ratio;
    out["mc_se_mean"] = *summary.mc_se_mean;
    out["mc_se_var"] = *summary.mc_se_var;
  }
  return out;
}

std::string P0TableToCsv(const P0Table& table) {
  std::string out = "m";
  for (double xi : table.xi_values) absl::StrAppend(&out, ",", FormatShortest(xi));
  out += '\n';
  for (std::size_t r = 0; r < table.m_values.size(); ++r) {
    absl::StrAppend(&out, table.m_values[r]);
    for (double v : table.rounded[r]) {
      absl::StrAppend(&out, ",", FormatFixed(v, kTableDecimals));
    }
    out += '\n';
  }
  return out;
}

std::string ReplicatesToCsv(const SimulationSummary& summary) {
  std::string out = "replicate,mu_hat";
  const std::size_t m =
      summary.records.empty() ? 0 : summary.records.front().pi_hat_raw.size();
  for (std::size_t i = 1; i <= m; ++i) absl::StrAppend(&out, ",pi_hat_raw_", i);
  out += '\n';
  for (const ReplicateRecord& rec : summary.records) {
    absl::StrAppend(&out, rec.replicate, ",", FormatSignificant17(rec.mu_hat));
    for (double v : rec.pi_hat_raw) {
      absl::StrAppend(&out, ",", FormatSignificant17(v));
    }
    out += '\n';
  }
  return out;
}

}  // namespace rrkit
