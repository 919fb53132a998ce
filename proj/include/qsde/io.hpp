// Copyright 2026 The qsde-elim Authors
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

/**
 * @file io.hpp
 * Text and JSON forms of operators, reports and study rows.
 *
 * Matrices are row-major nested arrays of [re, im] pairs. Floating-point
 * text uses std::to_chars with 17 significant digits, so output is
 * locale-independent and round-trips exactly.
 */
#pragma once

#include <array>
#include <charconv>
#include <cmath>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qsde/convergence.hpp"
#include "qsde/elimination.hpp"
#include "qsde/operator.hpp"
#include "qsde/qsde_model.hpp"

namespace qsde {

using Json = nlohmann::json;

/// %.17g-equivalent text, independent of the C locale.
inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

/// "re+imi" / "re-imi".
inline std::string format_complex(Complex z) {
  std::string im = format_double(z.imag());
  if (im.front() != '-') im = "+" + im;
  return format_double(z.real()) + im + "i";
}

/// Per-channel values joined with ';' (commas are the CSV separator).
inline std::string format_complex_list(const std::vector<Complex>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ";" : "") + format_complex(v[i]);
  return out;
}

namespace detail {

inline double parse_real(std::string_view s, std::string_view whole) {
  double v = 0.0;
  if (s.empty()) throw ParseError("empty number in '" + std::string(whole) + "'");
  if (s.front() == '+') s.remove_prefix(1);
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw ParseError("invalid number '" + std::string(whole) + "'");
  }
  return v;
}

}  // namespace detail

/// Parses "a", "a+bi", "a-bi", "bi", "i", "-i".
inline Complex parse_complex(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (c != ' ') s += c;
  }
  if (s.empty()) throw ParseError("empty complex number");
  if (s.back() != 'i') return {detail::parse_real(s, text), 0.0};
  s.pop_back();
  // Split at the last sign that is not leading and not an exponent sign.
  std::size_t split = std::string::npos;
  for (std::size_t i = s.size(); i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  const std::string re = split == std::string::npos ? "" : s.substr(0, split);
  std::string im = split == std::string::npos ? s : s.substr(split);
  if (im.empty() || im == "+") im = "1";
  if (im == "-") im = "-1";
  return {re.empty() ? 0.0 : detail::parse_real(re, text), detail::parse_real(im, text)};
}

/// Comma-separated complex values, one per channel.
inline std::vector<Complex> parse_complex_list(std::string_view text) {
  std::vector<Complex> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    out.push_back(parse_complex(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

inline Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

inline Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json operator_to_json(const Operator& x) { return matrix_to_json(x.matrix()); }

/// A scalar given as a JSON number or an [re, im] pair.
inline Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) return {j[0].get<double>(), j[1].get<double>()};
  throw ParseError("expected a number or an [re, im] pair, got " + j.dump());
}

/// Nested rows of [re, im] pairs (plain numbers are accepted as real entries).
inline Matrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("matrix must be a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  if (!j[0].is_array() || j[0].empty()) throw ParseError("matrix rows must be non-empty arrays");
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) throw ParseError("matrix rows differ in length");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
  }
  if (!all_finite(m)) throw ParseError("matrix has non-finite entries");
  return m;
}

inline Json coefficients_to_json(const QsdeCoefficients& c) {
  Json out;
  out["channels"] = c.channels;
  out["space"] = c.space.factor_dims();
  out["K"] = operator_to_json(c.drift);
  out["L"] = Json::array();
  out["M"] = Json::array();
  out["N"] = Json::array();
  for (std::size_t i = 0; i < c.annihilation.size(); ++i) {
    out["L"].push_back(operator_to_json(c.annihilation[i]));
    out["M"].push_back(operator_to_json(c.creation[i]));
    Json row = Json::array();
    for (const auto& x : c.scattering[i]) row.push_back(operator_to_json(x));
    out["N"].push_back(std::move(row));
  }
  return out;
}

inline Json elimination_to_json(const std::string& name, const EliminationResult& r) {
  Json out;
  out["model"] = name;
  out["limit"] = coefficients_to_json(r.limit);
  out["compression"] = matrix_to_json(r.compression);
  return out;
}

inline Json report_to_json(const ValidationReport& report) {
  Json checks = Json::array();
  for (const auto& c : report.checks) {
    Json item;
    item["name"] = c.name;
    item["max_violation"] = std::isfinite(c.max_violation) ? Json(c.max_violation) : Json("inf");
    item["tolerance"] = c.tolerance;
    item["passed"] = c.passed;
    if (!c.detail.empty()) item["detail"] = c.detail;
    checks.push_back(std::move(item));
  }
  Json out;
  out["passed"] = report.passed();
  out["checks"] = std::move(checks);
  return out;
}

inline std::string report_to_text(const ValidationReport& report) {
  std::ostringstream os;
  for (const auto& c : report.checks) {
    os << (c.passed ? "PASS " : "FAIL ") << c.name << " violation=" << format_double(c.max_violation)
       << " tolerance=" << format_double(c.tolerance);
    if (!c.detail.empty()) os << " (" << c.detail << ")";
    os << '\n';
  }
  os << (report.passed() ? "all checks passed" : "validation failed") << '\n';
  return os.str();
}

inline const char* to_string(CutoffStatus s) {
  switch (s) {
    case CutoffStatus::not_checked: return "not_checked";
    case CutoffStatus::ok: return "ok";
    case CutoffStatus::suspect: return "CutoffSuspect";
  }
  return "unknown";
}

inline constexpr const char* kConvergenceCsvHeader = "fixture,kind,k,t_max,grid_points,alpha,beta,value";

/// CSV rows (header included). Generator studies have no time grid and report t_max = 0, grid_points = 0.
inline std::string convergence_csv(const ConvergenceReport& r) {
  std::string out = std::string(kConvergenceCsvHeader) + "\n";
  const std::string alpha = format_complex_list(r.amplitudes.alpha);
  const std::string beta = format_complex_list(r.amplitudes.beta);
  for (std::size_t i = 0; i < r.values.size(); ++i) {
    out += r.fixture + "," + to_string(r.kind) + "," + format_double(r.schedule[i]) + "," + format_double(r.t_max) + "," +
           std::to_string(r.grid_points) + "," + alpha + "," + beta + "," + format_double(r.values[i]) + "\n";
  }
  return out;
}

/// One-line summary: fitted rate, verdict and cutoff status.
inline std::string convergence_summary(const ConvergenceReport& r) {
  return "# fixture=" + r.fixture + " kind=" + to_string(r.kind) +
         " fitted_rate=" + (r.fitted_rate ? format_double(*r.fitted_rate) : std::string("none")) +
         " excluded=" + std::to_string(r.excluded.size()) + " verdict=" + (r.verdict ? "pass" : "fail") +
         " cutoff_check=" + to_string(r.cutoff) + "\n";
}

inline Json convergence_to_json(const ConvergenceReport& r) {
  Json out;
  out["fixture"] = r.fixture;
  out["kind"] = to_string(r.kind);
  out["schedule"] = r.schedule;
  out["values"] = r.values;
  out["fitted_rate"] = r.fitted_rate ? Json(*r.fitted_rate) : Json(nullptr);
  out["excluded"] = r.excluded;
  out["t_max"] = r.t_max;
  out["grid_points"] = r.grid_points;
  out["alpha"] = format_complex_list(r.amplitudes.alpha);
  out["beta"] = format_complex_list(r.amplitudes.beta);
  out["verdict"] = r.verdict;
  out["cutoff_check"] = to_string(r.cutoff);
  return out;
}

}  // namespace qsde
