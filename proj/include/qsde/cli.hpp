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
 * @file cli.hpp
 * Command implementations behind the `qsde` executable.
 *
 * Each command reads a model, calls the library, and writes text to the
 * given streams. Exit codes: 0 success, 1 domain failure (a report is still
 * written), 2 usage or parse error.
 */
#pragma once

#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "qsde/convergence.hpp"
#include "qsde/elimination.hpp"
#include "qsde/io.hpp"
#include "qsde/model_file.hpp"
#include "qsde/semigroup.hpp"

namespace qsde::cli {

enum ExitCode : int { kOk = 0, kDomainFailure = 1, kUsage = 2 };

struct Options {
  std::string model;  // model file path, or a builtin fixture name
  double tol = kDefaultTolerance;
  std::optional<std::string> k;  // comma-separated schedule (cutoffs for truncation studies)
  std::optional<double> t_max;
  std::optional<int> grid;
  std::optional<std::string> alpha;
  std::optional<std::string> beta;
  std::optional<std::string> csv;
  std::optional<std::string> report;
  std::optional<std::string> out;
  std::string kind = "generator";
};

/// Flag values that fail validation; reported with exit code 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Loads `spec` as a file (also trying a .json suffix), falling back to a builtin fixture name.
inline Model resolve_model(const std::string& spec) {
  std::ifstream probe(spec);
  std::ifstream probe_json(spec + ".json");
  if (!probe && !probe_json) {
    const auto names = builtin_names();
    if (std::find(names.begin(), names.end(), spec) != names.end()) return load_model(builtin_document(spec));
  }
  return load_model_file(spec);
}

inline std::vector<double> parse_schedule(const std::string& text) {
  std::vector<double> out;
  for (Complex z : parse_complex_list(text)) {
    if (z.imag() != 0.0) throw UsageError("schedule entries must be real");
    out.push_back(z.real());
  }
  return out;
}

inline FieldAmplitudes amplitudes_from(const Options& o, const Model& m, const std::string& kind) {
  FieldAmplitudes amp = m.study.amplitudes_for(kind, m.fixture.family.channels);
  if (o.alpha) amp.alpha = parse_complex_list(*o.alpha);
  if (o.beta) amp.beta = parse_complex_list(*o.beta);
  const auto n = static_cast<std::size_t>(m.fixture.family.channels);
  if (amp.alpha.size() != n || amp.beta.size() != n) {
    throw UsageError("--alpha/--beta need one value per channel (" + std::to_string(n) + ")");
  }
  return amp;
}

namespace detail {

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error("cannot write '" + path + "'");
  f << text;
  if (!f) throw Error("failed writing '" + path + "'");
}

// Runs a command body and maps exceptions onto exit codes.
inline int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const PreconditionFailed& e) {
    err << "error: " << e.what() << '\n' << report_to_text(e.report());
    return kDomainFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kDomainFailure;
  }
}

}  // namespace detail

/// Scaled HP relations plus structural conditions; exit 0 iff every check passes.
inline int cmd_validate(const Options& o, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const Model m = resolve_model(o.model);
    ValidationReport report = scaled_hp_validate(m.fixture.family, o.tol);
    report.append(structural_validate(m.fixture.family, m.fixture.sub, o.tol));
    out << report_to_text(report);
    if (o.report) detail::write_file(*o.report, report_to_json(report).dump(2) + "\n");
    return report.passed() ? kOk : kDomainFailure;
  });
}

/// Limit coefficients and the compression isometry as JSON (to --out or stdout).
inline int cmd_eliminate(const Options& o, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const Model m = resolve_model(o.model);
    const EliminationResult r = eliminate(m.fixture.family, m.fixture.sub, o.tol);
    const std::string text = elimination_to_json(m.fixture.name, r).dump(2) + "\n";
    if (o.out) {
      detail::write_file(*o.out, text);
    } else {
      out << text;
    }
    return kOk;
  });
}

inline constexpr const char* kSemigroupCsvHeader = "fixture,kind,k,t,alpha,beta,norm";

/**
 * Norms of the limit semigroup (and of the prelimit semigroups for each
 * --k value) on the time grid. Exit 1 if any norm exceeds 1 + 1e-9.
 */
inline int cmd_semigroup(const Options& o, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const Model m = resolve_model(o.model);
    const double t_max = o.t_max.value_or(m.study.t_max);
    const int grid = o.grid.value_or(m.study.grid_points);
    const std::vector<double> ks = o.k ? parse_schedule(*o.k) : std::vector<double>{};
    const FieldAmplitudes amp = amplitudes_from(o, m, "semigroup");
    const auto times = time_grid(t_max, grid);
    const EliminationResult r = eliminate(m.fixture.family, m.fixture.sub, o.tol);

    const std::string a = format_complex_list(amp.alpha);
    const std::string b = format_complex_list(amp.beta);
    std::string csv = std::string(kSemigroupCsvHeader) + "\n";
    double max_norm = 0.0;
    auto sweep = [&](const QsdeCoefficients& c, const std::string& kind, const std::string& k) {
      const Operator gen = generator(c, amp);
      for (double t : times) {
        const double nrm = spectral_norm(matrix_exponential(gen, t));
        max_norm = std::max(max_norm, nrm);
        csv += m.fixture.name + "," + kind + "," + k + "," + format_double(t) + "," + a + "," + b + "," + format_double(nrm) + "\n";
      }
    };
    sweep(r.limit, "limit", "inf");
    for (double k : ks) {
      if (!(k > 0.0)) throw UsageError("k values must be positive");
      sweep(assemble(m.fixture.family, k), "prelimit", format_double(k));
    }
    const double diss = dissipativity_check(r.limit, amp);
    const bool ok = max_norm <= 1.0 + 1e-9;
    if (o.csv) {
      detail::write_file(*o.csv, csv);
    } else {
      out << csv;
    }
    out << "# fixture=" << m.fixture.name << " max_norm=" << format_double(max_norm)
        << " limit_dissipativity=" << format_double(diss) << " contraction=" << (ok ? "pass" : "fail") << '\n';
    return ok ? kOk : kDomainFailure;
  });
}

/// Runs one study kind and returns its report (the CLI wrapper handles output).
inline ConvergenceReport run_study(const Model& m, const std::string& kind, const std::vector<double>& schedule,
                                   const FieldAmplitudes& amp, double t_max, int grid, double tol) {
  const Fixture& fx = m.fixture;
  if (kind == "generator") return generator_study(fx.name, fx.family, fx.sub, amp, schedule, tol);
  if (kind == "semigroup") return semigroup_study(fx.name, fx.family, fx.sub, amp, schedule, t_max, grid, tol);
  std::vector<int> cutoffs;
  for (double c : schedule) cutoffs.push_back(static_cast<int>(c));
  const EliminationResult r = eliminate(fx.family, fx.sub, tol);
  return truncation_study(fx.name, r.limit, cutoffs, amp, t_max, grid, m.study.probe_dim, tol);
}

/**
 * Convergence study. CSV rows go to --csv (or stdout), followed by a
 * summary line on stdout. Generator and semigroup studies are repeated
 * with the model's cutoff parameter raised by 2 when it has one.
 * Exit 0 iff the verdict passes.
 */
inline int cmd_converge(const Options& o, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    if (o.kind != "generator" && o.kind != "semigroup" && o.kind != "truncation") {
      throw UsageError("--kind must be generator, semigroup or truncation");
    }
    const Model m = resolve_model(o.model);
    const double t_max = o.t_max.value_or(m.study.t_max);
    const int grid = o.grid.value_or(m.study.grid_points);
    if (!(t_max > 0.0)) throw UsageError("--T must be positive");
    if (grid < 2) throw UsageError("--grid must be >= 2");

    std::vector<double> schedule;
    if (o.k) {
      schedule = parse_schedule(*o.k);
    } else if (o.kind == "truncation") {
      if (!m.study.cutoffs.empty()) {
        schedule.assign(m.study.cutoffs.begin(), m.study.cutoffs.end());
      } else {
        for (int c : {2, 4, 8, 16}) {
          if (c < m.fixture.sub.rank()) schedule.push_back(c);
        }
      }
    } else {
      schedule = m.study.k_schedule;
    }
    if (schedule.size() < 3) throw UsageError("the schedule needs at least 3 values for rate fitting");
    for (std::size_t i = 0; i < schedule.size(); ++i) {
      if (!(schedule[i] > 0.0) || (i > 0 && !(schedule[i] > schedule[i - 1]))) {
        throw UsageError("the schedule must be positive and strictly increasing");
      }
      if (o.kind == "truncation" && schedule[i] != std::floor(schedule[i])) throw UsageError("cutoffs must be integers");
    }
    const FieldAmplitudes amp = amplitudes_from(o, m, o.kind);

    ConvergenceReport report = run_study(m, o.kind, schedule, amp, t_max, grid, o.tol);
    if (o.kind != "truncation") {
      if (auto bigger = with_larger_cutoff(m)) {
        report.cutoff = compare_cutoff_rerun(report, run_study(*bigger, o.kind, schedule, amp, t_max, grid, o.tol));
      }
    }
    const std::string csv = convergence_csv(report);
    if (o.csv) {
      detail::write_file(*o.csv, csv);
    } else {
      out << csv;
    }
    out << convergence_summary(report);
    if (o.report) detail::write_file(*o.report, convergence_to_json(report).dump(2) + "\n");
    return report.verdict ? kOk : kDomainFailure;
  });
}

/// Prints the model document of a builtin fixture (to --out or stdout).
inline int cmd_example(const std::string& name, const Options& o, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const auto names = builtin_names();
    if (std::find(names.begin(), names.end(), name) == names.end()) {
      std::string list;
      for (const auto& n : names) list += (list.empty() ? "" : ", ") + n;
      throw UsageError("unknown example '" + name + "' (available: " + list + ")");
    }
    const std::string text = builtin_document(name).dump(2) + "\n";
    if (o.out) {
      detail::write_file(*o.out, text);
    } else {
      out << text;
    }
    return kOk;
  });
}

}  // namespace qsde::cli
