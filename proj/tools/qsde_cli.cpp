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


#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qsde/cli.hpp"

namespace {

void add_model(CLI::App* cmd, qsde::cli::Options& o) {
  cmd->add_option("model", o.model, "Model file (a .json suffix may be omitted) or builtin fixture name")->required();
  cmd->add_option("--tol", o.tol, "Absolute tolerance, scaled by operator norms")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adiabatic elimination and convergence studies for HP quantum stochastic models"};
  app.require_subcommand(1);
  qsde::cli::Options o;
  std::string example_name;

  auto* validate = app.add_subcommand("validate", "Check the HP relations and the structural conditions");
  add_model(validate, o);
  validate->add_option("--report", o.report, "Write the report as JSON to this file");

  auto* eliminate = app.add_subcommand("eliminate", "Compute the limit coefficients on the slow subspace");
  add_model(eliminate, o);
  eliminate->add_option("--out", o.out, "Output file (default: stdout)");

  auto* semigroup = app.add_subcommand("semigroup", "Propagate the coherent-amplitude semigroups");
  add_model(semigroup, o);
  semigroup->add_option("--k", o.k, "Comma-separated k values for prelimit semigroups");
  semigroup->add_option("--T", o.t_max, "Time horizon");
  semigroup->add_option("--grid", o.grid, "Number of time grid points");
  semigroup->add_option("--alpha", o.alpha, "Left amplitudes, one complex value per channel (e.g. 0.3+0.1i)");
  semigroup->add_option("--beta", o.beta, "Right amplitudes");
  semigroup->add_option("--csv", o.csv, "CSV output file (default: stdout)");

  auto* converge = app.add_subcommand("converge", "Generator-residual, semigroup-gap or truncation study");
  add_model(converge, o);
  converge->add_option("--kind", o.kind, "generator | semigroup | truncation");
  converge->add_option("--k", o.k, "Comma-separated k schedule (cutoffs for truncation)");
  converge->add_option("--T", o.t_max, "Time horizon");
  converge->add_option("--grid", o.grid, "Number of time grid points");
  converge->add_option("--alpha", o.alpha, "Left amplitudes, one complex value per channel");
  converge->add_option("--beta", o.beta, "Right amplitudes");
  converge->add_option("--csv", o.csv, "CSV output file (default: stdout)");
  converge->add_option("--report", o.report, "Write the report as JSON to this file");

  auto* example = app.add_subcommand("example", "Print the model document of a builtin fixture");
  example->add_option("name", example_name, "cavity | duan-kimble | mirror | truncation-demo")->required();
  example->add_option("--out", o.out, "Output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : qsde::cli::kUsage;
  }

  if (*validate) return qsde::cli::cmd_validate(o, std::cout, std::cerr);
  if (*eliminate) return qsde::cli::cmd_eliminate(o, std::cout, std::cerr);
  if (*semigroup) return qsde::cli::cmd_semigroup(o, std::cout, std::cerr);
  if (*converge) return qsde::cli::cmd_converge(o, std::cout, std::cerr);
  return qsde::cli::cmd_example(example_name, o, std::cout, std::cerr);
}
