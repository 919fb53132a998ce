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


#include <gtest/gtest.h>

#include <sstream>

#include "qsde/cli.hpp"

namespace qsde {
namespace {

std::string fixture_path(const std::string& name) { return std::string(QSDE_SOURCE_DIR) + "/fixtures/" + name; }

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

template <typename Cmd>
CliRun invoke(Cmd cmd, const cli::Options& o) {
  std::ostringstream out, err;
  const int code = cmd(o, out, err);
  return {code, out.str(), err.str()};
}

cli::Options options(const std::string& model) {
  cli::Options o;
  o.model = model;
  return o;
}

TEST(CliValidate, ExitCodes) {
  const CliRun ok = invoke(cli::cmd_validate, options("duan-kimble"));
  EXPECT_EQ(ok.code, cli::kOk);
  EXPECT_NE(ok.out.find("all checks passed"), std::string::npos);

  const CliRun defect = invoke(cli::cmd_validate, options(fixture_path("defects/p0ap0.json")));
  EXPECT_EQ(defect.code, cli::kDomainFailure);
  EXPECT_NE(defect.out.find("FAIL structural.e"), std::string::npos);

  EXPECT_EQ(invoke(cli::cmd_validate, options(fixture_path("defects/empty-operators.json"))).code, cli::kUsage);
  EXPECT_EQ(invoke(cli::cmd_validate, options("no-such-model")).code, cli::kUsage);
}

TEST(CliEliminate, MatchesLibraryOutput) {
  const Model m = load_model(builtin_document("mirror"));
  const std::string want = elimination_to_json(m.fixture.name, eliminate(m.fixture.family, m.fixture.sub)).dump(2) + "\n";
  const CliRun a = invoke(cli::cmd_eliminate, options("mirror"));
  const CliRun b = invoke(cli::cmd_eliminate, options("mirror"));
  EXPECT_EQ(a.code, cli::kOk);
  EXPECT_EQ(a.out, want);
  EXPECT_EQ(a.out, b.out);
}

TEST(CliEliminate, DefectReportsPrecondition) {
  const CliRun r = invoke(cli::cmd_eliminate, options(fixture_path("defects/p0ap0.json")));
  EXPECT_EQ(r.code, cli::kDomainFailure);
  EXPECT_NE(r.err.find("FAIL structural.e"), std::string::npos);
}

TEST(CliConverge, GeneratorRowsMatchLibrary) {
  cli::Options o = options(fixture_path("duan-kimble.json"));
  o.k = "2,4,8,16";
  const CliRun r = invoke(cli::cmd_converge, o);
  EXPECT_EQ(r.code, cli::kOk) << r.err;
  const Model m = load_model_file(fixture_path("duan-kimble.json"));
  const ConvergenceReport rep = generator_study(m.fixture.name, m.fixture.family, m.fixture.sub,
                                                m.study.amplitudes_for("generator", 1), {2, 4, 8, 16});
  EXPECT_EQ(r.out.substr(0, convergence_csv(rep).size()), convergence_csv(rep));
  EXPECT_NE(r.out.find("verdict=pass cutoff_check=ok"), std::string::npos);
}

TEST(CliConverge, TrivialSemigroupGapsVanish) {
  cli::Options o = options(fixture_path("trivial.json"));
  o.kind = "semigroup";
  o.k = "1,2,4";
  const CliRun r = invoke(cli::cmd_converge, o);
  EXPECT_EQ(r.code, cli::kOk) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, kConvergenceCsvHeader);
  int rows = 0;
  while (std::getline(lines, line) && line.rfind("#", 0) != 0) {
    EXPECT_EQ(line.substr(line.rfind(',') + 1), "0") << line;
    ++rows;
  }
  EXPECT_EQ(rows, 3);
  EXPECT_NE(r.out.find("cutoff_check=not_checked"), std::string::npos);
}

TEST(CliConverge, Truncation) {
  cli::Options o = options("truncation-demo");
  o.kind = "truncation";
  const CliRun r = invoke(cli::cmd_converge, o);
  EXPECT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_NE(r.out.find("kind=truncation"), std::string::npos);
}

TEST(CliConverge, UsageErrors) {
  cli::Options o = options("duan-kimble");
  o.k = "2,4";
  EXPECT_EQ(invoke(cli::cmd_converge, o).code, cli::kUsage);
  o.k = "4,2,8";
  EXPECT_EQ(invoke(cli::cmd_converge, o).code, cli::kUsage);
  o.k = "2,4,x";
  EXPECT_EQ(invoke(cli::cmd_converge, o).code, cli::kUsage);
  o.k.reset();
  o.kind = "bogus";
  EXPECT_EQ(invoke(cli::cmd_converge, o).code, cli::kUsage);
  o.kind = "generator";
  o.alpha = "0.1,0.2";
  EXPECT_EQ(invoke(cli::cmd_converge, o).code, cli::kUsage);
  o.alpha.reset();
  o.grid = 1;
  EXPECT_EQ(invoke(cli::cmd_converge, o).code, cli::kUsage);
}

TEST(CliSemigroup, ContractionSummary) {
  cli::Options o = options("duan-kimble");
  o.k = "2,4";
  o.grid = 5;
  o.alpha = "0.5";
  o.beta = "-0.2+0.1i";
  const CliRun r = invoke(cli::cmd_semigroup, o);
  EXPECT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_EQ(r.out.rfind(cli::kSemigroupCsvHeader, 0), 0u);
  EXPECT_NE(r.out.find("duan-kimble,limit,inf,0,"), std::string::npos);
  EXPECT_NE(r.out.find("duan-kimble,prelimit,4,2,"), std::string::npos);
  EXPECT_NE(r.out.find("contraction=pass"), std::string::npos);
}

TEST(CliExample, PrintsLoadableDocument) {
  const CliRun r = invoke([](const cli::Options& o, std::ostream& out, std::ostream& err) { return cli::cmd_example("cavity", o, out, err); },
                    cli::Options{});
  EXPECT_EQ(r.code, cli::kOk);
  const Model m = load_model_text(r.out);
  EXPECT_EQ(m.fixture.name, "cavity");
  const CliRun bad = invoke([](const cli::Options& o, std::ostream& out, std::ostream& err) { return cli::cmd_example("x", o, out, err); },
                      cli::Options{});
  EXPECT_EQ(bad.code, cli::kUsage);
}

}  // namespace
}  // namespace qsde
