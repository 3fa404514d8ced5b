#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "opineq/suite.hpp"
#include "oracles.hpp"

using namespace opineq;

namespace {

std::string tmp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("opineq_test_" + name)).string();
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(OPINEQ_CLI) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Haar, OneByOneIsUnitModulus) { EXPECT_NEAR(std::abs(gen_haar_unitary(3, 1)(0, 0)), 1.0, 1e-15); }

TEST(Haar, UnitaryAndDeterministic) {
  for (Eigen::Index d = 1; d <= 8; ++d) {
    const CMatrix u = gen_haar_unitary(42 + d, d);
    EXPECT_LE((u.adjoint() * u - identity(d)).norm(), 1e-12);
    EXPECT_EQ(u, gen_haar_unitary(42 + d, d));
  }
}

TEST(Generators, NormalCommutingIsNormal) {
  for (std::uint64_t s = 0; s < 50; ++s) {
    GeneratorSpec spec{s, 4, 3, GeneratorKind::NormalCommuting};
    EXPECT_LE(is_normal(gen_element(spec)).defect, 1e-10);
  }
}

TEST(Generators, ContractiveHitsTarget) {
  for (std::uint64_t s = 0; s < 50; ++s) {
    GeneratorSpec spec{s, 3, 2, GeneratorKind::Contractive};
    const ModuleElement x = gen_element(spec);
    EXPECT_NEAR(op_norm(inner(x, x)), 0.999 * 0.999, 1e-10);
  }
}

TEST(Generators, GenericScalar) {
  const ModuleElement x = gen_element(GeneratorSpec{5, 1, 1, GeneratorKind::Generic});
  EXPECT_EQ(x.dim(), 1);
  EXPECT_EQ(x.length(), 1u);
  EXPECT_NE(std::abs(x[0](0, 0)), 0.0);
}

TEST(Generators, GrussUnitAndInsideBalls) {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const Instance in = gen_instance(GeneratorSpec{s, 3, 3, GeneratorKind::Gruss});
    ASSERT_TRUE(in.e && in.ball);
    EXPECT_LE((inner(*in.e, *in.e) - identity(3)).norm(), 1e-12);
    EXPECT_LT(in.ball->m, in.ball->M);
    EXPECT_LT(in.ball->p, in.ball->P);
    const double cx = (in.ball->M + in.ball->m) / 2;
    EXPECT_LE(module_norm(in.x - Complex(cx) * *in.e), (in.ball->M - in.ball->m) / 2);
  }
}

TEST(Generators, RandomWeightsInRange) {
  GeneratorSpec spec{9, 2, 6, GeneratorKind::Generic};
  spec.random_weights = true;
  for (double w : gen_context(spec).weights) {
    EXPECT_GE(w, 0.1);
    EXPECT_LE(w, 2.0);
  }
}

TEST(Generators, RejectsBadSpec) {
  EXPECT_THROW(gen_element(GeneratorSpec{1, 9, 1}), Error);
  EXPECT_THROW(gen_element(GeneratorSpec{1, 2, 7}), Error);
  GeneratorSpec spec{1, 2, 2};
  spec.contraction = 1.0;
  EXPECT_THROW(gen_element(spec), Error);
}

TEST(TrialSeeds, DistinctAndStable) {
  EXPECT_EQ(trial_seed(7, 3), trial_seed(7, 3));
  EXPECT_NE(trial_seed(7, 3), trial_seed(7, 4));
  EXPECT_NE(trial_seed(7, 3), trial_seed(8, 3));
}

TEST(Serialize, ElementRoundTripIsExact) {
  GeneratorSpec spec{3, 4, 3, GeneratorKind::Generic};
  spec.random_weights = true;
  const ModuleElement x = gen_element(spec);
  const ModuleElement back = element_from_json(Json::parse(element_to_json(x).dump()));
  EXPECT_EQ(back.ctx(), x.ctx());
  EXPECT_EQ(back.parts(), x.parts());
}

TEST(Serialize, ReportHasExactlyTheListedFields) {
  const Instance in = gen_instance(GeneratorSpec{1, 2, 2});
  const Json j = report_to_json(evaluate("check_cs", in, {}));
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  std::sort(keys.begin(), keys.end());
  const std::vector<std::string> expected{"dim", "holds", "len", "lhs", "margin", "name", "norm_detail", "params",
                                          "rhs", "seed"};
  EXPECT_EQ(keys, expected);
}

TEST(Serialize, MalformedInputs) {
  EXPECT_THROW(element_from_json(Json::parse(R"({"dim": 2})")), Error);
  EXPECT_THROW(matrix_from_json(Json::parse("[[[1,0]],[[1,0],[0,0]]]")), Error);
  EXPECT_THROW(read_record(tmp_path("does_not_exist.json")), Error);
}

TEST(Serialize, RecordRoundTripReplaysBitIdentically) {
  const Instance in = gen_instance(GeneratorSpec{12, 3, 2, GeneratorKind::Gruss});
  const InstanceRecord rec{"check_gruss", in, {}, false, false};
  const std::string path = tmp_path("record.json");
  write_record(path, rec);
  const InstanceRecord back = read_record(path);
  const InequalityReport a = replay(rec);
  const InequalityReport b = replay(back);
  EXPECT_EQ(a.margin, b.margin);
  EXPECT_EQ(a.norm_detail, b.norm_detail);
  std::remove(path.c_str());
}

TEST(Registry, UnknownCheck) {
  try {
    find_check("check_nope");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownCheck);
  }
}

TEST(Registry, NaopakaAnchor) { EXPECT_EQ(find_check("check_naopaka").anchor, "Theorem (Naopaka)"); }

TEST(Suite, SingleTrialIsDeterministic) {
  RunConfig cfg;
  cfg.trials = 1;
  cfg.checks = {"check_cs"};
  cfg.seed = 99;
  std::ostringstream a, b;
  run_suite(cfg, &a);
  run_suite(cfg, &b);
  const std::string text = a.str();
  EXPECT_EQ(text, b.str());
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 1);
}

TEST(Suite, ParallelMatchesSerialByteForByte) {
  RunConfig cfg;
  cfg.trials = 40;
  for (const CheckInfo& c : check_registry()) cfg.checks.emplace_back(c.name);
  cfg.seed = 5;
  cfg.random_weights = true;
  std::ostringstream par, ser;
  const SuiteSummary sp = run_suite(cfg, &par);
  const SuiteSummary ss = run_suite_serial(cfg, &ser);
  EXPECT_EQ(par.str(), ser.str());
  EXPECT_FALSE(sp.any_fail());
  for (const auto& [name, c] : sp.per_check) {
    EXPECT_EQ(c.error, 0) << name;
    EXPECT_EQ(c.pass, ss.per_check.at(name).pass);
  }
}

TEST(Suite, NonNormalInstancesAreErrorsNotFailures) {
  RunConfig cfg;
  cfg.trials = 30;
  cfg.checks = {"check_uin"};
  cfg.kind = GeneratorKind::Generic;
  cfg.dim = 3;
  const SuiteSummary s = run_suite(cfg);
  const CheckCounts& c = s.per_check.at("check_uin");
  EXPECT_EQ(c.fail, 0);
  EXPECT_EQ(c.error, 30);
  EXPECT_EQ(c.errors_by_code.at("NotNormal"), 30);
}

TEST(Suite, ConfigValidation) {
  RunConfig cfg;
  EXPECT_THROW(cfg.validate(), Error);  // no checks
  cfg.checks = {"check_bogus"};
  EXPECT_THROW(cfg.validate(), Error);
  cfg.checks = {"check_interp"};
  cfg.exponent_grid = {{2, 3, 3}};
  EXPECT_THROW(cfg.validate(), Error);
}

TEST(Suite, UnwritableOutput) {
  RunConfig cfg;
  cfg.trials = 1;
  cfg.checks = {"check_cs"};
  cfg.output_path = "/nonexistent-dir/out.jsonl";
  try {
    run_suite(cfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IOFailure);
  }
}

TEST(Search, HypothesesKeptNeverFail) {
  for (const char* check : {"check_uin", "check_naopaka", "check_gruss", "check_cs", "check_interp"}) {
    SearchConfig cfg;
    cfg.check = check;
    cfg.budget = 300;
    cfg.seed = 3;
    const SearchResult r = search_counterexample(cfg);
    EXPECT_TRUE(r.best.holds) << check << " margin " << r.best.margin;
    EXPECT_EQ(r.evaluations, 300);
  }
}

TEST(Search, DroppedNormalityFindsUinCounterexample) {
  SearchConfig cfg;
  cfg.check = "check_uin";
  cfg.drop_normality = true;
  cfg.budget = 500;
  const SearchResult r = search_counterexample(cfg);
  EXPECT_FALSE(r.best.holds);
  EXPECT_EQ(replay(r.record).margin, r.best.margin);
}

TEST(Search, Deterministic) {
  SearchConfig cfg;
  cfg.check = "check_basic";
  cfg.drop_normality = true;
  cfg.budget = 200;
  cfg.seed = 17;
  EXPECT_EQ(search_counterexample(cfg).best.margin, search_counterexample(cfg).best.margin);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_cli("verify --checks check_cs --trials 10 --seed 7"), 0);
  EXPECT_EQ(run_cli("list"), 0);
  EXPECT_EQ(run_cli("verify --checks check_cs --trials 0"), 2);
  EXPECT_EQ(run_cli("verify --checks nope"), 2);
  EXPECT_EQ(run_cli("frobnicate"), 2);
  EXPECT_EQ(run_cli("verify --pqr 2,3,3 --checks check_interp"), 2);
  EXPECT_EQ(run_cli("replay --instance /nonexistent.json"), 1);
}

TEST(Cli, ListShowsAnchors) {
  const std::string out = tmp_path("list.txt");
  ASSERT_EQ(std::system((std::string(OPINEQ_CLI) + " list > " + out).c_str()), 0);
  const std::string text = slurp(out);
  EXPECT_NE(text.find("check_naopaka"), std::string::npos);
  EXPECT_NE(text.find("Theorem (Naopaka)"), std::string::npos);
  std::remove(out.c_str());
}

TEST(Cli, VerifyOutputIsByteIdentical) {
  const std::string a = tmp_path("a.jsonl"), b = tmp_path("b.jsonl");
  ASSERT_EQ(run_cli("verify --trials 15 --seed 3 --weights random --out " + a), 0);
  ASSERT_EQ(run_cli("verify --trials 15 --seed 3 --weights random --out " + b), 0);
  EXPECT_FALSE(slurp(a).empty());
  EXPECT_EQ(slurp(a), slurp(b));
  std::remove(a.c_str());
  std::remove(b.c_str());
}

TEST(Cli, ReplayOfEqualityInstance) {
  // x = y = (U) unitary: the squared CS branch is an equality
  Instance in;
  in.x = oracle::single(gen_haar_unitary(1, 3));
  in.y = in.x;
  in.a = identity(3);
  const InstanceRecord rec{"check_cs", in, {}, false, false};
  const std::string path = tmp_path("eq.json");
  write_record(path, rec);
  EXPECT_EQ(run_cli("replay --instance " + path), 0);
  EXPECT_LE(std::abs(replay(read_record(path)).margin - replay(rec).margin), 1e-12);
  std::remove(path.c_str());
}
