#include <gtest/gtest.h>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "wpe/cli.hpp"

namespace wpe {
namespace {

using nlohmann::json;

struct Result {
  int code = -1;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  Result r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

json load_schema(const std::string& name) {
  std::ifstream in(std::string(WPE_SCHEMA_DIR) + "/" + name + ".schema.json");
  EXPECT_TRUE(in.good()) << name;
  return json::parse(in);
}

bool type_matches(const json& v, const std::string& t) {
  if (t == "object") return v.is_object();
  if (t == "array") return v.is_array();
  if (t == "string") return v.is_string();
  if (t == "boolean") return v.is_boolean();
  if (t == "null") return v.is_null();
  if (t == "integer") return v.is_number_integer();
  if (t == "number") return v.is_number();
  return false;
}

// Subset validator: type, enum, required, properties, additionalProperties, items.
void validate(const json& v, const json& schema, const std::string& path, std::vector<std::string>& errors) {
  if (schema.contains("type")) {
    bool ok = false;
    if (schema["type"].is_array()) {
      for (const auto& t : schema["type"]) ok = ok || type_matches(v, t.get<std::string>());
    } else {
      ok = type_matches(v, schema["type"].get<std::string>());
    }
    if (!ok) {
      errors.push_back(path + ": type mismatch, got " + v.dump());
      return;
    }
  }
  if (schema.contains("enum") && std::find(schema["enum"].begin(), schema["enum"].end(), v) == schema["enum"].end())
    errors.push_back(path + ": value not in enum");
  if (v.is_object()) {
    for (const auto& key : schema.value("required", json::array()))
      if (!v.contains(key.get<std::string>())) errors.push_back(path + ": missing " + key.get<std::string>());
    const json props = schema.value("properties", json::object());
    for (const auto& [key, val] : v.items()) {
      if (props.contains(key))
        validate(val, props[key], path + "." + key, errors);
      else if (schema.value("additionalProperties", true) == false)
        errors.push_back(path + ": unexpected " + key);
    }
  }
  if (v.is_array() && schema.contains("items"))
    for (std::size_t i = 0; i < v.size(); ++i) validate(v[i], schema["items"], path + "[" + std::to_string(i) + "]", errors);
}

void expect_valid(const std::string& text, const std::string& schema_name) {
  std::vector<std::string> errors;
  validate(json::parse(text), load_schema(schema_name), "$", errors);
  for (const std::string& e : errors) ADD_FAILURE() << schema_name << " " << e;
}

// --- relation ---------------------------------------------------------------

TEST(CliRelation, SolveMThreeBetaOne) {
  const Result r = run_cli({"relation", "solve", "--m", "3", "--beta", "1", "--quiet"});
  EXPECT_EQ(r.code, cli::kSuccess);
  EXPECT_EQ(r.err, "");
  const json j = json::parse(r.out);
  EXPECT_EQ(j["roots"], json::parse("[3.0, -2.0]"));
  EXPECT_EQ(j["admissible"], json::parse("[-2.0]"));
  EXPECT_EQ(j["root_flags"][1]["overall"], true);
  EXPECT_EQ(j["note"], "");
  expect_valid(r.out, "root_report");
}

TEST(CliRelation, OutOfDomainExitsTwo) {
  const Result r = run_cli({"-q", "relation", "solve", "--m", "1", "--beta", "1"});
  EXPECT_EQ(r.code, cli::kNoAdmissibleRoot);
  EXPECT_NE(r.err.find("m - 1"), std::string::npos);
  expect_valid(r.out, "root_report");
}

TEST(CliRelation, PublishedVariantAtBetaTwo) {
  const Result pub = run_cli({"-q", "relation", "solve", "--m", "3", "--beta", "2", "--variant", "published"});
  EXPECT_EQ(pub.code, cli::kNoAdmissibleRoot);
  EXPECT_EQ(json::parse(pub.out)["roots"], json::parse("[5.0, -3.0]"));

  const Result red = run_cli({"-q", "relation", "solve", "--m", "3", "--beta", "2"});
  EXPECT_EQ(red.code, cli::kSuccess);
  const json j = json::parse(red.out);
  EXPECT_EQ(j["admissible"], json::parse("[-4.0]"));
  EXPECT_NE(j["note"].get<std::string>().find("published"), std::string::npos);
}

TEST(CliRelation, SweepCsv) {
  const Result r = run_cli({"-q", "relation", "sweep", "--m", "2..4", "--beta", "1", "--format", "csv"});
  EXPECT_EQ(r.code, cli::kSuccess);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "m,beta,variant,a2,a1,a0,root1,root2,admissible_root,K,exists");
  std::getline(in, line);
  EXPECT_EQ(line, "2,1,rederived,0,2,3,-1.5,,-1.5,-0.5,true");
  std::getline(in, line);
  EXPECT_EQ(line, "3,1,rederived,-1,1,6,3,-2,-2,-0.5,true");
  std::getline(in, line);
  EXPECT_EQ(line, "4,1,rederived,-2,-1,10,2,-2.5,-2.5,-0.5,true");
  EXPECT_FALSE(std::getline(in, line));
}

TEST(CliRelation, SweepJson) {
  const Result r = run_cli({"-q", "relation", "sweep", "--m", "1..3", "--beta", "2,0.5", "--format", "json"});
  EXPECT_EQ(r.code, cli::kSuccess);
  expect_valid(r.out, "sweep");
  const json j = json::parse(r.out);
  ASSERT_EQ(j.size(), 6u);
  EXPECT_EQ(j[0]["m"], 1);
  EXPECT_EQ(j[0]["beta"], 0.5);
  EXPECT_EQ(j[0]["exists"], false);
  EXPECT_TRUE(j[0]["admissible_root"].is_null());
}

TEST(CliRelation, SweepIsDeterministic) {
  const std::vector<std::string> args{"relation", "sweep", "--m", "2..10", "--beta", "0.5,1,2", "--format", "csv",
                                      "--quiet"};
  const Result a = run_cli(args), b = run_cli(args);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.err, "");
}

// --- verify -----------------------------------------------------------------

TEST(CliVerify, MThreeBetaOnePasses) {
  const Result r = run_cli({"-q", "verify", "--m", "3", "--beta", "1"});
  EXPECT_EQ(r.code, cli::kSuccess) << r.out << r.err;
  expect_valid(r.out, "verify_report");
  const json j = json::parse(r.out);
  EXPECT_EQ(j["verdict"], "pass");
  EXPECT_EQ(j["lambda"], -2.0);
  EXPECT_LT(j["compat_max_residual"].get<double>(), 1e-8);
  EXPECT_LT(j["curvature_max_defect"].get<double>(), 1e-10);
  EXPECT_LT(j["einstein"]["contracted"].get<double>(), 1e-6);
}

TEST(CliVerify, FiniteDifferencesAndStripOptions) {
  const Result r = run_cli({"-q", "verify", "--m", "4", "--beta", "2", "--fd", "--f-range", "1,3", "--samples", "8,4"});
  EXPECT_EQ(r.code, cli::kSuccess) << r.out << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["derivatives"], "finite_difference");
  EXPECT_EQ(j["einstein"]["sample_count"], 32);
  EXPECT_EQ(j["tolerances"]["curvature"], 1e-5);
}

TEST(CliVerify, FailureAndNoRootCodes) {
  const Result fail = run_cli({"-q", "verify", "--m", "3", "--beta", "1", "--fd", "--tol-curvature-fd", "1e-16"});
  EXPECT_EQ(fail.code, cli::kVerificationFailed);
  EXPECT_EQ(json::parse(fail.out)["verdict"], "fail");
  EXPECT_EQ(run_cli({"-q", "verify", "--m", "1", "--beta", "1"}).code, cli::kNoAdmissibleRoot);
  EXPECT_EQ(run_cli({"-q", "verify", "--m", "3", "--beta", "2", "--variant", "published"}).code,
            cli::kNoAdmissibleRoot);
}

TEST(CliVerify, PassImpliesAdmissibleRoot) {
  for (const char* m : {"2", "3", "5"})
    for (const char* beta : {"0.5", "1", "2"})
      for (const char* variant : {"published", "rederived"}) {
        const Result v = run_cli({"-q", "verify", "--m", m, "--beta", beta, "--variant", variant});
        const Result s = run_cli({"-q", "relation", "solve", "--m", m, "--beta", beta, "--variant", variant});
        if (v.code == cli::kSuccess) {
          EXPECT_EQ(s.code, cli::kSuccess);
          EXPECT_FALSE(json::parse(s.out)["admissible"].empty());
        }
      }
}

// --- curvature --------------------------------------------------------------

TEST(CliCurvature, TextAndJson) {
  const Result text = run_cli({"-q", "curvature", "--model", "halfplane", "--at", "0.1,2", "--scale", "2"});
  EXPECT_EQ(text.code, cli::kSuccess);
  EXPECT_EQ(text.out, "K = -0.5\nR = -1\n");

  const Result j = run_cli({"-q", "curvature", "--model", "disk", "--at", "0.1,0.2", "--format", "json"});
  EXPECT_EQ(j.code, cli::kSuccess);
  expect_valid(j.out, "curvature");
  EXPECT_NEAR(json::parse(j.out)["K"].get<double>(), -1.0, 1e-12);

  EXPECT_EQ(run_cli({"-q", "curvature", "--model", "disk", "--at", "0.9,0.9"}).code, cli::kUsage);
  EXPECT_EQ(run_cli({"-q", "curvature", "--model", "sphere", "--at", "0,0"}).code, cli::kUsage);
}

// --- pde --------------------------------------------------------------------

TEST(CliPde, SolveWritesGrid) {
  const auto path = std::filesystem::temp_directory_path() / "wpe_test_grid.csv";
  const Result r = run_cli(
      {"-q", "pde", "solve", "--beta", "2", "--rmax", "0.8", "--h", "0.05", "--bc", "cosh", "--out", path.string()});
  EXPECT_EQ(r.code, cli::kSuccess) << r.err;
  expect_valid(r.out, "pde_summary");
  const json j = json::parse(r.out);
  EXPECT_LT(j["max_error"].get<double>(), 2e-2);
  EXPECT_LT(j["residual_field"].get<double>(), 1e-10);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "x1,x2,tag,value");
  std::size_t rows = 0;
  for (std::string line; std::getline(in, line);) ++rows;
  EXPECT_EQ(rows, j["interior_nodes"].get<std::size_t>() + j["boundary_nodes"].get<std::size_t>());
  std::filesystem::remove(path);
}

TEST(CliPde, SolveWithoutKnownSolution) {
  const Result r = run_cli({"-q", "pde", "solve", "--beta", "1", "--h", "0.1", "--bc", "one"});
  EXPECT_EQ(r.code, cli::kSuccess);
  expect_valid(r.out, "pde_summary");
  EXPECT_TRUE(json::parse(r.out)["max_error"].is_null());
}

TEST(CliPde, Converge) {
  const Result csv = run_cli({"-q", "pde", "converge", "--beta", "2", "--h", "0.04,0.02,0.01", "--exact", "cosh"});
  EXPECT_EQ(csv.code, cli::kSuccess);
  EXPECT_EQ(csv.out.substr(0, csv.out.find('\n')), "h,max_error,observed_rate");

  const Result j = run_cli(
      {"-q", "pde", "converge", "--beta", "2", "--h", "0.04,0.02,0.01", "--exact", "cosh", "--format", "json"});
  EXPECT_EQ(j.code, cli::kSuccess);
  expect_valid(j.out, "convergence");
  const json rows = json::parse(j.out)["rows"];
  ASSERT_EQ(rows.size(), 3u);
  for (std::size_t k = 1; k < 3; ++k) {
    EXPECT_GE(rows[k]["observed_rate"].get<double>(), 1.7);
    EXPECT_LE(rows[k]["observed_rate"].get<double>(), 2.3);
  }
  EXPECT_EQ(run_cli({"-q", "pde", "converge", "--beta", "2", "--h", "0.04,0.02", "--exact", "cosh"}).code,
            cli::kUsage);
}

// --- general ----------------------------------------------------------------

TEST(CliGeneral, UnknownFlagIsUsageError) {
  const Result r = run_cli({"relation", "solve", "--m", "3", "--beta", "1", "--bogus"});
  EXPECT_EQ(r.code, cli::kUsage);
  EXPECT_NE(r.err.find("--bogus"), std::string::npos);
  EXPECT_NE(r.err.find("Usage:"), std::string::npos);
  EXPECT_EQ(r.out, "");
}

TEST(CliGeneral, InvalidValues) {
  EXPECT_EQ(run_cli({"-q", "relation", "solve", "--m", "3", "--beta", "-1"}).code, cli::kUsage);
  EXPECT_EQ(run_cli({"-q", "relation", "solve", "--m", "0", "--beta", "1"}).code, cli::kUsage);
  EXPECT_EQ(run_cli({"-q", "pde", "solve", "--beta", "1", "--rmax", "1.5"}).code, cli::kUsage);
  EXPECT_EQ(run_cli({"-q", "pde", "solve", "--beta", "1", "--h", "0"}).code, cli::kUsage);
  EXPECT_EQ(run_cli({}).code, cli::kUsage);
}

TEST(CliGeneral, BannerGoesToDiagnosticStream) {
  const Result loud = run_cli({"relation", "solve", "--m", "3", "--beta", "1"});
  const Result quiet = run_cli({"relation", "solve", "--m", "3", "--beta", "1", "--quiet"});
  EXPECT_EQ(loud.err, std::string("wpe ") + cli::kVersion + "\n");
  EXPECT_EQ(quiet.err, "");
  EXPECT_EQ(loud.out, quiet.out);
}

TEST(CliGeneral, HelpExitsZero) {
  const Result r = run_cli({"--help"});
  EXPECT_EQ(r.code, cli::kSuccess);
  EXPECT_NE(r.out.find("relation"), std::string::npos);
}

}  // namespace
}  // namespace wpe
