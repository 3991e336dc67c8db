#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include <ndp/cli.hpp>
#include <ndp/service.hpp>
#include <ndproof/serialize.hpp>

namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run_ndp(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = ndp::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string corpus_file(const std::string& name) { return (fs::path(NDPROOF_CORPUS_DIR) / name).string(); }

class TempFile {
 public:
  explicit TempFile(const std::string& content) {
    static int counter = 0;
    path_ = fs::temp_directory_path() / ("ndp_cli_test_" + std::to_string(::getpid()) + "_" +
                                         std::to_string(counter++) + ".ndp");
    std::ofstream(path_) << content;
  }
  ~TempFile() { fs::remove(path_); }
  std::string path() const { return path_.string(); }

 private:
  fs::path path_;
};

}  // namespace

TEST(Cli, AcceptedProofExitsZero) {
  CliRun r = run_ndp({"check", corpus_file("socrates_direct.ndp")});
  EXPECT_EQ(r.code, ndp::kExitOk);
  EXPECT_NE(r.out.find("accepted: proves ∃x M(x)"), std::string::npos);
}

TEST(Cli, RejectedProofExitsOne) {
  CliRun r = run_ndp({"check", corpus_file("cats_direct_literal.ndp")});
  EXPECT_EQ(r.code, ndp::kExitRejected);
  EXPECT_NE(r.out.find("error[E_SCOPE]"), std::string::npos);
  EXPECT_NE(r.out.find("rejected: 1 error"), std::string::npos);
}

TEST(Cli, StrictFlag) {
  EXPECT_EQ(run_ndp({"check", corpus_file("socrates_indirect.ndp")}).code, ndp::kExitOk);
  CliRun r = run_ndp({"check", "--strict", corpus_file("socrates_indirect.ndp")});
  EXPECT_EQ(r.code, ndp::kExitRejected);
  EXPECT_NE(r.out.find("E_DERIVED_IN_STRICT"), std::string::npos);
}

TEST(Cli, WarningsDoNotReject) {
  CliRun r = run_ndp({"check", corpus_file("socrates_indirect_literal.ndp")});
  EXPECT_EQ(r.code, ndp::kExitOk);
  EXPECT_NE(r.out.find("warning[W_RULE_RELABELED]"), std::string::npos);
}

TEST(Cli, ParseErrorExitsTwo) {
  TempFile f("1. P ; premise\n2. P ∧ ; AndI 1, 1\n");
  CliRun r = run_ndp({"check", f.path()});
  EXPECT_EQ(r.code, ndp::kExitParse);
  EXPECT_NE(r.err.find(":2:"), std::string::npos);
  EXPECT_NE(r.err.find("E_SYNTAX"), std::string::npos);
}

TEST(Cli, MissingFileExitsThree) {
  EXPECT_EQ(run_ndp({"check", "/nonexistent/proof.ndp"}).code, ndp::kExitIo);
  EXPECT_EQ(run_ndp({"fmt", "/nonexistent/proof.ndp"}).code, ndp::kExitIo);
}

TEST(Cli, ResourceLimitExitsFour) {
  ::setenv("ND_MAX_STRUCTURES", "100", 1);
  CliRun r = run_ndp({"countermodel", "--premise", "∀x ∀y R(x, y)", "--conclusion", "∀x ∀y S(x, y)", "--max-domain", "3"});
  ::unsetenv("ND_MAX_STRUCTURES");
  EXPECT_EQ(r.code, ndp::kExitResource);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run_ndp({}).code, ndp::kExitParse);
  EXPECT_EQ(run_ndp({"check"}).code, ndp::kExitParse);
  EXPECT_EQ(run_ndp({"frobnicate"}).code, ndp::kExitParse);
  EXPECT_EQ(run_ndp({"--help"}).code, 0);
}

TEST(Cli, SoundnessSearchOnCheck) {
  CliRun r = run_ndp({"check", "--max-domain", "2", corpus_file("lion.ndp")});
  EXPECT_EQ(r.code, ndp::kExitOk);
  EXPECT_NE(r.out.find("no countermodel with domain size up to 2"), std::string::npos);
}

TEST(Cli, Countermodel) {
  CliRun r = run_ndp({"countermodel", "--premise", "∀x(H(x) → M(x))", "--premise", "M(s)", "--conclusion", "H(s)"});
  EXPECT_EQ(r.code, ndp::kExitRejected);
  EXPECT_NE(r.out.find("domain: {0}"), std::string::npos);
  EXPECT_NE(r.out.find("M = {0}"), std::string::npos);

  CliRun j = run_ndp({"countermodel", "--json", "--premise", "∀x(H(x) → M(x))", "--premise", "H(s)", "--conclusion",
               "M(s)", "--max-domain", "2"});
  EXPECT_EQ(j.code, ndp::kExitOk);
  ndproof::Json v = ndproof::parse_json(j.out);
  EXPECT_EQ(v["result"], "valid_up_to");
  EXPECT_EQ(v["bound"], 2);
}

TEST(Cli, FmtIsCanonicalAndIdempotent) {
  TempFile f("1. forall x (P(x) -> Q(x)) ; Premise\n2. P(a) -> Q(a) ; ∀E 1\n");
  CliRun once = run_ndp({"fmt", f.path()});
  EXPECT_EQ(once.code, 0);
  EXPECT_EQ(once.out, "1. ∀x(P(x) → Q(x)) ; premise\n2. P(a) → Q(a) ; ForallE 1\n");
  TempFile g(once.out);
  EXPECT_EQ(run_ndp({"fmt", g.path()}).out, once.out);

  CliRun json = run_ndp({"fmt", "--json", f.path()});
  TempFile h(json.out);
  EXPECT_EQ(run_ndp({"fmt", h.path()}).out, once.out);
}

TEST(Cli, ParseCommand) {
  CliRun ok = run_ndp({"parse", "forall x (P(x) -> Q(x))"});
  EXPECT_EQ(ok.code, 0);
  EXPECT_EQ(ok.out, "∀x(P(x) → Q(x))\n");
  CliRun bad = run_ndp({"parse", "∀x("});
  EXPECT_EQ(bad.code, ndp::kExitParse);
  EXPECT_NE(bad.err.find("   ^"), std::string::npos);
  CliRun json = run_ndp({"parse", "--json", "∀x("});
  EXPECT_EQ(ndproof::parse_json(json.out)["error"]["offset"], std::string("∀x(").size());
}

TEST(Cli, JsonOutputMatchesTheService) {
  ndp::Service service;
  for (const char* name : {"cats_indirect.ndp", "cats_indirect_literal.ndp", "socrates_indirect_literal.ndp"}) {
    SCOPED_TRACE(name);
    CliRun r = run_ndp({"check", "--json", corpus_file(name)});
    ndp::HttpResponse resp = service.handle({"POST", "/v1/check", ndproof::read_file(corpus_file(name))});
    EXPECT_EQ(resp.status, 200);
    EXPECT_EQ(r.out, resp.body);
  }
  CliRun strict = run_ndp({"check", "--json", "--strict", "--max-domain", "2", corpus_file("socrates_direct.ndp")});
  ndproof::Json req{{"version", "v1"},
                    {"text", ndproof::read_file(corpus_file("socrates_direct.ndp"))},
                    {"config", {{"strict", true}, {"max_domain", 2}}}};
  EXPECT_EQ(strict.out, service.handle({"POST", "/v1/check", req.dump()}).body);
}
