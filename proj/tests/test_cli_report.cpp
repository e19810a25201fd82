#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "cma/config.hpp"
#include "cma/errors.hpp"
#include "cma/report.hpp"
#include "cma/run.hpp"

using namespace cma;
namespace fs = std::filesystem;

namespace {

std::string error_text(const std::function<void()>& fn, ErrorCode expect) {
  try {
    fn();
  } catch (const Error& e) {
    CHECK(e.code() == expect);
    return e.what();
  }
  FAIL("expected an Error");
  return {};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("cma_cli_test_" + name);
  fs::remove_all(dir);
  return dir;
}

constexpr const char* kSolve = R"(# minimal solve
[grid]
n = 1
m = 64
[rhs]
kind = smooth
seed = 1
)";

}  // namespace

TEST_SUITE("cli_report") {

TEST_CASE("command names") {
  CHECK(parse_command("solve") == Command::Solve);
  CHECK(parse_command("check-inequalities") == Command::CheckInequalities);
  CHECK_FALSE(parse_command("bogus").has_value());
}

TEST_CASE("minimal config") {
  const RunConfig cfg = parse_config(kSolve, Command::Solve);
  CHECK(cfg.n == 1);
  CHECK(cfg.m == 64);
  REQUIRE(cfg.rhs.size() == 1);
  CHECK(cfg.rhs[0].seed == 1);
  CHECK(cfg.rhs[0].kind == RhsKind::Smooth);
  CHECK(cfg.lambda == 0.0);
}

TEST_CASE("config errors are located") {
  const std::string unknown = error_text(
      [] { parse_config("[grid]\nn = 1\nwidth = 3\n", Command::Solve); }, ErrorCode::ParseError);
  CHECK(unknown.find("line 3, column 1") != std::string::npos);
  const std::string number = error_text(
      [] { parse_config("[grid]\nn = 1\nm =   x4\n", Command::Solve); }, ErrorCode::ParseError);
  CHECK(number.find("line 3, column 7") != std::string::npos);
  error_text([] { parse_config("[grid\n", Command::Solve); }, ErrorCode::ParseError);
  error_text([] { parse_config("[nope]\n", Command::Solve); }, ErrorCode::ParseError);
  error_text([] { parse_config("[grid]\nn 1\n", Command::Solve); }, ErrorCode::ParseError);
  error_text([] { parse_config("n = 1\n", Command::Solve); }, ErrorCode::ParseError);

  const std::string p0 = error_text(
      [] { parse_config("[grid]\nn = 2\nm = 8\n[rhs]\np0 = 4\n", Command::Solve); },
      ErrorCode::ValidationError);
  CHECK(p0.find("p0") != std::string::npos);
  error_text([] { parse_config("[grid]\nn = 1\nm = 63\n[rhs]\n", Command::Solve); },
             ErrorCode::ValidationError);
  error_text([] { parse_config("[grid]\nn = 1\nm = 64\n[equation]\nlambda = 2\n[rhs]\n", Command::Solve); },
             ErrorCode::ValidationError);
  error_text([] { parse_config("[grid]\nn = 1\nm = 64\n", Command::Solve); },
             ErrorCode::ValidationError);
}

TEST_CASE("repeated rhs sections take consecutive seeds") {
  RunConfig cfg = parse_config("[grid]\nn = 1\nm = 32\n[rhs]\n[rhs]\nseed = 9\n[rhs]\n[run]\nseed = 100\n",
                               Command::Sweep);
  REQUIRE(cfg.rhs.size() == 3);
  CHECK(cfg.rhs[0].seed == 100);
  CHECK(cfg.rhs[1].seed == 9);
  CHECK(cfg.rhs[2].seed == 102);
  cfg.apply_seed(7);
  CHECK(cfg.rhs[0].seed == 7);
  CHECK(cfg.rhs[1].seed == 9);
  CHECK(cfg.rhs[2].seed == 9);
}

TEST_CASE("number formatting") {
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(format_number(2.0) == "2");
  CHECK(format_number(std::nan("")).empty());
  CHECK(format_number(INFINITY).empty());
}

TEST_CASE("sha256") {
  const fs::path dir = scratch("sha");
  fs::create_directories(dir);
  std::ofstream(dir / "abc") << "abc";
  CHECK(sha256_hex(dir / "abc") ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  fs::remove_all(dir);
}

TEST_CASE("solve run writes artifacts deterministically") {
  const RunConfig cfg = parse_config(kSolve, Command::Solve);
  const fs::path a = scratch("a"), b = scratch("b");
  std::ostringstream log;
  CHECK(run(cfg, a, 1, log) == kExitOk);
  CHECK(run(cfg, b, 1, log) == kExitOk);
  for (const char* name : {"report.json", "history.csv", "manifest.txt", "phi.field"}) {
    REQUIRE(fs::exists(a / name));
    CHECK(slurp(a / name) == slurp(b / name));
  }
  const auto report = nlohmann::json::parse(slurp(a / "report.json"));
  CHECK(report["solve"]["final_residual"].get<double>() <= 1e-10);
  CHECK(slurp(a / "history.csv").rfind("stage,step,t,residual,damping\n", 0) == 0);
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("F = 0 report") {
  const RunConfig cfg =
      parse_config("[grid]\nn = 1\nm = 16\n[rhs]\namplitude = 0\n", Command::Solve);
  const fs::path dir = scratch("zero");
  std::ostringstream log;
  CHECK(run(cfg, dir, 1, log) == kExitOk);
  const auto report = nlohmann::json::parse(slurp(dir / "report.json"));
  CHECK(report["solve"]["final_residual"].get<double>() == 0.0);
  CHECK(report["solve"]["stages"].back()["residuals"].size() <= 1);
  fs::remove_all(dir);
}

TEST_CASE("failed runs leave no artifacts") {
  const RunConfig cfg = parse_config(
      "[grid]\nn = 1\nm = 16\n[solver]\ncontinuation_steps = 1\nmax_halvings = 0\n"
      "[rhs]\nkind = manufactured\nterm = 0.09:cos:0:1\nterm = 0.09:cos:1:1\n",
      Command::Solve);
  const fs::path dir = scratch("fail");
  std::ostringstream log;
  const int code = run(cfg, dir, 1, log);
  CHECK(code != kExitOk);
  CHECK((!fs::exists(dir) || fs::is_empty(dir)));
  fs::remove_all(dir);
}

TEST_CASE("check-inequalities and moser commands") {
  const RunConfig ineq = parse_config("[run]\nsamples = 2000\nseed = 3\n", Command::CheckInequalities);
  const fs::path dir = scratch("ineq");
  std::ostringstream log;
  CHECK(run(ineq, dir, 2, log) == kExitOk);
  const auto j = nlohmann::json::parse(slurp(dir / "report.json"));
  CHECK(j.contains("suites"));
  fs::remove_all(dir);

  const RunConfig moser =
      parse_config("[grid]\nn = 2\nm = 8\n[rhs]\namplitude = 0.2\nbandwidth = 2\n", Command::Moser);
  const fs::path mdir = scratch("moser");
  CHECK(run(moser, mdir, 1, log) == kExitOk);
  CHECK(fs::exists(mdir / "ladder_delta.csv"));
  CHECK(slurp(mdir / "ladder_delta.csv").rfind("k,p_k,norm\n", 0) == 0);
  fs::remove_all(mdir);
}

}  // TEST_SUITE
