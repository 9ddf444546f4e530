#include <doctest.h>

#include <json.hpp>
#include <sstream>

#include "borsuk/cli.hpp"

using namespace borsuk::cli;
using nlohmann::json;

namespace {

struct Captured {
  int code;
  std::string out, err;
};

Captured call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("argument parsing") {
  const RunConfig cfg = parse_args({"plan", "--r", "0.6", "--d", "1e9", "--format", "csv", "--seed", "5"});
  CHECK(cfg.command == Command::Plan);
  CHECK(cfg.r == "0.6");
  CHECK(cfg.d == "1e9");
  CHECK(cfg.format == Format::Csv);
  CHECK(cfg.seed == 5);
  CHECK_THROWS_AS(parse_args({"frobnicate"}), UsageError);
  CHECK_THROWS_AS(parse_args({"plan", "--bogus"}), UsageError);
  CHECK_THROWS_AS(parse_args({"upper"}), UsageError);
  CHECK_THROWS_AS(parse_args({"--help"}), HelpRequested);
}

TEST_CASE("plan emits the fixed-radius parameters") {
  const Captured c = call({"plan", "--r", "0.6", "--d", "1e9"});
  REQUIRE(c.code == kExitPass);
  const json j = json::parse(c.out);
  CHECK(j["n"] == 176);
  CHECK(j["a"] == 140);
  CHECK(j["p"] == 79);
  CHECK(j["d"] == "1000000000");
  CHECK(j["geometry"]["diam_sq"] == "8087537152");
}

TEST_CASE("failing checks exit with 1, bad input with 2") {
  CHECK(call({"bound", "--d", "100"}).code == kExitCheckFailed);
  CHECK(call({"bound", "--d", "1e18"}).code == kExitPass);
  CHECK(call({"plan", "--r", "0.4", "--d", "1e9"}).code == kExitUsage);
  CHECK(call({"plan", "--r", "abc", "--d", "1e9"}).code == kExitUsage);
  CHECK(call({"nonsense"}).code == kExitUsage);
  CHECK(call({"--help"}).code == kExitPass);
}

TEST_CASE("find-d0 and certify reports") {
  const json d0 = json::parse(call({"find-d0", "--r", "0.71"}).out);
  CHECK(d0["d0"] == "7745");
  CHECK(d0["previous_d"] == "7057");
  const Captured cert = call({"certify", "--n", "12", "--a", "8"});
  CHECK(cert.code == kExitPass);
  const json j = json::parse(cert.out);
  CHECK(j["rank"] == "330");
  CHECK(j["mis_exact"] == "210");
  CHECK(j["verdict"] == true);
}

TEST_CASE("csv output for the extremal search") {
  const Captured c = call({"optimal-poly", "--m", "4", "--samples", "1000", "--format", "csv"});
  CHECK(c.code == kExitPass);
  CHECK(c.out.rfind("m,n,best_ratio,best_abs_ratio,extremal_bound,gap\n4,10", 0) == 0);
}

TEST_CASE("repeated invocations are byte-identical") {
  const std::vector<std::string> args{"upper", "--c-r", "0.01", "--d", "7", "--seed", "3", "--format", "text"};
  CHECK(call(args).out == call(args).out);
}
