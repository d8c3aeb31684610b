#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "digifix/commands.hpp"

using namespace digifix;

namespace {

std::string data(const std::string& name) { return std::string(DIGIFIX_TEST_DATA) + "/" + name; }

struct Run {
  int code;
  std::string out;
  std::string err;
};

template <typename Fn>
Run run(Fn&& fn) {
  std::ostringstream out, err;
  const int code = fn(out, err);
  return {code, out.str(), err.str()};
}

std::string record(const std::string& out) {
  const auto at = out.rfind("record ");
  return at == std::string::npos ? "" : out.substr(at);
}

std::string temp_doc(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("digifix_test_" + name);
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST_CASE("check: saljah document holds with margin 0.89") {
  const auto r = run([](auto& o, auto& e) { return cmd_check(data("saljah.json"), {}, o, e); });
  CHECK(r.code == kExitOk);
  CHECK(record(r.out).find("holds=true") != std::string::npos);
  CHECK(record(r.out).find("margin=0.89 ") != std::string::npos);
  CHECK(record(r.out).find("tightest=0,1") != std::string::npos);
}

TEST_CASE("check: identity with quasi(0.4) fails with a witness") {
  const auto r = run([](auto& o, auto& e) { return cmd_check(data("identity_quasi.json"), {}, o, e); });
  CHECK(r.code == kExitVerdictFalse);
  CHECK(r.out.find("witness: (") != std::string::npos);
  CHECK(record(r.out).find("witness=none") == std::string::npos);
}

TEST_CASE("check: malformed and incomplete documents") {
  auto r = run([](auto& o, auto& e) { return cmd_check(data("malformed.json"), {}, o, e); });
  CHECK(r.code == kExitParseError);
  CHECK(r.err.find("byte") != std::string::npos);
  r = run([](auto& o, auto& e) { return cmd_check(data("two_point.json"), {}, o, e); });
  CHECK(r.code == kExitSemanticError);
  const auto bad = temp_doc("bad_p.json", R"({"dimension": 1, "points": [[0], [1]],
      "adjacency": {"kind": "c_u", "u": 1}, "metric": {"kind": "lp", "p": 0}})");
  r = run([&](auto& o, auto& e) { return cmd_fpp(bad, {}, o, e); });
  CHECK(r.code == kExitSemanticError);
}

TEST_CASE("fixed-points command") {
  auto r = run([](auto& o, auto& e) { return cmd_fixed_points(data("saljah.json"), {}, o, e); });
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("no fixed points") != std::string::npos);
  CHECK(record(r.out).find("count=0") != std::string::npos);

  r = run([](auto& o, auto& e) { return cmd_fixed_points(data("constant.json"), {}, o, e); });
  CHECK(r.code == kExitOk);
  CHECK(record(r.out).find("count=1 points=1 unique=1") != std::string::npos);
  CHECK(r.out.find("orbit from 0: 0 1 1\n") != std::string::npos);

  r = run([](auto& o, auto& e) { return cmd_fixed_points(data("identity_quasi.json"), {}, o, e); });
  CHECK(r.code == kExitOk);
  CHECK(record(r.out).find("count=3 points=0,1,2 unique=none") != std::string::npos);
}

TEST_CASE("fpp command") {
  auto r = run([](auto& o, auto& e) { return cmd_fpp(data("singleton.json"), {}, o, e); });
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("FPP: yes") != std::string::npos);

  r = run([](auto& o, auto& e) { return cmd_fpp(data("two_point.json"), {}, o, e); });
  CHECK(r.code == kExitVerdictFalse);
  CHECK(r.out.find("FPP: no") != std::string::npos);
  CHECK(record(r.out).find("witness=1,0") != std::string::npos);

  r = run([](auto& o, auto& e) { return cmd_fpp(data("nine_point.json"), {}, o, e); });
  CHECK(r.code == kExitBudgetExceeded);

  CliOptions small;
  small.budget = 3;
  r = run([&](auto& o, auto& e) { return cmd_fpp(data("two_point.json"), small, o, e); });
  CHECK(r.code == kExitBudgetExceeded);
}

TEST_CASE("falsify command") {
  CliOptions opts;
  opts.window = 30;
  auto r = run([&](auto& o, auto& e) { return cmd_falsify(std::nullopt, opts, o, e); });
  CHECK(r.code == kExitOk);
  CHECK(record(r.out) ==
        "record command=falsify doubling=refuted window=30 ratio=2 involution=refuted coefficient_sum=0.99\n");

  r = run([](auto& o, auto& e) { return cmd_falsify(data("saljah.json"), {}, o, e); });
  CHECK(r.code == kExitOk);
  CHECK(record(r.out).find("found=true") != std::string::npos);
  CHECK(record(r.out).find("map=1,0") != std::string::npos);

  r = run([](auto& o, auto& e) { return cmd_falsify(data("quasi_pool.json"), {}, o, e); });
  CHECK(r.code == kExitVerdictFalse);
  CHECK(record(r.out).find("found=false") != std::string::npos);
}

TEST_CASE("exit codes depend only on the inputs") {
  for (int i = 0; i < 3; ++i) {
    CHECK(run([](auto& o, auto& e) { return cmd_check(data("saljah.json"), {}, o, e); }).out ==
          run([](auto& o, auto& e) { return cmd_check(data("saljah.json"), {}, o, e); }).out);
  }
}

TEST_CASE("demo command") {
  const auto r = run([](auto& o, auto& e) { return cmd_demo({}, o, e); });
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("[FAIL]") == std::string::npos);
  CHECK(r.out.find("ratio_L(0.5) < 1 -> FALSE (expected FALSE)") != std::string::npos);
  CHECK(r.out.find("[PASS] k1^2 + k2^2 + k3^2 = 0 + 0.9 + 0.09 = 0.99 < 1") != std::string::npos);
}
