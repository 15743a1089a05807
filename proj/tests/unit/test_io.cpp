#include <doctest.h>

#include <sstream>

#include "tslab/cli.hpp"
#include "tslab/errors.hpp"
#include "tslab/json_io.hpp"
#include "tslab/verification.hpp"

using tslab::FinVec;
using tslab::Json;
using tslab::Rational;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = tslab::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("decimal literals are read exactly") {
    const Json j = tslab::parse_json_exact(R"({"1": 0.1, "2": "1/3", "4": -2, "5": 1e-3})");
    const FinVec v = tslab::vector_from_json(j);
    CHECK(v.get(1) == Rational(1, 10));
    CHECK(v.get(2) == Rational(1, 3));
    CHECK(v.get(4) == -2);
    CHECK(v.get(5) == Rational(1, 1000));
    CHECK(tslab::rational_from_json(tslab::parse_json_exact("0.30000000000000004")) ==
          tslab::parse_rational("30000000000000004/100000000000000000"));
  }

  TEST_CASE("malformed input") {
    CHECK_THROWS_AS(tslab::parse_json_exact("{"), tslab::InputError);
    CHECK_THROWS_AS(tslab::vector_from_json(tslab::parse_json_exact(R"({"0": 1})")), tslab::InputError);
    CHECK_THROWS_AS(tslab::vector_from_json(tslab::parse_json_exact(R"({"-3": 1})")), tslab::InputError);
    CHECK_THROWS_AS(tslab::vector_from_json(tslab::parse_json_exact(R"({"2": 1, "02": 3})")), tslab::InputError);
    CHECK_THROWS_AS(tslab::vector_from_json(tslab::parse_json_exact("[1, 2]")), tslab::InputError);
    CHECK_THROWS_AS(tslab::space_from_json(tslab::parse_json_exact(R"({"kind": "hilbert"})")), tslab::InputError);
    CHECK_THROWS_AS(tslab::space_from_json(tslab::parse_json_exact(R"({"kind": "lp"})")), tslab::InputError);
    CHECK_THROWS_AS(tslab::space_from_json(tslab::parse_json_exact(R"({"kind": "xm", "p": 2, "m": 0})")),
                    tslab::InputError);
  }

  TEST_CASE("spaces and points") {
    const auto t = tslab::space_from_json(tslab::parse_json_exact(R"({"kind": "tsirelson", "q": 2, "xi": "w"})"));
    CHECK(t.tsirelson.theta == Rational(1, 2));
    CHECK(t.tsirelson.xi == tslab::Ordinal::parse("w"));
    const auto sum = tslab::space_from_json(tslab::parse_json_exact(
        R"({"kind": "sum", "q": 2, "parts": [{"weight": "1/2", "space": {"kind": "lp", "p": 2}}, {"space": {"kind": "c0"}}]})"));
    CHECK(sum.parts.size() == 2);
    CHECK(sum.parts[0].weight == Rational(1, 2));
    const auto pts = tslab::points_from_json(tslab::parse_json_exact(R"({"vectors": [[{"1": 1}, {}], [{}, {"2": 3}]]})"), sum);
    CHECK(pts.size() == 2);
    CHECK(std::get<tslab::SumVec>(pts[1])[1] == Rational(3) * FinVec::unit(2));
    // The serialised space reads back to the same description.
    CHECK(tslab::space_from_json(tslab::to_json(sum)).describe() == sum.describe());
  }

  TEST_CASE("report round trip") {
    const auto suites = std::vector<tslab::SuiteReport>{tslab::verify_schreier(6)};
    const Json report = tslab::make_report("verify schreier", Json{{"seed", 0}}, suites, 0.25);
    for (const char* key : {"tool", "version", "command", "config", "suites", "passed", "wall_time_seconds"})
      CHECK(report.contains(key));
    const std::string text = report.dump(2);
    CHECK(Json::parse(text).dump(2) == text);
    CHECK(report["passed"].get<bool>());
  }

  TEST_CASE("norm values") {
    const Json e = tslab::to_json(tslab::NormValue::exact(Rational(3, 2)));
    CHECK(e["kind"] == "exact");
    CHECK(e["value"] == "3/2");
    CHECK(e["approx"].get<double>() == 1.5);
    const Json l = tslab::to_json(tslab::NormValue::lower_bound(1.0, 0.5));
    CHECK(l["kind"] == "lower_bound");
    CHECK(l["width"].get<double>() == 0.5);
  }

  TEST_CASE("command line exit codes") {
    auto r = cli({"schreier", "member", "--xi", "1", "--set", "3,4,5"});
    CHECK(r.code == 0);
    CHECK(r.out == "true\n");
    CHECK(cli({"schreier", "member", "--xi", "1", "--set", "1,2", "--expect", "true"}).code == 1);
    CHECK(cli({"schreier", "member", "--xi", "1", "--set", "1,2", "--expect", "false"}).code == 0);
    CHECK(cli({"schreier", "member", "--xi", "w^", "--set", "1"}).code == 2);
    CHECK(cli({"schreier", "member", "--xi", "1"}).code == 2);
    CHECK(cli({"frobnicate"}).code == 2);
    CHECK(cli({"norm", "--space", R"({"kind":"lp","p":1})", "--vec", R"({"1":3,"2":-4})"}).out == "7\n");
    CHECK(cli({"norm", "--space", R"({"kind":"nope"})", "--vec", "{}"}).code == 2);
    CHECK(cli({"norm", "--space", R"({"kind":"tsirelson"})", "--vec", R"({"17":1,"1":1,"2":1,"3":1,"4":1,"5":1,"6":1,"7":1,"8":1,"9":1,"10":1,"11":1,"12":1,"13":1,"14":1,"15":1,"16":1})"}).code == 2);
    r = cli({"dual", "--space", R"({"kind":"tsirelson"})", "--vec", R"({"2":1,"3":1})", "--json"});
    CHECK(r.code == 0);
    CHECK(Json::parse(r.out)["value"]["value"] == "2");
    r = cli({"certify", "--space", R"({"kind":"tsirelson_dual"})", "--vectors", R"([{"1":1},{"2":1},{"3":1}])", "--xi", "1",
             "--p", "inf", "--json"});
    CHECK(r.code == 0);
    CHECK(Json::parse(r.out)["constant"]["value"] == "2");
    CHECK(cli({"--version"}).code == 0);
    r = cli({"verify", "schreier", "--window", "6"});
    CHECK(r.code == 0);
    CHECK(r.out.find("all checks passed") != std::string::npos);
  }
}
