#include "doctest.h"

#include "fgt/error.hpp"
#include "fgt/report.hpp"

#include <future>

using namespace fgt;

namespace {

RunReport run_text(const std::string& text) { return run(parse_run_spec(text)); }

ErrorCode spec_error_code(const std::string& text, std::string& message) {
  try {
    parse_run_spec(text);
  } catch (const Error& e) {
    message = e.what();
    return e.code();
  }
  return ErrorCode::kInvalidArgument;
}

}  // namespace

TEST_CASE("multiplicative run with every analysis") {
  const auto r = run_text(R"({"p": 3, "group": {"type": "multiplicative"}, "analyses": ["all"]})");
  CHECK(r.complete);
  const auto& a = r.doc["analyses"];
  CHECK(a["strict"]["result"]["is_strict"] == true);
  const auto& comp = a["torsion"]["result"]["components"][0];
  CHECK(comp["polygon"]["segments"][0]["slope"]["value"] == "1/2");
  CHECK(comp["polygon"]["segments"][0]["slope"]["kind"] == "exact");
  CHECK(a["torsion"]["result"]["witnesses"]["e"] == 2);
  CHECK(a["torsion"]["result"]["witnesses"]["tame"] == true);
  CHECK(a["delta"]["result"]["table"][0]["delta"]["value"] == "-1/2");
  CHECK(r.doc["precision"]["D"] == 8);
}

TEST_CASE("per-analysis errors are embedded") {
  const auto r = run_text(R"({"p": 3, "group": {"type": "additive"}, "analyses": ["axioms", "strict"]})");
  CHECK_FALSE(r.complete);
  CHECK(r.doc["analyses"]["axioms"]["status"] == "ok");
  CHECK(r.doc["analyses"]["strict"]["status"] == "error");
  CHECK(r.doc["analyses"]["strict"]["error"]["code"] == "InfiniteHeightComponent");
}

TEST_CASE("mixed heights complete as not strict") {
  const auto r = run_text(R"({"p": 3, "group": {"type": "product", "factors": [
      {"type": "lubin_tate", "height": 1}, {"type": "lubin_tate", "height": 2}]}, "analyses": ["strict"]})");
  CHECK(r.complete);
  const auto& s = r.doc["analyses"]["strict"]["result"];
  CHECK(s["is_strict"] == false);
  CHECK(s["reason"] == "UnequalDegrees");
  CHECK(s["degrees"] == OrderedJson::array({3, 9}));

  const auto d = run_text(R"({"p": 3, "group": {"type": "product", "factors": [
      {"type": "lubin_tate", "height": 1}, {"type": "lubin_tate", "height": 2}]}, "analyses": ["delta"]})");
  CHECK_FALSE(d.complete);
  CHECK(d.doc["analyses"]["delta"]["error"]["code"] == "NotStrict");
}

TEST_CASE("emit and validate") {
  const auto r = run_text(R"({"name": "lt2", "p": 3, "group": {"type": "lubin_tate", "height": 2}, "analyses": ["all"]})");
  const auto text = emit(r, OutputFormat::kJson);
  CHECK(validate_report(nlohmann::json::parse(text)).empty());
  CHECK(nlohmann::ordered_json::parse(text) == r.doc);

  const auto table = emit(r, OutputFormat::kTable);
  CHECK(table.find("degrees=(9)") != std::string::npos);
  CHECK(table.find("method=DeterminantShortcut") != std::string::npos);

  auto broken = nlohmann::json::parse(text);
  broken["analyses"]["torsion"]["result"]["components"][0]["valuation"] = 0.125;
  CHECK_FALSE(validate_report(broken).empty());
  broken = nlohmann::json::parse(text);
  broken.erase("schema_version");
  CHECK_FALSE(validate_report(broken).empty());
}

TEST_CASE("empty analysis list echoes the spec") {
  const auto r = run_text(R"({"name": "echo", "p": 5, "group": {"type": "multiplicative"}, "analyses": []})");
  CHECK(r.complete);
  CHECK_FALSE(r.doc.contains("analyses"));
  CHECK(r.doc["spec"]["name"] == "echo");
  CHECK(validate_report(nlohmann::json::parse(emit(r, OutputFormat::kJson))).empty());
}

TEST_CASE("identical specs give identical bytes") {
  const std::string spec =
      R"({"p": 3, "group": {"type": "product", "factors": [{"type": "lubin_tate", "height": 2},
          {"type": "lubin_tate", "height": 2}]}, "analyses": ["all"]})";
  const auto first = emit(run_text(spec), OutputFormat::kJson);
  std::vector<std::future<std::string>> runs;
  for (int i = 0; i < 4; ++i) {
    runs.push_back(std::async(std::launch::async, [&] { return emit(run_text(spec), OutputFormat::kJson); }));
  }
  for (auto& f : runs) CHECK(f.get() == first);
}

TEST_CASE("unramified coefficients") {
  const auto r = run_text(R"({"p": 3, "f": 2, "group": {"type": "lubin_tate", "height": 1}, "analyses": ["all"]})");
  CHECK(r.complete);
  CHECK(r.doc["precision"]["residue_modulus"].size() == 3);
  CHECK(r.doc["analyses"]["delta"]["result"]["table"][0]["delta"]["value"] == "-1/2");
  const auto& z = r.doc["analyses"]["torsion"]["result"]["witnesses"]["roots"][0]["z"]["coeffs"];
  CHECK(z[0].is_array());
  CHECK(z[0].size() == 2);
}

TEST_CASE("spec diagnostics") {
  std::string msg;
  CHECK(spec_error_code("{\"p\": 3,\n \"group\": }", msg) == ErrorCode::kSpecError);
  CHECK(msg.find("line 2") != std::string::npos);

  CHECK(spec_error_code(R"({"p": 4, "group": {"type": "additive"}})", msg) == ErrorCode::kSpecError);
  CHECK(msg.find("/p") != std::string::npos);

  CHECK(spec_error_code(R"({"p": 3, "group": {"type": "lubin_tate"}})", msg) == ErrorCode::kSpecError);
  CHECK(msg.find("/group/height") != std::string::npos);

  CHECK(spec_error_code(R"({"p": 3, "D": 5, "group": {"type": "lubin_tate", "height": 2}})", msg) ==
        ErrorCode::kSpecError);
  CHECK(msg.find("/D") != std::string::npos);

  CHECK(spec_error_code(R"({"p": 3, "group": {"type": "additive"}, "colour": 1})", msg) == ErrorCode::kSpecError);
  CHECK(msg.find("/colour") != std::string::npos);

  CHECK(spec_error_code(R"({"p": 3, "group": {"type": "additive"}, "analyses": ["plot"]})", msg) ==
        ErrorCode::kSpecError);
  CHECK(msg.find("/analyses/0") != std::string::npos);

  CHECK(spec_error_code(R"({"p": 3, "group": {"type": "elliptic", "a": [0, 0, 0, 1]}})", msg) ==
        ErrorCode::kSpecError);
  CHECK(msg.find("/group/a") != std::string::npos);
}

TEST_CASE("analyses run in dependency order") {
  const auto spec = parse_run_spec(R"({"p": 3, "group": {"type": "additive"}, "analyses": ["delta", "axioms", "axioms"]})");
  CHECK(spec.analyses == std::vector<std::string>{"axioms", "delta"});
}

TEST_CASE("singular curves fail at build") {
  const auto r = run_text(R"({"p": 3, "group": {"type": "elliptic", "short": [0, 0]}, "analyses": ["axioms"]})");
  CHECK_FALSE(r.complete);
  CHECK(r.doc["analyses"]["axioms"]["error"]["code"] == "SingularReduction");
}
