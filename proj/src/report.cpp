#include "fgt/report.hpp"

#include "fgt/error.hpp"
#include "fgt/strictness.hpp"
#include "fgt/torsion.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

namespace fgt {

namespace {

using Json = nlohmann::json;

[[noreturn]] void spec_error(const std::string& pointer, const std::string& message) {
  throw Error(ErrorCode::kSpecError, "field " + (pointer.empty() ? std::string("/") : pointer) + ": " + message);
}

void require_keys(const Json& obj, const std::string& pointer, const std::set<std::string>& allowed) {
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.count(key)) spec_error(pointer + "/" + key, "unknown field");
  }
}

std::int64_t get_int(const Json& obj, const std::string& key, const std::string& pointer) {
  const auto& v = obj.at(key);
  if (!v.is_number_integer()) spec_error(pointer + "/" + key, "expected an integer");
  return v.get<std::int64_t>();
}

int get_small_int(const Json& obj, const std::string& key, const std::string& pointer, int lo, int hi) {
  const auto v = get_int(obj, key, pointer);
  if (v < lo || v > hi) {
    spec_error(pointer + "/" + key, "expected an integer in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return static_cast<int>(v);
}

std::vector<std::int64_t> get_int_array(const Json& obj, const std::string& key, const std::string& pointer,
                                        std::size_t size) {
  const auto& v = obj.at(key);
  if (!v.is_array() || v.size() != size) {
    spec_error(pointer + "/" + key, "expected an array of " + std::to_string(size) + " integers");
  }
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < size; ++i) {
    if (!v[i].is_number_integer()) spec_error(pointer + "/" + key + "/" + std::to_string(i), "expected an integer");
    const auto x = v[i].get<std::int64_t>();
    if (x < -1000000 || x > 1000000) spec_error(pointer + "/" + key + "/" + std::to_string(i), "out of range");
    out.push_back(x);
  }
  return out;
}

GroupDescriptor parse_group(const Json& obj, const std::string& pointer) {
  if (!obj.is_object()) spec_error(pointer, "expected an object");
  if (!obj.contains("type") || !obj["type"].is_string()) spec_error(pointer + "/type", "expected a string");
  const auto type = obj["type"].get<std::string>();
  GroupDescriptor g;
  if (type == "multiplicative" || type == "additive") {
    require_keys(obj, pointer, {"type"});
    g.kind = type == "additive" ? GroupDescriptor::Kind::kAdditive : GroupDescriptor::Kind::kMultiplicative;
  } else if (type == "lubin_tate") {
    require_keys(obj, pointer, {"type", "height"});
    if (!obj.contains("height")) spec_error(pointer + "/height", "required");
    g.kind = GroupDescriptor::Kind::kLubinTate;
    g.height = get_small_int(obj, "height", pointer, 1, 6);
  } else if (type == "elliptic") {
    require_keys(obj, pointer, {"type", "a", "short"});
    g.kind = GroupDescriptor::Kind::kElliptic;
    if (obj.contains("a") == obj.contains("short")) spec_error(pointer, "exactly one of a, short is required");
    if (obj.contains("a")) {
      const auto a = get_int_array(obj, "a", pointer, 5);
      std::copy(a.begin(), a.end(), g.a.begin());
    } else {
      const auto ab = get_int_array(obj, "short", pointer, 2);
      g.a = {0, 0, 0, ab[0], ab[1]};
    }
  } else if (type == "product") {
    require_keys(obj, pointer, {"type", "factors"});
    g.kind = GroupDescriptor::Kind::kProduct;
    if (!obj.contains("factors") || !obj["factors"].is_array() || obj["factors"].empty()) {
      spec_error(pointer + "/factors", "expected a non-empty array");
    }
    for (std::size_t i = 0; i < obj["factors"].size(); ++i) {
      g.children.push_back(parse_group(obj["factors"][i], pointer + "/factors/" + std::to_string(i)));
    }
  } else {
    spec_error(pointer + "/type", "unknown group type '" + type + "'");
  }
  return g;
}

int group_dim(const GroupDescriptor& g) {
  if (g.kind != GroupDescriptor::Kind::kProduct) return 1;
  int d = 0;
  for (const auto& c : g.children) d += group_dim(c);
  return d;
}

int max_height(const GroupDescriptor& g) {
  switch (g.kind) {
    case GroupDescriptor::Kind::kLubinTate: return g.height;
    case GroupDescriptor::Kind::kElliptic: return 2;
    case GroupDescriptor::Kind::kProduct: {
      int h = 1;
      for (const auto& c : g.children) h = std::max(h, max_height(c));
      return h;
    }
    default: return 1;
  }
}

std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

int max_lubin_tate_degree(int p, const GroupDescriptor& g) {
  if (g.kind == GroupDescriptor::Kind::kLubinTate) return static_cast<int>(ipow(p, g.height));
  int d = 0;
  for (const auto& c : g.children) d = std::max(d, max_lubin_tate_degree(p, c));
  return d;
}

OrderedJson group_to_json(const GroupDescriptor& g) {
  OrderedJson out;
  out["type"] = g.kind_name();
  switch (g.kind) {
    case GroupDescriptor::Kind::kLubinTate: out["height"] = g.height; break;
    case GroupDescriptor::Kind::kElliptic: out["a"] = g.a; break;
    case GroupDescriptor::Kind::kProduct: {
      out["factors"] = OrderedJson::array();
      for (const auto& c : g.children) out["factors"].push_back(group_to_json(c));
      break;
    }
    default: break;
  }
  return out;
}

// Serialization helpers. Every rational goes out tagged.

OrderedJson tagged(const Valuation& v) {
  OrderedJson out;
  out["kind"] = v.kind_name();
  if (!v.is_infinite()) out["value"] = to_string(v.value());
  return out;
}

OrderedJson tagged(const Rational& r) { return tagged(Valuation::exact(r)); }

OrderedJson welem_json(const ConfigPtr& ring, const WElem& a) {
  const auto s = ring->symmetric(a);
  if (ring->f() == 1) return s[0];
  OrderedJson out = OrderedJson::array();
  for (int i = 0; i < ring->f(); ++i) out.push_back(s[static_cast<std::size_t>(i)]);
  return out;
}

OrderedJson element_json(const RamifiedElement& x) {
  OrderedJson out;
  out["coeffs"] = OrderedJson::array();
  for (const auto& c : x.coeffs()) out["coeffs"].push_back(welem_json(x.ring(), c));
  out["valuation"] = tagged(x.valuation());
  return out;
}

OrderedJson polygon_json(const NewtonPolygon& poly) {
  auto pts = [](const std::vector<PolygonPoint>& v) {
    OrderedJson out = OrderedJson::array();
    for (const auto& pt : v) out.push_back({{"degree", pt.degree}, {"valuation", tagged(pt.valuation)}});
    return out;
  };
  OrderedJson out;
  out["points"] = pts(poly.points);
  out["vertices"] = pts(poly.vertices);
  out["segments"] = OrderedJson::array();
  for (const auto& s : poly.segments) {
    out["segments"].push_back(
        {{"start", s.start}, {"end", s.end}, {"slope", tagged(s.slope)}, {"multiplicity", s.multiplicity()}});
  }
  return out;
}

OrderedJson verdict_json(const StrictnessVerdict& v, const GaloisField& field) {
  OrderedJson out;
  out["is_strict"] = v.is_strict;
  out["reason"] = reason_name(v.reason);
  out["method"] = method_name(v.method);
  out["degrees"] = v.degrees;
  OrderedJson cert;
  if (v.determinant) cert["determinant"] = field.to_string(*v.determinant);
  if (v.macaulay_degree) {
    cert["macaulay_degree"] = *v.macaulay_degree;
    cert["macaulay_rank"] = *v.macaulay_rank;
    cert["macaulay_columns"] = *v.macaulay_columns;
  }
  if (v.witness) cert["witness"] = {{"ext_degree", v.witness->ext_degree}, {"point", v.witness->str()}};
  out["certificate"] = cert.is_null() ? OrderedJson::object() : cert;
  return out;
}

OrderedJson delta_json(const DeltaReport& d) {
  return {{"element", d.element},
          {"f", d.f},
          {"v_f_prime", tagged(d.v_f_prime)},
          {"v_different", tagged(d.v_different)},
          {"delta", tagged(d.delta)},
          {"in_O1", d.in_O1}};
}

struct Pipeline {
  const FormalGroupLaw& law;
  std::optional<MulPSeries> fp;
  std::optional<TheoremBReport> torsion_report;

  const MulPSeries& mulp() {
    if (!fp) fp = mul_by_p(law);
    return *fp;
  }

  bool witnesses_apply(const TorsionValuations& tv) const {
    return tv.verdict.is_strict && !tv.predicted_only;
  }

  const TheoremBReport& witnesses() {
    if (!torsion_report) torsion_report = verify_theorem_B(law);
    return *torsion_report;
  }
};

OrderedJson analysis_axioms(Pipeline& pl) {
  const auto r = verify_group_axioms(pl.law);
  return {{"left_unit", r.left_unit},
          {"right_unit", r.right_unit},
          {"commutative", r.commutative},
          {"associative", r.associative},
          {"all", r.all()}};
}

OrderedJson analysis_mulp(Pipeline& pl) {
  const auto& fp = pl.mulp();
  OrderedJson out;
  out["series"] = OrderedJson::array();
  for (const auto& s : fp.f) out["series"].push_back(s.to_string());
  return out;
}

OrderedJson analysis_strict(Pipeline& pl) {
  const auto fs = extract_forms(pl.mulp());
  OrderedJson out = verdict_json(decide_strict(fs), *fs.field);
  out["forms"] = OrderedJson::array();
  for (const auto& g : fs.forms_G) out["forms"].push_back(g.to_string(*fs.field));
  out["excluded"] = fs.excluded;
  return out;
}

OrderedJson root_json(const TorsionRoot& r) {
  return {{"eisenstein", r.witness.ext->polynomial().to_string("Z")},
          {"d", r.witness.d},
          {"z", element_json(r.z)},
          {"v_z", tagged(r.v_z)},
          {"residual", tagged(r.residual)},
          {"residual_claim", tagged(r.residual_claim)},
          {"tail_bound", tagged(r.tail_bound)},
          {"start_index", r.start_index},
          {"newton_steps", r.newton_steps}};
}

OrderedJson geometry_json(const RootGeometry& g) {
  return {{"theta", element_json(g.theta)},
          {"v_p_prime", tagged(g.v_p_prime)},
          {"expected_v_p_prime", tagged(g.expected_v_p_prime)},
          {"root_spacing", tagged(g.root_spacing)},
          {"gap", tagged(g.gap)},
          {"derivative_ok", g.derivative_ok},
          {"krasner_ok", g.krasner_ok}};
}

OrderedJson point_json(const TorsionPoint& pt) {
  OrderedJson coords = OrderedJson::array();
  for (const auto& c : pt.coords) coords.push_back(element_json(c));
  return {{"coords", coords},
          {"structural_zero", pt.structural_zero},
          {"uniformizer_index", pt.uniformizer_index},
          {"min_valuation", tagged(pt.min_valuation)},
          {"jacobian_valuation", tagged(pt.jacobian_valuation)}};
}

OrderedJson analysis_torsion(Pipeline& pl) {
  const auto tv = torsion_valuations(pl.law);
  OrderedJson out;
  out["is_strict"] = tv.verdict.is_strict;
  out["components"] = OrderedJson::array();
  for (const auto& c : tv.components) {
    out["components"].push_back({{"index", c.index},
                                 {"form_degree", c.form_degree},
                                 {"valuation", tagged(c.valuation)},
                                 {"e_pred", c.e_pred},
                                 {"tame", c.tame},
                                 {"polygon_matches", c.polygon_matches},
                                 {"polygon", polygon_json(c.polygon)}});
  }
  out["classes"] = OrderedJson::array();
  for (const auto& cl : tv.classes) {
    out["classes"].push_back({{"support", cl.support}, {"min_valuation", tagged(cl.min_valuation)}});
  }
  out["predicted_only"] = tv.predicted_only;
  out["predicted_valuation"] = tv.predicted_valuation ? tagged(*tv.predicted_valuation) : OrderedJson();
  out["e_pred"] = tv.e_pred ? OrderedJson(*tv.e_pred) : OrderedJson();
  if (!pl.witnesses_apply(tv)) {
    out["witnesses"] = nullptr;
    return out;
  }
  const auto& tb = pl.witnesses();
  OrderedJson w;
  w["e"] = tb.e;
  w["tame"] = tb.tame;
  w["uniformizer_ok"] = tb.uniformizer_ok;
  w["roots"] = OrderedJson::array();
  for (const auto& r : tb.roots) w["roots"].push_back(root_json(r));
  w["geometry"] = OrderedJson::array();
  for (const auto& g : tb.geometry) w["geometry"].push_back(geometry_json(g));
  w["points"] = OrderedJson::array();
  for (const auto& pt : tb.points) w["points"].push_back(point_json(pt));
  out["witnesses"] = w;
  return out;
}

OrderedJson analysis_delta(Pipeline& pl) {
  const auto o1 = verify_O1_exclusion(pl.witnesses());
  OrderedJson out;
  out["v_different"] = tagged(o1.v_different);
  out["some_negative"] = o1.some_negative;
  out["uniformizer_matches"] = o1.uniformizer_matches;
  out["tame_value"] = o1.tame_value;
  out["table"] = OrderedJson::array();
  for (const auto& e : o1.entries) {
    OrderedJson row = {{"point", e.point}, {"coordinate", e.coordinate}, {"structural_zero", e.structural_zero}};
    row.update(delta_json(e.report));
    out["table"].push_back(row);
  }
  return out;
}

OrderedJson error_json(const std::string& code, const std::string& message) {
  return {{"status", "error"}, {"error", {{"code", code}, {"message", message}}}};
}

}  // namespace

RunSpec run_spec_from_json(const Json& doc) {
  if (!doc.is_object()) spec_error("", "expected an object");
  require_keys(doc, "", {"name", "description", "p", "f", "N", "D", "group", "analyses"});
  RunSpec spec;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) spec_error("/name", "expected a string");
    spec.name = doc["name"].get<std::string>();
  }
  if (doc.contains("description") && !doc["description"].is_string()) spec_error("/description", "expected a string");
  if (!doc.contains("p")) spec_error("/p", "required");
  spec.p = get_small_int(doc, "p", "", 3, 1000003);
  if (doc.contains("f")) spec.f = get_small_int(doc, "f", "", 1, 4);
  if (doc.contains("N")) spec.precision = get_small_int(doc, "N", "", 1, 60);
  try {
    PrimeConfig::make(spec.p, spec.f, spec.precision);
  } catch (const Error& e) {
    spec_error(std::string(e.what()).find("N") != std::string::npos ? "/N" : "/p", e.what());
  }
  if (!doc.contains("group")) spec_error("/group", "required");
  spec.group = parse_group(doc["group"], "/group");
  if (group_dim(spec.group) > 3) spec_error("/group", "total dimension above 3 is not supported");
  if (doc.contains("D")) spec.trunc = get_small_int(doc, "D", "", 1, 127);
  const int needed = max_lubin_tate_degree(spec.p, spec.group);
  const int trunc = spec.trunc.value_or(default_truncation(spec.p, spec.group));
  if (trunc > 127) spec_error("/D", "default truncation " + std::to_string(trunc) + " exceeds 127; set D explicitly");
  if (needed > trunc) {
    spec_error(spec.trunc ? "/D" : "/group",
               "truncation " + std::to_string(trunc) + " below Lubin-Tate degree " + std::to_string(needed));
  }
  if (doc.contains("analyses")) {
    const auto& a = doc["analyses"];
    if (!a.is_array()) spec_error("/analyses", "expected an array");
    std::set<std::string> requested;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!a[i].is_string()) spec_error("/analyses/" + std::to_string(i), "expected a string");
      const auto name = a[i].get<std::string>();
      if (name == "all") {
        requested.insert(kAnalysisOrder.begin(), kAnalysisOrder.end());
      } else if (std::find(kAnalysisOrder.begin(), kAnalysisOrder.end(), name) != kAnalysisOrder.end()) {
        requested.insert(name);
      } else {
        spec_error("/analyses/" + std::to_string(i), "unknown analysis '" + name + "'");
      }
    }
    for (const auto& name : kAnalysisOrder) {
      if (requested.count(name)) spec.analyses.push_back(name);
    }
  }
  return spec;
}

RunSpec parse_run_spec(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::string msg = e.what();
    const auto at = msg.find("at line");
    throw Error(ErrorCode::kSpecError, at == std::string::npos ? msg : msg.substr(at + 3));
  }
  return run_spec_from_json(doc);
}

OrderedJson run_spec_to_json(const RunSpec& spec) {
  OrderedJson out;
  out["name"] = spec.name;
  out["p"] = spec.p;
  out["f"] = spec.f;
  out["N"] = spec.precision;
  out["D"] = spec.trunc ? OrderedJson(*spec.trunc) : OrderedJson();
  out["group"] = group_to_json(spec.group);
  out["analyses"] = spec.analyses;
  return out;
}

int default_truncation(int p, const GroupDescriptor& group) {
  return static_cast<int>(ipow(p, max_height(group)) + p + 2);
}

FormalGroupLaw build_group(const ConfigPtr& ring, int trunc, const GroupDescriptor& group) {
  switch (group.kind) {
    case GroupDescriptor::Kind::kMultiplicative: return build_multiplicative(ring, trunc);
    case GroupDescriptor::Kind::kAdditive: return build_additive(ring, trunc);
    case GroupDescriptor::Kind::kLubinTate: return build_lubin_tate(ring, trunc, group.height);
    case GroupDescriptor::Kind::kElliptic: return build_elliptic(ring, trunc, group.a);
    case GroupDescriptor::Kind::kProduct: {
      std::vector<FormalGroupLaw> parts;
      for (const auto& c : group.children) parts.push_back(build_group(ring, trunc, c));
      return build_product(parts);
    }
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown group kind");
}

RunReport run(const RunSpec& spec, const RunOptions& options) {
  using Clock = std::chrono::steady_clock;
  RunReport report;
  auto& doc = report.doc;
  doc["schema_version"] = kReportSchemaVersion;
  doc["tool"] = {{"name", "fgt"}, {"version", kToolVersion}};
  doc["spec"] = run_spec_to_json(spec);
  report.complete = true;
  if (spec.analyses.empty()) return report;

  OrderedJson timing;
  const int trunc = spec.trunc.value_or(default_truncation(spec.p, spec.group));
  const auto ring = PrimeConfig::make(spec.p, spec.f, spec.precision);
  doc["precision"] = {{"p", spec.p},
                      {"f", spec.f},
                      {"N", spec.precision},
                      {"D", trunc},
                      {"D_source", spec.trunc ? "spec" : "default"},
                      {"residue_modulus", ring->residue_modulus()}};
  doc["analyses"] = OrderedJson::object();

  std::optional<FormalGroupLaw> law;
  const auto t0 = Clock::now();
  try {
    law = build_group(ring, trunc, spec.group);
    doc["group"] = {{"descriptor", law->provenance().str()}, {"dim", law->dim()}};
  } catch (const Error& e) {
    doc["group"] = {{"descriptor", spec.group.str()}, {"dim", group_dim(spec.group)}};
    for (const auto& name : spec.analyses) {
      doc["analyses"][name] = error_json(std::string(error_code_name(e.code())), std::string("build: ") + e.what());
    }
    report.complete = false;
    return report;
  }
  timing["build_ms"] = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();

  Pipeline pl{*law, std::nullopt, std::nullopt};
  const std::map<std::string, std::function<OrderedJson(Pipeline&)>> handlers{
      {"axioms", analysis_axioms},
      {"mulp", analysis_mulp},
      {"strict", analysis_strict},
      {"torsion", analysis_torsion},
      {"delta", analysis_delta}};
  for (const auto& name : spec.analyses) {
    const auto start = Clock::now();
    try {
      doc["analyses"][name] = {{"status", "ok"}, {"result", handlers.at(name)(pl)}};
    } catch (const Error& e) {
      doc["analyses"][name] = error_json(std::string(error_code_name(e.code())), e.what());
      report.complete = false;
    } catch (const std::exception& e) {
      doc["analyses"][name] = error_json("Internal", e.what());
      report.complete = false;
    }
    timing[name + "_ms"] = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  }
  if (options.timing) doc["timing"] = timing;
  return report;
}

namespace {

std::string tag_str(const OrderedJson& t) {
  if (!t.is_object()) return "-";
  const auto kind = t.value("kind", "");
  if (kind == "infinite") return "inf";
  const auto v = t.value("value", "");
  return kind == "lower_bound" ? ">=" + v : v;
}

std::string join_ints(const OrderedJson& arr) {
  std::string s;
  for (const auto& x : arr) s += (s.empty() ? "" : ",") + x.dump();
  return "(" + s + ")";
}

std::string table_line(const std::string& name, const OrderedJson& entry) {
  if (entry.value("status", "") != "ok") {
    const auto& err = entry["error"];
    return "error " + err.value("code", "") + ": " + err.value("message", "");
  }
  const auto& r = entry["result"];
  std::ostringstream out;
  if (name == "axioms") {
    out << (r.value("all", false) ? "hold" : "FAIL") << "  unit=" << r["left_unit"] << "/" << r["right_unit"]
        << " comm=" << r["commutative"] << " assoc=" << r["associative"];
  } else if (name == "mulp") {
    for (std::size_t i = 0; i < r["series"].size(); ++i) {
      out << (i ? "; " : "") << "f" << i + 1 << " = " << r["series"][i].get<std::string>();
    }
  } else if (name == "strict") {
    out << (r.value("is_strict", false) ? "strict" : "not strict") << "  reason=" << r.value("reason", "")
        << " method=" << r.value("method", "") << " degrees=" << join_ints(r["degrees"]);
    if (r["certificate"].contains("witness")) out << " witness=" << r["certificate"]["witness"].value("point", "");
  } else if (name == "torsion") {
    std::string slopes;
    for (const auto& c : r["components"]) {
      for (const auto& s : c["polygon"]["segments"]) {
        slopes += (slopes.empty() ? "" : ", ") + tag_str(s["slope"]) + " x" + s["multiplicity"].dump();
      }
    }
    out << "slopes " << slopes;
    if (!r["e_pred"].is_null()) out << "  e_pred=" << r["e_pred"].dump();
    if (!r["witnesses"].is_null()) {
      out << "  e=" << r["witnesses"]["e"].dump() << (r["witnesses"].value("tame", false) ? " tame" : " wild")
          << " uniformizer=" << (r["witnesses"].value("uniformizer_ok", false) ? "ok" : "FAIL");
    }
  } else if (name == "delta") {
    out << "v(D)=" << tag_str(r["v_different"]);
    for (const auto& row : r["table"]) {
      out << "  P" << row["point"].dump() << ".x" << row["coordinate"].dump() << ":" << tag_str(row["delta"]);
    }
  }
  return out.str();
}

}  // namespace

std::string emit(const RunReport& report, OutputFormat format) {
  const auto& doc = report.doc;
  if (format == OutputFormat::kJson) return doc.dump(2) + "\n";
  std::ostringstream out;
  const auto& spec = doc["spec"];
  auto row = [&](const std::string& k, const std::string& v) { out << std::left << std::setw(10) << k << v << "\n"; };
  row("spec", spec.value("name", ""));
  std::ostringstream setup;
  setup << "p=" << spec["p"].dump() << " f=" << spec["f"].dump() << " N=" << spec["N"].dump();
  if (doc.contains("precision")) setup << " D=" << doc["precision"]["D"].dump();
  row("ring", setup.str());
  row("group", doc.contains("group") ? doc["group"].value("descriptor", "") : group_to_json(GroupDescriptor{}).dump());
  if (doc.contains("analyses")) {
    for (const auto& [name, entry] : doc["analyses"].items()) row(name, table_line(name, entry));
  }
  return out.str();
}

namespace {

const std::set<std::string> kTaggedFields{
    "valuation",  "slope",     "min_valuation", "v_z",        "residual",           "residual_claim",
    "tail_bound", "v_p_prime", "expected_v_p_prime",          "root_spacing",       "gap",
    "v_f_prime",  "v_different", "delta",       "jacobian_valuation", "predicted_valuation"};

bool is_tag(const Json& t) {
  if (!t.is_object() || !t.contains("kind") || !t["kind"].is_string()) return false;
  const auto kind = t["kind"].get<std::string>();
  if (kind == "infinite") return t.size() == 1;
  if (kind != "exact" && kind != "lower_bound") return false;
  if (t.size() != 2 || !t.contains("value") || !t["value"].is_string()) return false;
  try {
    parse_rational(t["value"].get<std::string>());
  } catch (const std::exception&) {
    return false;
  }
  return true;
}

void check_numbers(const Json& node, const std::string& path, std::vector<std::string>& problems) {
  if (node.is_number_float() && path.rfind("/timing", 0) != 0) {
    problems.push_back(path + ": untagged non-integer number");
  }
  if (node.is_object()) {
    for (const auto& [key, child] : node.items()) {
      const auto sub = path + "/" + key;
      if (path != "/analyses" && kTaggedFields.count(key) && !child.is_null() && !is_tag(child)) {
        problems.push_back(sub + ": expected an exact/lower_bound/infinite tag");
      }
      check_numbers(child, sub, problems);
    }
  } else if (node.is_array()) {
    for (std::size_t i = 0; i < node.size(); ++i) check_numbers(node[i], path + "/" + std::to_string(i), problems);
  }
}

}  // namespace

std::vector<std::string> validate_report(const Json& doc) {
  std::vector<std::string> problems;
  auto need = [&](const Json& obj, const std::string& path, const std::string& key, auto pred, const char* what) {
    if (!obj.is_object() || !obj.contains(key) || !pred(obj[key])) {
      problems.push_back(path + "/" + key + ": expected " + what);
      return false;
    }
    return true;
  };
  auto is_int = [](const Json& j) { return j.is_number_integer(); };
  auto is_obj = [](const Json& j) { return j.is_object(); };
  auto is_str = [](const Json& j) { return j.is_string(); };
  auto is_arr = [](const Json& j) { return j.is_array(); };
  auto is_bool = [](const Json& j) { return j.is_boolean(); };

  if (!doc.is_object()) return {"/: expected an object"};
  if (need(doc, "", "schema_version", is_int, "an integer") && doc["schema_version"] != kReportSchemaVersion) {
    problems.push_back("/schema_version: unsupported version " + doc["schema_version"].dump());
  }
  if (need(doc, "", "tool", is_obj, "an object")) {
    need(doc["tool"], "/tool", "name", is_str, "a string");
    need(doc["tool"], "/tool", "version", is_str, "a string");
  }
  if (need(doc, "", "spec", is_obj, "an object")) {
    const auto& s = doc["spec"];
    need(s, "/spec", "name", is_str, "a string");
    need(s, "/spec", "p", is_int, "an integer");
    need(s, "/spec", "f", is_int, "an integer");
    need(s, "/spec", "N", is_int, "an integer");
    need(s, "/spec", "D", [](const Json& j) { return j.is_null() || j.is_number_integer(); }, "an integer or null");
    need(s, "/spec", "group", is_obj, "an object");
    need(s, "/spec", "analyses", is_arr, "an array");
  }
  const std::set<std::string> allowed_top{"schema_version", "tool", "spec", "precision", "group", "analyses", "timing"};
  for (const auto& [key, _] : doc.items()) {
    if (!allowed_top.count(key)) problems.push_back("/" + key + ": unknown field");
  }
  if (doc.contains("analyses")) {
    if (!need(doc, "", "precision", is_obj, "an object")) return problems;
    for (const char* k : {"p", "f", "N", "D"}) need(doc["precision"], "/precision", k, is_int, "an integer");
    need(doc, "", "group", is_obj, "an object");
    if (!doc["analyses"].is_object()) {
      problems.push_back("/analyses: expected an object");
      return problems;
    }
    for (const auto& [name, entry] : doc["analyses"].items()) {
      const auto path = "/analyses/" + name;
      if (std::find(kAnalysisOrder.begin(), kAnalysisOrder.end(), name) == kAnalysisOrder.end()) {
        problems.push_back(path + ": unknown analysis");
        continue;
      }
      if (!need(entry, path, "status", is_str, "a string")) continue;
      const auto status = entry["status"].get<std::string>();
      if (status == "ok") {
        if (!need(entry, path, "result", is_obj, "an object")) continue;
        const auto& r = entry["result"];
        const auto rp = path + "/result";
        if (name == "axioms") {
          for (const char* k : {"left_unit", "right_unit", "commutative", "associative", "all"}) {
            need(r, rp, k, is_bool, "a boolean");
          }
        } else if (name == "mulp") {
          need(r, rp, "series", is_arr, "an array");
        } else if (name == "strict") {
          need(r, rp, "is_strict", is_bool, "a boolean");
          need(r, rp, "reason", is_str, "a string");
          need(r, rp, "method", is_str, "a string");
          need(r, rp, "degrees", is_arr, "an array");
          need(r, rp, "certificate", is_obj, "an object");
        } else if (name == "torsion") {
          need(r, rp, "is_strict", is_bool, "a boolean");
          need(r, rp, "components", is_arr, "an array");
          need(r, rp, "classes", is_arr, "an array");
          need(r, rp, "witnesses", [](const Json& j) { return j.is_null() || j.is_object(); }, "an object or null");
        } else if (name == "delta") {
          need(r, rp, "table", is_arr, "an array");
          need(r, rp, "some_negative", is_bool, "a boolean");
          need(r, rp, "uniformizer_matches", is_bool, "a boolean");
        }
      } else if (status == "error") {
        if (need(entry, path, "error", is_obj, "an object")) {
          need(entry["error"], path + "/error", "code", is_str, "a string");
          need(entry["error"], path + "/error", "message", is_str, "a string");
        }
      } else {
        problems.push_back(path + "/status: expected ok or error");
      }
    }
  }
  check_numbers(doc, "", problems);
  return problems;
}

}  // namespace fgt
