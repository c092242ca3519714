// Copyright 2026 The vinesim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "vinesim/scenario.h"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "absl/strings/string_view.h"
#include "vinesim/units.h"

namespace vinesim {

namespace internal {
struct BundledScenario {
  const char* name;
  const char* text;
};
// Generated from scenarios/*.json at configure time.
extern const BundledScenario kBundledScenarios[];
extern const int kNumBundledScenarios;
}  // namespace internal

namespace {

using nlohmann::json;

absl::Status SchemaError(absl::string_view path, absl::string_view what) {
  return absl::InvalidArgumentError(
      absl::StrCat("at ", path.empty() ? "/" : path, ": ", what));
}

std::string Join(absl::string_view path, absl::string_view key) {
  return absl::StrCat(path, "/", key);
}
std::string Join(absl::string_view path, size_t index) {
  return absl::StrCat(path, "/", index);
}

// A JSON object whose keys are consumed one by one; anything left over is an
// unknown key.
class ObjectReader {
 public:
  ObjectReader(const json& obj, std::string path)
      : obj_(obj), path_(std::move(path)) {}

  absl::Status CheckObject() const {
    if (!obj_.is_object()) return SchemaError(path_, "expected an object");
    return absl::OkStatus();
  }

  const json* Find(absl::string_view key) {
    seen_.emplace_back(key);
    auto it = obj_.find(std::string(key));
    return it == obj_.end() ? nullptr : &*it;
  }

  // Leaves `out` untouched when the key is absent.
  absl::Status Number(absl::string_view key, double& out) {
    const json* v = Find(key);
    if (v == nullptr) return absl::OkStatus();
    if (!v->is_number()) return SchemaError(Join(path_, key), "expected a number");
    out = v->get<double>();
    return absl::OkStatus();
  }

  absl::Status RequiredNumber(absl::string_view key, double& out) {
    if (obj_.find(std::string(key)) == obj_.end()) {
      seen_.emplace_back(key);
      return SchemaError(Join(path_, key), "required");
    }
    return Number(key, out);
  }

  absl::Status Integer(absl::string_view key, int& out, bool required) {
    const json* v = Find(key);
    if (v == nullptr) {
      return required ? SchemaError(Join(path_, key), "required")
                      : absl::OkStatus();
    }
    if (!v->is_number_integer()) {
      return SchemaError(Join(path_, key), "expected an integer");
    }
    out = v->get<int>();
    return absl::OkStatus();
  }

  absl::Status String(absl::string_view key, std::string& out, bool required) {
    const json* v = Find(key);
    if (v == nullptr) {
      return required ? SchemaError(Join(path_, key), "required")
                      : absl::OkStatus();
    }
    if (!v->is_string()) return SchemaError(Join(path_, key), "expected a string");
    out = v->get<std::string>();
    return absl::OkStatus();
  }

  absl::Status NoUnknownKeys() const {
    for (auto it = obj_.begin(); it != obj_.end(); ++it) {
      if (std::find(seen_.begin(), seen_.end(), it.key()) == seen_.end()) {
        return SchemaError(Join(path_, it.key()), "unknown key");
      }
    }
    return absl::OkStatus();
  }

  const std::string& path() const { return path_; }

 private:
  const json& obj_;
  std::string path_;
  std::vector<std::string> seen_;
};

#define VS_RETURN_IF_ERROR(expr)         \
  do {                                   \
    if (absl::Status _s = (expr); !_s.ok()) return _s; \
  } while (0)

absl::StatusOr<Vec2> ParsePointMm(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    return SchemaError(path, "expected a point [x_mm, y_mm]");
  }
  return Vec2{units::MmToM(v[0].get<double>()), units::MmToM(v[1].get<double>())};
}

absl::StatusOr<Side> ParseSide(const json& v, const std::string& path) {
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "left" || s == "Left") return Side::kLeft;
    if (s == "right" || s == "Right") return Side::kRight;
  }
  return SchemaError(path, "expected \"left\" or \"right\"");
}

absl::Status ParseJamming(const json& v, const std::string& path,
                          JammingUnit& unit) {
  ObjectReader r(v, path);
  VS_RETURN_IF_ERROR(r.CheckObject());
  VS_RETURN_IF_ERROR(r.Number("k_n", unit.k_theta));
  VS_RETURN_IF_ERROR(r.Number("mu", unit.mu));
  double overlap_mm = units::MToMm(unit.overlap_length);
  VS_RETURN_IF_ERROR(r.Number("overlap_mm", overlap_mm));
  unit.overlap_length = units::MmToM(overlap_mm);
  return r.NoUnknownKeys();
}

absl::Status ParseMaterial(const json& v, const std::string& path,
                           SkinMaterial& m) {
  ObjectReader r(v, path);
  VS_RETURN_IF_ERROR(r.CheckObject());
  double soft = units::PaToMPa(m.axial_modulus_soft);
  double taut = units::PaToMPa(m.axial_modulus_taut);
  double circ = units::PaToMPa(m.circ_modulus);
  double thickness_um = units::MToUm(m.thickness);
  VS_RETURN_IF_ERROR(r.Number("axial_modulus_soft_mpa", soft));
  VS_RETURN_IF_ERROR(r.Number("axial_modulus_taut_mpa", taut));
  VS_RETURN_IF_ERROR(r.Number("circ_modulus_mpa", circ));
  VS_RETURN_IF_ERROR(r.Number("wrinkle_strain", m.wrinkle_strain));
  VS_RETURN_IF_ERROR(r.Number("thickness_um", thickness_um));
  VS_RETURN_IF_ERROR(r.Number("prestretch_coeff", m.prestretch_coeff));
  VS_RETURN_IF_ERROR(r.Number("tube_derating", m.tube_derating));
  m.axial_modulus_soft = units::MPaToPa(soft);
  m.axial_modulus_taut = units::MPaToPa(taut);
  m.circ_modulus = units::MPaToPa(circ);
  m.thickness = units::UmToM(thickness_um);
  return r.NoUnknownKeys();
}

absl::Status ParseRobot(const json& v, const std::string& path,
                        RobotSpec& spec) {
  ObjectReader r(v, path);
  VS_RETURN_IF_ERROR(r.CheckObject());
  double radius_mm = units::MToMm(spec.radius);
  VS_RETURN_IF_ERROR(r.Number("radius_mm", radius_mm));
  spec.radius = units::MmToM(radius_mm);
  if (const json* segs = r.Find("segments")) {
    const std::string sp = Join(path, "segments");
    if (!segs->is_array()) return SchemaError(sp, "expected an array");
    spec.segments.clear();
    for (size_t i = 0; i < segs->size(); ++i) {
      ObjectReader sr((*segs)[i], Join(sp, i));
      VS_RETURN_IF_ERROR(sr.CheckObject());
      SegmentSpec seg;
      double length_mm = 0.0;
      VS_RETURN_IF_ERROR(sr.RequiredNumber("length_mm", length_mm));
      seg.rest_length = units::MmToM(length_mm);
      if (const json* sides = sr.Find("jam_sides")) {
        const std::string jp = Join(sr.path(), "jam_sides");
        if (!sides->is_array()) return SchemaError(jp, "expected an array");
        seg.jam_sides = {false, false};
        for (size_t k = 0; k < sides->size(); ++k) {
          absl::StatusOr<Side> side = ParseSide((*sides)[k], Join(jp, k));
          if (!side.ok()) return side.status();
          (*side == Side::kLeft ? seg.jam_sides.left : seg.jam_sides.right) = true;
        }
      }
      VS_RETURN_IF_ERROR(sr.NoUnknownKeys());
      spec.segments.push_back(seg);
    }
  }
  if (const json* m = r.Find("material")) {
    VS_RETURN_IF_ERROR(ParseMaterial(*m, Join(path, "material"), spec.skin));
  }
  if (const json* j = r.Find("jamming")) {
    VS_RETURN_IF_ERROR(ParseJamming(*j, Join(path, "jamming"), spec.jamming_left));
    spec.jamming_right = spec.jamming_left;
  }
  if (const json* j = r.Find("jamming_left")) {
    VS_RETURN_IF_ERROR(
        ParseJamming(*j, Join(path, "jamming_left"), spec.jamming_left));
  }
  if (const json* j = r.Find("jamming_right")) {
    VS_RETURN_IF_ERROR(
        ParseJamming(*j, Join(path, "jamming_right"), spec.jamming_right));
  }
  if (const json* a = r.Find("film_area_mm2")) {
    if (!a->is_number()) {
      return SchemaError(Join(path, "film_area_mm2"), "expected a number");
    }
    spec.film_area = units::Mm2ToM2(a->get<double>());
  }
  return r.NoUnknownKeys();
}

absl::Status ParseEnvironment(const json& v, const std::string& path,
                              Scenario& sc) {
  ObjectReader r(v, path);
  VS_RETURN_IF_ERROR(r.CheckObject());
  Environment& env = sc.env;
  if (const json* obs = r.Find("obstacles")) {
    const std::string op = Join(path, "obstacles");
    if (!obs->is_array()) return SchemaError(op, "expected an array");
    for (size_t i = 0; i < obs->size(); ++i) {
      const json& poly = (*obs)[i];
      const std::string pp = Join(op, i);
      if (!poly.is_array() || poly.size() < 3) {
        return SchemaError(pp, "expected at least 3 points");
      }
      ConvexObstacle o;
      for (size_t k = 0; k < poly.size(); ++k) {
        absl::StatusOr<Vec2> p = ParsePointMm(poly[k], Join(pp, k));
        if (!p.ok()) return p.status();
        o.vertices.push_back(*p);
      }
      env.obstacles.push_back(std::move(o));
    }
  }
  if (const json* gaps = r.Find("gaps")) {
    const std::string gp = Join(path, "gaps");
    if (!gaps->is_array()) return SchemaError(gp, "expected an array");
    for (size_t i = 0; i < gaps->size(); ++i) {
      ObjectReader gr((*gaps)[i], Join(gp, i));
      VS_RETURN_IF_ERROR(gr.CheckObject());
      Gap g;
      for (auto [key, dst] : {std::pair{"p1", &g.p1}, std::pair{"p2", &g.p2}}) {
        const json* p = gr.Find(key);
        if (p == nullptr) return SchemaError(Join(gr.path(), key), "required");
        absl::StatusOr<Vec2> pt = ParsePointMm(*p, Join(gr.path(), key));
        if (!pt.ok()) return pt.status();
        *dst = *pt;
      }
      double width_mm = 0.0;
      VS_RETURN_IF_ERROR(gr.RequiredNumber("width_mm", width_mm));
      g.width = units::MmToM(width_mm);
      VS_RETURN_IF_ERROR(gr.NoUnknownKeys());
      env.gaps.push_back(g);
    }
  }
  if (const json* masses = r.Find("masses")) {
    const std::string mp = Join(path, "masses");
    if (!masses->is_array()) return SchemaError(mp, "expected an array");
    for (size_t i = 0; i < masses->size(); ++i) {
      ObjectReader mr((*masses)[i], Join(mp, i));
      VS_RETURN_IF_ERROR(mr.CheckObject());
      PushableMass m;
      const json* pos = mr.Find("position");
      if (pos == nullptr) return SchemaError(Join(mr.path(), "position"), "required");
      absl::StatusOr<Vec2> pt = ParsePointMm(*pos, Join(mr.path(), "position"));
      if (!pt.ok()) return pt.status();
      m.position = *pt;
      double mass_g = 0.0;
      VS_RETURN_IF_ERROR(mr.RequiredNumber("mass_g", mass_g));
      m.mass = units::GToKg(mass_g);
      VS_RETURN_IF_ERROR(mr.RequiredNumber("friction_coeff", m.friction_coeff));
      double radius_mm = units::MToMm(m.radius);
      VS_RETURN_IF_ERROR(mr.Number("radius_mm", radius_mm));
      m.radius = units::MmToM(radius_mm);
      VS_RETURN_IF_ERROR(mr.NoUnknownKeys());
      env.masses.push_back(m);
    }
  }
  if (const json* targets = r.Find("targets")) {
    const std::string tp = Join(path, "targets");
    if (!targets->is_array()) return SchemaError(tp, "expected an array");
    for (size_t i = 0; i < targets->size(); ++i) {
      absl::StatusOr<Vec2> pt = ParsePointMm((*targets)[i], Join(tp, i));
      if (!pt.ok()) return pt.status();
      env.targets.push_back(*pt);
    }
  }
  if (const json* b = r.Find("bounds")) {
    const std::string bp = Join(path, "bounds");
    if (!b->is_array() || b->size() != 4) {
      return SchemaError(bp, "expected [xmin_mm, ymin_mm, xmax_mm, ymax_mm]");
    }
    std::array<double, 4> box{};
    for (size_t i = 0; i < 4; ++i) {
      if (!(*b)[i].is_number()) return SchemaError(Join(bp, i), "expected a number");
      box[i] = units::MmToM((*b)[i].get<double>());
    }
    if (!(box[0] < box[2] && box[1] < box[3])) {
      return SchemaError(bp, "bounds must have min < max");
    }
    sc.bounds = box;
  }
  return r.NoUnknownKeys();
}

absl::Status ParseSim(const json& v, const std::string& path, SimConfig& c) {
  ObjectReader r(v, path);
  VS_RETURN_IF_ERROR(r.CheckObject());
  VS_RETURN_IF_ERROR(r.Number("squeeze_ratio", c.squeeze_ratio));
  double deg = units::RadToDeg(c.deflect_threshold);
  VS_RETURN_IF_ERROR(r.Number("deflect_threshold_deg", deg));
  c.deflect_threshold = units::DegToRad(deg);
  double tol_mm = units::MToMm(c.contact_tolerance);
  VS_RETURN_IF_ERROR(r.Number("contact_tolerance_mm", tol_mm));
  c.contact_tolerance = units::MmToM(tol_mm);
  double step_mm = units::MToMm(c.grow_substep);
  VS_RETURN_IF_ERROR(r.Number("grow_substep_mm", step_mm));
  c.grow_substep = units::MmToM(step_mm);
  double target_mm = units::MToMm(c.target_tolerance);
  VS_RETURN_IF_ERROR(r.Number("target_tolerance_mm", target_mm));
  c.target_tolerance = units::MmToM(target_mm);
  double dev_mm = units::MToMm(c.polyline_deviation);
  VS_RETURN_IF_ERROR(r.Number("polyline_deviation_mm", dev_mm));
  c.polyline_deviation = units::MmToM(dev_mm);
  return r.NoUnknownKeys();
}

absl::Status ParseFpam(const json& v, const std::string& path, FpamBaseline& f) {
  ObjectReader r(v, path);
  VS_RETURN_IF_ERROR(r.CheckObject());
  double radius_mm = units::MToMm(f.fpam.muscle_radius);
  VS_RETURN_IF_ERROR(r.Number("muscle_radius_mm", radius_mm));
  f.fpam.muscle_radius = units::MmToM(radius_mm);
  VS_RETURN_IF_ERROR(r.Number("a", f.fpam.a_coeff));
  VS_RETURN_IF_ERROR(r.Number("b", f.fpam.b_coeff));
  double pm = units::PaToKPa(f.fpam.muscle_pressure);
  VS_RETURN_IF_ERROR(r.Number("muscle_pressure_kpa", pm));
  f.fpam.muscle_pressure = units::KPaToPa(pm);
  if (const json* bp = r.Find("body_pressures_kpa")) {
    const std::string p = Join(path, "body_pressures_kpa");
    if (!bp->is_array() || bp->empty()) {
      return SchemaError(p, "expected a non-empty array");
    }
    f.body_pressures.clear();
    for (size_t i = 0; i < bp->size(); ++i) {
      if (!(*bp)[i].is_number()) return SchemaError(Join(p, i), "expected a number");
      f.body_pressures.push_back(units::KPaToPa((*bp)[i].get<double>()));
    }
  }
  VS_RETURN_IF_ERROR(r.NoUnknownKeys());
  if (absl::StatusOr<FpamSpec> ok = ValidateFpam(f.fpam); !ok.ok()) {
    return SchemaError(path, ok.status().message());
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<Command> ParseCommand(const json& doc, std::string_view path) {
  const std::string base(path);
  ObjectReader r(doc, base);
  VS_RETURN_IF_ERROR(r.CheckObject());
  std::string type;
  VS_RETURN_IF_ERROR(r.String("type", type, /*required=*/true));
  Command out;
  if (type == "SetPressure") {
    double kpa = 0.0;
    VS_RETURN_IF_ERROR(r.RequiredNumber("kpa", kpa));
    if (!(kpa >= 0.0)) return SchemaError(Join(base, "kpa"), "must be non-negative");
    out = command::SetPressure{units::KPaToPa(kpa)};
  } else if (type == "SetJam") {
    command::SetJam c;
    VS_RETURN_IF_ERROR(r.Integer("segment", c.segment, /*required=*/true));
    const json* side = r.Find("side");
    if (side == nullptr) return SchemaError(Join(base, "side"), "required");
    absl::StatusOr<Side> s = ParseSide(*side, Join(base, "side"));
    if (!s.ok()) return s.status();
    c.side = *s;
    std::string action;
    VS_RETURN_IF_ERROR(r.String("action", action, /*required=*/true));
    if (action == "jam") {
      c.state = JamState::kJammed;
    } else if (action == "release") {
      c.state = JamState::kReleased;
    } else {
      return SchemaError(Join(base, "action"), "expected \"jam\" or \"release\"");
    }
    out = c;
  } else if (type == "Grow" || type == "Retract") {
    double mm = 0.0;
    VS_RETURN_IF_ERROR(r.RequiredNumber("mm", mm));
    if (!(mm >= 0.0)) return SchemaError(Join(base, "mm"), "must be non-negative");
    if (type == "Grow") {
      out = command::Grow{units::MmToM(mm)};
    } else {
      out = command::Retract{units::MmToM(mm)};
    }
  } else {
    return SchemaError(Join(base, "type"),
                       absl::StrCat("unknown command type \"", type, "\""));
  }
  VS_RETURN_IF_ERROR(r.NoUnknownKeys());
  return out;
}

json CommandToJson(const Command& command) {
  if (const auto* c = std::get_if<command::SetPressure>(&command)) {
    return {{"type", "SetPressure"}, {"kpa", units::PaToKPa(c->pressure)}};
  }
  if (const auto* c = std::get_if<command::SetJam>(&command)) {
    return {{"type", "SetJam"},
            {"segment", c->segment},
            {"side", std::string(SideName(c->side))},
            {"action", c->state == JamState::kJammed ? "jam" : "release"}};
  }
  if (const auto* c = std::get_if<command::Grow>(&command)) {
    return {{"type", "Grow"}, {"mm", units::MToMm(c->length)}};
  }
  const auto& c = std::get<command::Retract>(command);
  return {{"type", "Retract"}, {"mm", units::MToMm(c.length)}};
}

absl::StatusOr<Scenario> ParseScenario(const json& doc) {
  Scenario sc;
  sc.robot = DefaultRobotSpec();
  ObjectReader r(doc, "");
  VS_RETURN_IF_ERROR(r.CheckObject());
  VS_RETURN_IF_ERROR(r.String("name", sc.name, /*required=*/false));
  if (const json* robot = r.Find("robot")) {
    VS_RETURN_IF_ERROR(ParseRobot(*robot, "/robot", sc.robot));
  }
  absl::StatusOr<RobotSpec> valid = ValidateSpec(sc.robot);
  if (!valid.ok()) return SchemaError("/robot", valid.status().message());
  sc.robot = *std::move(valid);
  if (const json* env = r.Find("environment")) {
    VS_RETURN_IF_ERROR(ParseEnvironment(*env, "/environment", sc));
  }
  if (absl::Status s = ValidateEnvironment(sc.env); !s.ok()) {
    return SchemaError("/environment", s.message());
  }
  if (const json* base = r.Find("base_pose")) {
    ObjectReader br(*base, "/base_pose");
    VS_RETURN_IF_ERROR(br.CheckObject());
    double x = 0.0, y = 0.0, deg = 0.0;
    VS_RETURN_IF_ERROR(br.Number("x_mm", x));
    VS_RETURN_IF_ERROR(br.Number("y_mm", y));
    VS_RETURN_IF_ERROR(br.Number("heading_deg", deg));
    VS_RETURN_IF_ERROR(br.NoUnknownKeys());
    sc.config.base_pose = {units::MmToM(x), units::MmToM(y), units::DegToRad(deg)};
  }
  if (const json* sim = r.Find("sim")) {
    VS_RETURN_IF_ERROR(ParseSim(*sim, "/sim", sc.config));
  }
  if (const json* init = r.Find("initial")) {
    ObjectReader ir(*init, "/initial");
    VS_RETURN_IF_ERROR(ir.CheckObject());
    double kpa = 0.0;
    VS_RETURN_IF_ERROR(ir.Number("pressure_kpa", kpa));
    if (!(kpa >= 0.0)) {
      return SchemaError("/initial/pressure_kpa", "must be non-negative");
    }
    sc.config.initial_pressure = units::KPaToPa(kpa);
    std::string jam = "released";
    VS_RETURN_IF_ERROR(ir.String("jam", jam, /*required=*/false));
    if (jam == "jammed") {
      sc.config.initial_jam = JamState::kJammed;
    } else if (jam != "released") {
      return SchemaError("/initial/jam", "expected \"released\" or \"jammed\"");
    }
    VS_RETURN_IF_ERROR(ir.NoUnknownKeys());
  }
  if (const json* f = r.Find("fpam")) {
    VS_RETURN_IF_ERROR(ParseFpam(*f, "/fpam", sc.fpam));
  }
  if (const json* script = r.Find("script")) {
    if (!script->is_array()) return SchemaError("/script", "expected an array");
    for (size_t i = 0; i < script->size(); ++i) {
      absl::StatusOr<Command> c = ParseCommand((*script)[i], Join("/script", i));
      if (!c.ok()) return c.status();
      if (const auto* jam = std::get_if<command::SetJam>(&*c)) {
        if (jam->segment < 0 ||
            jam->segment >= static_cast<int>(sc.robot.segments.size())) {
          return SchemaError(Join(Join("/script", i), "segment"),
                             "segment index out of range");
        }
      }
      sc.script.push_back(*c);
    }
  }
  VS_RETURN_IF_ERROR(r.NoUnknownKeys());
  return sc;
}

absl::StatusOr<Scenario> ParseScenarioText(std::string_view text) {
  json doc = json::parse(text.begin(), text.end(), nullptr,
                         /*allow_exceptions=*/false);
  if (doc.is_discarded()) {
    return SchemaError("", "malformed JSON");
  }
  return ParseScenario(doc);
}

absl::StatusOr<Scenario> LoadScenarioFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::stringstream buf;
  buf << in.rdbuf();
  return ParseScenarioText(buf.str());
}

std::string SchemaErrorPath(const absl::Status& status) {
  absl::string_view msg = status.message();
  if (msg.substr(0, 3) != "at ") return "";
  msg.remove_prefix(3);
  const size_t colon = msg.find(": ");
  if (colon == absl::string_view::npos) return "";
  return std::string(msg.substr(0, colon));
}

std::vector<std::string> BundledScenarioNames() {
  std::vector<std::string> names;
  for (int i = 0; i < internal::kNumBundledScenarios; ++i) {
    names.emplace_back(internal::kBundledScenarios[i].name);
  }
  return names;
}

std::optional<std::string_view> BundledScenarioText(std::string_view name) {
  for (int i = 0; i < internal::kNumBundledScenarios; ++i) {
    if (name == internal::kBundledScenarios[i].name) {
      return std::string_view(internal::kBundledScenarios[i].text);
    }
  }
  return std::nullopt;
}

absl::StatusOr<Scenario> LoadBundledScenario(std::string_view name) {
  std::optional<std::string_view> text = BundledScenarioText(name);
  if (!text) {
    return absl::NotFoundError(absl::StrCat(
        "unknown scenario \"", std::string(name), "\"; bundled: ",
        absl::StrJoin(BundledScenarioNames(), ", ")));
  }
  return ParseScenarioText(*text);
}

absl::StatusOr<Scenario> ResolveScenario(const std::string& name_or_path) {
  if (BundledScenarioText(name_or_path)) return LoadBundledScenario(name_or_path);
  return LoadScenarioFile(name_or_path);
}

}  // namespace vinesim
