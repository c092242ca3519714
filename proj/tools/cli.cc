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

#include "cli.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>

#include "CLI11.hpp"
#include "absl/strings/ascii.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "csv.h"
#include "nlohmann/json.hpp"
#include "svg.h"
#include "vinesim/jamming.h"
#include "vinesim/kinematics.h"
#include "vinesim/material.h"
#include "vinesim/planner.h"
#include "vinesim/scenario.h"
#include "vinesim/statics.h"
#include "vinesim/steer/server.h"
#include "vinesim/units.h"

namespace vinesim::cli {
namespace {

using nlohmann::json;

struct Globals {
  std::string out_dir;
  std::string format = "csv";
  uint64_t seed = 0;  // accepted for harness uniformity; nothing is random
};

// Rows of already formatted fields, rendered as CSV or JSON lines.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string Render(const std::string& format) const {
    std::string out;
    if (format == "jsonl") {
      for (const auto& row : rows) {
        json obj = json::object();
        for (size_t i = 0; i < header.size(); ++i) {
          absl::StatusOr<double> v = ParseDouble(row[i]);
          if (!v.ok()) {
            obj[header[i]] = row[i];
          } else if (std::isfinite(*v)) {
            obj[header[i]] = *v;
          } else {
            obj[header[i]] = nullptr;
          }
        }
        absl::StrAppend(&out, obj.dump(), "\n");
      }
      return out;
    }
    out = FormatCsvRow(header);
    for (const auto& row : rows) out += FormatCsvRow(row);
    return out;
  }
};

class Sink {
 public:
  Sink(const Globals& g, std::ostream& out, std::ostream& err)
      : g_(g), out_(out), err_(err) {}

  bool to_files() const { return !g_.out_dir.empty(); }
  const std::string& format() const { return g_.format; }
  std::string TableExt() const { return g_.format == "jsonl" ? ".jsonl" : ".csv"; }

  // The primary artifact goes to stdout without --out; secondary artifacts
  // are only written with --out.
  absl::Status Emit(const std::string& name, const std::string& content,
                    bool primary) {
    if (!to_files()) {
      if (primary) out_ << content;
      return absl::OkStatus();
    }
    std::error_code ec;
    std::filesystem::create_directories(g_.out_dir, ec);
    if (ec) {
      return absl::InvalidArgumentError(
          absl::StrCat("cannot create ", g_.out_dir, ": ", ec.message()));
    }
    const std::filesystem::path path = std::filesystem::path(g_.out_dir) / name;
    std::ofstream f(path, std::ios::binary);
    f << content;
    if (!f) return absl::InvalidArgumentError(absl::StrCat("cannot write ", path.string()));
    return absl::OkStatus();
  }

  // Human-readable report: stdout when artifacts go to files, else stderr.
  std::ostream& report() { return to_files() ? out_ : err_; }
  std::ostream& err() { return err_; }

 private:
  const Globals& g_;
  std::ostream& out_;
  std::ostream& err_;
};

int Fail(Sink& sink, const absl::Status& status) {
  sink.err() << "error: " << status.message() << "\n";
  return ExitCodeFor(status);
}

std::string F(double v) { return FormatDouble(v); }

absl::StatusOr<std::vector<double>> ParseRange(const std::string& spec) {
  std::vector<std::string> parts = absl::StrSplit(spec, ':');
  if (parts.size() != 3) {
    return absl::InvalidArgumentError(
        absl::StrCat("range '", spec, "' must be start:stop:step"));
  }
  double v[3];
  for (int i = 0; i < 3; ++i) {
    absl::StatusOr<double> d = ParseDouble(parts[i]);
    if (!d.ok() || !std::isfinite(*d)) {
      return absl::InvalidArgumentError(absl::StrCat("range '", spec, "': bad number"));
    }
    v[i] = *d;
  }
  const double start = v[0], stop = v[1], step = v[2];
  if (step < 0.0 || stop < start || (step == 0.0 && stop != start)) {
    return absl::InvalidArgumentError(absl::StrCat("empty range '", spec, "'"));
  }
  if (step == 0.0) return std::vector<double>{start};
  const int n = static_cast<int>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(start + i * step);
  return out;
}

absl::StatusOr<Scenario> ScenarioOrDefault(const std::string& name_or_path) {
  if (name_or_path.empty()) {
    Scenario sc;
    sc.name = "default";
    absl::StatusOr<RobotSpec> spec = ValidateSpec(DefaultRobotSpec());
    if (!spec.ok()) return spec.status();
    sc.robot = *spec;
    return sc;
  }
  return ResolveScenario(name_or_path);
}

absl::StatusOr<Side> ParseSideArg(const std::string& s) {
  const std::string l = absl::AsciiStrToLower(s);
  if (l == "left") return Side::kLeft;
  if (l == "right") return Side::kRight;
  return absl::InvalidArgumentError("side must be left or right");
}

absl::StatusOr<Vec2> ParsePointArg(const std::string& s) {
  std::vector<std::string> parts = absl::StrSplit(s, ',');
  if (parts.size() != 2) {
    return absl::InvalidArgumentError(absl::StrCat("point '", s, "' must be x,y in mm"));
  }
  absl::StatusOr<double> x = ParseDouble(parts[0]);
  absl::StatusOr<double> y = ParseDouble(parts[1]);
  if (!x.ok() || !y.ok()) {
    return absl::InvalidArgumentError(absl::StrCat("point '", s, "' must be x,y in mm"));
  }
  return Vec2{units::MmToM(*x), units::MmToM(*y)};
}

// ---- fit ----------------------------------------------------------------

absl::StatusOr<json> FitStressStrain(const CsvTable& t) {
  if (absl::Status s = RequireHeader(t, {"strain", "stress_pa", "direction"}); !s.ok()) {
    return s;
  }
  std::vector<StressStrainSample> longitudinal;
  std::vector<Point2> transverse;
  for (size_t i = 0; i < t.rows.size(); ++i) {
    const int line = t.line_numbers[i];
    absl::StatusOr<double> strain = ParseDouble(t.rows[i][0]);
    absl::StatusOr<double> stress = ParseDouble(t.rows[i][1]);
    if (!strain.ok()) return LineError(line, strain.status().message());
    if (!stress.ok()) return LineError(line, stress.status().message());
    if (*strain < 0.0 || *stress < 0.0) {
      return LineError(line, "strain and stress must be non-negative");
    }
    const std::string dir = absl::AsciiStrToLower(t.rows[i][2]);
    if (dir == "longitudinal" || dir == "axial") {
      longitudinal.push_back({*strain, *stress, LoadDirection::kLongitudinal});
    } else if (dir == "transverse" || dir == "circumferential") {
      transverse.push_back({*strain, *stress});
    } else {
      return LineError(line, absl::StrCat("direction must be longitudinal or transverse, got '",
                                          t.rows[i][2], "'"));
    }
  }
  absl::StatusOr<TwoRegimeFit> fit = FitTwoRegime(longitudinal);
  if (!fit.ok()) return fit.status();
  json residuals = json::array();
  SkinMaterial m;
  m.axial_modulus_soft = fit->modulus_soft;
  m.axial_modulus_taut = fit->modulus_taut;
  m.wrinkle_strain = fit->wrinkle_strain;
  for (const StressStrainSample& s : longitudinal) {
    residuals.push_back(s.stress - AxialStressUnchecked(m, s.strain));
  }
  json card = {{"kind", "stress_strain"},
               {"samples", longitudinal.size() + transverse.size()},
               {"parameters",
                {{"axial_modulus_soft_mpa", units::PaToMPa(fit->modulus_soft)},
                 {"axial_modulus_taut_mpa", units::PaToMPa(fit->modulus_taut)},
                 {"wrinkle_strain", fit->wrinkle_strain}}},
               {"single_regime", fit->single_regime},
               {"sse_pa2", fit->sse},
               {"r_squared", fit->r_squared},
               {"residuals_pa", residuals}};
  if (!transverse.empty()) {
    absl::StatusOr<LinearFit> circ = FitThroughOrigin(transverse);
    if (!circ.ok()) return circ.status();
    const double ratio = circ->slope / fit->modulus_soft;
    card["parameters"]["circ_modulus_mpa"] = units::PaToMPa(circ->slope);
    card["transverse_r_squared"] = circ->r_squared;
    card["anisotropy_ratio"] = ratio;
    card["anisotropy_check"] = {{"minimum", kMinAnisotropyRatio},
                                {"passes", ratio >= kMinAnisotropyRatio}};
  }
  return card;
}

absl::StatusOr<json> FitCapstanCard(const CsvTable& t) {
  if (absl::Status s = RequireHeader(t, {"angle_rad", "force_n"}); !s.ok()) return s;
  std::vector<CapstanSample> samples;
  for (size_t i = 0; i < t.rows.size(); ++i) {
    const int line = t.line_numbers[i];
    absl::StatusOr<double> angle = ParseDouble(t.rows[i][0]);
    absl::StatusOr<double> force = ParseDouble(t.rows[i][1]);
    if (!angle.ok()) return LineError(line, angle.status().message());
    if (!force.ok()) return LineError(line, force.status().message());
    if (!(*force > 0.0)) {
      return LineError(line, absl::StrCat("row ", i + 1, ": force must be positive, got ",
                                          t.rows[i][1]));
    }
    if (*angle < 0.0) return LineError(line, "angle must be non-negative");
    samples.push_back({*angle, *force});
  }
  absl::StatusOr<CapstanFit> fit = FitCapstan(samples);
  if (!fit.ok()) return fit.status();
  JammingUnit unit;
  unit.k_theta = fit->k_theta;
  unit.mu = fit->mu;
  json residuals = json::array();
  for (const CapstanSample& s : samples) {
    residuals.push_back(s.force - CapstanForce(unit, s.angle));
  }
  return json{{"kind", "capstan"},
              {"samples", samples.size()},
              {"parameters", {{"k_n", fit->k_theta}, {"mu", fit->mu}}},
              {"r_squared_log", fit->r_squared},
              {"residuals_n", residuals}};
}

absl::StatusOr<json> FitPrestretch(const CsvTable& t) {
  if (absl::Status s = RequireHeader(t, {"prestretch", "extension"}); !s.ok()) return s;
  std::vector<Point2> pts;
  for (size_t i = 0; i < t.rows.size(); ++i) {
    const int line = t.line_numbers[i];
    absl::StatusOr<double> x = ParseDouble(t.rows[i][0]);
    absl::StatusOr<double> y = ParseDouble(t.rows[i][1]);
    if (!x.ok()) return LineError(line, x.status().message());
    if (!y.ok()) return LineError(line, y.status().message());
    if (*x < 0.0) return LineError(line, "prestretch must be non-negative");
    pts.push_back({*x, *y});
  }
  absl::StatusOr<LinearFit> line = FitLinear(pts);
  if (!line.ok()) return line.status();
  absl::StatusOr<LinearFit> origin = FitThroughOrigin(pts);
  if (!origin.ok()) return origin.status();
  json residuals = json::array();
  for (const Point2& p : pts) residuals.push_back(p.y - (line->slope * p.x + line->intercept));
  return json{{"kind", "prestretch"},
              {"samples", pts.size()},
              {"parameters", {{"prestretch_coeff", line->slope}}},
              {"linear",
               {{"slope", line->slope},
                {"intercept", line->intercept},
                {"r_squared", line->r_squared},
                {"sse", line->sse}}},
              {"through_origin", {{"slope", origin->slope}, {"r_squared", origin->r_squared}}},
              {"residuals", residuals}};
}

int CmdFit(Sink& sink, const std::string& kind, const std::string& input) {
  absl::StatusOr<CsvTable> table = ReadCsvFile(input);
  if (!table.ok()) return Fail(sink, table.status());
  absl::StatusOr<json> card;
  if (kind == "stress_strain") {
    card = FitStressStrain(*table);
  } else if (kind == "capstan") {
    card = FitCapstanCard(*table);
  } else if (kind == "prestretch") {
    card = FitPrestretch(*table);
  } else {
    return Fail(sink, absl::InvalidArgumentError("unknown fit kind " + kind));
  }
  if (!card.ok()) return Fail(sink, card.status());
  (*card)["source"] = std::filesystem::path(input).filename().string();
  if (absl::Status s = sink.Emit(kind + "_card.json", card->dump(2) + "\n", true); !s.ok()) {
    return Fail(sink, s);
  }
  return kExitOk;
}

// ---- sweep --------------------------------------------------------------

struct SweepArgs {
  std::string scenario;
  std::string range = "0:60:5";
  std::string mode = "lengthening";
  std::string side = "left";
  int segment = 0;
  std::optional<double> body_kpa;
};

Table SweepTable(const std::vector<SweepPoint>& pts) {
  Table t;
  t.header = {"pressure_kpa", "strain", "theta_rad", "R_mm", "curvature_per_m",
              "wall_tension_n"};
  for (const SweepPoint& p : pts) {
    t.rows.push_back({F(units::PaToKPa(p.pressure)), F(p.strain), F(p.bend_angle),
                      F(units::MToMm(p.inner_radius)), F(p.curvature),
                      F(p.wall_tension)});
  }
  return t;
}

int CmdSweep(Sink& sink, const SweepArgs& a) {
  absl::StatusOr<Scenario> sc = ScenarioOrDefault(a.scenario);
  if (!sc.ok()) return Fail(sink, sc.status());
  absl::StatusOr<std::vector<double>> kpa = ParseRange(a.range);
  if (!kpa.ok()) return Fail(sink, kpa.status());
  if (a.segment < 0 || a.segment >= static_cast<int>(sc->robot.segments.size())) {
    return Fail(sink, absl::InvalidArgumentError("segment index out of range"));
  }
  absl::StatusOr<Side> side = ParseSideArg(a.side);
  if (!side.ok()) return Fail(sink, side.status());
  std::vector<double> pressures;
  for (double k : *kpa) pressures.push_back(units::KPaToPa(k));
  const SegmentSpec& seg = sc->robot.segments[a.segment];

  SweepMode mode;
  std::string label;
  if (a.mode == "lengthening") {
    mode = LengtheningMode{*side};
    label = "lengthening";
  } else if (a.mode == "fpam") {
    FpamMode m{sc->fpam.fpam, a.body_kpa ? units::KPaToPa(*a.body_kpa)
                                         : sc->fpam.body_pressures.front()};
    label = absl::StrCat("fPAM body ", F(units::PaToKPa(m.body_pressure)), " kPa");
    mode = m;
  } else {
    return Fail(sink, absl::InvalidArgumentError("mode must be lengthening or fpam"));
  }
  absl::StatusOr<std::vector<SweepPoint>> pts =
      CurvatureSweep(sc->robot, seg, pressures, mode);
  if (!pts.ok()) return Fail(sink, pts.status());
  if (absl::Status s = sink.Emit("sweep" + sink.TableExt(),
                                 SweepTable(*pts).Render(sink.format()), true);
      !s.ok()) {
    return Fail(sink, s);
  }

  // Summary against the fPAM baseline at matched actuation pressure.
  absl::StatusOr<std::vector<SweepPoint>> lengthening =
      CurvatureSweep(sc->robot, seg, pressures, LengtheningMode{*side});
  if (!lengthening.ok()) return Fail(sink, lengthening.status());
  double min_r = std::numeric_limits<double>::infinity();
  double min_r_at = 0.0;
  for (const SweepPoint& p : *lengthening) {
    if (p.inner_radius < min_r) {
      min_r = p.inner_radius;
      min_r_at = p.pressure;
    }
  }
  const double p_max = pressures.back();
  std::vector<Series> chart;
  Series len_series{"lengthening", {}, {}};
  for (const SweepPoint& p : *lengthening) {
    len_series.x.push_back(units::PaToKPa(p.pressure));
    len_series.y.push_back(p.curvature);
  }
  chart.push_back(len_series);
  json fpam_rows = json::array();
  double best_fpam = 0.0;
  double best_body = 0.0;
  bool decreasing = true;
  double prev = std::numeric_limits<double>::infinity();
  for (double body : sc->fpam.body_pressures) {
    absl::StatusOr<std::vector<SweepPoint>> f =
        CurvatureSweep(sc->robot, seg, pressures, FpamMode{sc->fpam.fpam, body});
    if (!f.ok()) return Fail(sink, f.status());
    Series s{absl::StrCat("fPAM ", F(units::PaToKPa(body)), " kPa"), {}, {}};
    for (const SweepPoint& p : *f) {
      s.x.push_back(units::PaToKPa(p.pressure));
      s.y.push_back(p.curvature);
    }
    chart.push_back(s);
    const double k = f->back().curvature;
    if (!(k < prev)) decreasing = false;
    prev = k;
    if (k > best_fpam) {
      best_fpam = k;
      best_body = body;
    }
    fpam_rows.push_back({{"body_pressure_kpa", units::PaToKPa(body)},
                         {"curvature_per_m", k}});
  }
  const double len_k = lengthening->back().curvature;
  const bool has_ratio = best_fpam > 0.0;
  const double ratio = has_ratio ? len_k / best_fpam : 0.0;

  json summary = {{"scenario", sc->name},
                  {"mode", a.mode},
                  {"points", pts->size()},
                  {"max_pressure_kpa", units::PaToKPa(p_max)},
                  {"min_R_mm", std::isfinite(min_r) ? json(units::MToMm(min_r)) : json(nullptr)},
                  {"min_R_pressure_kpa", units::PaToKPa(min_r_at)},
                  {"lengthening_curvature_per_m", len_k},
                  {"fpam", fpam_rows},
                  {"fpam_best_body_pressure_kpa", units::PaToKPa(best_body)},
                  {"fpam_curvature_decreases_with_body_pressure", decreasing},
                  {"curvature_ratio", has_ratio ? json(ratio) : json(nullptr)}};
  std::ostream& r = sink.report();
  r << "points: " << pts->size() << "\n";
  if (std::isfinite(min_r)) {
    r << "min R: " << F(units::MToMm(min_r)) << " mm at "
      << F(units::PaToKPa(min_r_at)) << " kPa\n";
  } else {
    r << "min R: inf (straight)\n";
  }
  if (has_ratio) {
    r << "lengthening/fPAM curvature ratio: " << F(ratio) << " ("
      << (ratio >= 3.0 ? ">= 3.0" : "< 3.0") << ", fPAM body "
      << F(units::PaToKPa(best_body)) << " kPa)\n";
  } else {
    r << "lengthening/fPAM curvature ratio: n/a (fPAM does not bend)\n";
  }
  ChartOptions opts{absl::StrCat("Curvature vs actuation pressure (", sc->name, ")"),
                    "pressure [kPa]", "curvature [1/m]"};
  if (absl::Status s = sink.Emit("sweep.svg", LineChartSvg(chart, opts), false); !s.ok()) {
    return Fail(sink, s);
  }
  if (absl::Status s = sink.Emit("summary.json", summary.dump(2) + "\n", false); !s.ok()) {
    return Fail(sink, s);
  }
  return kExitOk;
}

// ---- simulate -----------------------------------------------------------

Table EventTable(const std::vector<Event>& events) {
  Table t;
  t.header = {"tick", "event", "detail"};
  for (const Event& e : events) t.rows.push_back({absl::StrCat(e.tick), e.kind, e.detail});
  return t;
}

int CmdSimulate(Sink& sink, const std::string& scenario) {
  absl::StatusOr<Scenario> sc = ResolveScenario(scenario);
  if (!sc.ok()) return Fail(sink, sc.status());
  absl::StatusOr<SimContext> ctx = MakeSimContext(sc->robot, sc->env, sc->config);
  if (!ctx.ok()) return Fail(sink, ctx.status());
  absl::StatusOr<SimState> state = InitialState(*ctx);
  if (!state.ok()) return Fail(sink, state.status());
  Table snapshots;
  snapshots.header = {"tick", "index", "x_mm", "y_mm"};
  auto snap = [&](const SimState& s) {
    const auto pts = BackbonePolyline(s.chain, ctx->config.polyline_deviation);
    for (size_t i = 0; i < pts.size(); ++i) {
      snapshots.rows.push_back({absl::StrCat(s.tick), absl::StrCat(i),
                                F(units::MToMm(pts[i].x)), F(units::MToMm(pts[i].y))});
    }
  };
  snap(*state);
  for (size_t i = 0; i < sc->script.size(); ++i) {
    absl::StatusOr<SimState> next = Step(*ctx, *state, sc->script[i]);
    if (!next.ok()) {
      return Fail(sink, absl::Status(next.status().code(),
                                     absl::StrCat("script command ", i, ": ",
                                                  next.status().message())));
    }
    state = std::move(next);
    snap(*state);
  }
  // The event log is always CSV so it matches the server's download.
  std::string log = sink.format() == "jsonl" ? EventTable(state->events).Render("jsonl")
                                             : FormatEventLog(state->events);
  if (absl::Status s = sink.Emit("events" + sink.TableExt(), log, true); !s.ok()) {
    return Fail(sink, s);
  }
  if (absl::Status s = sink.Emit("snapshots" + sink.TableExt(),
                                 snapshots.Render(sink.format()), false);
      !s.ok()) {
    return Fail(sink, s);
  }
  const Pose2 tip = TipPose(state->chain);
  json targets = json::array();
  std::ostream& r = sink.report();
  for (size_t i = 0; i < sc->env.targets.size(); ++i) {
    const bool reached = state->targets_reached[i];
    targets.push_back({{"index", i},
                       {"position_mm",
                        {units::MToMm(sc->env.targets[i].x), units::MToMm(sc->env.targets[i].y)}},
                       {"reached", reached}});
    r << "target " << i << ": " << (reached ? "reached" : "not reached") << "\n";
  }
  json result = {{"scenario", sc->name},
                 {"ticks", state->tick},
                 {"everted_length_mm", units::MToMm(state->robot.everted_length)},
                 {"final_tip",
                  {{"x_mm", units::MToMm(tip.x)},
                   {"y_mm", units::MToMm(tip.y)},
                   {"heading_deg", units::RadToDeg(tip.heading)}}},
                 {"targets", targets},
                 {"all_targets_reached", state->AllTargetsReached()}};
  if (absl::Status s = sink.Emit("result.json", result.dump(2) + "\n", false); !s.ok()) {
    return Fail(sink, s);
  }
  return state->AllTargetsReached() ? kExitOk : kExitNoPlan;
}

// ---- plan ---------------------------------------------------------------

struct PlanArgs {
  std::string scenario;
  std::string target;
  std::string grid = "0:60:1";
  double tolerance_mm = 5.0;
  bool check = false;
};

std::string SideWord(Side s) {
  switch (s) {
    case Side::kLeft:
      return "left";
    case Side::kRight:
      return "right";
    case Side::kNone:
      break;
  }
  return "none";
}

int CmdPlan(Sink& sink, const PlanArgs& a) {
  absl::StatusOr<Scenario> sc = ScenarioOrDefault(a.scenario);
  if (!sc.ok()) return Fail(sink, sc.status());
  absl::StatusOr<Vec2> target = ParsePointArg(a.target);
  if (!target.ok()) return Fail(sink, target.status());
  if (sc->bounds) {
    const auto& b = *sc->bounds;
    if (target->x < b[0] || target->x > b[2] || target->y < b[1] || target->y > b[3]) {
      return Fail(sink, absl::InvalidArgumentError("target lies outside the scenario bounds"));
    }
  }
  absl::StatusOr<std::vector<double>> kpa = ParseRange(a.grid);
  if (!kpa.ok()) return Fail(sink, kpa.status());
  std::vector<double> grid;
  for (double k : *kpa) grid.push_back(units::KPaToPa(k));
  PlannerOptions opts;
  opts.base_pose = sc->config.base_pose;
  opts.record_frontier = true;
  absl::StatusOr<PlanResult> result =
      PlanToTarget(sc->robot, *target, grid, units::MmToM(a.tolerance_mm), opts);
  if (!result.ok()) return Fail(sink, result.status());
  const Plan& plan = result->best;

  json assignment = json::array();
  for (Side s : plan.assignment) assignment.push_back(SideWord(s));
  json commands = json::array();
  for (const Command& c : PlanToCommands(sc->robot, plan)) commands.push_back(CommandToJson(c));
  json out = {{"scenario", sc->name},
              {"target_mm", {units::MToMm(target->x), units::MToMm(target->y)}},
              {"tolerance_mm", a.tolerance_mm},
              {"reachable", result->reachable},
              {"assignment", assignment},
              {"assignment_name", AssignmentName(plan.assignment)},
              {"pressure_kpa", units::PaToKPa(plan.pressure)},
              {"predicted_tip",
               {{"x_mm", units::MToMm(plan.predicted_tip.x)},
                {"y_mm", units::MToMm(plan.predicted_tip.y)},
                {"heading_deg", units::RadToDeg(plan.predicted_tip.heading)}}},
              {"cost_mm", units::MToMm(plan.cost)},
              {"grid_cost_mm", units::MToMm(plan.grid_cost)},
              {"grid_pressure_kpa", units::PaToKPa(plan.grid_pressure)},
              {"commands", commands}};
  bool collides = false;
  if (a.check) {
    absl::StatusOr<SimContext> ctx = MakeSimContext(sc->robot, sc->env, sc->config);
    if (!ctx.ok()) return Fail(sink, ctx.status());
    absl::StatusOr<RolloutCheck> check = CheckPlanRollout(*ctx, plan);
    if (!check.ok()) return Fail(sink, check.status());
    json events = json::array();
    for (const Event& e : check->events) {
      events.push_back({{"tick", e.tick}, {"kind", e.kind}, {"detail", e.detail}});
    }
    out["check"] = {{"collision_free", check->collision_free}, {"events", events}};
    collides = !check->collision_free;
  }
  if (absl::Status s = sink.Emit("plan.json", out.dump(2) + "\n", true); !s.ok()) {
    return Fail(sink, s);
  }
  Table frontier;
  frontier.header = {"assignment", "pressure_kpa", "tip_x_mm", "tip_y_mm",
                     "tip_heading_deg", "cost_mm"};
  for (const FrontierRow& row : result->frontier) {
    frontier.rows.push_back({AssignmentName(row.assignment), F(units::PaToKPa(row.pressure)),
                             F(units::MToMm(row.tip.x)), F(units::MToMm(row.tip.y)),
                             F(units::RadToDeg(row.tip.heading)), F(units::MToMm(row.cost))});
  }
  if (absl::Status s = sink.Emit("frontier" + sink.TableExt(),
                                 frontier.Render(sink.format()), false);
      !s.ok()) {
    return Fail(sink, s);
  }
  std::ostream& r = sink.report();
  if (!result->reachable) {
    r << "no plan: best cost " << F(units::MToMm(plan.cost)) << " mm exceeds tolerance "
      << F(a.tolerance_mm) << " mm\n";
    return kExitNoPlan;
  }
  r << "plan " << AssignmentName(plan.assignment) << " at "
    << F(units::PaToKPa(plan.pressure)) << " kPa, cost " << F(units::MToMm(plan.cost))
    << " mm\n";
  if (collides) {
    r << "plan collides with the environment\n";
    return kExitNoPlan;
  }
  return kExitOk;
}

// ---- serve --------------------------------------------------------------

struct ServeArgs {
  std::string address = "0.0.0.0";
  int port = -1;
  std::string ui_dir;
  int threads = 1;
  int max_sessions = 64;
  int idle_timeout_s = 30 * 60;
};

int CmdServe(Sink& sink, const ServeArgs& a) {
  steer::ServerOptions opts;
  opts.address = a.address;
  opts.port = a.port >= 0 ? static_cast<uint16_t>(a.port) : steer::PortFromEnv();
  opts.ui_dir = a.ui_dir;
  if (opts.ui_dir.empty()) {
    if (const char* env = std::getenv("VINESIM_UI_DIR")) opts.ui_dir = env;
  }
  opts.threads = a.threads;
  opts.limits.max_sessions = a.max_sessions;
  opts.limits.idle_timeout = std::chrono::seconds(a.idle_timeout_s);
  opts.stop_on_signals = true;
  steer::Server server(opts);
  if (absl::Status s = server.Start(); !s.ok()) return Fail(sink, s);
  sink.err() << "vinesim serving on http://" << a.address << ":" << server.port() << "\n";
  server.Wait();
  return kExitOk;
}

}  // namespace

int ExitCodeFor(const absl::Status& status) {
  if (status.ok()) return kExitOk;
  if (status.code() == absl::StatusCode::kInternal) return kExitSolverFailure;
  return kExitInputError;
}

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"vinesim: vine robot steering simulator"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--out", g.out_dir, "Write artifacts into this directory");
  app.add_option("--format", g.format, "Tabular output format")
      ->check(CLI::IsMember({"csv", "jsonl"}));
  app.add_option("--seed", g.seed, "Accepted for batch harnesses; has no effect");

  std::string fit_kind, fit_input;
  CLI::App* fit = app.add_subcommand("fit", "Fit a model card from characterization data");
  fit->add_option("--kind", fit_kind, "stress_strain, capstan or prestretch")
      ->required()
      ->check(CLI::IsMember({"stress_strain", "capstan", "prestretch"}));
  fit->add_option("input", fit_input, "CSV file")->required();

  SweepArgs sw;
  CLI::App* sweep = app.add_subcommand("sweep", "Curvature vs pressure sweep");
  sweep->add_option("scenario", sw.scenario, "Bundled scenario or file (default robot if omitted)");
  sweep->add_option("--range", sw.range, "start:stop:step in kPa");
  sweep->add_option("--mode", sw.mode, "lengthening or fpam")
      ->check(CLI::IsMember({"lengthening", "fpam"}));
  sweep->add_option("--side", sw.side, "Jammed side for lengthening");
  sweep->add_option("--segment", sw.segment, "Segment index");
  sweep->add_option("--body-kpa", sw.body_kpa, "fPAM body pressure");

  std::string sim_scenario;
  CLI::App* sim = app.add_subcommand("simulate", "Replay a scenario script");
  sim->add_option("scenario", sim_scenario, "Bundled scenario or file")->required();

  PlanArgs pa;
  CLI::App* plan = app.add_subcommand("plan", "Plan jamming sides and pressure for a target");
  plan->add_option("scenario", pa.scenario, "Bundled scenario or file (default robot if omitted)");
  plan->add_option("--target", pa.target, "x,y in mm")->required();
  plan->add_option("--grid", pa.grid, "Pressure grid start:stop:step in kPa");
  plan->add_option("--tolerance-mm", pa.tolerance_mm, "Acceptable tip error");
  plan->add_flag("--check", pa.check, "Roll the plan through the simulation");

  ServeArgs sa;
  CLI::App* serve = app.add_subcommand("serve", "Run the steering server");
  serve->add_option("--address", sa.address, "Listen address");
  serve->add_option("--port", sa.port, "Port (default $VINESIM_PORT or 8080)");
  serve->add_option("--ui", sa.ui_dir, "Static UI directory (default $VINESIM_UI_DIR)");
  serve->add_option("--threads", sa.threads, "I/O threads")->check(CLI::PositiveNumber);
  serve->add_option("--max-sessions", sa.max_sessions)->check(CLI::PositiveNumber);
  serve->add_option("--idle-timeout-s", sa.idle_timeout_s)->check(CLI::PositiveNumber);

  for (CLI::App* sub : {fit, sweep, sim, plan, serve}) sub->fallthrough();

  std::vector<std::string> rev(args.rbegin(), args.rend() - 1);
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  Sink sink(g, out, err);
  if (*fit) return CmdFit(sink, fit_kind, fit_input);
  if (*sweep) return CmdSweep(sink, sw);
  if (*sim) return CmdSimulate(sink, sim_scenario);
  if (*plan) return CmdPlan(sink, pa);
  return CmdServe(sink, sa);
}

}  // namespace vinesim::cli
