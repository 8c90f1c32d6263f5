#include "serialize.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace cwgng::cli {

std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Json opt(const std::optional<double>& x) {
  if (!x || !std::isfinite(*x)) return nullptr;
  return *x;
}

Json to_json(const ModelParams& p) { return Json{{"J", p.J}, {"h", p.h}}; }

Json to_json(const BifurcationReport& r) {
  Json jumps = Json::array();
  for (const Jump& j : r.jumps) {
    jumps.push_back({{"t", j.t}, {"m_before", j.m_before}, {"m_after", j.m_after},
                     {"minimizers", j.minimizers}});
  }
  return Json{{"alpha", r.alpha},  {"scenario", to_string(r.scenario)}, {"t_B", opt(r.t_B)},
              {"s_B", opt(r.s_B)}, {"t_T", opt(r.t_T)},                 {"jumps", jumps}};
}

Json to_json(const CrossoverTimes& c) {
  return Json{{"psi_U", opt(c.psi_U)},   {"psi_L", opt(c.psi_L)},
              {"psi_T", opt(c.psi_T)},   {"psi_star", opt(c.psi_star)},
              {"psi_c", opt(c.psi_c)},   {"U_B", opt(c.U_B)},
              {"L_B", opt(c.L_B)},       {"M_T", opt(c.M_T)},
              {"M_B", opt(c.M_B)},       {"h_star", opt(c.h_star)},
              {"t_B_at_L_B", opt(c.t_B_at_L_B)}, {"ordering", c.ordering}};
}

Json to_json(const GibbsTimeline& tl) {
  Json segs = Json::array();
  for (const TimelineSegment& s : tl.segments) {
    Json probes = Json::array();
    for (const TimelineProbe& p : s.probes) probes.push_back({{"t", p.t}, {"bad", p.bad}});
    segs.push_back({{"t_lo", s.t_lo},
                    {"t_hi", s.t_hi},
                    {"status", to_string(s.status)},
                    {"bad_count", s.bad_count},
                    {"bad_set", s.descriptor},
                    {"probes", probes}});
  }
  return Json{{"t_max", tl.t_max}, {"crossovers", to_json(tl.crossovers)}, {"segments", segs}};
}

Json to_json(const OvershootProfile& o) {
  return Json{{"regime", to_string(o.regime)}, {"m_R", opt(o.m_R)}, {"t_R", opt(o.t_R)},
              {"m_inf", o.m_inf}};
}

Json to_json(const MinimizerSet& s) {
  Json mins = Json::array();
  for (const Minimum& m : s.minima) mins.push_back({{"m", m.m}, {"cost", m.cost}});
  return Json{{"t", s.t}, {"alpha", s.alpha}, {"minima", mins}};
}

CsvWriter::CsvWriter(std::ostream& os, const std::vector<std::string>& header)
    : os_(os), width_(header.size()) {
  for (std::size_t i = 0; i < header.size(); ++i) os_ << (i ? "," : "") << header[i];
  os_ << '\n';
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != width_) throw std::logic_error("csv: row width does not match header");
  for (std::size_t i = 0; i < cells.size(); ++i) os_ << (i ? "," : "") << cells[i];
  os_ << '\n';
  ++rows_;
}

Json Report::to_json() const {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  j["inputs"] = inputs;
  j["results"] = results;
  j["versions"] = {{"cwgng", kVersion}};
  j["wall_clock_s"] = opt(wall_clock_s);
  j["warnings"] = warnings;
  return j;
}

}  // namespace cwgng::cli
