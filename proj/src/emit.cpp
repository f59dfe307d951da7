#include "nomauth/emit.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "nomauth/errors.hpp"

namespace nomauth {

using nlohmann::json;

namespace {

std::string fmt_num(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

json rate_to_json(const RatePair& r) {
  return json{{"paper", r.paper},
              {"conditional", r.conditional},
              {"events", r.events},
              {"opportunities", r.opportunities},
              {"ci95", r.ci95}};
}

}  // namespace

std::string csv_header() {
  return "campaign_id,snr_db,K,N,S,J,L,strategy,rho_fa_paper,rho_fa_cond,"
         "rho_md_paper,rho_md_cond,rho_sc,ci95_fa,ci95_md,cost_proposed,"
         "cost_baseline";
}

std::string to_csv(const ResultSet& results) {
  std::ostringstream os;
  os << csv_header() << '\n';
  for (const auto& c : results.campaigns) {
    for (const auto& p : c.points) {
      os << c.campaign_id << ',' << fmt_num(p.snr_db) << ','
         << c.config.devices << ',' << c.config.resources << ','
         << c.config.active << ',' << c.config.slots << ','
         << c.config.schedule_len << ',' << c.config.strategy << ','
         << fmt_num(p.fa.paper) << ',' << fmt_num(p.fa.conditional) << ','
         << fmt_num(p.md.paper) << ',' << fmt_num(p.md.conditional) << ','
         << fmt_num(p.rho_sc) << ',' << fmt_num(p.fa.ci95) << ','
         << fmt_num(p.md.ci95) << ',' << p.cost.proposed_total() << ','
         << p.cost.baseline_total() << '\n';
    }
  }
  return os.str();
}

std::string to_json(const ResultSet& results) {
  json root;
  root["campaigns"] = json::array();
  for (const auto& c : results.campaigns) {
    json jc;
    jc["campaign_id"] = c.campaign_id;
    jc["config"] = json::parse(config_to_json(c.config));
    jc["warnings"] = c.warnings;

    json points = json::array();
    json snrs = json::array(), fa = json::array(), md = json::array(),
         sc = json::array(), bl_fa = json::array(), bl_md = json::array();
    for (const auto& p : c.points) {
      json jp;
      jp["snr_db"] = std::isinf(p.snr_db) ? json("inf") : json(p.snr_db);
      jp["false_alarm"] = rate_to_json(p.fa);
      jp["misdetection"] = rate_to_json(p.md);
      if (p.no_adversary) jp["misdetection"]["annotation"] = "NoAdversary";
      jp["collision_rate"] = p.rho_sc;
      jp["collision_events"] = p.collision_events;
      jp["slot_instances"] = p.slot_instances;
      jp["trials_done"] = p.trials_done;
      jp["trials_skipped"] = p.trials_skipped;
      jp["support_too_large"] = p.detect.support_too_large;
      jp["cost"] = {{"proposed_total", p.cost.proposed_total()},
                    {"baseline_total", p.cost.baseline_total()},
                    {"auth_events", p.cost.auth_events},
                    {"baseline_auth_events", p.cost.baseline_auth_events},
                    {"bit_comparisons", p.cost.bit_comparisons},
                    {"entry_comparisons", p.cost.entry_comparisons},
                    {"complex_mults", p.cost.complex_mults},
                    {"threshold_steps", p.cost.threshold_steps},
                    {"statistic_ops", p.cost.statistic_ops}};
      if (p.baseline_enabled) {
        jp["baseline"] = {{"false_alarm", rate_to_json(p.baseline_fa)},
                          {"misdetection", rate_to_json(p.baseline_md)}};
      }
      points.push_back(jp);

      snrs.push_back(std::isinf(p.snr_db) ? json("inf") : json(p.snr_db));
      fa.push_back(p.fa.paper);
      md.push_back(p.md.paper);
      sc.push_back(p.rho_sc);
      if (p.baseline_enabled) {
        bl_fa.push_back(p.baseline_fa.paper);
        bl_md.push_back(p.baseline_md.paper);
      }
    }
    jc["points"] = points;

    // Plot-ready series for the false-alarm / misdetection / collision /
    // cost figures.
    json figures;
    figures["fa_vs_snr"] = {{"x", snrs}, {"y", fa}};
    figures["md_vs_snr"] = {{"x", snrs}, {"y", md}};
    figures["sc_vs_snr"] = {{"x", snrs}, {"y", sc}};
    if (!bl_fa.empty()) {
      figures["baseline_fa_vs_snr"] = {{"x", snrs}, {"y", bl_fa}};
      figures["baseline_md_vs_snr"] = {{"x", snrs}, {"y", bl_md}};
    }
    figures["x_axis_seconds_per_window"] =
        c.config.slot_duration_s * c.config.schedule_len;
    jc["figures"] = figures;
    root["campaigns"].push_back(jc);
  }
  return root.dump(2) + "\n";
}

void emit_results(const ResultSet& results, const std::string& format,
                  const std::string& path) {
  bool any = false;
  for (const auto& c : results.campaigns) any = any || !c.points.empty();
  if (!any) throw IoError("no reports to emit");

  const std::string body = format == "json" ? to_json(results)
                                            : to_csv(results);
  if (path.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << body;
  if (!f) throw IoError("write to '" + path + "' failed");
}

void write_verdicts_csv(const std::string& path,
                        const std::vector<VerdictRow>& rows) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << "trial,slot,device,gamma,reason\n";
  for (const auto& r : rows)
    f << r.trial << ',' << r.slot << ',' << r.device << ','
      << static_cast<int>(r.gamma) << ',' << auth_reason_name(r.reason)
      << '\n';
}

}  // namespace nomauth
