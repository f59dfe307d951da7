#include "nomauth/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "nomauth/errors.hpp"

namespace nomauth {

using nlohmann::json;

MonicPolynomial SimConfig::polynomial() const {
  if (poly == "auto") {
    // degree grows with the schedule length so windows keep fresh bits
    int mu = 2;
    while ((1 << (mu + 1)) <= schedule_len && mu < 16) ++mu;
    return default_polynomial(mu);
  }
  return MonicPolynomial::from_string(poly);
}

bool SimConfig::noise_free(double snr) const { return std::isinf(snr); }

std::vector<std::string> SimConfig::validate() const {
  std::vector<std::string> problems;
  std::vector<std::string> warnings;

  auto require = [&](bool ok, const std::string& msg) {
    if (!ok) problems.push_back(msg);
  };

  require(devices >= 1, "devices: must be >= 1");
  require(resources >= 1, "resources: must be >= 1");
  require(active >= 0, "active: must be >= 0");
  require(active <= devices, "active: S must not exceed K (S=" +
                                 std::to_string(active) +
                                 ", K=" + std::to_string(devices) + ")");
  require(slots >= 1, "slots: must be >= 1");
  require(schedule_len >= 1, "schedule-len: must be >= 1");
  require(trials >= 1, "trials: must be >= 1");
  require(sparsity >= 0.0 && sparsity < 1.0, "sparsity: must lie in [0, 1)");
  require(zeta >= 0.0 && zeta <= 1.0, "zeta: must lie in [0, 1]");
  require(!snr_db.empty(), "snr-db: list must not be empty");
  require(adversaries >= 0, "adversaries: must be >= 0");
  require(adversary_transmit_prob >= 0.0 && adversary_transmit_prob <= 1.0,
          "adversary transmit probability must lie in [0, 1]");
  require(adversary_channel_corr >= 0.0 && adversary_channel_corr <= 1.0,
          "adversary-channel-corr: must lie in [0, 1]");
  require(seed_width >= 1 && seed_width <= 62,
          "seed-width: must lie in [1, 62]");
  require(candidates >= 1, "candidates: must be >= 1");
  require(baseline_taps >= 1, "baseline-taps: must be >= 1");
  require(calibration_size >= 100, "calibration-size: must be >= 100");
  require(csi_noise_var >= 0.0, "csi-noise-var: must be >= 0");
  require(sequence_tol > 0.0, "sequence-tol: must be > 0");
  require(dist_min_km > 0.0 && dist_max_km >= dist_min_km,
          "distances: need 0 < min <= max");
  require(workers >= 0, "workers: must be >= 0");
  require(trial_offset >= 0, "trial-offset: must be >= 0");
  require(strategy == "random" || strategy == "always" || strategy == "replay",
          "strategy: expected random|always|replay");
  require(adversary_knowledge == "own" || adversary_knowledge == "column",
          "adversary-knowledge: expected own|column");
  require(seed_variant == "full" || seed_variant == "lite",
          "seed-variant: expected full|lite");
  require(format == "csv" || format == "json", "format: expected csv|json");

  if (alphabet != "default" && alphabet != "quad4")
    problems.push_back("alphabet: expected default|quad4");

  MonicPolynomial p;
  bool poly_ok = false;
  try {
    p = polynomial();
    poly_ok = true;
  } catch (const Error& e) {
    problems.push_back(std::string("poly: ") + e.what());
  }

  if (!problems.empty()) {
    std::string msg = "invalid configuration:";
    for (const auto& s : problems) msg += "\n  - " + s;
    throw ValidationError(msg);
  }

  if (poly_ok) {
    const auto prim = is_primitive(p);
    if (prim.has_value() && !*prim) {
      std::ostringstream os;
      os << "polynomial '" << poly << "' is not primitive (period "
         << measure_period(p) << " < " << ((1ull << p.degree) - 1)
         << "); schedules will repeat early";
      warnings.push_back(os.str());
    }
  }
  return warnings;
}

namespace {

double snr_from_json(const json& v) {
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "inf" || s == "Inf" || s == "INF")
      return std::numeric_limits<double>::infinity();
    throw ValidationError("snr-db: bad entry '" + s + "'");
  }
  return v.get<double>();
}

}  // namespace

SimConfig load_config(const std::string& path, const SimConfig& defaults) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open config file '" + path + "'");
  json j;
  try {
    f >> j;
  } catch (const std::exception& e) {
    throw ValidationError("config '" + path + "' is not valid JSON: " +
                          e.what());
  }
  if (!j.is_object()) throw ValidationError("config root must be an object");

  SimConfig cfg = defaults;
  for (const auto& [key, value] : j.items()) {
    try {
      if (key == "devices") cfg.devices = value.get<int>();
      else if (key == "resources") cfg.resources = value.get<int>();
      else if (key == "active") cfg.active = value.get<int>();
      else if (key == "slots") cfg.slots = value.get<int>();
      else if (key == "schedule_len") cfg.schedule_len = value.get<int>();
      else if (key == "poly") cfg.poly = value.get<std::string>();
      else if (key == "snr_db") {
        cfg.snr_db.clear();
        for (const auto& v : value) cfg.snr_db.push_back(snr_from_json(v));
      }
      else if (key == "trials") cfg.trials = value.get<int>();
      else if (key == "master_seed") cfg.master_seed = value.get<std::uint64_t>();
      else if (key == "sparsity") cfg.sparsity = value.get<double>();
      else if (key == "zeta") cfg.zeta = value.get<double>();
      else if (key == "strategy") cfg.strategy = value.get<std::string>();
      else if (key == "adversaries") cfg.adversaries = value.get<int>();
      else if (key == "adversary_knowledge")
        cfg.adversary_knowledge = value.get<std::string>();
      else if (key == "adversary_transmit_prob")
        cfg.adversary_transmit_prob = value.get<double>();
      else if (key == "adversary_channel_corr")
        cfg.adversary_channel_corr = value.get<double>();
      else if (key == "seed_variant") cfg.seed_variant = value.get<std::string>();
      else if (key == "seed_width") cfg.seed_width = value.get<int>();
      else if (key == "candidates") cfg.candidates = value.get<int>();
      else if (key == "alphabet") cfg.alphabet = value.get<std::string>();
      else if (key == "baseline") cfg.baseline_enabled = value.get<bool>();
      else if (key == "baseline_taps") cfg.baseline_taps = value.get<int>();
      else if (key == "calibration_size")
        cfg.calibration_size = value.get<int>();
      else if (key == "csi_noise_var") cfg.csi_noise_var = value.get<double>();
      else if (key == "sequence_tol") cfg.sequence_tol = value.get<double>();
      else if (key == "dist_min_km") cfg.dist_min_km = value.get<double>();
      else if (key == "dist_max_km") cfg.dist_max_km = value.get<double>();
      else if (key == "slot_duration_s")
        cfg.slot_duration_s = value.get<double>();
      else if (key == "output") cfg.output = value.get<std::string>();
      else if (key == "format") cfg.format = value.get<std::string>();
      else if (key == "verdicts") cfg.verdicts_path = value.get<std::string>();
      else if (key == "workers") cfg.workers = value.get<int>();
      else if (key == "trial_offset") cfg.trial_offset = value.get<int>();
      else
        throw ValidationError("config key '" + key + "' is not recognized");
    } catch (const json::exception& e) {
      throw ValidationError("config key '" + key + "': " + e.what());
    }
  }
  return cfg;
}

std::vector<double> parse_snr_list(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const auto a = tok.find_first_not_of(" \t");
    const auto b = tok.find_last_not_of(" \t");
    if (a == std::string::npos)
      throw ValidationError("snr-db: empty entry in list");
    const std::string t = tok.substr(a, b - a + 1);
    if (t == "inf" || t == "Inf" || t == "INF") {
      out.push_back(std::numeric_limits<double>::infinity());
      continue;
    }
    try {
      std::size_t used = 0;
      const double v = std::stod(t, &used);
      if (used != t.size()) throw std::invalid_argument(t);
      out.push_back(v);
    } catch (const std::exception&) {
      throw ValidationError("snr-db: bad entry '" + t + "'");
    }
  }
  if (out.empty()) throw ValidationError("snr-db: list must not be empty");
  return out;
}

std::string config_to_json(const SimConfig& cfg) {
  json j;
  j["devices"] = cfg.devices;
  j["resources"] = cfg.resources;
  j["active"] = cfg.active;
  j["slots"] = cfg.slots;
  j["schedule_len"] = cfg.schedule_len;
  j["poly"] = cfg.poly;
  json snrs = json::array();
  for (double v : cfg.snr_db) {
    if (std::isinf(v))
      snrs.push_back("inf");
    else
      snrs.push_back(v);
  }
  j["snr_db"] = snrs;
  j["trials"] = cfg.trials;
  j["master_seed"] = cfg.master_seed;
  j["sparsity"] = cfg.sparsity;
  j["zeta"] = cfg.zeta;
  j["strategy"] = cfg.strategy;
  j["adversaries"] = cfg.adversaries;
  j["adversary_knowledge"] = cfg.adversary_knowledge;
  j["adversary_transmit_prob"] = cfg.adversary_transmit_prob;
  j["adversary_channel_corr"] = cfg.adversary_channel_corr;
  j["seed_variant"] = cfg.seed_variant;
  j["seed_width"] = cfg.seed_width;
  j["candidates"] = cfg.candidates;
  j["alphabet"] = cfg.alphabet;
  j["baseline"] = cfg.baseline_enabled;
  j["baseline_taps"] = cfg.baseline_taps;
  j["calibration_size"] = cfg.calibration_size;
  j["csi_noise_var"] = cfg.csi_noise_var;
  j["sequence_tol"] = cfg.sequence_tol;
  j["dist_min_km"] = cfg.dist_min_km;
  j["dist_max_km"] = cfg.dist_max_km;
  j["slot_duration_s"] = cfg.slot_duration_s;
  j["overloading_factor_pct"] = cfg.overloading_factor();
  return j.dump(2);
}

}  // namespace nomauth
