#include "nomauth.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>

#include "nomauth/campaign.hpp"
#include "nomauth/emit.hpp"
#include "nomauth/errors.hpp"
#include "nomauth/verify.hpp"

namespace {

thread_local std::string g_last_error;

nomauth_status set_error(nomauth_status st, const std::string& msg) {
  g_last_error = msg;
  return st;
}

nomauth_status from_exception(const nomauth::Error& e) {
  using nomauth::ErrorCode;
  switch (e.code()) {
    case ErrorCode::Validation:
      return set_error(NOMAUTH_ERR_VALIDATION, e.what());
    case ErrorCode::Io:
      return set_error(NOMAUTH_ERR_IO, e.what());
    case ErrorCode::DegenerateSelection:
    case ErrorCode::AllZeroSeed:
    case ErrorCode::EmptySeed:
      return set_error(NOMAUTH_ERR_DEGENERATE, e.what());
    default:
      return set_error(NOMAUTH_ERR_INVALID_ARGUMENT, e.what());
  }
}

}  // namespace

struct nomauth_config {
  nomauth::SimConfig cfg;
  std::vector<std::string> warnings;
};

struct nomauth_results {
  nomauth::ResultSet set;
  std::vector<nomauth::VerdictRow> verdicts;
};

extern "C" {

const char* nomauth_version(void) { return "1.0.0"; }

const char* nomauth_last_error(void) { return g_last_error.c_str(); }

nomauth_config* nomauth_config_create(void) { return new nomauth_config(); }

void nomauth_config_destroy(nomauth_config* cfg) { delete cfg; }

nomauth_status nomauth_config_load_file(nomauth_config* cfg,
                                        const char* path) {
  if (!cfg || !path)
    return set_error(NOMAUTH_ERR_INVALID_ARGUMENT, "null argument");
  try {
    cfg->cfg = nomauth::load_config(path, cfg->cfg);
    return NOMAUTH_OK;
  } catch (const nomauth::Error& e) {
    return from_exception(e);
  } catch (const std::exception& e) {
    return set_error(NOMAUTH_ERR_INTERNAL, e.what());
  }
}

nomauth_status nomauth_config_set_int(nomauth_config* cfg, const char* key,
                                      long long value) {
  if (!cfg || !key)
    return set_error(NOMAUTH_ERR_INVALID_ARGUMENT, "null argument");
  auto& c = cfg->cfg;
  const std::string k = key;
  const int v = static_cast<int>(value);
  if (k == "devices") c.devices = v;
  else if (k == "resources") c.resources = v;
  else if (k == "active") c.active = v;
  else if (k == "slots") c.slots = v;
  else if (k == "schedule_len") c.schedule_len = v;
  else if (k == "trials") c.trials = v;
  else if (k == "adversaries") c.adversaries = v;
  else if (k == "seed_width") c.seed_width = v;
  else if (k == "candidates") c.candidates = v;
  else if (k == "baseline_taps") c.baseline_taps = v;
  else if (k == "calibration_size") c.calibration_size = v;
  else if (k == "workers") c.workers = v;
  else if (k == "trial_offset") c.trial_offset = v;
  else if (k == "baseline") c.baseline_enabled = value != 0;
  else if (k == "master_seed")
    c.master_seed = static_cast<std::uint64_t>(value);
  else
    return set_error(NOMAUTH_ERR_INVALID_ARGUMENT,
                     "unknown integer key '" + k + "'");
  return NOMAUTH_OK;
}

nomauth_status nomauth_config_set_double(nomauth_config* cfg, const char* key,
                                         double value) {
  if (!cfg || !key)
    return set_error(NOMAUTH_ERR_INVALID_ARGUMENT, "null argument");
  auto& c = cfg->cfg;
  const std::string k = key;
  if (k == "sparsity") c.sparsity = value;
  else if (k == "zeta") c.zeta = value;
  else if (k == "adversary_transmit_prob") c.adversary_transmit_prob = value;
  else if (k == "adversary_channel_corr") c.adversary_channel_corr = value;
  else if (k == "csi_noise_var") c.csi_noise_var = value;
  else if (k == "sequence_tol") c.sequence_tol = value;
  else if (k == "dist_min_km") c.dist_min_km = value;
  else if (k == "dist_max_km") c.dist_max_km = value;
  else if (k == "slot_duration_s") c.slot_duration_s = value;
  else
    return set_error(NOMAUTH_ERR_INVALID_ARGUMENT,
                     "unknown double key '" + k + "'");
  return NOMAUTH_OK;
}

nomauth_status nomauth_config_set_string(nomauth_config* cfg, const char* key,
                                         const char* value) {
  if (!cfg || !key || !value)
    return set_error(NOMAUTH_ERR_INVALID_ARGUMENT, "null argument");
  auto& c = cfg->cfg;
  const std::string k = key;
  const std::string v = value;
  try {
    if (k == "poly") c.poly = v;
    else if (k == "strategy") c.strategy = v;
    else if (k == "adversary_knowledge") c.adversary_knowledge = v;
    else if (k == "seed_variant") c.seed_variant = v;
    else if (k == "alphabet") c.alphabet = v;
    else if (k == "format") c.format = v;
    else if (k == "output") c.output = v;
    else if (k == "verdicts") c.verdicts_path = v;
    else if (k == "snr_db") c.snr_db = nomauth::parse_snr_list(v);
    else
      return set_error(NOMAUTH_ERR_INVALID_ARGUMENT,
                       "unknown string key '" + k + "'");
    return NOMAUTH_OK;
  } catch (const nomauth::Error& e) {
    return from_exception(e);
  }
}

nomauth_status nomauth_config_set_snr_list(nomauth_config* cfg,
                                           const double* values,
                                           size_t count) {
  if (!cfg || (!values && count))
    return set_error(NOMAUTH_ERR_INVALID_ARGUMENT, "null argument");
  if (count == 0)
    return set_error(NOMAUTH_ERR_VALIDATION, "snr list must not be empty");
  cfg->cfg.snr_db.assign(values, values + count);
  return NOMAUTH_OK;
}

nomauth_status nomauth_config_get_int(const nomauth_config* cfg,
                                      const char* key, long long* out) {
  if (!cfg || !key || !out)
    return set_error(NOMAUTH_ERR_INVALID_ARGUMENT, "null argument");
  const auto& c = cfg->cfg;
  const std::string k = key;
  if (k == "devices") *out = c.devices;
  else if (k == "resources") *out = c.resources;
  else if (k == "active") *out = c.active;
  else if (k == "slots") *out = c.slots;
  else if (k == "schedule_len") *out = c.schedule_len;
  else if (k == "trials") *out = c.trials;
  else if (k == "adversaries") *out = c.adversaries;
  else if (k == "seed_width") *out = c.seed_width;
  else if (k == "candidates") *out = c.candidates;
  else if (k == "baseline_taps") *out = c.baseline_taps;
  else if (k == "calibration_size") *out = c.calibration_size;
  else if (k == "workers") *out = c.workers;
  else if (k == "trial_offset") *out = c.trial_offset;
  else if (k == "baseline") *out = c.baseline_enabled ? 1 : 0;
  else if (k == "master_seed")
    *out = static_cast<long long>(c.master_seed);
  else
    return set_error(NOMAUTH_ERR_INVALID_ARGUMENT,
                     "unknown integer key '" + k + "'");
  return NOMAUTH_OK;
}

nomauth_status nomauth_config_validate(nomauth_config* cfg) {
  if (!cfg) return set_error(NOMAUTH_ERR_INVALID_ARGUMENT, "null config");
  try {
    cfg->warnings = cfg->cfg.validate();
    return NOMAUTH_OK;
  } catch (const nomauth::Error& e) {
    return from_exception(e);
  }
}

size_t nomauth_config_warning_count(const nomauth_config* cfg) {
  return cfg ? cfg->warnings.size() : 0;
}

const char* nomauth_config_warning(const nomauth_config* cfg, size_t index) {
  if (!cfg || index >= cfg->warnings.size()) return nullptr;
  return cfg->warnings[index].c_str();
}

nomauth_status nomauth_campaign_run(const nomauth_config* cfg,
                                    nomauth_results** out) {
  if (!cfg || !out)
    return set_error(NOMAUTH_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  try {
    auto res = std::make_unique<nomauth_results>();
    auto campaign = nomauth::run_campaign(cfg->cfg);
    res->verdicts = campaign.verdicts;
    res->set.campaigns.push_back(std::move(campaign));
    *out = res.release();
    return NOMAUTH_OK;
  } catch (const nomauth::Error& e) {
    return from_exception(e);
  } catch (const std::exception& e) {
    return set_error(NOMAUTH_ERR_INTERNAL, e.what());
  }
}

void nomauth_results_destroy(nomauth_results* results) { delete results; }

nomauth_status nomauth_results_append(nomauth_results* dst,
                                      nomauth_results* src) {
  if (!dst || !src)
    return set_error(NOMAUTH_ERR_INVALID_ARGUMENT, "null argument");
  for (auto& c : src->set.campaigns)
    dst->set.campaigns.push_back(std::move(c));
  src->set.campaigns.clear();
  dst->verdicts.insert(dst->verdicts.end(), src->verdicts.begin(),
                       src->verdicts.end());
  src->verdicts.clear();
  return NOMAUTH_OK;
}

namespace {

const nomauth::MetricsReport* point_at(const nomauth_results* results,
                                       size_t point,
                                       const nomauth::SimConfig** cfg_out) {
  size_t i = point;
  for (const auto& c : results->set.campaigns) {
    if (i < c.points.size()) {
      if (cfg_out) *cfg_out = &c.config;
      return &c.points[i];
    }
    i -= c.points.size();
  }
  return nullptr;
}

}  // namespace

size_t nomauth_results_point_count(const nomauth_results* results) {
  if (!results) return 0;
  size_t n = 0;
  for (const auto& c : results->set.campaigns) n += c.points.size();
  return n;
}

nomauth_status nomauth_results_metric(const nomauth_results* results,
                                      size_t point, const char* name,
                                      double* out) {
  if (!results || !name || !out)
    return set_error(NOMAUTH_ERR_INVALID_ARGUMENT, "null argument");
  const nomauth::MetricsReport* p = point_at(results, point, nullptr);
  if (!p)
    return set_error(NOMAUTH_ERR_INVALID_ARGUMENT, "point index out of range");
  const std::string k = name;
  if (k == "snr_db") *out = p->snr_db;
  else if (k == "rho_fa_paper") *out = p->fa.paper;
  else if (k == "rho_fa_cond") *out = p->fa.conditional;
  else if (k == "rho_md_paper") *out = p->md.paper;
  else if (k == "rho_md_cond") *out = p->md.conditional;
  else if (k == "rho_sc") *out = p->rho_sc;
  else if (k == "ci95_fa") *out = p->fa.ci95;
  else if (k == "ci95_md") *out = p->md.ci95;
  else if (k == "cost_proposed")
    *out = static_cast<double>(p->cost.proposed_total());
  else if (k == "cost_baseline")
    *out = static_cast<double>(p->cost.baseline_total());
  else if (k == "baseline_fa_cond") *out = p->baseline_fa.conditional;
  else if (k == "baseline_md_cond") *out = p->baseline_md.conditional;
  else if (k == "fa_events") *out = static_cast<double>(p->fa.events);
  else if (k == "md_events") *out = static_cast<double>(p->md.events);
  else if (k == "trials_done") *out = static_cast<double>(p->trials_done);
  else if (k == "trials_skipped")
    *out = static_cast<double>(p->trials_skipped);
  else
    return set_error(NOMAUTH_ERR_INVALID_ARGUMENT,
                     "unknown metric '" + k + "'");
  return NOMAUTH_OK;
}

nomauth_status nomauth_results_to_string(const nomauth_results* results,
                                         const char* format, char** out) {
  if (!results || !format || !out)
    return set_error(NOMAUTH_ERR_INVALID_ARGUMENT, "null argument");
  try {
    const std::string body = std::string(format) == "json"
                                 ? nomauth::to_json(results->set)
                                 : nomauth::to_csv(results->set);
    *out = static_cast<char*>(std::malloc(body.size() + 1));
    if (!*out) return set_error(NOMAUTH_ERR_INTERNAL, "out of memory");
    std::memcpy(*out, body.c_str(), body.size() + 1);
    return NOMAUTH_OK;
  } catch (const nomauth::Error& e) {
    return from_exception(e);
  }
}

void nomauth_string_free(char* s) { std::free(s); }

nomauth_status nomauth_results_write(const nomauth_results* results,
                                     const char* format, const char* path) {
  if (!results || !format)
    return set_error(NOMAUTH_ERR_INVALID_ARGUMENT, "null argument");
  try {
    nomauth::emit_results(results->set, format, path ? path : "");
    return NOMAUTH_OK;
  } catch (const nomauth::Error& e) {
    return from_exception(e);
  }
}

nomauth_status nomauth_results_write_verdicts(const nomauth_results* results,
                                              const char* path) {
  if (!results || !path)
    return set_error(NOMAUTH_ERR_INVALID_ARGUMENT, "null argument");
  try {
    nomauth::write_verdicts_csv(path, results->verdicts);
    return NOMAUTH_OK;
  } catch (const nomauth::Error& e) {
    return from_exception(e);
  }
}

nomauth_status nomauth_verify_run(int quick, int workers,
                                  nomauth_verify_callback callback, void* user,
                                  int* all_passed) {
  try {
    nomauth::AcceptanceOptions opt;
    opt.quick = quick != 0;
    opt.workers = workers;
    bool ok = true;
    const auto results = nomauth::run_acceptance(
        opt, [&](const nomauth::CriterionResult& r) {
          if (callback)
            callback(r.id, r.name.c_str(), r.pass ? 1 : 0, r.detail.c_str(),
                     r.seconds, user);
        });
    for (const auto& r : results) ok = ok && r.pass;
    if (all_passed) *all_passed = ok ? 1 : 0;
    return NOMAUTH_OK;
  } catch (const nomauth::Error& e) {
    return from_exception(e);
  } catch (const std::exception& e) {
    return set_error(NOMAUTH_ERR_INTERNAL, e.what());
  }
}

}  // extern "C"
