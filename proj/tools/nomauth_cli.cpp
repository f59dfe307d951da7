// Command-line front end for the simulator shared library. Talks to the
// core exclusively through the C API in nomauth.h.
//
//   nomauth-cli simulate [flags]   one campaign (SNR list from --snr-db)
//   nomauth-cli sweep    [flags]   grids over S / L / OF for the figure runs
//   nomauth-cli verify   [flags]   acceptance-property suite
//
// Every flag has a SIM_* environment override; flags beat the environment,
// which beats the config file, which beats the defaults.
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nomauth.h"

namespace {

struct CommonFlags {
  std::string config_path;
  std::string output;
  std::string format = "csv";
  std::string verdicts;
  std::vector<std::pair<CLI::Option*, std::function<int(nomauth_config*)>>>
      setters;
};

std::string env_name(const std::string& flag) {
  std::string s = "SIM_";
  for (char c : flag)
    s.push_back(c == '-' ? '_'
                         : static_cast<char>(std::toupper(
                               static_cast<unsigned char>(c))));
  return s;
}

void add_common_options(CLI::App* cmd, CommonFlags& fl) {
  cmd->add_option("--config", fl.config_path, "JSON config file")
      ->envname("SIM_CONFIG");

  auto add_int = [&](const std::string& flag, const char* key,
                     const char* help) {
    auto value = std::make_shared<long long>(0);
    auto* opt =
        cmd->add_option("--" + flag, *value, help)->envname(env_name(flag));
    fl.setters.emplace_back(opt, [key, value](nomauth_config* c) {
      return nomauth_config_set_int(c, key, *value);
    });
  };
  auto add_double = [&](const std::string& flag, const char* key,
                        const char* help) {
    auto value = std::make_shared<double>(0.0);
    auto* opt =
        cmd->add_option("--" + flag, *value, help)->envname(env_name(flag));
    fl.setters.emplace_back(opt, [key, value](nomauth_config* c) {
      return nomauth_config_set_double(c, key, *value);
    });
  };
  auto add_string = [&](const std::string& flag, const char* key,
                        const char* help) {
    auto value = std::make_shared<std::string>();
    auto* opt =
        cmd->add_option("--" + flag, *value, help)->envname(env_name(flag));
    fl.setters.emplace_back(opt, [key, value](nomauth_config* c) {
      return nomauth_config_set_string(c, key, value->c_str());
    });
  };

  add_int("devices", "devices", "total devices K");
  add_int("resources", "resources", "shared resources N");
  add_int("active", "active", "active devices per slot S");
  add_int("slots", "slots", "time slots per trial J");
  add_int("schedule-len", "schedule_len", "access schedule length L");
  add_string("poly", "poly",
             "LFSR polynomial, ascending coefficient bits ('1101' = 1+x+x^3; "
             "'auto' picks a primitive one from L)");
  add_string("snr-db", "snr_db", "comma-separated SNR list, 'inf' allowed");
  add_int("trials", "trials", "Monte Carlo trials");
  add_int("seed", "master_seed", "master seed");
  add_string("strategy", "strategy",
             "adversary strategy random|always|replay");
  add_int("adversaries", "adversaries", "illegitimate devices per trial");
  add_string("adversary-knowledge", "adversary_knowledge",
             "attacker sequence knowledge own|column");
  add_string("seed-variant", "seed_variant", "seed variant full|lite");
  add_int("seed-width", "seed_width", "seed bit width");
  add_int("candidates", "candidates", "sequence variants per device P");
  add_string("alphabet", "alphabet", "codebook alphabet default|quad4");
  add_double("sparsity", "sparsity", "codebook zero-entry probability");
  add_double("zeta", "zeta", "channel temporal correlation");
  add_double("csi-noise-var", "csi_noise_var", "AP channel-estimate noise");
  add_double("adversary-corr", "adversary_channel_corr",
             "adversary/victim channel correlation");
  add_double("slot-duration", "slot_duration_s",
             "slot duration in seconds (axis labeling only)");
  add_int("workers", "workers", "worker threads (0 = hardware)");

  auto baseline = std::make_shared<bool>(false);
  auto* opt = cmd->add_flag("--baseline", *baseline,
                            "run the BHT comparator alongside")
                  ->envname("SIM_BASELINE");
  fl.setters.emplace_back(opt, [baseline](nomauth_config* c) {
    return nomauth_config_set_int(c, "baseline", *baseline ? 1 : 0);
  });

  cmd->add_option("--output", fl.output, "output path (default stdout)")
      ->envname("SIM_OUTPUT");
  cmd->add_option("--format", fl.format, "output format csv|json")
      ->envname("SIM_FORMAT")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--verdicts", fl.verdicts, "per-check verdict CSV path")
      ->envname("SIM_VERDICTS");
}

int fail_with_last_error() {
  std::fprintf(stderr, "error: %s\n", nomauth_last_error());
  return 1;
}

int build_config(nomauth_config* cfg, const CommonFlags& fl) {
  if (!fl.config_path.empty() &&
      nomauth_config_load_file(cfg, fl.config_path.c_str()) != NOMAUTH_OK)
    return fail_with_last_error();
  for (const auto& [opt, fn] : fl.setters) {
    if (opt->count() == 0) continue;
    if (fn(cfg) != NOMAUTH_OK) return fail_with_last_error();
  }
  // verdict collection happens inside the campaign engine
  if (!fl.verdicts.empty() &&
      nomauth_config_set_string(cfg, "verdicts", fl.verdicts.c_str()) !=
          NOMAUTH_OK)
    return fail_with_last_error();
  if (nomauth_config_validate(cfg) != NOMAUTH_OK) return fail_with_last_error();
  for (size_t i = 0; i < nomauth_config_warning_count(cfg); ++i)
    std::fprintf(stderr, "warning: %s\n", nomauth_config_warning(cfg, i));
  return 0;
}

int emit(nomauth_results* results, const CommonFlags& fl) {
  if (nomauth_results_write(results, fl.format.c_str(),
                            fl.output.empty() ? nullptr : fl.output.c_str()) !=
      NOMAUTH_OK)
    return fail_with_last_error();
  if (!fl.output.empty())
    std::fprintf(stderr, "wrote %s (%s, %zu points)\n", fl.output.c_str(),
                 fl.format.c_str(), nomauth_results_point_count(results));
  if (!fl.verdicts.empty()) {
    if (nomauth_results_write_verdicts(results, fl.verdicts.c_str()) !=
        NOMAUTH_OK)
      return fail_with_last_error();
    std::fprintf(stderr, "wrote %s\n", fl.verdicts.c_str());
  }
  return 0;
}

std::vector<long long> split_ints(const std::string& csv) {
  std::vector<long long> out;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) {
      out.push_back(std::atoll(cur.c_str()));
      cur.clear();
    }
  };
  for (char c : csv) {
    if (c == ',')
      flush();
    else if (!std::isspace(static_cast<unsigned char>(c)))
      cur.push_back(c);
  }
  flush();
  return out;
}

int run_simulate(const CommonFlags& fl) {
  nomauth_config* cfg = nomauth_config_create();
  int rc = build_config(cfg, fl);
  nomauth_results* results = nullptr;
  if (rc == 0 && nomauth_campaign_run(cfg, &results) != NOMAUTH_OK)
    rc = fail_with_last_error();
  if (rc == 0) rc = emit(results, fl);
  if (results) nomauth_results_destroy(results);
  nomauth_config_destroy(cfg);
  return rc;
}

int run_sweep(const CommonFlags& fl, const std::string& active_list,
              const std::string& schedule_list, const std::string& of_list) {
  std::vector<long long> actives = split_ints(active_list);
  std::vector<long long> lens = split_ints(schedule_list);
  std::vector<long long> ofs = split_ints(of_list);
  if (actives.empty()) actives.push_back(-1);
  if (lens.empty()) lens.push_back(-1);
  if (ofs.empty()) ofs.push_back(-1);

  nomauth_results* combined = nullptr;
  int rc = 0;

  for (long long of : ofs) {
    for (long long s : actives) {
      for (long long len : lens) {
        nomauth_config* cfg = nomauth_config_create();
        rc = build_config(cfg, fl);
        if (rc == 0) {
          if (s > 0) nomauth_config_set_int(cfg, "active", s);
          if (len > 0) {
            nomauth_config_set_int(cfg, "schedule_len", len);
            nomauth_config_set_int(cfg, "slots", len);
            nomauth_config_set_string(cfg, "poly", "auto");
          }
          if (of > 0) {
            long long devices = 0;
            nomauth_config_get_int(cfg, "devices", &devices);
            const long long n = std::llround(100.0 * static_cast<double>(devices) /
                                             static_cast<double>(of));
            nomauth_config_set_int(cfg, "resources", n);
          }
          if (nomauth_config_validate(cfg) != NOMAUTH_OK)
            rc = fail_with_last_error();
        }
        nomauth_results* part = nullptr;
        if (rc == 0 && nomauth_campaign_run(cfg, &part) != NOMAUTH_OK)
          rc = fail_with_last_error();
        if (rc == 0) {
          if (!combined) {
            combined = part;
          } else {
            nomauth_results_append(combined, part);
            nomauth_results_destroy(part);
          }
        }
        nomauth_config_destroy(cfg);
        if (rc) break;
      }
      if (rc) break;
    }
    if (rc) break;
  }

  if (rc == 0 && combined) rc = emit(combined, fl);
  if (combined) nomauth_results_destroy(combined);
  return rc;
}

void verify_print(int id, const char* name, int pass, const char* detail,
                  double seconds, void*) {
  std::printf("criterion %2d [%s] %s (%.1fs)\n    %s\n", id,
              pass ? "PASS" : "FAIL", name, seconds, detail);
  std::fflush(stdout);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grant-free NOMA access-based authentication simulator"};
  app.require_subcommand(1);

  CommonFlags sim_flags, sweep_flags;

  auto* sim = app.add_subcommand("simulate", "run one campaign");
  add_common_options(sim, sim_flags);

  auto* sweep = app.add_subcommand(
      "sweep", "grid campaigns over S, L and overloading factor");
  add_common_options(sweep, sweep_flags);
  std::string active_list, schedule_list, of_list;
  sweep->add_option("--active-list", active_list,
                    "comma list of S values (one campaign each)")
      ->envname("SIM_ACTIVE_LIST");
  sweep->add_option("--schedule-len-list", schedule_list,
                    "comma list of L values (sets J=L, poly auto)")
      ->envname("SIM_SCHEDULE_LEN_LIST");
  sweep->add_option("--of-list", of_list,
                    "comma list of overloading factors in percent")
      ->envname("SIM_OF_LIST");

  auto* verify = app.add_subcommand("verify", "acceptance-property suite");
  bool quick = false;
  int verify_workers = 0;
  verify->add_flag("--quick", quick, "reduced Monte Carlo sizes (smoke run)");
  verify->add_option("--workers", verify_workers, "worker threads")
      ->envname("SIM_WORKERS");

  CLI11_PARSE(app, argc, argv);

  if (sim->parsed()) return run_simulate(sim_flags);
  if (sweep->parsed())
    return run_sweep(sweep_flags, active_list, schedule_list, of_list);
  if (verify->parsed()) {
    int all = 0;
    if (nomauth_verify_run(quick ? 1 : 0, verify_workers, verify_print,
                           nullptr, &all) != NOMAUTH_OK) {
      std::fprintf(stderr, "error: %s\n", nomauth_last_error());
      return 2;
    }
    std::printf(all ? "verify: all criteria passed\n"
                    : "verify: FAILURES present\n");
    return all ? 0 : 1;
  }
  return 0;
}
