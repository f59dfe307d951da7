// Exercises the shared-library surface the way an external consumer would:
// only nomauth.h, only C calls.
#include <assert.h>
#include <math.h>
#include <stdio.h>
#include <string.h>

#include "nomauth.h"

static int failures = 0;

#define CHECK(cond)                                                       \
  do {                                                                    \
    if (!(cond)) {                                                        \
      ++failures;                                                         \
      fprintf(stderr, "CHECK failed at %s:%d: %s\n", __FILE__, __LINE__,  \
              #cond);                                                     \
    }                                                                     \
  } while (0)

int main(void) {
  CHECK(nomauth_version() != NULL);

  nomauth_config* cfg = nomauth_config_create();
  CHECK(cfg != NULL);

  CHECK(nomauth_config_set_int(cfg, "devices", 20) == NOMAUTH_OK);
  CHECK(nomauth_config_set_int(cfg, "resources", 10) == NOMAUTH_OK);
  CHECK(nomauth_config_set_int(cfg, "active", 5) == NOMAUTH_OK);
  CHECK(nomauth_config_set_int(cfg, "trials", 8) == NOMAUTH_OK);
  CHECK(nomauth_config_set_int(cfg, "adversaries", 1) == NOMAUTH_OK);
  CHECK(nomauth_config_set_int(cfg, "workers", 1) == NOMAUTH_OK);
  CHECK(nomauth_config_set_double(cfg, "zeta", 0.9) == NOMAUTH_OK);
  CHECK(nomauth_config_set_string(cfg, "strategy", "random") == NOMAUTH_OK);
  CHECK(nomauth_config_set_string(cfg, "snr_db", "0,inf") == NOMAUTH_OK);

  /* bad key and bad value produce the right codes and messages */
  CHECK(nomauth_config_set_int(cfg, "devicez", 1) ==
        NOMAUTH_ERR_INVALID_ARGUMENT);
  CHECK(strlen(nomauth_last_error()) > 0);
  CHECK(nomauth_config_validate(cfg) == NOMAUTH_OK);

  {
    /* validation failure: S > K */
    nomauth_config* bad = nomauth_config_create();
    nomauth_config_set_int(bad, "devices", 4);
    nomauth_config_set_int(bad, "active", 9);
    CHECK(nomauth_config_validate(bad) == NOMAUTH_ERR_VALIDATION);
    CHECK(strstr(nomauth_last_error(), "active") != NULL);
    nomauth_config_destroy(bad);
  }

  nomauth_results* res = NULL;
  CHECK(nomauth_campaign_run(cfg, &res) == NOMAUTH_OK);
  CHECK(res != NULL);
  CHECK(nomauth_results_point_count(res) == 2);

  double fa = -1.0, md = -1.0, snr = -1.0;
  CHECK(nomauth_results_metric(res, 1, "rho_fa_cond", &fa) == NOMAUTH_OK);
  CHECK(nomauth_results_metric(res, 1, "rho_md_cond", &md) == NOMAUTH_OK);
  CHECK(nomauth_results_metric(res, 1, "snr_db", &snr) == NOMAUTH_OK);
  CHECK(fa == 0.0); /* perfect CSI, oracle detection: sound */
  CHECK(md >= 0.0 && md <= 1.0);
  CHECK(isinf(snr));
  CHECK(nomauth_results_metric(res, 7, "rho_sc", &fa) ==
        NOMAUTH_ERR_INVALID_ARGUMENT);
  CHECK(nomauth_results_metric(res, 0, "nope", &fa) ==
        NOMAUTH_ERR_INVALID_ARGUMENT);

  char* csv = NULL;
  CHECK(nomauth_results_to_string(res, "csv", &csv) == NOMAUTH_OK);
  CHECK(csv != NULL);
  CHECK(strncmp(csv, "campaign_id,snr_db,K,N,S,J,L,strategy,", 38) == 0);

  /* determinism across the C surface */
  nomauth_results* res2 = NULL;
  CHECK(nomauth_campaign_run(cfg, &res2) == NOMAUTH_OK);
  char* csv2 = NULL;
  CHECK(nomauth_results_to_string(res2, "csv", &csv2) == NOMAUTH_OK);
  CHECK(strcmp(csv, csv2) == 0);

  /* sweep assembly via append */
  CHECK(nomauth_config_set_int(cfg, "active", 8) == NOMAUTH_OK);
  nomauth_results* res3 = NULL;
  CHECK(nomauth_campaign_run(cfg, &res3) == NOMAUTH_OK);
  CHECK(nomauth_results_append(res, res3) == NOMAUTH_OK);
  CHECK(nomauth_results_point_count(res) == 4);
  nomauth_results_destroy(res3);

  CHECK(nomauth_results_write(res, "json", "capi_test_out.json") ==
        NOMAUTH_OK);
  remove("capi_test_out.json");

  char* js = NULL;
  CHECK(nomauth_results_to_string(res, "json", &js) == NOMAUTH_OK);
  CHECK(strstr(js, "\"campaigns\"") != NULL);

  nomauth_string_free(csv);
  nomauth_string_free(csv2);
  nomauth_string_free(js);
  nomauth_results_destroy(res);
  nomauth_results_destroy(res2);
  nomauth_config_destroy(cfg);

  if (failures) {
    fprintf(stderr, "%d C API checks failed\n", failures);
    return 1;
  }
  printf("C API surface ok\n");
  return 0;
}
