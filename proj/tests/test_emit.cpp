#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "nomauth/emit.hpp"
#include "nomauth/errors.hpp"

using namespace nomauth;

namespace {

ResultSet tiny_results() {
  SimConfig cfg;
  cfg.devices = 10;
  cfg.resources = 8;
  cfg.active = 3;
  cfg.trials = 5;
  cfg.snr_db = {0.0, 10.0};
  cfg.adversaries = 1;
  cfg.workers = 1;
  ResultSet set;
  set.campaigns.push_back(run_campaign(cfg));
  return set;
}

}  // namespace

TEST_CASE("csv output") {
  const auto set = tiny_results();
  const auto csv = to_csv(set);

  SUBCASE("header matches the documented schema exactly") {
    std::stringstream ss(csv);
    std::string header;
    std::getline(ss, header);
    CHECK(header ==
          "campaign_id,snr_db,K,N,S,J,L,strategy,rho_fa_paper,rho_fa_cond,"
          "rho_md_paper,rho_md_cond,rho_sc,ci95_fa,ci95_md,cost_proposed,"
          "cost_baseline");
  }
  SUBCASE("one row per SNR point") {
    int lines = 0;
    for (char c : csv)
      if (c == '\n') ++lines;
    CHECK(lines == 3);  // header + 2 points
  }
}

TEST_CASE("json output round-trips and carries the figure blocks") {
  const auto set = tiny_results();
  const auto body = to_json(set);
  const auto j = nlohmann::json::parse(body);  // schema validator round trip
  REQUIRE(j.contains("campaigns"));
  const auto& c = j["campaigns"][0];
  CHECK(c.contains("config"));
  CHECK(c.contains("points"));
  CHECK(c["points"].size() == 2);
  CHECK(c["figures"].contains("fa_vs_snr"));
  CHECK(c["figures"]["md_vs_snr"]["x"].size() == 2);
  CHECK(c["config"]["devices"] == 10);
  const auto& p0 = c["points"][0];
  CHECK(p0.contains("false_alarm"));
  CHECK(p0.contains("misdetection"));
  CHECK(p0.contains("cost"));
}

TEST_CASE("emit_results writes files and rejects empty input") {
  const auto set = tiny_results();
  const std::string path = "nomauth_emit_test.csv";
  emit_results(set, "csv", path);
  {
    std::ifstream f(path);
    REQUIRE(f.good());
    std::string header;
    std::getline(f, header);
    CHECK(header == csv_header());
  }
  std::remove(path.c_str());

  ResultSet empty;
  CHECK_THROWS_AS(emit_results(empty, "csv", path), IoError);
  std::ifstream gone(path);
  CHECK_FALSE(gone.good());  // no file written on error
}

TEST_CASE("verdict csv format") {
  std::vector<VerdictRow> rows{
      {0, 3, 7, 1, AuthReason::Pass},
      {1, 0, 2, 0, AuthReason::SlotMismatch},
  };
  const std::string path = "nomauth_verdicts_test.csv";
  write_verdicts_csv(path, rows);
  std::ifstream f(path);
  std::string line;
  std::getline(f, line);
  CHECK(line == "trial,slot,device,gamma,reason");
  std::getline(f, line);
  CHECK(line == "0,3,7,1,Pass");
  std::getline(f, line);
  CHECK(line == "1,0,2,0,SlotMismatch");
  f.close();
  std::remove(path.c_str());
}
