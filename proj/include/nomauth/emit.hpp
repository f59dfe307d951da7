#pragma once

#include <string>
#include <vector>

#include "nomauth/campaign.hpp"

namespace nomauth {

// A sweep is a sequence of campaigns; a single simulation is a sequence of
// one. Everything downstream works on this container.
struct ResultSet {
  std::vector<CampaignResult> campaigns;
};

// Fixed column schema; consumers key on this exact header line.
std::string csv_header();

// One row per (campaign, SNR point). Formatting is pinned so identical
// campaigns produce identical bytes.
std::string to_csv(const ResultSet& results);

// Config echo, per-point detail (both rate variants, intervals, costs,
// baseline block, skip accounting) and per-figure series blocks.
std::string to_json(const ResultSet& results);

// Writes in the requested format ("csv" | "json"); empty result sets are an
// error and produce no file. An empty path writes to stdout.
void emit_results(const ResultSet& results, const std::string& format,
                  const std::string& path);

void write_verdicts_csv(const std::string& path,
                        const std::vector<VerdictRow>& rows);

}  // namespace nomauth
