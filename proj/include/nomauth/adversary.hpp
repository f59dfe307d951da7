#pragma once

#include <Eigen/Dense>
#include <map>
#include <optional>

#include "nomauth/codebook.hpp"
#include "nomauth/rng.hpp"

namespace nomauth {

enum class Strategy { RandomAccess, AlwaysOn, Replay };

// What the attacker knows about the victim's spreading material.
//   OwnCodebook  - only its independently generated codebook (threat-model
//                  default: same system parameters, different codebook).
//   VictimColumn - the victim's base column (e.g. learned by scanning), but
//                  not the window state selecting the shift in use.
enum class Knowledge { OwnCodebook, VictimColumn };

Strategy strategy_from_string(const std::string& s);
const char* strategy_name(Strategy s);

// An illegitimate device. Its inputs are restricted to over-the-air
// observations and public parameters; nothing here can reach schedules,
// pools, or seeds.
struct AdversaryProfile {
  Strategy strategy = Strategy::RandomAccess;
  Knowledge knowledge = Knowledge::OwnCodebook;
  Codebook own_codebook;
  int victim_id = 0;
  double transmit_prob = 0.5;       // RandomAccess per-slot probability
  int sequence_candidates = 4;      // P, public parameter
  // Replay memory: window position -> sequence observed there.
  std::map<int, Eigen::VectorXcd> observed_prev;   // replayed from
  std::map<int, Eigen::VectorXcd> observed_cur;    // being recorded
};

struct Injection {
  int claimed_id = 0;
  Eigen::VectorXcd sequence;
  cdouble symbol{0.0, 0.0};
};

// Decides this slot's spoof attempt. `victim_base` is consulted only under
// Knowledge::VictimColumn. The symbol is a random QPSK point.
std::optional<Injection> plan_attack(AdversaryProfile& profile,
                                     int window_pos,
                                     const Eigen::VectorXcd& victim_base,
                                     RngStream& rng);

// Feeds an over-the-air observation of the victim's transmission into the
// replay memory (noiseless recovery: worst case for the defender).
void observe_transmission(AdversaryProfile& profile, int window_pos,
                          const Eigen::VectorXcd& sequence);

// Schedule-window boundary: what was recorded becomes replayable.
void advance_window(AdversaryProfile& profile);

}  // namespace nomauth
