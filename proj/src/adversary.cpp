#include "nomauth/adversary.hpp"

#include "nomauth/errors.hpp"
#include "nomauth/phy.hpp"

namespace nomauth {

Strategy strategy_from_string(const std::string& s) {
  if (s == "random") return Strategy::RandomAccess;
  if (s == "always") return Strategy::AlwaysOn;
  if (s == "replay") return Strategy::Replay;
  throw ValidationError("unknown strategy '" + s +
                        "' (expected random|always|replay)");
}

const char* strategy_name(Strategy s) {
  switch (s) {
    case Strategy::RandomAccess: return "random";
    case Strategy::AlwaysOn: return "always";
    case Strategy::Replay: return "replay";
  }
  return "?";
}

namespace {

Eigen::VectorXcd cyclic_shift(const Eigen::VectorXcd& v, int shift) {
  const Eigen::Index n = v.size();
  Eigen::VectorXcd out(n);
  const Eigen::Index s = ((shift % n) + n) % n;
  for (Eigen::Index i = 0; i < n; ++i) out(i) = v((i - s + n) % n);
  return out;
}

Eigen::VectorXcd guess_sequence(AdversaryProfile& p,
                                const Eigen::VectorXcd& victim_base,
                                RngStream& rng) {
  if (p.knowledge == Knowledge::VictimColumn) {
    const int shift =
        static_cast<int>(rng.below(static_cast<std::uint64_t>(
            std::max(1, p.sequence_candidates))));
    return cyclic_shift(victim_base, shift);
  }
  const Eigen::Index col =
      static_cast<Eigen::Index>(rng.below(
          static_cast<std::uint64_t>(p.own_codebook.cols())));
  return p.own_codebook.entries.col(col);
}

}  // namespace

std::optional<Injection> plan_attack(AdversaryProfile& profile, int window_pos,
                                     const Eigen::VectorXcd& victim_base,
                                     RngStream& rng) {
  Injection inj;
  inj.claimed_id = profile.victim_id;

  switch (profile.strategy) {
    case Strategy::AlwaysOn:
      inj.sequence = guess_sequence(profile, victim_base, rng);
      break;
    case Strategy::RandomAccess:
      if (rng.u01() >= profile.transmit_prob) return std::nullopt;
      inj.sequence = guess_sequence(profile, victim_base, rng);
      break;
    case Strategy::Replay: {
      const auto it = profile.observed_prev.find(window_pos);
      if (it == profile.observed_prev.end()) return std::nullopt;  // scanning
      inj.sequence = it->second;
      break;
    }
  }

  const auto b = rng.below(4);
  inj.symbol = modulate(static_cast<std::uint8_t>(b & 1u),
                        static_cast<std::uint8_t>((b >> 1) & 1u));
  return inj;
}

void observe_transmission(AdversaryProfile& profile, int window_pos,
                          const Eigen::VectorXcd& sequence) {
  if (profile.strategy == Strategy::Replay)
    profile.observed_cur[window_pos] = sequence;
}

void advance_window(AdversaryProfile& profile) {
  if (profile.strategy != Strategy::Replay) return;
  profile.observed_prev = std::move(profile.observed_cur);
  profile.observed_cur.clear();
}

}  // namespace nomauth
