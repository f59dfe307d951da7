#include "nomauth/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

#include "nomauth/adversary.hpp"
#include "nomauth/baseline.hpp"
#include "nomauth/errors.hpp"
#include "nomauth/phy.hpp"
#include "nomauth/seedgen.hpp"

namespace nomauth {

namespace {

// Substream tags for the per-trial fork tree.
enum : std::uint64_t {
  kCodebook = 1,
  kChannel = 2,
  kActivity = 3,
  kSymbols = 4,
  kNoise = 5,
  kScheduleInit = 6,
  kAdversary = 7,
  kBaseline = 8,
  kCsi = 9,
};

// All counters are integers so that merging trial results in index order is
// exact and independent of the worker count.
struct TrialResult {
  bool skipped = false;
  std::uint64_t fa_events = 0;
  std::uint64_t legit_auths = 0;
  std::uint64_t md_events = 0;
  std::uint64_t adv_auths = 0;
  std::uint64_t collision_events = 0;
  std::uint64_t slot_count = 0;
  std::uint64_t baseline_fa_events = 0;
  std::uint64_t baseline_legit = 0;
  std::uint64_t baseline_md_events = 0;
  std::uint64_t baseline_adv = 0;
  CostCounters cost;
  DetectStats detect;
  std::vector<VerdictRow> verdicts;
};

// Floyd's subset sampling, then sorted for a deterministic record order.
std::vector<int> sample_active(int s_active, int k_devices, RngStream& rng) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(s_active));
  for (int j = k_devices - s_active; j < k_devices; ++j) {
    const int t = static_cast<int>(rng.below(static_cast<std::uint64_t>(j) + 1));
    if (std::find(out.begin(), out.end(), t) == out.end())
      out.push_back(t);
    else
      out.push_back(j);
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct DeviceWindow {
  Bits seed_bits;  // what generated this window (continuation fallback)
  AccessSchedule schedule;
  int rotation = 0;
  TaggedPool tagged;
};

struct AdversaryState {
  AdversaryProfile profile;
  ChannelState channel;  // N x 1
  int last_slot = 0;
  ChannelState taps;     // baseline_taps x 1
  int taps_last_slot = 0;
};

SeedVariant variant_from_string(const std::string& s) {
  return s == "lite" ? SeedVariant::lite : SeedVariant::full;
}

class TrialRunner {
 public:
  TrialRunner(const SimConfig& cfg, const MonicPolynomial& poly,
              const std::vector<cdouble>& alphabet, double snr, int trial,
              bool want_verdicts)
      : cfg_(cfg),
        poly_(poly),
        snr_(snr),
        trial_(trial),
        want_verdicts_(want_verdicts),
        root_(RngStream::mix(cfg.master_seed,
                             static_cast<std::uint64_t>(trial))),
        rng_codebook_(root_.fork(kCodebook)),
        rng_channel_(root_.fork(kChannel)),
        rng_activity_(root_.fork(kActivity)),
        rng_symbols_(root_.fork(kSymbols)),
        rng_noise_(root_.fork(kNoise)),
        rng_sched_(root_.fork(kScheduleInit)),
        rng_adv_(root_.fork(kAdversary)),
        rng_baseline_(root_.fork(kBaseline)),
        rng_csi_(root_.fork(kCsi)),
        alphabet_(alphabet) {}

  TrialResult run() {
    setup();
    const int L = cfg_.schedule_len;
    for (int j = 0; j < cfg_.slots; ++j) {
      const int l = j % L;
      if (j > 0 && l == 0) {
        if (!refresh_windows()) {
          res_.skipped = true;
          return res_;
        }
      }
      run_slot(j, l);
    }
    return res_;
  }

 private:
  void setup() {
    const int K = cfg_.devices;
    const int N = cfg_.resources;
    cb_ = build_codebook(N, K, cfg_.sparsity, alphabet_, rng_codebook_);
    auto pools_n = construct_pools(cb_);
    pools_.resize(static_cast<std::size_t>(K));
    for (int k = 0; k < K; ++k)
      pools_[static_cast<std::size_t>(k)] = cycle_pool(
          pools_n[static_cast<std::size_t>(k)],
          static_cast<std::size_t>(cfg_.schedule_len));

    Eigen::VectorXd dist(K);
    for (int k = 0; k < K; ++k)
      dist(k) = rng_channel_.uniform(cfg_.dist_min_km, cfg_.dist_max_km);
    chan_ = init_channel(N, dist, cfg_.zeta, 1.0, rng_channel_);
    last_slot_.assign(static_cast<std::size_t>(K), 0);

    double e = 0.0;
    for (int k = 0; k < K; ++k)
      e += chan_.H.col(k).cwiseProduct(cb_.entries.col(k)).squaredNorm();
    ref_energy_ = e / (static_cast<double>(N) * static_cast<double>(K));

    windows_.resize(static_cast<std::size_t>(K));
    for (int k = 0; k < K; ++k) init_window(k);

    const Knowledge knowledge = cfg_.adversary_knowledge == "column"
                                    ? Knowledge::VictimColumn
                                    : Knowledge::OwnCodebook;
    for (int a = 0; a < cfg_.adversaries; ++a) {
      AdversaryState st;
      st.profile.strategy = strategy_from_string(cfg_.strategy);
      st.profile.knowledge = knowledge;
      st.profile.own_codebook =
          build_codebook(N, K, cfg_.sparsity, alphabet_, rng_adv_);
      st.profile.victim_id =
          static_cast<int>(rng_adv_.below(static_cast<std::uint64_t>(K)));
      st.profile.transmit_prob = cfg_.adversary_transmit_prob;
      st.profile.sequence_candidates = cfg_.candidates;
      Eigen::VectorXd d(1);
      d(0) = rng_adv_.uniform(cfg_.dist_min_km, cfg_.dist_max_km);
      st.channel = init_channel(N, d, cfg_.zeta, 1.0, rng_adv_);
      if (cfg_.baseline_enabled)
        st.taps = init_channel(cfg_.baseline_taps, d, cfg_.zeta, 1.0,
                               rng_baseline_);
      advs_.push_back(std::move(st));
    }

    if (cfg_.baseline_enabled) setup_baseline();
  }

  void init_window(int k) {
    // Initialization stage: the AP provisions each device with a shared
    // starting seed; redraw until the seed folds to a usable register state.
    Bits bits(static_cast<std::size_t>(cfg_.seed_width));
    for (;;) {
      for (auto& b : bits)
        b = static_cast<std::uint8_t>(rng_sched_.below(2));
      try {
        apply_window(k, bits);
        return;
      } catch (const AllZeroSeed&) {
      }
    }
  }

  void apply_window(int k, const Bits& seed_bits) {
    auto& w = windows_[static_cast<std::size_t>(k)];
    const LfsrState st = lfsr_init(seed_bits, poly_);
    w.seed_bits = seed_bits;
    w.schedule.bits =
        generate_bits(st, poly_, static_cast<std::size_t>(cfg_.schedule_len));
    w.schedule.device_id = k;
    w.rotation = window_rotation(seed_bits, std::max(1, cfg_.candidates));
    w.tagged = tag_pool(pools_[static_cast<std::size_t>(k)], w.schedule);
  }

  // Degenerate-seed fallback ladder: configured variant, then lite, then
  // re-tag with a phase-shifted continuation of the current register and try
  // again. Deterministic, so the AP and device sides stay in step. A device
  // that exhausts every rung skips the trial.
  bool refresh_device(int k) {
    const SeedVariant configured = variant_from_string(cfg_.seed_variant);
    auto& w = windows_[static_cast<std::size_t>(k)];
    TaggedPool attempt_pool = w.tagged;
    const std::size_t L = static_cast<std::size_t>(cfg_.schedule_len);
    for (int attempt = 0; attempt < 5; ++attempt) {
      for (SeedVariant variant : {configured, SeedVariant::lite}) {
        try {
          const RefreshResult r = refresh_cycle(attempt_pool, poly_, L,
                                                variant, cfg_.seed_width,
                                                &res_.cost);
          apply_window(k, r.seed_bits);
          return true;
        } catch (const Error&) {
        }
      }
      // shift the current window by attempt+1 positions and re-tag
      const LfsrState st = lfsr_init(w.seed_bits, poly_);
      const Bits ext = generate_bits(
          st, poly_, L + static_cast<std::size_t>(attempt) + 1);
      AccessSchedule shifted;
      shifted.device_id = k;
      shifted.bits = Bits(ext.end() - static_cast<long>(L), ext.end());
      attempt_pool = tag_pool(pools_[static_cast<std::size_t>(k)], shifted);
    }
    return false;
  }

  bool refresh_windows() {
    for (int k = 0; k < cfg_.devices; ++k)
      if (!refresh_device(k)) return false;
    for (auto& a : advs_) advance_window(a.profile);
    if (cfg_.baseline_enabled) calibrate_baseline();
    return true;
  }

  void setup_baseline() {
    Eigen::VectorXd d = chan_.distances;
    taps_ = init_channel(cfg_.baseline_taps, d, cfg_.zeta, 1.0, rng_baseline_);
    taps_last_.assign(static_cast<std::size_t>(cfg_.devices), 0);
    refs_.resize(static_cast<std::size_t>(cfg_.devices));
    const double rel = est_noise_rel();
    for (int k = 0; k < cfg_.devices; ++k) {
      Eigen::VectorXcd est = taps_.H.col(k);
      const double var = rel * taps_.amp(k) * taps_.amp(k);
      for (Eigen::Index i = 0; i < est.size(); ++i)
        est(i) += rng_baseline_.cgauss(var);
      refs_[static_cast<std::size_t>(k)] = est;
    }
    calibrate_baseline();
  }

  double est_noise_rel() const {
    return std::isinf(snr_) ? 0.0 : std::pow(10.0, -snr_ / 10.0);
  }

  void calibrate_baseline() {
    const int dim = cfg_.baseline_taps;
    const double rel = est_noise_rel();
    const double innov = std::sqrt(1.0 - cfg_.zeta * cfg_.zeta);
    std::vector<double> h0, h1;
    h0.reserve(static_cast<std::size_t>(cfg_.calibration_size));
    h1.reserve(static_cast<std::size_t>(cfg_.calibration_size));
    auto draw = [&](double var) {
      Eigen::VectorXcd v(dim);
      for (int i = 0; i < dim; ++i) v(i) = rng_baseline_.cgauss(var);
      return v;
    };
    for (int i = 0; i < cfg_.calibration_size; ++i) {
      const Eigen::VectorXcd h = draw(1.0);
      Eigen::VectorXcd next = cfg_.zeta * h + innov * draw(1.0);
      const Eigen::VectorXcd ref = h + draw(rel);
      const Eigen::VectorXcd est = next + draw(rel);
      h0.push_back(bht_statistic(ref, est, &res_.cost));
      const Eigen::VectorXcd other = draw(1.0) + draw(rel);
      h1.push_back(bht_statistic(ref, other, &res_.cost));
    }
    tau_ = calibrate_threshold(h0, h1, &res_.cost);
  }

  void run_slot(int j, int l) {
    const int K = cfg_.devices;
    const int N = cfg_.resources;
    const int P = std::max(1, cfg_.candidates);

    const std::vector<int> active = sample_active(cfg_.active, K, rng_activity_);
    std::vector<TransmitRecord> records;
    records.reserve(active.size() + advs_.size());
    for (int k : active) {
      const auto& w = windows_[static_cast<std::size_t>(k)];
      if (!w.schedule.bits[static_cast<std::size_t>(l)]) continue;
      evolve_column_gap(chan_, k, j - last_slot_[static_cast<std::size_t>(k)],
                        rng_channel_);
      last_slot_[static_cast<std::size_t>(k)] = j;
      TransmitRecord rec;
      rec.claimed_id = k;
      rec.channel = chan_.H.col(k);
      rec.sequence = candidate_column(cb_, k, (l + w.rotation) % P);
      const auto b = rng_symbols_.below(4);
      rec.symbol = modulate(static_cast<std::uint8_t>(b & 1u),
                            static_cast<std::uint8_t>((b >> 1) & 1u));
      rec.adversarial = false;
      records.push_back(std::move(rec));
    }
    const std::size_t n_legit = records.size();

    for (auto& a : advs_) {
      const Eigen::VectorXcd victim_base =
          cb_.entries.col(a.profile.victim_id);
      auto inj = plan_attack(a.profile, l, victim_base, rng_adv_);
      if (!inj) continue;
      evolve_column_gap(a.channel, 0, j - a.last_slot, rng_adv_);
      a.last_slot = j;
      Eigen::VectorXcd h = a.channel.H.col(0);
      if (cfg_.adversary_channel_corr > 0.0) {
        const int v = a.profile.victim_id;
        evolve_column_gap(chan_, v, j - last_slot_[static_cast<std::size_t>(v)],
                          rng_channel_);
        last_slot_[static_cast<std::size_t>(v)] = j;
        const double rho = cfg_.adversary_channel_corr;
        h = rho * chan_.H.col(v) + std::sqrt(1.0 - rho * rho) * h;
      }
      TransmitRecord rec;
      rec.claimed_id = inj->claimed_id;
      rec.channel = std::move(h);
      rec.sequence = std::move(inj->sequence);
      rec.symbol = inj->symbol;
      rec.adversarial = true;
      records.push_back(std::move(rec));
    }

    // Replay adversaries scan the air regardless of their own transmission.
    for (auto& a : advs_) {
      if (a.profile.strategy != Strategy::Replay) continue;
      for (std::size_t r = 0; r < n_legit; ++r) {
        if (records[r].claimed_id == a.profile.victim_id)
          observe_transmission(a.profile, l, records[r].sequence);
      }
    }

    SlotFrame frame =
        synthesize_slot(j, records, N, snr_, ref_energy_, rng_noise_);

    std::vector<int> support(records.size());
    for (std::size_t i = 0; i < records.size(); ++i)
      support[i] = static_cast<int>(i);
    const Eigen::VectorXcd x_rec =
        ls_detect(frame.y, frame.G, support, &res_.detect);

    Eigen::MatrixXcd h_ap(N, static_cast<Eigen::Index>(records.size()));
    for (std::size_t r = 0; r < records.size(); ++r) {
      h_ap.col(static_cast<Eigen::Index>(r)) = records[r].channel;
      if (cfg_.csi_noise_var > 0.0)
        for (int n = 0; n < N; ++n)
          h_ap(n, static_cast<Eigen::Index>(r)) +=
              rng_csi_.cgauss(cfg_.csi_noise_var);
    }
    const Extracted ex = extract_codebook(frame.G, h_ap);

    Eigen::Matrix<std::uint8_t, Eigen::Dynamic, 1> gamma_col =
        Eigen::Matrix<std::uint8_t, Eigen::Dynamic, 1>::Zero(K);
    std::vector<std::uint8_t> id_seen(static_cast<std::size_t>(K), 0);
    SlotUsage usage;

    for (std::size_t r = 0; r < records.size(); ++r) {
      const auto& rec = records[r];
      const auto& w = windows_[static_cast<std::size_t>(rec.claimed_id)];
      const Eigen::VectorXcd expected =
          candidate_column(cb_, rec.claimed_id, (l + w.rotation) % P);
      const CheckOutcome out = check_transmission(
          ex.values.col(static_cast<Eigen::Index>(r)),
          ex.erased.col(static_cast<Eigen::Index>(r)), expected,
          w.schedule.bits[static_cast<std::size_t>(l)], cfg_.sequence_tol,
          res_.cost);

      if (rec.adversarial) {
        res_.adv_auths += 1;
        if (out.pass) res_.md_events += 1;
      } else {
        res_.legit_auths += 1;
        if (!out.pass) res_.fa_events += 1;
        if (out.pass)
          usage.used.emplace_back(
              rec.claimed_id,
              pools_[static_cast<std::size_t>(rec.claimed_id)]
                    [static_cast<std::size_t>(l)]);
      }

      const auto idx = static_cast<std::size_t>(rec.claimed_id);
      if (!id_seen[idx]) {
        gamma_col(rec.claimed_id) = out.pass ? 1 : 0;
        id_seen[idx] = 1;
      } else {
        gamma_col(rec.claimed_id) &= out.pass ? 1 : 0;
      }

      if (want_verdicts_)
        res_.verdicts.push_back(VerdictRow{trial_, j, rec.claimed_id,
                                           static_cast<std::uint8_t>(out.pass),
                                           out.reason});

      if (cfg_.baseline_enabled) run_baseline_check(rec, j);
    }

    // Recovered data gated by the verdict; kept for pipeline fidelity.
    Eigen::VectorXcd x_hat = Eigen::VectorXcd::Zero(K);
    for (std::size_t r = 0; r < records.size(); ++r)
      if (!records[r].adversarial)
        x_hat(records[r].claimed_id) = x_rec(static_cast<Eigen::Index>(r));
    const Eigen::VectorXcd x_tilde = gate_data(x_hat, gamma_col);
    (void)x_tilde;

    res_.collision_events += colliding_count(usage);
    res_.slot_count += 1;
  }

  void run_baseline_check(const TransmitRecord& rec, int j) {
    const double rel = est_noise_rel();
    Eigen::VectorXcd now;
    if (rec.adversarial) {
      auto& a = find_adversary(rec.claimed_id);
      evolve_column_gap(a.taps, 0, j - a.taps_last_slot, rng_baseline_);
      a.taps_last_slot = j;
      now = a.taps.H.col(0);
      const double var = rel * a.taps.amp(0) * a.taps.amp(0);
      for (Eigen::Index i = 0; i < now.size(); ++i)
        now(i) += rng_baseline_.cgauss(var);
    } else {
      const int k = rec.claimed_id;
      evolve_column_gap(taps_, k, j - taps_last_[static_cast<std::size_t>(k)],
                        rng_baseline_);
      taps_last_[static_cast<std::size_t>(k)] = j;
      now = taps_.H.col(k);
      const double var = rel * taps_.amp(k) * taps_.amp(k);
      for (Eigen::Index i = 0; i < now.size(); ++i)
        now(i) += rng_baseline_.cgauss(var);
    }
    const bool pass = bht_authenticate(
        refs_[static_cast<std::size_t>(rec.claimed_id)], now, tau_,
        &res_.cost);
    if (rec.adversarial) {
      res_.baseline_adv += 1;
      if (pass) res_.baseline_md_events += 1;
    } else {
      res_.baseline_legit += 1;
      if (!pass) res_.baseline_fa_events += 1;
    }
    if (pass) refs_[static_cast<std::size_t>(rec.claimed_id)] = now;
  }

  AdversaryState& find_adversary(int victim) {
    for (auto& a : advs_)
      if (a.profile.victim_id == victim) return a;
    return advs_.front();
  }

  const SimConfig& cfg_;
  const MonicPolynomial& poly_;
  double snr_;
  int trial_;
  bool want_verdicts_;
  RngStream root_;
  RngStream rng_codebook_, rng_channel_, rng_activity_, rng_symbols_,
      rng_noise_, rng_sched_, rng_adv_, rng_baseline_, rng_csi_;
  const std::vector<cdouble>& alphabet_;

  Codebook cb_;
  std::vector<Pool> pools_;
  ChannelState chan_;
  std::vector<int> last_slot_;
  double ref_energy_ = 1.0;
  std::vector<DeviceWindow> windows_;
  std::vector<AdversaryState> advs_;

  ChannelState taps_;
  std::vector<int> taps_last_;
  std::vector<Eigen::VectorXcd> refs_;
  double tau_ = 0.5;

  TrialResult res_;
};

MetricsReport merge_point(const SimConfig& cfg, double snr,
                          std::vector<TrialResult>& results,
                          std::vector<VerdictRow>* verdicts) {
  MetricsReport rep;
  rep.snr_db = snr;
  rep.baseline_enabled = cfg.baseline_enabled;

  std::uint64_t fa_events = 0, legit = 0, md_events = 0, adv = 0;
  std::uint64_t coll = 0, slots = 0;
  std::uint64_t bl_fa = 0, bl_legit = 0, bl_md = 0, bl_adv = 0;
  for (auto& r : results) {
    if (r.skipped) {
      rep.trials_skipped += 1;
      continue;
    }
    rep.trials_done += 1;
    fa_events += r.fa_events;
    legit += r.legit_auths;
    md_events += r.md_events;
    adv += r.adv_auths;
    coll += r.collision_events;
    slots += r.slot_count;
    bl_fa += r.baseline_fa_events;
    bl_legit += r.baseline_legit;
    bl_md += r.baseline_md_events;
    bl_adv += r.baseline_adv;
    rep.cost += r.cost;
    rep.detect.support_too_large += r.detect.support_too_large;
    if (verdicts)
      verdicts->insert(verdicts->end(), r.verdicts.begin(), r.verdicts.end());
  }

  const double K = static_cast<double>(cfg.devices);
  auto make_rate = [](std::uint64_t ev, std::uint64_t opp, double paper) {
    RatePair p;
    p.events = ev;
    p.opportunities = opp;
    p.paper = paper;
    p.conditional =
        opp ? static_cast<double>(ev) / static_cast<double>(opp) : 0.0;
    p.ci95 = ci95_halfwidth(ev, opp);
    return p;
  };
  rep.fa = make_rate(fa_events, legit,
                     slots ? static_cast<double>(fa_events) /
                                 (K * static_cast<double>(slots))
                           : 0.0);
  rep.md = make_rate(
      md_events, adv,
      rep.trials_done
          ? static_cast<double>(md_events) /
                (K * static_cast<double>(rep.trials_done))
          : 0.0);
  rep.no_adversary = (adv == 0);
  rep.collision_events = coll;
  rep.slot_instances = slots;
  rep.rho_sc =
      slots ? static_cast<double>(coll) / (K * static_cast<double>(slots))
            : 0.0;
  rep.baseline_fa = make_rate(bl_fa, bl_legit,
                              slots ? static_cast<double>(bl_fa) /
                                          (K * static_cast<double>(slots))
                                    : 0.0);
  rep.baseline_md = make_rate(
      bl_md, bl_adv,
      rep.trials_done ? static_cast<double>(bl_md) /
                            (K * static_cast<double>(rep.trials_done))
                      : 0.0);
  return rep;
}

}  // namespace

std::string campaign_id_for(const SimConfig& cfg) {
  std::ostringstream os;
  os << "K" << cfg.devices << "N" << cfg.resources << "S" << cfg.active << "J"
     << cfg.slots << "L" << cfg.schedule_len << "-" << cfg.strategy << "-m"
     << cfg.master_seed;
  return os.str();
}

CampaignResult run_campaign(const SimConfig& cfg) {
  CampaignResult result;
  result.config = cfg;
  result.warnings = cfg.validate();
  result.campaign_id = campaign_id_for(cfg);

  const MonicPolynomial poly = cfg.polynomial();
  const auto alphabet = alphabet_by_name(cfg.alphabet);
  const bool want_verdicts = !cfg.verdicts_path.empty();

  unsigned workers = cfg.workers > 0
                         ? static_cast<unsigned>(cfg.workers)
                         : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(cfg.trials));

  for (double snr : cfg.snr_db) {
    std::vector<TrialResult> trials(static_cast<std::size_t>(cfg.trials));
    std::atomic<int> next{0};
    auto work = [&]() {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= cfg.trials) break;
        TrialRunner runner(cfg, poly, alphabet, snr, cfg.trial_offset + i,
                           want_verdicts);
        trials[static_cast<std::size_t>(i)] = runner.run();
      }
    };
    if (workers <= 1) {
      work();
    } else {
      std::vector<std::thread> pool;
      pool.reserve(workers);
      for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
      for (auto& t : pool) t.join();
    }
    result.points.push_back(merge_point(cfg, snr, trials,
                                        want_verdicts ? &result.verdicts
                                                      : nullptr));
  }
  return result;
}

}  // namespace nomauth
