#include "nomauth/verify.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "nomauth/campaign.hpp"
#include "nomauth/emit.hpp"
#include "nomauth/errors.hpp"
#include "nomauth/phy.hpp"
#include "nomauth/seedgen.hpp"

namespace nomauth {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Check {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[FAIL " << what << "] ";
    }
  }
};

SimConfig base_config(const AcceptanceOptions& opt) {
  SimConfig cfg;
  cfg.workers = opt.workers;
  return cfg;
}

int scaled(const AcceptanceOptions& opt, int full, int quick) {
  return opt.quick ? quick : full;
}

// ---------------------------------------------------------------------------
// 1. Zero false alarms at reference scale and desk scale, with runtime caps.

CriterionResult criterion_zero_false_alarms(const AcceptanceOptions& opt) {
  Check c;
  using clock = std::chrono::steady_clock;

  auto run_fa = [&](int K, int N, int S, int trials, const char* label,
                    double budget_s) {
    SimConfig cfg = base_config(opt);
    cfg.devices = K;
    cfg.resources = N;
    cfg.active = S;
    cfg.trials = trials;
    cfg.adversaries = 0;
    cfg.snr_db = {0, 5, 10, 15, 20, 25};
    const auto t0 = clock::now();
    const auto res = run_campaign(cfg);
    const double secs =
        std::chrono::duration<double>(clock::now() - t0).count();
    std::uint64_t events = 0, opportunities = 0, skipped = 0;
    for (const auto& p : res.points) {
      events += p.fa.events;
      opportunities += p.fa.opportunities;
      skipped += p.trials_skipped;
      c.require(p.fa.paper == 0.0 && p.fa.conditional == 0.0,
                std::string(label) + " rho_fa=0 at snr " +
                    std::to_string(p.snr_db));
    }
    c.require(opportunities > 0, std::string(label) + " transmissions exist");
    c.require(skipped == 0, std::string(label) + " no skipped trials");
    c.require(secs < budget_s, std::string(label) + " runtime " +
                                   std::to_string(secs) + "s under budget");
    c.detail << label << ": fa 0/" << opportunities << " in " << secs << "s. ";
  };

  run_fa(200, 100, 20, scaled(opt, 1000, 50), "reference-scale", 300.0);
  run_fa(50, 25, 10, scaled(opt, 1000, 50), "desk-scale", 30.0);

  return {1, "zero false alarms (oracle detection, perfect CSI)", c.pass,
          c.detail.str(), 0.0};
}

// ---------------------------------------------------------------------------
// 2. Misdetection of the random-access attacker against the exhaustive
// enumeration over (slot bit, sequence guess) outcomes on the small instance.

CriterionResult criterion_misdetection_oracle(const AcceptanceOptions& opt) {
  Check c;

  // Enumeration oracle: every cyclic phase of the degree-3 m-sequence gives
  // one possible schedule window; enumerate every (position, shift guess)
  // outcome against it. Exactly one of the P shifts is in use per slot.
  const auto poly = MonicPolynomial::from_string("1101");
  const int P = 4;
  std::uint64_t pass_count = 0, outcome_count = 0;
  const Bits period = generate_bits(LfsrState{Bits{0, 0, 1}}, poly, 7);
  for (int phase = 0; phase < 7; ++phase) {
    for (int l = 0; l < 7; ++l) {
      const std::uint8_t bit = period[static_cast<std::size_t>((phase + l) % 7)];
      for (int g = 0; g < P; ++g) {
        ++outcome_count;
        if (bit == 1 && g == 0) ++pass_count;
      }
    }
  }
  const double p_enum =
      static_cast<double>(pass_count) / static_cast<double>(outcome_count);

  SimConfig cfg = base_config(opt);
  cfg.devices = 6;
  cfg.resources = 4;
  cfg.active = 2;
  cfg.slots = 70;
  cfg.schedule_len = 7;
  cfg.poly = "1101";
  cfg.candidates = P;
  cfg.sparsity = 0.0;
  cfg.trials = scaled(opt, 320, 40);
  cfg.snr_db = {kInf};
  cfg.adversaries = 1;
  cfg.strategy = "random";
  cfg.adversary_knowledge = "column";
  const auto res = run_campaign(cfg);
  const auto& p = res.points[0];

  const double n = static_cast<double>(p.md.opportunities);
  const double sigma = std::sqrt(p_enum * (1.0 - p_enum) / n);
  c.require(!opt.quick ? p.md.opportunities >= 10000 : p.md.opportunities > 0,
            "at least 1e4 authentications (" +
                std::to_string(p.md.opportunities) + ")");
  c.require(std::abs(p.md.conditional - p_enum) <= 3.0 * sigma,
            "empirical within 3 sigma of enumeration");
  c.detail << "enumeration " << p_enum << " (=" << pass_count << "/"
           << outcome_count << "), empirical " << p.md.conditional << " over "
           << p.md.opportunities << " auths, 3sigma " << 3.0 * sigma << ". ";

  return {2, "misdetection matches brute-force enumeration", c.pass,
          c.detail.str(), 0.0};
}

// ---------------------------------------------------------------------------
// 3. Trend check: proposed misdetection non-increasing in SNR; baseline
// false alarm strictly positive at every finite SNR while proposed stays 0.

CriterionResult criterion_snr_trends(const AcceptanceOptions& opt) {
  Check c;
  SimConfig cfg = base_config(opt);
  cfg.adversaries = 1;
  cfg.strategy = "random";
  cfg.adversary_knowledge = "column";
  cfg.baseline_enabled = true;
  cfg.trials = scaled(opt, 1000, 50);
  cfg.snr_db = {0, 5, 10, 15, 20, 25};
  const auto res = run_campaign(cfg);

  for (std::size_t i = 0; i < res.points.size(); ++i) {
    const auto& p = res.points[i];
    c.require(p.fa.events == 0, "proposed rho_fa stays 0 at snr " +
                                    std::to_string(p.snr_db));
    c.require(p.baseline_fa.events > 0,
              "baseline rho_fa > 0 at snr " + std::to_string(p.snr_db));
    if (i + 1 < res.points.size()) {
      const auto& q = res.points[i + 1];
      const double tol = 3.0 * std::max(p.md.ci95, q.md.ci95);
      c.require(q.md.conditional <= p.md.conditional + tol,
                "rho_md non-increasing between snr " +
                    std::to_string(p.snr_db) + " and " +
                    std::to_string(q.snr_db));
    }
    c.detail << "snr " << p.snr_db << ": md " << p.md.conditional
             << ", baseline fa " << p.baseline_fa.conditional << "; ";
  }
  return {3, "SNR trends: proposed vs baseline", c.pass, c.detail.str(), 0.0};
}

// ---------------------------------------------------------------------------
// 4. Collision rate strictly increases with S at both overloading factors,
// and the small instance matches the exhaustive birthday enumeration.

// Exact per-slot collision moments for m transmitters drawing uniformly from
// `a` alphabet values: enumerate all a^m assignments.
void birthday_moments(int m, int a, double& mean, double& second) {
  if (m <= 1) {
    mean = 0.0;
    second = 0.0;
    return;
  }
  std::vector<int> assign(static_cast<std::size_t>(m), 0);
  std::uint64_t total = 1;
  for (int i = 0; i < m; ++i) total *= static_cast<std::uint64_t>(a);
  double sum = 0.0, sum2 = 0.0;
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t x = code;
    for (int i = 0; i < m; ++i) {
      assign[static_cast<std::size_t>(i)] = static_cast<int>(x % a);
      x /= static_cast<std::uint64_t>(a);
    }
    int colliding = 0;
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        if (i != j &&
            assign[static_cast<std::size_t>(i)] ==
                assign[static_cast<std::size_t>(j)]) {
          ++colliding;
          break;
        }
      }
    }
    sum += colliding;
    sum2 += static_cast<double>(colliding) * colliding;
  }
  mean = sum / static_cast<double>(total);
  second = sum2 / static_cast<double>(total);
}

CriterionResult criterion_collision_trend(const AcceptanceOptions& opt) {
  Check c;

  for (int n_res : {133, 100}) {  // overloading 150% and 200%
    double last = -1.0;
    for (int s : {10, 20, 40, 80}) {
      SimConfig cfg = base_config(opt);
      cfg.resources = n_res;
      cfg.active = s;
      cfg.adversaries = 0;
      cfg.trials = scaled(opt, 300, 30);
      cfg.snr_db = {10};
      const auto res = run_campaign(cfg);
      const double sc = res.points[0].rho_sc;
      c.require(sc > last, "rho_sc strictly increases at OF " +
                               std::to_string(cfg.overloading_factor()) +
                               "% S=" + std::to_string(s));
      c.detail << "OF" << static_cast<int>(cfg.overloading_factor()) << " S"
               << s << ": " << sc << "; ";
      last = sc;
    }
  }

  // Small instance against the exhaustive enumeration. Transmitter counts
  // are Binomial(S, 4/7): actives are uniform, schedule bits at any window
  // position carry 4 ones across the 7 phases of the degree-3 m-sequence.
  {
    SimConfig cfg = base_config(opt);
    cfg.devices = 10;
    cfg.resources = 4;
    cfg.active = 4;
    cfg.alphabet = "quad4";
    cfg.sparsity = 0.0;
    cfg.adversaries = 0;
    cfg.trials = scaled(opt, 3000, 200);
    cfg.snr_db = {kInf};
    const auto res = run_campaign(cfg);
    const auto& p = res.points[0];

    const double q = 4.0 / 7.0;
    double means[5], second_moms[5];
    for (int m = 0; m <= 4; ++m)
      birthday_moments(m, 4, means[m], second_moms[m]);
    double e_x = 0.0, e_x2 = 0.0;
    for (int m = 0; m <= 4; ++m) {
      double comb = 1.0;
      for (int i = 0; i < m; ++i) comb *= static_cast<double>(4 - i) / (i + 1);
      const double w = comb * std::pow(q, m) * std::pow(1.0 - q, 4 - m);
      e_x += w * means[m];
      e_x2 += w * second_moms[m];
    }
    const double var_slot = e_x2 - e_x * e_x;

    const double slots = static_cast<double>(p.slot_instances);
    const double expect_total = slots * e_x;
    const double sigma_total = std::sqrt(slots * var_slot);
    const double observed = static_cast<double>(p.collision_events);
    c.require(std::abs(observed - expect_total) <= 3.0 * sigma_total,
              "small instance within 3 sigma of birthday enumeration");
    c.detail << "small instance: observed " << observed << ", enumerated "
             << expect_total << " +- " << 3.0 * sigma_total << ". ";
  }

  return {4, "collision rate vs S and birthday enumeration", c.pass,
          c.detail.str(), 0.0};
}

// ---------------------------------------------------------------------------
// 5. Misdetection non-increasing in the schedule length L.

CriterionResult criterion_schedule_length_trend(const AcceptanceOptions& opt) {
  Check c;
  double last = kInf;
  double last_ci = 0.0;
  for (int L : {8, 16, 32, 64}) {
    SimConfig cfg = base_config(opt);
    cfg.devices = 50;
    cfg.resources = 25;
    cfg.active = 10;
    cfg.schedule_len = L;
    cfg.slots = L;  // one full window per trial
    const int mu = static_cast<int>(std::log2(static_cast<double>(L)));
    cfg.poly = bits_to_string(default_polynomial(mu).coeffs);
    cfg.adversaries = 1;
    cfg.strategy = "random";
    cfg.adversary_knowledge = "column";
    cfg.trials = scaled(opt, 400, 40);
    cfg.snr_db = {10};
    const auto res = run_campaign(cfg);
    const auto& p = res.points[0];
    const double tol = 3.0 * std::max(last_ci, p.md.ci95);
    c.require(p.md.conditional <= last + tol,
              "rho_md non-increasing at L=" + std::to_string(L));
    c.detail << "L" << L << " (mu " << mu << "): md " << p.md.conditional
             << " (n=" << p.md.opportunities << "); ";
    last = p.md.conditional;
    last_ci = p.md.ci95;
  }
  return {5, "misdetection non-increasing in schedule length", c.pass,
          c.detail.str(), 0.0};
}

// ---------------------------------------------------------------------------
// 6. AP and device refresh agree on every randomized pool.

CriterionResult criterion_seed_agreement(const AcceptanceOptions& opt) {
  Check c;
  const auto poly = default_polynomial(13);
  const auto alpha = alphabet_by_name("default");
  RngStream rng(20240601);
  const int target = scaled(opt, 10000, 500);

  int agree = 0, total = 0, degenerate = 0;
  while (total < target) {
    const std::size_t len = 4 + rng.below(16);
    Pool values(len);
    for (auto& v : values) v = alpha[rng.below(alpha.size())];
    Bits tags(len);
    for (auto& t : tags) t = static_cast<std::uint8_t>(rng.below(2));

    const auto ap = tag_pool(values, AccessSchedule{tags, 1});
    const auto dev = tag_pool(values, AccessSchedule{tags, 1});
    bool ap_threw = false, dev_threw = false;
    RefreshResult ra, rb;
    try {
      ra = refresh_cycle(ap, poly, 24, SeedVariant::full, 13);
    } catch (const Error&) {
      ap_threw = true;
    }
    try {
      rb = refresh_cycle(dev, poly, 24, SeedVariant::full, 13);
    } catch (const Error&) {
      dev_threw = true;
    }
    if (ap_threw || dev_threw) {
      c.require(ap_threw == dev_threw, "degenerate pools fail on both sides");
      ++degenerate;
      continue;
    }
    ++total;
    if (ra.schedule.bits == rb.schedule.bits && ra.seed_bits == rb.seed_bits)
      ++agree;
  }
  c.require(agree == total, "schedules identical on every pool");
  c.detail << agree << "/" << total << " pools agree (" << degenerate
           << " degenerate draws handled symmetrically). ";
  return {6, "independent seed refresh agrees on both sides", c.pass,
          c.detail.str(), 0.0};
}

// ---------------------------------------------------------------------------
// 7. LFSR maximal-length properties by enumeration.

CriterionResult criterion_lfsr_properties(const AcceptanceOptions&) {
  Check c;

  const auto p3 = MonicPolynomial::from_string("1101");
  c.require(measure_period(p3) == 7, "degree-3 period is 7");
  const auto one_period = generate_bits(LfsrState{Bits{0, 0, 1}}, p3, 7);
  c.require(count_ones(one_period) == 4, "window has four 1s, three 0s");

  for (int mu = 2; mu <= 10; ++mu) {
    const auto p = default_polynomial(mu);
    const std::uint64_t full = (std::uint64_t{1} << mu) - 1;
    c.require(is_primitive(p).value_or(false),
              "degree " + std::to_string(mu) + " flagged primitive");
    c.require(measure_period(p) == full,
              "degree " + std::to_string(mu) + " period 2^mu-1");
    Bits start(static_cast<std::size_t>(mu), 0);
    start.back() = 1;
    const auto out = generate_bits(LfsrState{start}, p,
                                   static_cast<std::size_t>(full + mu));
    std::set<std::string> states;
    for (std::uint64_t t = 0; t < full; ++t) {
      std::string w;
      for (int i = 0; i < mu; ++i)
        w.push_back(out[static_cast<std::size_t>(t + i)] ? '1' : '0');
      states.insert(w);
    }
    c.require(states.size() == full,
              "degree " + std::to_string(mu) + " visits all nonzero states");
    c.require(
        count_ones(Bits(out.begin(), out.begin() + static_cast<long>(full))) ==
            (std::uint64_t{1} << (mu - 1)),
        "degree " + std::to_string(mu) + " ones outnumber zeros by one");
  }
  c.detail << "degrees 2..10 enumerated. ";
  return {7, "LFSR period, state coverage, balance", c.pass, c.detail.str(),
          0.0};
}

// ---------------------------------------------------------------------------
// 8. Numerical accuracy: least squares, Hadamard round trip, AR(1) lag-1.

CriterionResult criterion_numerics(const AcceptanceOptions& opt) {
  Check c;
  RngStream rng(555);

  double worst_ls = 0.0;
  for (int rep = 0; rep < 20; ++rep) {
    const int n = 64, k = 96, s = 16;
    Eigen::MatrixXcd G(n, k);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < k; ++j) G(i, j) = rng.cgauss(1.0);
    std::vector<int> support;
    while (support.size() < s) {
      const int cand = static_cast<int>(rng.below(k));
      bool dup = false;
      for (int v : support) dup = dup || v == cand;
      if (!dup) support.push_back(cand);
    }
    Eigen::VectorXcd x = Eigen::VectorXcd::Zero(k);
    for (int v : support) x(v) = rng.cgauss(1.0);
    const Eigen::VectorXcd y = G * x;
    const auto x_hat = ls_detect(y, G, support);
    worst_ls = std::max(worst_ls, (x_hat - x).norm());
  }
  c.require(worst_ls <= 1e-9, "noise-free LS recovery error <= 1e-9");
  c.detail << "LS worst error " << worst_ls << ". ";

  double worst_rel = 0.0;
  for (int rep = 0; rep < 10; ++rep) {
    const int n = 32, k = 24;
    Eigen::MatrixXcd H(n, k), C(n, k);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < k; ++j) {
        H(i, j) = rng.cgauss(1.0);
        C(i, j) = rng.cgauss(1.0);
      }
    const auto ex = extract_codebook(H.cwiseProduct(C), H);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < k; ++j)
        worst_rel = std::max(worst_rel, std::abs(ex.values(i, j) - C(i, j)) /
                                            std::abs(C(i, j)));
  }
  c.require(worst_rel <= 1e-12, "Hadamard round trip <= 1e-12 relative");
  c.detail << "extraction worst relative " << worst_rel << ". ";

  const int steps = scaled(opt, 100000, 5000);
  for (double zeta : {0.0, 0.5, 0.9, 1.0}) {
    Eigen::VectorXd d(1);
    d << 0.2;
    RngStream crng(777 + static_cast<std::uint64_t>(zeta * 10));
    auto st = init_channel(1, d, zeta, 1.0, crng);
    cdouble num{0, 0};
    double d0 = 0, d1 = 0;
    cdouble prev = st.H(0, 0);
    for (int t = 0; t < steps; ++t) {
      evolve_channel(st, crng);
      const cdouble cur = st.H(0, 0);
      num += std::conj(prev) * cur;
      d0 += std::norm(prev);
      d1 += std::norm(cur);
      prev = cur;
    }
    const double rho = num.real() / std::sqrt(d0 * d1);
    c.require(std::abs(rho - zeta) <= 0.02,
              "lag-1 autocorrelation within 0.02 at zeta " +
                  std::to_string(zeta));
    c.detail << "zeta " << zeta << ": " << rho << "; ";
  }

  return {8, "numerics: LS, extraction, AR(1) correlation", c.pass,
          c.detail.str(), 0.0};
}

// ---------------------------------------------------------------------------
// 9. Key-space table and entropy values.

CriterionResult criterion_key_space(const AcceptanceOptions&) {
  Check c;
  const std::pair<int, std::pair<std::uint64_t, std::uint64_t>> rows[] = {
      {9, {512, 8192}},     {11, {2048, 32768}},   {13, {8192, 131072}},
      {15, {32768, 524288}}, {17, {131072, 2097152}},
  };
  for (const auto& [r, expect] : rows) {
    c.require(key_space(r, KeyScheme::physical).value == expect.first,
              "physical key space at R=" + std::to_string(r));
    c.require(key_space(r, KeyScheme::proposed).value == expect.second,
              "proposed key space at R=" + std::to_string(r));
  }
  c.require(entropy_bits({0.5}) == 1.0, "entropy of an unbiased bit is 1");
  c.require(std::abs(entropy_bits({0.25}) - 0.811278) <= 1e-6,
            "entropy at 0.25 within 1e-6");
  c.detail << "five table rows exact; entropy(0.5)=1, entropy(0.25)="
           << entropy_bits({0.25}) << ". ";
  return {9, "key-space table and entropy values", c.pass, c.detail.str(),
          0.0};
}

// ---------------------------------------------------------------------------
// 10. Constant per-authentication cost vs a baseline that pays per window.

CriterionResult criterion_lightweight(const AcceptanceOptions& opt) {
  Check c;

  auto proposed_cost = [&](int trials) {
    SimConfig cfg = base_config(opt);
    cfg.devices = 8;
    cfg.resources = 6;
    cfg.active = 4;
    cfg.slots = 7;
    cfg.adversaries = 0;
    cfg.trials = trials;
    cfg.snr_db = {kInf};
    const auto res = run_campaign(cfg);
    return res.points[0].cost;
  };
  const CostCounters small = proposed_cost(2);
  const CostCounters large = proposed_cost(80);
  c.require(small.auth_events >= 10, "small campaign has >= 10 auths");
  c.require(large.auth_events >= 1000, "large campaign has >= 1000 auths");
  // exact rational equality of the per-authentication cost
  c.require(small.proposed_total() * large.auth_events ==
                large.proposed_total() * small.auth_events,
            "per-authentication comparisons identical (exact)");
  c.detail << "proposed per-auth " << cost_report(small).proposed_per_auth
           << " at " << small.auth_events << " auths vs "
           << cost_report(large).proposed_per_auth << " at "
           << large.auth_events << " auths. ";

  auto baseline_cost = [&](int windows) {
    SimConfig cfg = base_config(opt);
    cfg.devices = 8;
    cfg.resources = 6;
    cfg.active = 4;
    cfg.schedule_len = 7;
    cfg.slots = 7 * windows;
    cfg.adversaries = 0;
    cfg.baseline_enabled = true;
    cfg.trials = 20;
    cfg.snr_db = {10};
    const auto res = run_campaign(cfg);
    return res.points[0].cost.baseline_total();
  };
  const std::uint64_t one = baseline_cost(1);
  const std::uint64_t four = baseline_cost(4);
  c.require(four >= 3 * one,
            "baseline cost grows at least linearly with windows");
  c.detail << "baseline total " << one << " (1 window) vs " << four
           << " (4 windows). ";

  return {10, "constant-cost authentication vs recalibrating baseline",
          c.pass, c.detail.str(), 0.0};
}

// ---------------------------------------------------------------------------
// 11. Byte-identical output across worker counts.

CriterionResult criterion_reproducibility(const AcceptanceOptions& opt) {
  Check c;
  SimConfig cfg;
  cfg.devices = 40;
  cfg.resources = 20;
  cfg.active = 8;
  cfg.trials = scaled(opt, 100, 20);
  cfg.snr_db = {0, 25};
  cfg.adversaries = 1;
  cfg.baseline_enabled = true;

  auto csv_with_workers = [&](int workers) {
    SimConfig c2 = cfg;
    c2.workers = workers;
    ResultSet set;
    set.campaigns.push_back(run_campaign(c2));
    return to_csv(set);
  };
  const std::string w1 = csv_with_workers(1);
  const std::string w8 = csv_with_workers(8);
  c.require(w1 == w8, "1-worker and 8-worker CSV bytes identical");
  c.require(w1 == csv_with_workers(1), "repeat run identical");
  c.detail << "csv " << w1.size() << " bytes, stable across 1/8 workers. ";
  return {11, "byte-identical reproducibility across workers", c.pass,
          c.detail.str(), 0.0};
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options,
                                            const CriterionCallback& on_done) {
  using Fn = CriterionResult (*)(const AcceptanceOptions&);
  const Fn criteria[] = {
      criterion_zero_false_alarms, criterion_misdetection_oracle,
      criterion_snr_trends,        criterion_collision_trend,
      criterion_schedule_length_trend, criterion_seed_agreement,
      criterion_lfsr_properties,   criterion_numerics,
      criterion_key_space,         criterion_lightweight,
      criterion_reproducibility,
  };
  std::vector<CriterionResult> results;
  for (const auto& fn : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    CriterionResult r = fn(options);
    r.seconds = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
    if (on_done) on_done(r);
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace nomauth
