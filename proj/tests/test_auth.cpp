#include <doctest.h>

#include "nomauth/auth.hpp"
#include "nomauth/codebook.hpp"
#include "nomauth/errors.hpp"
#include "nomauth/rng.hpp"

using namespace nomauth;

namespace {

struct Fixture {
  Eigen::VectorXcd expected;
  Eigen::VectorXcd extracted;
  Eigen::Matrix<std::uint8_t, Eigen::Dynamic, 1> erased;
  CostCounters cost;

  explicit Fixture(int n = 6) {
    RngStream rng(4242);
    expected.resize(n);
    for (int i = 0; i < n; ++i) expected(i) = rng.cgauss(1.0);
    extracted = expected;
    erased = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, 1>::Zero(n);
  }
};

}  // namespace

TEST_CASE("two-step transmission check") {
  SUBCASE("correct slot and sequence pass") {
    Fixture f;
    const auto out = check_transmission(f.extracted, f.erased, f.expected, 1,
                                        kSequenceTol, f.cost);
    CHECK(out.pass);
    CHECK(out.reason == AuthReason::Pass);
    CHECK(f.cost.bit_comparisons == 1);
    CHECK(f.cost.entry_comparisons == 6);
    CHECK(f.cost.auth_events == 1);
  }
  SUBCASE("transmission in an unscheduled slot short-circuits") {
    Fixture f;
    const auto out = check_transmission(f.extracted, f.erased, f.expected, 0,
                                        kSequenceTol, f.cost);
    CHECK_FALSE(out.pass);
    CHECK(out.reason == AuthReason::SlotMismatch);
    CHECK(f.cost.entry_comparisons == 0);  // sequence never compared
  }
  SUBCASE("wrong sequence in a scheduled slot") {
    Fixture f;
    f.extracted(3) += cdouble{0.5, 0.0};
    const auto out = check_transmission(f.extracted, f.erased, f.expected, 1,
                                        kSequenceTol, f.cost);
    CHECK_FALSE(out.pass);
    CHECK(out.reason == AuthReason::SequenceMismatch);
  }
  SUBCASE("erased entries carry no evidence") {
    Fixture f;
    f.extracted(2) = cdouble{99.0, 99.0};
    f.erased(2) = 1;
    const auto out = check_transmission(f.extracted, f.erased, f.expected, 1,
                                        kSequenceTol, f.cost);
    CHECK(out.pass);
    CHECK(f.cost.entry_comparisons == 5);
  }
  SUBCASE("a mostly-erased column fails conservatively") {
    Fixture f;
    for (int i = 0; i < 4; ++i) f.erased(i) = 1;
    const auto out = check_transmission(f.extracted, f.erased, f.expected, 1,
                                        kSequenceTol, f.cost);
    CHECK_FALSE(out.pass);
    CHECK(out.reason == AuthReason::SequenceMismatch);
  }
}

TEST_CASE("slot-level verdict column") {
  const int K = 4, N = 5;
  RngStream rng(11);
  Eigen::MatrixXcd truth(N, K);
  for (int n = 0; n < N; ++n)
    for (int k = 0; k < K; ++k) truth(n, k) = rng.cgauss(1.0);

  Extracted ex;
  ex.values = truth;
  ex.erased.setZero(N, K);

  std::vector<AccessSchedule> schedules;
  for (int k = 0; k < K; ++k)
    schedules.push_back(AccessSchedule{parse_bits("1011"), k});
  schedules[2].bits = parse_bits("0011");  // device 2 not scheduled at l=0

  const ExpectedSeqFn expected = [&](int k) {
    return Eigen::VectorXcd(truth.col(k));
  };
  std::vector<bool> evidence{true, false, true, true};
  CostCounters cost;

  const auto out =
      authenticate_slot(ex, schedules, expected, evidence, 0, kSequenceTol,
                        cost);
  CHECK(out[0].pass);
  CHECK(out[1].reason == AuthReason::NotChecked);
  CHECK_FALSE(out[1].pass);
  CHECK(out[2].reason == AuthReason::SlotMismatch);
  CHECK(out[3].pass);

  SUBCASE("window exhaustion is the caller's bug") {
    CHECK_THROWS_AS(authenticate_slot(ex, schedules, expected, evidence, 4,
                                      kSequenceTol, cost),
                    WindowExhausted);
  }
  SUBCASE("per-device inputs must agree in K") {
    std::vector<bool> bad{true, false};
    CHECK_THROWS_AS(authenticate_slot(ex, schedules, expected, bad, 0,
                                      kSequenceTol, cost),
                    DimensionMismatch);
  }
}

TEST_CASE("gamma gating of recovered data") {
  RngStream rng(5);
  Eigen::VectorXcd x(4);
  for (int i = 0; i < 4; ++i) x(i) = rng.cgauss(1.0);

  using Col = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, 1>;
  SUBCASE("all ones is the identity gate") {
    CHECK(gate_data(x, Col::Ones(4)) == x);
  }
  SUBCASE("all zeros blanks everything") {
    CHECK(gate_data(x, Col::Zero(4)).norm() == 0.0);
  }
  SUBCASE("mixed gamma keeps exactly the passing indices") {
    Col g(4);
    g << 1, 0, 0, 1;
    const auto gated = gate_data(x, g);
    // elementwise oracle
    for (int i = 0; i < 4; ++i)
      CHECK(gated(i) == (g(i) ? x(i) : cdouble{0.0, 0.0}));
  }
  SUBCASE("length mismatch") {
    CHECK_THROWS_AS(gate_data(x, Col::Ones(3)), DimensionMismatch);
  }
}

TEST_CASE("indicator bookkeeping ties gamma to reasons") {
  AuthIndicator ind(3, 2);
  ind.gamma(1, 0) = 1;
  ind.reason(1, 0) = AuthReason::Pass;
  ind.reason(0, 0) = AuthReason::SlotMismatch;
  for (int k = 0; k < 3; ++k)
    for (int j = 0; j < 2; ++j)
      CHECK((ind.gamma(k, j) == 1) == (ind.reason(k, j) == AuthReason::Pass));
}
