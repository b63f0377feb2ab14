#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bellsim/errors.hpp"
#include "bellsim/lhv.hpp"
#include "bellsim/sampler.hpp"
#include "test_support.hpp"

using namespace bellsim;

namespace {

JointOutcomeTable paper_table() {
  return joint_outcome_table(
      singlet(), build_epr_povm(Direction(1, 0, 0), Direction(0, 0, 1)),
      build_epr_povm(Direction(-1, 0, 1), Direction(1, 0, 1)), "singlet");
}

bool same_trials(const std::vector<TrialRecord>& a,
                 const std::vector<TrialRecord>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].index != b[i].index || !(a[i].left == b[i].left) ||
        !(a[i].right == b[i].right) ||
        a[i].left_detected != b[i].left_detected ||
        a[i].right_detected != b[i].right_detected)
      return false;
  }
  return true;
}

}  // namespace

TEST_CASE("trial stream determinism") {
  const JointOutcomeTable t = paper_table();

  SUBCASE("same seed, same stream") {
    CHECK(same_trials(sample_trials(t, 500, 7), sample_trials(t, 500, 7)));
  }
  SUBCASE("different seeds diverge") {
    CHECK_FALSE(same_trials(sample_trials(t, 500, 7), sample_trials(t, 500, 8)));
  }
  SUBCASE("worker count does not enter the stream") {
    const auto once = sample_trials(t, 1000, 99, 1);
    CHECK(same_trials(once, sample_trials(t, 1000, 99, 3)));
    CHECK(same_trials(once, sample_trials(t, 1000, 99, 8)));
  }
  SUBCASE("prefix property: a longer run extends a shorter one") {
    const auto long_run = sample_trials(t, 300, 5);
    const auto short_run = sample_trials(t, 200, 5);
    for (int i = 0; i < 200; ++i) {
      CHECK(long_run[i].left == short_run[i].left);
      CHECK(long_run[i].right == short_run[i].right);
    }
  }
  SUBCASE("first_index selects the same stream positions") {
    const auto whole = sample_trials(t, 400, 5);
    const auto tail = sample_trials(t, 150, 5, 1, 250);
    for (int i = 0; i < 150; ++i) {
      CHECK(tail[i].index == whole[250 + i].index);
      CHECK(tail[i].left == whole[250 + i].left);
      CHECK(tail[i].right == whole[250 + i].right);
    }
  }
}

TEST_CASE("trial count guard") {
  CHECK_THROWS_AS(sample_trials(paper_table(), 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(sample_trials(paper_table(), 10, 1, 0), std::invalid_argument);
}

TEST_CASE("empirical cell frequencies follow the table") {
  const JointOutcomeTable t = paper_table();
  const std::uint64_t n = 200000;
  const auto trials = sample_trials(t, n, 4242, 4);

  std::array<double, 16> freq{};
  for (const auto& tr : trials) {
    const int i = t.left().index_of(tr.left);
    const int j = t.right().index_of(tr.right);
    freq[i * 4 + j] += 1.0 / static_cast<double>(n);
  }
  // every cell within ~5 sigma of its Born probability at this n
  for (int k = 0; k < 16; ++k)
    CHECK(std::abs(freq[k] - t.probability(k / 4, k % 4)) < 0.004);
}

TEST_CASE("detection thinning") {
  const JointOutcomeTable t = paper_table();
  auto trials = sample_trials(t, 100000, 64);

  SUBCASE("eta 1 keeps everything, eta 0 drops everything") {
    for (const auto& tr : apply_detection(trials, 1.0, 1.0, 64)) {
      CHECK(tr.coincident());
    }
    for (const auto& tr : apply_detection(trials, 0.0, 0.0, 64)) {
      CHECK_FALSE(tr.left_detected);
      CHECK_FALSE(tr.right_detected);
    }
  }

  SUBCASE("marginal rates match the efficiencies") {
    const auto thinned = apply_detection(trials, 0.7, 0.9, 64);
    double left = 0, right = 0;
    for (const auto& tr : thinned) {
      left += tr.left_detected;
      right += tr.right_detected;
    }
    CHECK(std::abs(left / 100000 - 0.7) < 0.01);
    CHECK(std::abs(right / 100000 - 0.9) < 0.01);
  }

  SUBCASE("outcomes are untouched") {
    const auto thinned = apply_detection(trials, 0.5, 0.5, 64);
    for (std::size_t i = 0; i < trials.size(); ++i) {
      CHECK(thinned[i].left == trials[i].left);
      CHECK(thinned[i].right == trials[i].right);
    }
  }

  SUBCASE("efficiency range is enforced") {
    CHECK_THROWS_AS(apply_detection(trials, 1.2, 1.0, 64), std::invalid_argument);
    CHECK_THROWS_AS(apply_detection(trials, 0.5, -0.1, 64), std::invalid_argument);
  }
}

TEST_CASE("estimator on a hand-built sample") {
  // blocks: FF 4 trials c=1/2, FS 2 trials c=-1, SF 1 trial c=1, SS 1 trial c=-1
  auto rec = [](std::uint64_t i, Setting ls, int lv, Setting rs, int rv) {
    return TrialRecord{i, {ls, lv}, {rs, rv}, true, true};
  };
  std::vector<TrialRecord> trials{
      rec(0, Setting::First, +1, Setting::First, +1),
      rec(1, Setting::First, +1, Setting::First, +1),
      rec(2, Setting::First, +1, Setting::First, +1),
      rec(3, Setting::First, +1, Setting::First, -1),
      rec(4, Setting::First, -1, Setting::Second, +1),
      rec(5, Setting::First, +1, Setting::Second, -1),
      rec(6, Setting::Second, +1, Setting::First, +1),
      rec(7, Setting::Second, -1, Setting::Second, +1),
  };
  // one lost trial per side must not enter any block
  trials.push_back(TrialRecord{8, {Setting::First, +1}, {Setting::First, +1},
                               false, true});
  trials.push_back(TrialRecord{9, {Setting::First, +1}, {Setting::First, +1},
                               true, false});

  const ChshEstimate est = estimate_chsh(trials, 77);
  CHECK(est.total_trials == 10);
  CHECK(est.coincidences == 8);
  CHECK(est.seed == 77);
  CHECK(est.block_counts == std::array<std::uint64_t, 4>{4, 2, 1, 1});
  CHECK(est.correlators[0] == doctest::Approx(0.5));
  CHECK(est.correlators[1] == doctest::Approx(-1.0));
  CHECK(est.correlators[2] == doctest::Approx(1.0));
  CHECK(est.correlators[3] == doctest::Approx(-1.0));
  // |1/2 - (-1) - 1 - (-1)| = 3/2
  CHECK(est.estimate == doctest::Approx(1.5));
  // only the FF block carries variance: sqrt((1 - 1/4)/4)
  CHECK(est.stderrs[0] == doctest::Approx(std::sqrt(0.75 / 4.0)));
  CHECK(est.estimate_stderr == doctest::Approx(std::sqrt(0.75 / 4.0)));
}

TEST_CASE("estimator needs every block populated") {
  std::vector<TrialRecord> trials{
      TrialRecord{0, {Setting::First, +1}, {Setting::First, +1}, true, true}};
  CHECK_THROWS_AS(estimate_chsh(trials), ValidationError);
}

TEST_CASE("weighted fold reproduces the exact CHSH value") {
  const JointOutcomeTable t = paper_table();
  const WeightedChsh w = chsh_from_weights(t);
  const ChshResult exact = chsh_value(singlet(), Direction(1, 0, 0),
                                      Direction(0, 0, 1), Direction(-1, 0, 1),
                                      Direction(1, 0, 1));
  CHECK(std::abs(w.value - exact.value) < 1e-12);
  for (int b = 0; b < 4; ++b) {
    CHECK(std::abs(w.correlators[b] - exact.correlators[b]) < 1e-12);
    CHECK(std::abs(w.block_weights[b] - 0.25) < 1e-12);
  }
}

TEST_CASE("sampled estimate converges to the exact value") {
  const auto trials = sample_trials(paper_table(), 100000, 12345, 4);
  const ChshEstimate est = estimate_chsh(trials, 12345);
  // 2*sqrt(2) to within 5 sigma at n = 1e5 (sigma ~ 0.009)
  CHECK(std::abs(est.estimate - 2.8284271247461903) < 0.045);
  CHECK(est.estimate_stderr < 0.01);
}

TEST_CASE("estimate is invariant under trial reordering") {
  auto trials = sample_trials(paper_table(), 20000, 31, 1);
  const ChshEstimate forward = estimate_chsh(trials, 31);
  std::reverse(trials.begin(), trials.end());
  const ChshEstimate backward = estimate_chsh(trials, 31);
  CHECK(forward.estimate == backward.estimate);
  CHECK(forward.correlators == backward.correlators);
}

TEST_CASE("CSV output") {
  std::vector<TrialRecord> trials{
      TrialRecord{0, {Setting::First, +1}, {Setting::Second, -1}, true, true},
      TrialRecord{1, {Setting::Second, -1}, {Setting::First, +1}, false, true},
  };

  SUBCASE("golden bytes with provenance header") {
    std::ostringstream out;
    write_trials_csv(out, trials, {42, "fnv1a:00ff00ff00ff00ff"});
    CHECK(out.str() ==
          "# bellsim-trials/1 seed=42 config=fnv1a:00ff00ff00ff00ff\n"
          "trial,left_setting,left_value,right_setting,right_value,left_det,"
          "right_det\n"
          "0,first,1,second,-1,1,1\n"
          "1,second,-1,first,1,0,1\n");
  }

  SUBCASE("hash omitted when unknown") {
    std::ostringstream out;
    write_trials_csv(out, trials, {7, ""});
    CHECK(out.str().substr(0, out.str().find('\n')) ==
          "# bellsim-trials/1 seed=7");
  }
}
