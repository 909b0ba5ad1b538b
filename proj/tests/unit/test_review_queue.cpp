#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "fixtures.hpp"

using namespace idiomcraft;
using fixtures::at;
using fixtures::Game;
using fixtures::kDay;

namespace {

std::string sentence(int i) { return "Story " + std::to_string(i) + " about how they pulled my leg."; }

// Minimal review count, oldest first, over eligible submissions.
std::optional<std::uint64_t> next_brute(const GameState& s, const std::string& reviewer, const std::string& date) {
  std::optional<std::uint64_t> best;
  int best_count = 0;
  for (const auto& sub : s.submissions) {
    if (sub.date != date || sub.author == reviewer || is_excluded(sub.status)) continue;
    const bool seen = std::any_of(s.reviews.begin(), s.reviews.end(), [&](const Review& r) {
      return r.reviewer == reviewer && r.submission_id == sub.id;
    });
    if (seen) continue;
    int count = 0;
    for (const auto& r : s.reviews) {
      if (r.submission_id == sub.id && r.verdict != Verdict::Report && !s.is_banned(r.reviewer)) ++count;
    }
    if (!best || count < best_count) {
      best = sub.id;
      best_count = count;
    }
  }
  return best;
}

}  // namespace

TEST_CASE("fewest reviews first, oldest on ties") {
  Game g;
  g.players(5);
  g.open(fixtures::kPullLeg);
  for (int i = 1; i <= 3; ++i) g.commit("p1", sentence(i), true, at(kDay, 12, i));
  g.engine.record_review("p2", 2, Verdict::Like, at(kDay, 12, 10));
  g.engine.record_review("p3", 2, Verdict::Dislike, at(kDay, 12, 11));
  const auto s = g.engine.next_for("p4", kDay);
  REQUIRE(s);
  CHECK(s->id == 1u);
}

TEST_CASE("no eligible submission") {
  Game g;
  g.players(2);
  g.open(fixtures::kPullLeg);
  g.commit("p1", sentence(1), true, at(kDay, 12, 0));
  CHECK_FALSE(g.engine.next_for("p1", kDay));
  g.engine.record_review("p2", 1, Verdict::Like, at(kDay, 12, 1));
  CHECK_FALSE(g.engine.next_for("p2", kDay));
  CHECK_FALSE(g.engine.next_for("p2", "2020-10-29"));
}

TEST_CASE("reported submissions stay in the queue") {
  Game g;
  g.players(3);
  g.open(fixtures::kPullLeg);
  g.commit("p1", sentence(1), true, at(kDay, 12, 0));
  g.engine.record_review("p2", 1, Verdict::Report, at(kDay, 12, 1));
  const auto s = g.engine.next_for("p3", kDay);
  REQUIRE(s);
  CHECK(s->status == SubmissionStatus::Flagged);
}

TEST_CASE("next_for matches the brute-force choice on random days") {
  std::mt19937 rng(17);
  for (int run = 0; run < 20; ++run) {
    Game g;
    g.players(6);
    g.open(fixtures::kPullLeg);
    int n = 0;
    for (int step = 0; step < 60; ++step) {
      const auto player = "p" + std::to_string(1 + rng() % 6);
      const auto t = at(kDay, 12, 0) + step * 30;
      if (g.engine.player(player)->banned) {
      } else if (rng() % 3 == 0) {
        g.commit(player, sentence(++n), rng() % 2 == 0, t);
      } else if (auto s = g.engine.next_for(player, kDay)) {
        const Verdict v = rng() % 10 == 0 ? Verdict::Report : (rng() % 2 ? Verdict::Like : Verdict::Dislike);
        g.engine.record_review(player, s->id, v, t);
      }
      if (step == 40 && run % 4 == 0) g.engine.ban("mod", "p6", "", t);
      const auto state = g.engine.snapshot();
      for (int p = 1; p <= 6; ++p) {
        const auto id = "p" + std::to_string(p);
        if (state.is_banned(id)) continue;
        const auto got = g.engine.next_for(id, kDay);
        const auto want = next_brute(state, id, kDay);
        REQUIRE(got.has_value() == want.has_value());
        if (got) CHECK(got->id == *want);
      }
    }
  }
}

TEST_CASE("exhausting every queue leaves review counts within one") {
  Game g;
  g.players(10);
  g.open(fixtures::kPullLeg);
  for (int i = 0; i < 23; ++i) g.commit("p" + std::to_string(1 + i % 3), sentence(i), true, at(kDay, 12, i));
  // reviewers take turns one review at a time until nobody has anything left
  for (bool progress = true; progress;) {
    progress = false;
    for (int p = 4; p <= 10; ++p) {
      const auto id = "p" + std::to_string(p);
      if (auto s = g.engine.next_for(id, kDay)) {
        g.engine.record_review(id, s->id, Verdict::Like, at(kDay, 13, 0));
        progress = true;
      }
    }
  }
  const auto state = g.engine.snapshot();
  int lo = 1 << 30, hi = 0;
  for (const auto& s : state.submissions) {
    lo = std::min(lo, s.review_count());
    hi = std::max(hi, s.review_count());
  }
  CHECK(hi - lo <= 1);
  CHECK(state.reviews.size() == 7u * 23u);
}
