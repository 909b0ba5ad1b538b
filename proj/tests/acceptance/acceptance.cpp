// Prints one PASS/FAIL line per acceptance criterion; exits nonzero on any FAIL.
//   acceptance [--cli <path to idiomcraft>]
#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "fixtures.hpp"
#include "idiomcraft/analytics.hpp"
#include "idiomcraft/corpus.hpp"
#include "idiomcraft/l10n.hpp"
#include "idiomcraft/sim.hpp"
#include "oracles.hpp"

using namespace idiomcraft;
using fixtures::at;
using fixtures::kDay;

namespace {

namespace fs = std::filesystem;

std::string cli_path;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects failed expectations; the first few end up in the report line.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    if (failures_++ < 3) detail_ += (detail_.empty() ? "" : "; ") + what;
  }
  void note(const std::string& s) { notes_ += (notes_.empty() ? "" : ", ") + s; }
  Outcome done() const {
    if (failures_) return {false, detail_ + (failures_ > 3 ? " (+" + std::to_string(failures_ - 3) + " more)" : "")};
    return {true, notes_};
  }

 private:
  int failures_ = 0;
  std::string detail_;
  std::string notes_;
};

sim::SimConfig sim_config() {
  sim::SimConfig c;
  c.data_dir = fixtures::data_dir();
  return c;
}

Outcome classification() {
  Check c;
  const auto started = std::chrono::steady_clock::now();
  const auto dict = fixtures::dictionary();
  const auto pattern = parse_idiom_line(fixtures::kHoldTongue, "en");
  const struct {
    const char* text;
    bool idiomatic;
    SampleType want;
  } golden[] = {
      {"Please hold your tongue and wait.", true, SampleType::A},
      {"Please hold your breath and tongue and wait…", true, SampleType::B},
      {"Use sterile tongue depressor to hold patient's tongue down.", false, SampleType::C},
      {"Hold on to your mother tongue.", false, SampleType::D},
  };
  for (const auto& g : golden) {
    const auto tokens = tokenize(g.text);
    const auto m = locate(tokens, lemmatize(tokens, dict), pattern);
    c.expect(m && classify(*m, g.idiomatic) == g.want, std::string("golden '") + g.text + "'");
  }
  std::mt19937_64 rng(20201028);
  int matched = 0;
  for (int i = 0; i < 200; ++i) {
    const auto inst = oracles::random_instance(rng);
    const auto want = oracles::locate_brute(inst.tokens, inst.lemmas, inst.pattern);
    c.expect(locate(inst.tokens, inst.lemmas, inst.pattern) == want, "oracle instance " + std::to_string(i));
    matched += want ? 1 : 0;
  }
  const auto ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started).count();
  c.expect(ms < 5000, "runtime " + std::to_string(ms) + " ms");
  c.note("4 golden, 200 oracle instances (" + std::to_string(matched) + " with a match), " + std::to_string(ms) + " ms");
  return c.done();
}

Outcome scoring_table() {
  Check c;
  c.expect(effective_scores(BalanceState::Neutral) == TypeScores{10, 12, 10, 10}, "Neutral scores");
  c.expect(effective_scores(BalanceState::BoostNonidiomatic) == TypeScores{10, 12, 15, 15}, "BoostNonidiomatic scores");
  c.expect(effective_scores(BalanceState::BoostIdiomatic) == TypeScores{15, 17, 10, 10}, "BoostIdiomatic scores");

  const auto reference = [](std::int64_t a, std::int64_t cc, BalanceState s) {
    const auto gap = a - cc;
    if (s != BalanceState::Neutral && gap > -5 && gap < 5) return BalanceState::Neutral;
    if (gap >= 15 && s != BalanceState::BoostNonidiomatic) return BalanceState::BoostNonidiomatic;
    if (gap <= -15 && s != BalanceState::BoostIdiomatic) return BalanceState::BoostIdiomatic;
    return s;
  };
  int cases = 0;
  for (std::int64_t a = 0; a <= 30; ++a) {
    for (std::int64_t cc = 0; cc <= 30; ++cc) {
      for (auto s : {BalanceState::Neutral, BalanceState::BoostNonidiomatic, BalanceState::BoostIdiomatic}) {
        TypeCounts t;
        t[SampleType::A] = a;
        t[SampleType::C] = cc;
        ++cases;
        c.expect(update_balance(t, s) == reference(a, cc, s),
                 "A=" + std::to_string(a) + " C=" + std::to_string(cc) + " from " + std::string(to_string(s)));
      }
    }
  }
  // crafted stream: A pulls ahead, C catches up and overtakes, A recovers
  TypeCounts t;
  auto s = BalanceState::Neutral;
  int steps = 0;
  const auto step = [&](SampleType type, int times, BalanceState want_at_end, std::int64_t switch_gap,
                        BalanceState before_switch) {
    for (int i = 0; i < times; ++i) {
      ++t[type];
      s = update_balance(t, s);
      ++steps;
      const auto gap = t[SampleType::A] - t[SampleType::C];
      const bool switched = type == SampleType::A ? gap >= switch_gap : gap <= switch_gap;
      c.expect(s == (switched ? want_at_end : before_switch), "stream step " + std::to_string(steps) + " gap " +
                                                               std::to_string(gap));
    }
  };
  step(SampleType::A, 15, BalanceState::BoostNonidiomatic, 15, BalanceState::Neutral);     // gap 1..15
  step(SampleType::C, 12, BalanceState::Neutral, 4, BalanceState::BoostNonidiomatic);      // gap 14..3
  step(SampleType::C, 18, BalanceState::BoostIdiomatic, -15, BalanceState::Neutral);       // gap 2..-15
  step(SampleType::A, 11, BalanceState::Neutral, -4, BalanceState::BoostIdiomatic);        // gap -14..-4
  c.note(std::to_string(cases) + " controller cases, " + std::to_string(steps) + "-step stream");
  return c.done();
}

Outcome happy_hour() {
  Check c;
  fixtures::Game g;
  g.players(7);
  g.open(fixtures::kPullLeg);
  g.commit("p1", "They pulled my leg.", true, at(kDay, 12, 0));
  g.engine.start_happy_hour("mod", at(kDay, 17, 0));
  const struct {
    const char* who;
    Timestamp when;
    Points want;
  } cases[] = {
      {"p2", at(kDay, 16, 59, 59), 1}, {"p3", at(kDay, 17, 0), 2},  {"p4", at(kDay, 17, 30), 2},
      {"p5", at(kDay, 17, 59, 59), 2}, {"p6", at(kDay, 18, 0), 1}, {"p7", at(kDay, 18, 1), 1},
  };
  for (const auto& k : cases) {
    const auto out = g.engine.record_review(k.who, 1, idiomcraft::Verdict::Like, k.when);
    c.expect(out.reviewer_points == k.want, clock::format_timestamp(k.when) + " gave " +
                                                 std::to_string(out.reviewer_points) + " points");
  }
  c.note("17:00-18:00 window, 6 boundary reviews");
  return c.done();
}

Outcome fairness() {
  Check c;
  auto cfg = sim_config();
  cfg.players = 20;
  cfg.submissions_per_day = 100;
  cfg.policy = "review_heavy";
  cfg.seed = 4;
  const auto run = sim::run_sim(cfg);
  const auto& s = run.state;
  int lo = 1 << 30, hi = -1, eligible = 0;
  for (const auto& sub : s.submissions) {
    if (is_excluded(sub.status)) continue;
    ++eligible;
    lo = std::min(lo, sub.review_count());
    hi = std::max(hi, sub.review_count());
  }
  c.expect(eligible == 100, "eligible submissions " + std::to_string(eligible));
  c.expect(hi - lo <= 1, "review counts span " + std::to_string(lo) + ".." + std::to_string(hi));
  std::set<std::pair<std::string, std::uint64_t>> seen;
  int self = 0, dup = 0, reviews = 0;
  for (const auto& e : run.events) {
    if (e.kind != "RecordReview") continue;
    ++reviews;
    const auto reviewer = e.payload.at("reviewer").get<std::string>();
    const auto id = e.payload.at("submission_id").get<std::uint64_t>();
    if (s.find_submission(id)->author == reviewer) ++self;
    if (!seen.insert({reviewer, id}).second) ++dup;
  }
  c.expect(self == 0, std::to_string(self) + " self reviews");
  c.expect(dup == 0, std::to_string(dup) + " duplicate reviews");
  c.note("100 submissions, " + std::to_string(reviews) + " logged reviews, counts " + std::to_string(lo) + ".." +
         std::to_string(hi));
  return c.done();
}

Outcome replay_determinism() {
  Check c;
  auto cfg = sim_config();
  cfg.players = 12;
  cfg.idle_players = 3;
  cfg.days = 10;
  cfg.policy = "mixed";
  cfg.submissions_per_day = 60;
  cfg.seed = 10;
  const auto run = sim::run_sim(cfg);
  const auto dict = fixtures::dictionary(cfg.language);
  GameConfig game = cfg.game;
  game.language = cfg.language;
  for (const auto& day : run.report.days) {
    // the log up to and including this day's close
    MemoryEventLog log;
    for (const auto& r : run.events) {
      if (clock::format_date(clock::date_of(r.timestamp)) > day.date) break;
      log.append(r);
    }
    Engine replayed(game, dict, log, sim::make_policy(cfg.regime, game.scoring, cfg.decay));
    replayed.replay_log();
    const auto state = replayed.snapshot();
    c.expect(sim::day_fingerprint(state, day.date) == day.fingerprint, "fingerprint of " + day.date);
    const auto& live_day = run.state.days.at(day.date);
    const auto& re_day = state.days.at(day.date);
    c.expect(re_day.type_counts == live_day.type_counts, "type counts of " + day.date);
    c.expect(rank_players(state, day.date).size() == rank_players(run.state, day.date).size(), "leaderboard of " + day.date);
  }
  MemoryEventLog full;
  for (const auto& r : run.events) full.append(r);
  Engine replayed(game, dict, full, sim::make_policy(cfg.regime, game.scoring, cfg.decay));
  replayed.replay_log();
  c.expect(replayed.state_hash() == run.report.state_hash, "final state hash");
  const auto again = sim::run_sim(cfg);
  c.expect(again.report.state_hash == run.report.state_hash, "rerun state hash");
  c.note(std::to_string(run.report.days.size()) + " days, " + std::to_string(run.events.size()) + " events");
  return c.done();
}

Outcome soft_target() {
  Check c;
  auto cfg = sim_config();
  cfg.players = 20;
  cfg.submissions_per_day = 130;
  cfg.days = 2;
  cfg.seed = 6;
  std::map<std::string, bool> vanished;
  int observations = 0;
  cfg.observer = [&](const Engine& engine, const sim::SimEvent& e) {
    if (e.kind == sim::SimEvent::Kind::HappyHour) return;
    ++observations;
    const auto day = engine.day(e.date);
    const auto view = engine.scoreboard(e.date, e.player);
    const bool below = day->submission_count < 100;
    c.expect(view.remaining_to_target.has_value() == below,
             "message at count " + std::to_string(day->submission_count));
    if (view.remaining_to_target) {
      c.expect(*view.remaining_to_target == 100 - day->submission_count, "remaining count");
      c.expect(!vanished[e.date], "message reappeared on " + e.date);
    } else {
      vanished[e.date] = true;
    }
  };
  const auto run = sim::run_sim(cfg);
  for (const auto& d : run.report.days) c.expect(vanished[d.date], "target never reached on " + d.date);
  c.note(std::to_string(observations) + " scoreboard checks over 2 days of 130 submissions");
  return c.done();
}

Outcome notification_policy() {
  Check c;
  auto cfg = sim_config();
  cfg.players = 15;
  cfg.idle_players = 5;
  cfg.submissions_per_day = 100;
  cfg.policy = "mixed";
  cfg.seed = 12;
  const auto run = sim::run_sim(cfg);
  std::map<NotificationKind, int> idle_kinds;
  std::map<std::string, std::vector<Timestamp>> likes;
  for (const auto& n : run.state.notifications) {
    for (const auto& r : n.recipients) {
      if (r.rfind("i", 0) == 0) {
        ++idle_kinds[n.kind];
        c.expect(is_broadcast(n.kind), "idle " + r + " got " + std::string(to_string(n.kind)));
      }
    }
    if (n.kind == NotificationKind::LikeReceived) likes[n.recipients.front()].push_back(n.sent_at);
  }
  // pushes actually delivered to idle players
  for (const auto& m : run.messages) {
    if (m.recipient.rfind("i", 0) != 0 || m.kind != OutboundMessage::Kind::Push) continue;
    c.expect(m.key == "notify_morning" || m.key.rfind("notify_score_", 0) == 0 || m.key == "notify_happy_hour",
             "idle push " + m.key);
  }
  int like_notices = 0;
  for (const auto& [author, times] : likes) {
    for (std::size_t i = 1; i < times.size(); ++i) {
      c.expect(times[i] - times[i - 1] >= 600, "like notices for " + author + " within 10 minutes");
    }
    like_notices += static_cast<int>(times.size());
  }
  c.expect(idle_kinds[NotificationKind::Morning] == 5, "morning broadcast to idle players");
  c.expect(idle_kinds[NotificationKind::HappyHour] == 5, "happy hour broadcast to idle players");
  c.expect(like_notices > 0, "no like notices in the run");
  c.note("idle kinds: morning " + std::to_string(idle_kinds[NotificationKind::Morning]) + ", score change " +
         std::to_string(idle_kinds[NotificationKind::ScoreChange]) + ", happy hour " +
         std::to_string(idle_kinds[NotificationKind::HappyHour]) + "; " + std::to_string(like_notices) +
         " like notices");
  return c.done();
}

Outcome regimes() {
  Check c;
  auto fixed = sim_config();
  fixed.players = 20;
  fixed.policy = "greedy";
  fixed.regime = sim::ScoringRegime::Fixed30401020;
  fixed.seed = 21;
  const auto f = sim::run_sim(fixed);
  const auto b = f.report.days.at(0).b_share();
  c.expect(b > 0.70, "B-share " + std::to_string(b));

  // the greedy population from the fixed run, then a mixed one that does not chase scores
  std::map<std::string, std::int64_t> worst;
  for (const std::string policy : {"greedy", "mixed"}) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      auto h = sim_config();
      h.players = 20;
      h.policy = policy;
      h.regime = sim::ScoringRegime::Hysteresis;
      h.seed = seed;
      const auto r = sim::run_sim(h);
      for (const auto& d : r.report.days) {
        worst[policy] = std::max(worst[policy], d.max_gap_after_warmup);
        c.expect(d.max_gap_after_warmup <= 19, policy + " seed " + std::to_string(seed) + " gap " +
                                                    std::to_string(d.max_gap_after_warmup));
      }
    }
  }
  const auto again = sim::run_sim(fixed);
  c.expect(again.report.jsonl() == f.report.jsonl() && again.report.csv() == f.report.csv(), "reports differ on rerun");
  std::ostringstream share;
  share.precision(3);
  share << b;
  c.note("fixed+greedy B-share " + share.str() + "; hysteresis max |A-C| after warm-up: greedy " +
         std::to_string(worst["greedy"]) + ", mixed " + std::to_string(worst["mixed"]) + " over 10 seeds each");
  return c.done();
}

Outcome lemma_retrieval() {
  Check c;
  const auto dict = fixtures::dictionary();
  const auto go_home = parse_idiom_line(fixtures::kGoHome, "en");
  const auto found = find_candidate_sentences({"He went home.", "Home prices go up.", "She goes."}, go_home, dict);
  c.expect(found.size() == 2 && found[0].sentence == "He went home." && found[0].matched, "He went home.");

  const std::vector<std::string> words{"he",    "went", "goes", "home",  "homes", "go",  "going", "held", "his",
                                       "tongue", "pull", "legs", "my",   "the",   "and", "gone",  ",",    "."};
  const std::vector<IdiomPattern> patterns{go_home, parse_idiom_line(fixtures::kHoldTongue, "en"),
                                           parse_idiom_line(fixtures::kPullLeg, "en")};
  std::mt19937 rng(100);
  int located = 0;
  for (int fixture = 0; fixture < 100; ++fixture) {
    std::vector<std::string> corpus;
    for (int s = 0; s < 8; ++s) {
      std::string sentence;
      const auto len = 1 + rng() % 9;
      for (std::size_t w = 0; w < len; ++w) sentence += (w ? " " : "") + words[rng() % words.size()];
      corpus.push_back(sentence);
    }
    const auto& pattern = patterns[static_cast<std::size_t>(fixture) % patterns.size()];
    const auto result = find_candidate_sentences(corpus, pattern, dict);
    std::set<std::string> returned;
    for (const auto& r : result) returned.insert(r.sentence);
    for (const auto& sentence : corpus) {
      const auto tokens = tokenize(sentence);
      const auto lemmas = lemmatize(tokens, dict);
      if (locate(tokens, lemmas, pattern)) {
        ++located;
        c.expect(returned.count(sentence) == 1, "missing '" + sentence + "'");
      }
      // and only sentences holding every constituent lemma come back
      bool all = true;
      for (const auto& w : pattern.constituent_lemmas()) {
        all = all && std::any_of(lemmas.begin(), lemmas.end(), [&](const LemmaSet& set) { return set.count(w); });
      }
      c.expect(returned.count(sentence) == (all ? 1u : 0u), "containment of '" + sentence + "'");
    }
  }
  c.expect(located > 0, "no fixture sentence located");
  c.note("100 fixtures, " + std::to_string(located) + " located sentences all returned");
  return c.done();
}

Outcome export_round_trip() {
  Check c;
  auto cfg = sim_config();
  cfg.players = 12;
  cfg.days = 3;
  cfg.policy = "mixed";
  cfg.submissions_per_day = 50;
  cfg.seed = 31;
  const auto run = sim::run_sim(cfg);
  const auto& state = run.state;
  const auto salt = "acceptance";
  for (const bool include : {false, true}) {
    ExportFilter f;
    f.include_excluded = include;
    const auto records = export_corpus(state, f, salt);
    const auto from_json = parse_jsonl(to_jsonl(records));
    const auto from_tsv = parse_tsv(to_tsv(records));
    c.expect(from_json == records && from_tsv == records, "record round-trip");
    for (const auto& live : all_day_stats(state)) {
      c.expect(day_stats_from_corpus(from_json, live.date).same_corpus_fields(live), "jsonl stats " + live.date);
      c.expect(day_stats_from_corpus(from_tsv, live.date).same_corpus_fields(live), "tsv stats " + live.date);
    }
  }

  // ban one player: every statistic moves by exactly that player's part
  MemoryEventLog log;
  for (const auto& r : run.events) log.append(r);
  GameConfig game = cfg.game;
  game.language = cfg.language;
  Engine engine(game, fixtures::dictionary(), log, sim::make_policy(cfg.regime, game.scoring, cfg.decay));
  engine.replay_log();
  const std::string victim = "p003";
  const auto before = engine.snapshot();
  engine.ban("moderator", victim, "acceptance", run.events.back().timestamp + 60);
  const auto after = engine.snapshot();
  int checked = 0;
  for (const auto& [date, _] : before.days) {
    const auto b = day_stats(before, date);
    const auto a = day_stats(after, date);
    int subs = 0, idio = 0, likes = 0, dislikes = 0, reports = 0, reviews_before = 0, reviews_lost = 0;
    TypeCounts types;
    std::map<int, int> hist = b.review_histogram;
    const auto move = [&hist](int from, int to) {
      if (--hist[from] == 0) hist.erase(from);
      if (to >= 0) ++hist[to];
    };
    for (const auto& s : before.submissions) {
      if (s.date != date || is_excluded(s.status)) continue;
      reviews_before += s.review_count();
      int vl = 0, vd = 0, vr = 0;
      for (const auto& r : before.reviews) {
        if (r.submission_id != s.id || r.reviewer != victim) continue;
        vl += r.verdict == idiomcraft::Verdict::Like;
        vd += r.verdict == idiomcraft::Verdict::Dislike;
        vr += r.verdict == idiomcraft::Verdict::Report;
      }
      if (s.author == victim) {
        ++subs;
        idio += s.idiomatic;
        ++types[s.sample_type];
        likes += s.likes;
        dislikes += s.dislikes;
        reports += s.reports;
        reviews_lost += s.review_count();
        move(s.review_count(), -1);
      } else {
        likes += vl;
        dislikes += vd;
        reports += vr;
        reviews_lost += vl + vd;
        if (vl + vd) move(s.review_count(), s.review_count() - vl - vd);
      }
    }
    c.expect(a.total == b.total - subs, "total on " + date);
    c.expect(a.idiomatic_count == b.idiomatic_count - idio, "idiomatic on " + date);
    c.expect(a.likes == b.likes - likes, "likes on " + date);
    c.expect(a.dislikes == b.dislikes - dislikes, "dislikes on " + date);
    c.expect(a.reports == b.reports - reports, "reports on " + date);
    for (auto t : {SampleType::A, SampleType::B, SampleType::C, SampleType::D}) {
      c.expect(a.type_counts[t] == b.type_counts[t] - types[t], "type counts on " + date);
    }
    c.expect(a.review_histogram == hist, "histogram on " + date);
    c.expect(a.avg_reviews_per_submission ==
                 (a.total ? Ratio{reviews_before - reviews_lost, a.total} : Ratio{0, 1}),
             "average reviews on " + date);
    const auto verdicts = a.likes + a.dislikes;
    c.expect(a.dislike_pct == (verdicts ? Ratio{100LL * a.dislikes, verdicts} : Ratio{0, 1}), "dislike % on " + date);
    c.expect(subs > 0 || likes + dislikes > 0, victim + " inactive on " + date);
    ++checked;
  }
  const auto exported = export_corpus(after, {}, salt);
  c.expect(std::none_of(exported.begin(), exported.end(),
                        [&](const CorpusRecord& r) { return r.author_pseudonym == pseudonymize(victim, salt); }),
           "banned author exported");
  c.note(std::to_string(checked) + " days round-tripped through jsonl and tsv; ban delta exact");
  return c.done();
}

int run_cli(const std::vector<std::string>& args) {
  std::string cmd = cli_path;
  for (const auto& a : args) cmd += " '" + a + "'";
  cmd += " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome catalog_parity() {
  Check c;
  const auto dir = fixtures::data_dir() / "catalog";
  const auto catalogs = load_catalog_dir(dir);
  c.expect(catalogs.size() == 3, "expected en, it, tr catalogs");
  c.expect(lint_catalogs(catalogs).empty(), "shipped catalogs have lint issues");
  const auto& en = catalogs.at("en");
  for (const auto& [lang, cat] : catalogs) {
    c.expect(cat.keys() == en.keys(), lang + " key set");
    for (const auto& k : en.keys()) c.expect(cat.placeholders(k) == en.placeholders(k), lang + ":" + k + " placeholders");
  }

  // seeded violation: drop one key from it, rename a placeholder in tr
  const auto tmp = fs::temp_directory_path() / ("idiomcraft_lint_" + std::to_string(::getpid()));
  fs::remove_all(tmp);
  fs::create_directories(tmp);
  for (const auto* lang : {"en", "it", "tr"}) fs::copy_file(dir / (std::string(lang) + ".txt"), tmp / (std::string(lang) + ".txt"));
  const auto rewrite = [&](const std::string& lang, const std::function<std::string(const std::string&)>& edit) {
    std::ifstream in(tmp / (lang + ".txt"));
    std::stringstream ss;
    ss << in.rdbuf();
    in.close();
    std::ofstream(tmp / (lang + ".txt"), std::ios::trunc) << edit(ss.str());
  };
  rewrite("it", [](const std::string& s) {
    std::istringstream in(s);
    std::string out, line;
    while (std::getline(in, line)) {
      if (line.rfind("review_empty=", 0) != 0) out += line + "\n";
    }
    return out;
  });
  rewrite("tr", [](const std::string& s) {
    auto out = s;
    const auto pos = out.find("{remaining}");
    if (pos != std::string::npos) out.replace(pos, 11, "{kalan}");
    return out;
  });
  const auto seeded = lint_catalogs(load_catalog_dir(tmp));
  bool missing = false, placeholder = false;
  for (const auto& i : seeded) {
    missing = missing || (i.language == "it" && i.key == "review_empty");
    placeholder = placeholder || (i.language == "tr" && i.key == "soft_target_remaining");
  }
  c.expect(missing, "missing key not reported");
  c.expect(placeholder, "placeholder mismatch not reported");
  if (!cli_path.empty()) {
    c.expect(run_cli({"catalog-lint", "--dir", dir.string()}) == 0, "lint of shipped catalogs exits nonzero");
    const int code = run_cli({"catalog-lint", "--dir", tmp.string()});
    c.expect(code != 0, "lint of seeded violation exits 0");
    c.note("cli exit " + std::to_string(code) + " on seeded violation");
  }
  fs::remove_all(tmp);
  c.note(std::to_string(en.keys().size()) + " keys x 3 languages, " + std::to_string(seeded.size()) +
         " issues on the seeded copy");
  return c.done();
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--cli") cli_path = argv[i + 1];
  }
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"classification-golden-and-oracle", classification},
      {"scoring-table-and-hysteresis", scoring_table},
      {"happy-hour-points", happy_hour},
      {"review-queue-fairness", fairness},
      {"replay-determinism", replay_determinism},
      {"soft-target", soft_target},
      {"notification-policy", notification_policy},
      {"simulator-regimes", regimes},
      {"lemma-retrieval", lemma_retrieval},
      {"export-round-trip", export_round_trip},
      {"catalog-parity", catalog_parity},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome v;
    try {
      v = run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failed += v.pass ? 0 : 1;
    std::cout << (v.pass ? "PASS " : "FAIL ") << name << (v.detail.empty() ? "" : ": " + v.detail) << std::endl;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed"
            << std::endl;
  return failed ? 1 : 0;
}
