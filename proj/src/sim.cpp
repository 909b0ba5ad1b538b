#include "idiomcraft/sim.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include <json.hpp>

#include "idiomcraft/dispatcher.hpp"
#include "idiomcraft/json_io.hpp"
#include "idiomcraft/l10n.hpp"
#include "idiomcraft/unicode.hpp"

namespace idiomcraft::sim {

using nlohmann::json;

std::string_view to_string(AgentKind k) {
  switch (k) {
    case AgentKind::GreedyType: return "GreedyType";
    case AgentKind::NaturalMix: return "NaturalMix";
    case AgentKind::ReviewHeavy: return "ReviewHeavy";
    case AgentKind::NearDuplicator: return "NearDuplicator";
  }
  return "NaturalMix";
}

std::string_view to_string(ScoringRegime r) {
  switch (r) {
    case ScoringRegime::Fixed30401020: return "Fixed30401020";
    case ScoringRegime::Decay: return "Decay";
    case ScoringRegime::Hysteresis: return "Hysteresis";
  }
  return "Hysteresis";
}

ScoringRegime regime_from_string(std::string_view text) {
  const auto lower = unicode::to_lower(text);
  if (lower == "fixed30401020" || lower == "fixed") return ScoringRegime::Fixed30401020;
  if (lower == "decay") return ScoringRegime::Decay;
  if (lower == "hysteresis") return ScoringRegime::Hysteresis;
  fail(ErrorCode::ConfigInvalid, "unknown scoring regime '" + std::string(text) + "'");
}

AgentParams default_params(AgentKind kind) {
  AgentParams p;
  p.kind = kind;
  switch (kind) {
    case AgentKind::GreedyType:
      p.weights = {0.55, 0.10, 0.20, 0.15};
      p.review_ratio = 0.2;
      p.greed = 0.9;
      p.like_rate = 0.85;
      p.report_rate = 0.0;
      break;
    case AgentKind::NaturalMix:
      break;
    case AgentKind::ReviewHeavy:
      p.review_ratio = 0.8;
      p.like_rate = 0.8;
      p.report_rate = 0.0;
      break;
    case AgentKind::NearDuplicator:
      p.review_ratio = 0.1;
      p.like_rate = 0.9;
      p.report_rate = 0.0;
      p.duplicate_rate = 0.6;
      break;
  }
  return p;
}

TypeScores DecayPolicy::scores(const TypeCounts& counts, BalanceState) const {
  const auto shrink = [&](Points base, SampleType t) {
    const auto v = std::llround(static_cast<double>(base) * std::pow(decay_, static_cast<double>(counts[t])));
    return std::max<Points>(1, v);
  };
  return {shrink(30, SampleType::A), shrink(40, SampleType::B), shrink(20, SampleType::C),
          shrink(10, SampleType::D)};
}

std::shared_ptr<const TypeScorePolicy> make_policy(ScoringRegime regime, const ScoringConfig& scoring,
                                                   double decay) {
  switch (regime) {
    case ScoringRegime::Fixed30401020: return std::make_shared<FixedPolicy>();
    case ScoringRegime::Decay: return std::make_shared<DecayPolicy>(decay);
    case ScoringRegime::Hysteresis: break;
  }
  return std::make_shared<HysteresisPolicy>(scoring);
}

std::size_t Rng::weighted(const std::array<double, 4>& w) {
  double total = 0;
  for (const auto x : w) total += x;
  double u = uniform() * total;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (u < w[i]) return i;
    u -= w[i];
  }
  return w.size() - 1;
}

namespace {

struct Banks {
  std::vector<std::string> subjects, fillers, tails;
};

const Banks& banks_for(const std::string& language) {
  static const Banks en{
      {"anna", "ben", "carla", "david", "emma", "frank", "grace", "henry", "iris", "jack", "kate", "liam",
       "mia", "noah", "olga", "paul"},
      {"really", "quite", "very", "old", "new", "big", "small", "red", "blue", "green", "warm", "cold", "soft",
       "bright", "quiet", "little"},
      {"today", "yesterday", "tonight", "again", "outside", "inside", "early", "late", "slowly", "quickly",
       "carefully", "gladly", "together", "alone", "anyway", "somehow"}};
  static const Banks it{
      {"anna", "bruno", "carla", "dario", "elena", "fabio", "giulia", "luca", "marta", "nico", "paola", "rita",
       "sara", "tommaso", "ugo", "vera"},
      {"molto", "poco", "bello", "grande", "piccolo", "rosso", "verde", "vecchio", "nuovo", "caldo", "freddo",
       "dolce", "forte", "piano"},
      {"oggi", "ieri", "stasera", "ancora", "fuori", "dentro", "presto", "tardi", "sempre", "spesso", "insieme",
       "subito", "domani", "qui"}};
  static const Banks tr{
      {"ali", "ayşe", "can", "deniz", "elif", "emre", "fatma", "hakan", "ışıl", "kemal", "leyla", "mert",
       "nazlı", "ozan", "selin", "tolga"},
      {"çok", "biraz", "büyük", "küçük", "eski", "yeni", "kırmızı", "mavi", "sıcak", "soğuk", "güzel", "hızlı",
       "yavaş", "sessiz"},
      {"bugün", "dün", "akşam", "yine", "dışarıda", "içeride", "erken", "geç", "hemen", "sonra", "birlikte",
       "yalnız", "burada", "orada"}};
  if (language == "it") return it;
  if (language == "tr") return tr;
  return en;
}

std::vector<std::string> without_constituents(const std::vector<std::string>& words,
                                              const std::set<std::string>& lemmas, const LemmaDictionary& dict) {
  std::vector<std::string> out;
  for (const auto& w : words) {
    const auto cands = lemma_candidates(w, dict);
    if (std::none_of(cands.begin(), cands.end(), [&](const auto& c) { return lemmas.count(c); })) {
      out.push_back(w);
    }
  }
  return out;
}

}  // namespace

SentenceBank::SentenceBank(const IdiomPattern& pattern, const LemmaDictionary& dict) : pattern_(pattern) {
  const auto& b = banks_for(pattern.language);
  const auto lemmas = pattern.constituent_lemmas();
  const std::set<std::string> lemma_set(lemmas.begin(), lemmas.end());
  subjects_ = without_constituents(b.subjects, lemma_set, dict);
  fillers_ = without_constituents(b.fillers, lemma_set, dict);
  tails_ = without_constituents(b.tails, lemma_set, dict);
}

std::string SentenceBank::make(SampleType type, Rng& rng) const {
  const bool separated = type == SampleType::B || type == SampleType::D;
  // constituents and the wildcard capacity that follows each of them
  std::vector<std::pair<std::string, int>> parts;
  for (const auto& slot : pattern_.slots) {
    if (const auto* c = std::get_if<Constituent>(&slot)) {
      parts.emplace_back(c->lemma, 0);
    } else {
      parts.back().second += std::get<Wildcard>(slot).max_tokens;
    }
  }
  std::vector<std::string> words;
  words.push_back(subjects_[rng.below(subjects_.size())]);
  if (rng.below(2)) words.push_back(fillers_[rng.below(fillers_.size())]);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    words.push_back(parts[i].first);
    if (i + 1 == parts.size()) break;
    const auto capacity = static_cast<std::size_t>(parts[i].second);
    const std::size_t count = separated && i == 0 ? capacity + 1 + rng.below(2) : rng.below(capacity + 1);
    for (std::size_t k = 0; k < count; ++k) words.push_back(fillers_[rng.below(fillers_.size())]);
  }
  const auto tail_count = 2 + rng.below(2);
  for (std::size_t k = 0; k < tail_count; ++k) words.push_back(tails_[rng.below(tails_.size())]);
  std::string out;
  for (const auto& w : words) out += (out.empty() ? "" : " ") + w;
  return out + ".";
}

std::string SentenceBank::extra_word(const std::string& sentence, Rng& rng) const {
  std::set<std::string> present;
  for (const auto& t : tokenize(sentence)) present.insert(unicode::to_lower(t.surface, pattern_.language));
  std::vector<std::string> pool;
  for (const auto* bank : {&tails_, &fillers_}) {
    for (const auto& w : *bank) {
      if (!present.count(w)) pool.push_back(w);
    }
  }
  return pool.empty() ? std::string() : pool[rng.below(pool.size())];
}

std::vector<AgentKind> agent_kinds(const std::string& policy, int players) {
  std::vector<AgentKind> pattern;
  if (policy == "greedy") {
    pattern = {AgentKind::GreedyType};
  } else if (policy == "natural") {
    pattern = {AgentKind::NaturalMix};
  } else if (policy == "review_heavy") {
    pattern = {AgentKind::ReviewHeavy};
  } else if (policy == "near_duplicator") {
    pattern = {AgentKind::NearDuplicator};
  } else if (policy == "mixed") {
    pattern = {AgentKind::GreedyType, AgentKind::NaturalMix, AgentKind::ReviewHeavy, AgentKind::NearDuplicator};
  } else {
    fail(ErrorCode::ConfigInvalid, "unknown agent policy '" + policy + "'");
  }
  std::vector<AgentKind> out;
  for (int i = 0; i < players; ++i) out.push_back(pattern[static_cast<std::size_t>(i) % pattern.size()]);
  return out;
}

void validate(const SimConfig& c) {
  const auto bad = [](const std::string& why) { fail(ErrorCode::ConfigInvalid, why); };
  if (c.players < 0) bad("players must be >= 0");
  if (c.idle_players < 0) bad("idle players must be >= 0");
  if (c.days < 1) bad("days must be >= 1");
  if (c.submissions_per_day < 1) bad("submissions per day must be >= 1");
  if (!(c.decay > 0.0 && c.decay <= 1.0)) bad("decay must be in (0, 1]");
  if (c.warmup < 0) bad("warmup must be >= 0");
  if (c.happy_hour_at_submission < 0) bad("happy hour trigger must be >= 0");
  agent_kinds(c.policy, 0);
  try {
    clock::parse_date(c.start_date);
  } catch (const GameError& e) {
    bad(e.what());
  }
  for (const auto& file : {c.data_dir / "lemmas" / (c.language + ".tsv"), c.data_dir / "idioms" / (c.language + ".tsv"),
                           c.data_dir / "catalog" / (c.language + ".txt")}) {
    if (!std::filesystem::exists(file)) bad("missing data file " + file.string());
  }
}

std::string day_fingerprint(const GameState& state, const std::string& date) {
  json j;
  j["leaderboard"] = json::array();
  for (const auto& row : rank_players(state, date)) j["leaderboard"].push_back(row);
  const auto& day = state.days.at(date);
  j["counts"] = day.type_counts;
  j["timeline"] = day.balance_timeline;
  j["notifications"] = json::array();
  for (const auto& n : state.notifications) {
    if (n.date == date) j["notifications"].push_back(n);
  }
  return sha256_hex(j.dump());
}

namespace {

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

bool has_key(const std::vector<OutboundMessage>& out, const std::string& key) {
  return std::any_of(out.begin(), out.end(), [&](const auto& m) { return m.key == key; });
}

class DayRunner {
 public:
  struct Agent {
    std::string id;
    AgentParams params;
    std::vector<std::pair<std::string, SampleType>> own;
  };

  DayRunner(const SimConfig& cfg, Engine& engine, Dispatcher& dispatcher, Rng& rng, const SentenceBank& bank,
            SimDay& day)
      : cfg_(cfg), engine_(engine), dispatcher_(dispatcher), rng_(rng), bank_(bank), day_(day) {}

  Timestamp t = 0;

  bool review(const Agent& a) {
    const auto out = dispatcher_.dispatch({a.id, InboundEvent::Kind::MenuChoice, kMenuReview, t, {}});
    const auto prompt = std::find_if(out.begin(), out.end(), [](const auto& m) { return m.key == "review_prompt"; });
    if (prompt == out.end()) return false;
    const auto& buttons = prompt->buttons;
    const auto u = rng_.uniform();
    const std::size_t choice = u < a.params.report_rate                       ? 2
                               : u < a.params.report_rate + a.params.like_rate ? 0
                                                                                : 1;
    const auto payload = buttons.at(choice).payload;
    const auto reply = dispatcher_.dispatch({a.id, InboundEvent::Kind::ReviewVerdict, payload, t, {}});
    if (has_key(reply, "review_thanks")) {
      ++day_.reviews;
      emit({SimEvent::Kind::Reviewed, a.id, std::stoull(payload.substr(0, payload.find(':'))), day_.date});
    }
    return true;
  }

  SampleType choose_type(const Agent& a) {
    const auto& w = a.params.weights;
    if (a.params.greed > 0 && rng_.uniform() < a.params.greed) {
      const auto scores = engine_.current_scores(day_.date);
      const SampleType types[] = {SampleType::A, SampleType::B, SampleType::C, SampleType::D};
      SampleType best = SampleType::A;
      bool first = true;
      for (const auto t : types) {
        const auto s = scores.of(t);
        const auto bs = scores.of(best);
        if (first || s > bs || (s == bs && w[index_of(t)] > w[index_of(best)])) best = t;
        first = false;
      }
      return best;
    }
    return static_cast<SampleType>(rng_.weighted(w));
  }

  void submit(Agent& a) {
    SampleType type;
    std::string text;
    if (a.params.duplicate_rate > 0 && !a.own.empty() && rng_.uniform() < a.params.duplicate_rate) {
      const auto& [prev, prev_type] = a.own[rng_.below(a.own.size())];
      type = prev_type;
      text = prev;
      if (rng_.below(2)) {
        const auto extra = bank_.extra_word(prev, rng_);
        if (!extra.empty()) text = prev.substr(0, prev.size() - 1) + " " + extra + ".";
      }
    } else {
      type = choose_type(a);
      text = bank_.make(type, rng_);
    }
    const auto prompt = dispatcher_.dispatch({a.id, InboundEvent::Kind::MenuChoice, kMenuSubmit, t, {}});
    if (!has_key(prompt, "submit_prompt")) return;
    auto out = dispatcher_.dispatch({a.id, InboundEvent::Kind::FreeText, text, t, {}});
    if (has_key(out, "label_question")) {
      out = dispatcher_.dispatch(
          {a.id, InboundEvent::Kind::MenuChoice, is_idiomatic(type) ? kLabelYes : kLabelNo, t, {}});
    }
    if (has_key(out, "error_duplicate_sentence")) {
      ++day_.rejected_duplicates;
      emit({SimEvent::Kind::Rejected, a.id, 0, day_.date});
      return;
    }
    if (!has_key(out, "submit_thanks")) return;
    ++day_.submissions;
    if (has_key(out, "near_duplicate")) ++day_.near_duplicates;
    const auto id = engine_.day(day_.date)->submission_ids.back();
    if (engine_.submission(id)->sample_type != type) ++day_.misclassified;
    a.own.emplace_back(text, type);
    emit({SimEvent::Kind::Submitted, a.id, id, day_.date});
  }

  void act(Agent& a) {
    if (rng_.uniform() < a.params.review_ratio && review(a)) return;
    submit(a);
  }

  void emit(const SimEvent& e) {
    if (cfg_.observer) cfg_.observer(engine_, e);
  }

 private:
  const SimConfig& cfg_;
  Engine& engine_;
  Dispatcher& dispatcher_;
  Rng& rng_;
  const SentenceBank& bank_;
  SimDay& day_;
};

}  // namespace

SimRun run_sim(const SimConfig& cfg) {
  validate(cfg);
  SimRun run;
  run.report.config = cfg;
  run.report.config.observer = nullptr;
  if (cfg.players == 0) return run;

  const auto dict = LemmaDictionary::from_file(cfg.data_dir / "lemmas" / (cfg.language + ".tsv"), cfg.language);
  const auto idioms = parse_idiom_list(read_file(cfg.data_dir / "idioms" / (cfg.language + ".tsv")), cfg.language);
  if (idioms.empty()) fail(ErrorCode::ConfigInvalid, "no idioms for " + cfg.language);
  const auto catalog = Catalog::from_file(cfg.data_dir / "catalog" / (cfg.language + ".txt"), cfg.language);

  GameConfig game = cfg.game;
  game.language = cfg.language;
  MemoryEventLog log;
  Engine engine(game, dict, log, make_policy(cfg.regime, game.scoring, cfg.decay));
  LoopbackTransport transport;
  Dispatcher dispatcher(engine, catalog, transport);
  Rng rng(cfg.seed);

  const auto start = clock::parse_date(cfg.start_date);
  const auto setup_at = clock::make_timestamp(start, 9, 0);
  for (const auto& p : idioms) engine.add_idiom(format_idiom_line(p), setup_at);

  std::vector<DayRunner::Agent> agents;
  const auto kinds = agent_kinds(cfg.policy, cfg.players);
  const auto pad = [](const char* prefix, int i) {
    std::ostringstream s;
    s << prefix << std::setw(3) << std::setfill('0') << i;
    return s.str();
  };
  for (int i = 0; i < cfg.players; ++i) {
    agents.push_back({pad("p", i + 1), default_params(kinds[static_cast<std::size_t>(i)]), {}});
    dispatcher.dispatch({agents.back().id, InboundEvent::Kind::Start, {}, setup_at, pad("Player ", i + 1)});
  }
  for (int i = 0; i < cfg.idle_players; ++i) {
    dispatcher.dispatch({pad("i", i + 1), InboundEvent::Kind::Start, {}, setup_at, pad("Idle ", i + 1)});
  }

  for (int d = 0; d < cfg.days; ++d) {
    const auto date = clock::civil_from_days(clock::days_from_civil(start) + d);
    const auto date_text = clock::format_date(date);
    const auto& idiom = idioms[static_cast<std::size_t>(d) % idioms.size()];
    engine.schedule_idiom(date_text, idiom.id, clock::make_timestamp(date, 9, 30));
    engine.open_day(date_text, "", clock::make_timestamp(date, 10, 0), rng.next());
    dispatcher.flush_notifications();

    SimDay day;
    day.date = date_text;
    day.idiom_id = idiom.id;
    const SentenceBank bank(idiom, dict);
    DayRunner runner(cfg, engine, dispatcher, rng, bank, day);
    const auto open = clock::make_timestamp(date, 0, 0) + game.window_open_minute * 60;
    const auto close = clock::make_timestamp(date, 0, 0) + game.window_close_minute * 60;
    runner.t = open + 60;
    bool happy_done = cfg.happy_hour_at_submission == 0;
    const auto guard_limit = static_cast<long>(cfg.submissions_per_day) * 50;
    for (long guard = 0; day.submissions < cfg.submissions_per_day && runner.t < close - 60 && guard < guard_limit;
         ++guard) {
      runner.act(agents[rng.below(agents.size())]);
      runner.t += 2 + static_cast<Timestamp>(rng.below(13));
      if (!happy_done && day.submissions >= cfg.happy_hour_at_submission) {
        happy_done = true;
        engine.start_happy_hour("moderator", runner.t);
        dispatcher.flush_notifications();
        runner.emit({SimEvent::Kind::HappyHour, "moderator", 0, date_text});
      }
    }
    // review-heavy agents work through whatever is left in their queues
    for (const auto& a : agents) {
      if (a.params.kind != AgentKind::ReviewHeavy) continue;
      while (runner.t < close - 60 && runner.review(a)) runner.t += 1 + static_cast<Timestamp>(rng.below(3));
    }
    engine.close_day(date_text, close);

    const auto state_day = *engine.day(date_text);
    day.counts = state_day.type_counts;
    day.timeline = state_day.balance_timeline;
    for (std::size_t i = 0; i < day.timeline.size(); ++i) {
      const auto& c = day.timeline[i].counts;
      const auto gap = std::llabs(c[SampleType::A] - c[SampleType::C]);
      day.max_gap = std::max<std::int64_t>(day.max_gap, gap);
      if (static_cast<int>(i) >= cfg.warmup) day.max_gap_after_warmup = std::max<std::int64_t>(day.max_gap_after_warmup, gap);
      if (day.timeline[i].changed) ++day.balance_changes;
    }
    day.fingerprint = day_fingerprint(engine.snapshot(), date_text);
    run.report.days.push_back(std::move(day));
  }

  run.state = engine.snapshot();
  run.events = log.records();
  run.messages = transport.messages();
  run.report.state_hash = engine.state_hash();
  return run;
}

std::string SimReport::jsonl() const {
  if (days.empty()) return {};
  std::string out;
  out += json{{"record", "run"},
              {"players", config.players},
              {"idle_players", config.idle_players},
              {"days", config.days},
              {"policy", config.policy},
              {"scoring", std::string(to_string(config.regime))},
              {"seed", config.seed},
              {"submissions_per_day", config.submissions_per_day},
              {"language", config.language}}
             .dump() +
         '\n';
  std::int64_t total = 0;
  std::int64_t b = 0;
  std::int64_t worst = 0;
  for (const auto& d : days) {
    total += d.counts.total();
    b += d.counts[SampleType::B];
    worst = std::max(worst, d.max_gap_after_warmup);
    out += json{{"record", "day"},
                {"date", d.date},
                {"idiom_id", d.idiom_id},
                {"submissions", d.submissions},
                {"reviews", d.reviews},
                {"type_counts", d.counts},
                {"b_share", d.b_share()},
                {"max_gap", d.max_gap},
                {"max_gap_after_warmup", d.max_gap_after_warmup},
                {"balance_changes", d.balance_changes},
                {"rejected_duplicates", d.rejected_duplicates},
                {"near_duplicates", d.near_duplicates},
                {"misclassified", d.misclassified},
                {"fingerprint", d.fingerprint},
                {"timeline", d.timeline}}
               .dump() +
           '\n';
  }
  out += json{{"record", "summary"},
              {"submissions", total},
              {"b_share", total ? static_cast<double>(b) / static_cast<double>(total) : 0.0},
              {"max_gap_after_warmup", worst},
              {"state_hash", state_hash}}
             .dump() +
         '\n';
  return out;
}

std::string SimReport::csv() const {
  std::ostringstream out;
  out << "date,idiom_id,submissions,reviews,A,B,C,D,b_share,max_gap,max_gap_after_warmup,balance_changes,"
         "rejected_duplicates,near_duplicates,misclassified\n";
  for (const auto& d : days) {
    out << d.date << ',' << d.idiom_id << ',' << d.submissions << ',' << d.reviews;
    for (const auto n : d.counts.n) out << ',' << n;
    out << ',' << std::fixed << std::setprecision(4) << d.b_share() << ',' << d.max_gap << ','
        << d.max_gap_after_warmup << ',' << d.balance_changes << ',' << d.rejected_duplicates << ','
        << d.near_duplicates << ',' << d.misclassified << '\n';
  }
  return out.str();
}

}  // namespace idiomcraft::sim
