// idiomcraft command-line front end: play, serve, sim, stats, export and lint.
#include <algorithm>
#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "idiomcraft/admin_api.hpp"
#include "idiomcraft/analytics.hpp"
#include "idiomcraft/config.hpp"
#include "idiomcraft/corpus.hpp"
#include "idiomcraft/dispatcher.hpp"
#include "idiomcraft/engine.hpp"
#include "idiomcraft/l10n.hpp"
#include "idiomcraft/sim.hpp"
#include "idiomcraft/store.hpp"
#include "idiomcraft/transport.hpp"
#include "idiomcraft/unicode.hpp"

namespace fs = std::filesystem;
using namespace idiomcraft;

namespace {

struct Common {
  std::string data_dir = IDIOMCRAFT_DEFAULT_DATA_DIR;
  std::string config;
  std::string language;
  std::string scoring = "hysteresis";
};

GameConfig game_config(const Common& c) {
  GameConfig cfg;
  const auto path = c.config.empty() ? fs::path(c.data_dir) / "config" / "idiomcraft.conf" : fs::path(c.config);
  if (fs::exists(path)) cfg = load_config(path);
  if (!c.language.empty()) cfg.language = c.language;
  return cfg;
}

LemmaDictionary dictionary_for(const Common& c, const std::string& language) {
  return LemmaDictionary::from_file(fs::path(c.data_dir) / "lemmas" / (language + ".tsv"), language);
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_text(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

// An engine holding the state folded from a log file.
struct Replayed {
  MemoryEventLog log;
  std::unique_ptr<Engine> engine;
};

std::unique_ptr<Replayed> replay_file(const Common& c, const std::string& path) {
  auto r = std::make_unique<Replayed>();
  for (auto& rec : read_event_log(path)) r->log.append(std::move(rec));
  const auto cfg = game_config(c);
  r->engine = std::make_unique<Engine>(cfg, dictionary_for(c, cfg.language), r->log,
                                       sim::make_policy(sim::regime_from_string(c.scoring), cfg.scoring));
  r->engine->replay_log();
  return r;
}

void add_common(CLI::App& app, Common& c, bool scoring = false) {
  app.add_option("--data", c.data_dir, "Data directory (lemmas, idioms, catalog, config)");
  app.add_option("--config", c.config, "Game config file");
  app.add_option("--lang", c.language, "Language code (en, it, tr)");
  if (scoring) app.add_option("--scoring", c.scoring, "Scoring regime the log was written under");
}

AdminApi* running_api = nullptr;

void stop_serving(int) {
  if (running_api) running_api->stop();
}

// Terminal lines: start | submit | review | scoreboard | idiom | help | yes | no |
// like|dislike|report <id> | anything else is free text.
InboundEvent parse_line(const std::string& player, const std::string& line, Timestamp at) {
  InboundEvent e{player, InboundEvent::Kind::FreeText, line, at, player};
  std::istringstream in(line);
  std::string word, arg;
  in >> word >> arg;
  const auto w = unicode::to_lower(word);
  if (w == "start") {
    e.kind = InboundEvent::Kind::Start;
    e.payload.clear();
  } else if (w == "submit" || w == "review" || w == "scoreboard" || w == "idiom" || w == "help") {
    e.kind = InboundEvent::Kind::MenuChoice;
    e.payload = w;
  } else if (w == "yes" || w == "no") {
    e.kind = InboundEvent::Kind::MenuChoice;
    e.payload = w == "yes" ? kLabelYes : kLabelNo;
  } else if ((w == "like" || w == "dislike" || w == "report") && !arg.empty()) {
    e.kind = InboundEvent::Kind::ReviewVerdict;
    e.payload = arg + ":" + w;
  }
  return e;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"idiomcraft: idiom crowdsourcing game engine"};
  app.require_subcommand(1);

  Common common;

  // play
  auto* play = app.add_subcommand("play", "Chat with the game from stdin");
  add_common(*play, common);
  std::string transport_kind = "terminal";
  std::string player = "you";
  std::string log_path;
  std::string at_text;
  std::string idiom_id;
  play->add_option("--transport", transport_kind, "loopback | terminal")->check(CLI::IsMember({"loopback", "terminal"}));
  play->add_option("--player", player, "Player id for stdin lines");
  play->add_option("--log", log_path, "Event log file (created if missing)");
  play->add_option("--at", at_text, "Fixed clock, YYYY-MM-DDTHH:MM:SS");
  play->add_option("--idiom", idiom_id, "Open today with this idiom if no day is open");

  // serve
  auto* serve = app.add_subcommand("serve", "Run the moderator HTTP API");
  add_common(*serve, common);
  std::string host = "127.0.0.1";
  int port = 8080;
  serve->add_option("--host", host);
  serve->add_option("--port", port);
  serve->add_option("--log", log_path, "Event log file")->required();

  // sim
  auto* simc = app.add_subcommand("sim", "Run the simulated-player harness");
  sim::SimConfig sc;
  std::string regime = "hysteresis";
  std::string out_dir = "sim-out";
  simc->add_option("--data", common.data_dir);
  simc->add_option("--players", sc.players)->check(CLI::NonNegativeNumber);
  simc->add_option("--idle", sc.idle_players, "Registered players that never act");
  simc->add_option("--days", sc.days);
  simc->add_option("--policy", sc.policy, "greedy | natural | review_heavy | near_duplicator | mixed");
  simc->add_option("--scoring", regime, "fixed | decay | hysteresis");
  simc->add_option("--seed", sc.seed);
  simc->add_option("--submissions", sc.submissions_per_day, "Submissions per day");
  simc->add_option("--lang", sc.language);
  simc->add_option("--start", sc.start_date, "First day, YYYY-MM-DD");
  simc->add_option("--decay", sc.decay);
  simc->add_option("--out", out_dir, "Output directory");

  // stats / histogram / export / replay
  std::string from, to, format = "jsonl", salt;
  bool include_excluded = false;
  auto* stats = app.add_subcommand("stats", "Per-day statistics as CSV");
  auto* histogram = app.add_subcommand("histogram", "Review-count histogram as CSV");
  auto* exportc = app.add_subcommand("export", "Export reviewed samples");
  auto* replay = app.add_subcommand("replay", "Replay a log and print the state hash");
  for (auto* sub : {stats, histogram, exportc, replay}) {
    add_common(*sub, common, true);
    sub->add_option("--log", log_path, "Event log file")->required()->check(CLI::ExistingFile);
  }
  exportc->add_option("--format", format)->check(CLI::IsMember({"jsonl", "tsv"}));
  exportc->add_option("--from", from);
  exportc->add_option("--to", to);
  exportc->add_flag("--include-excluded", include_excluded);
  exportc->add_option("--salt", salt, "Pseudonym salt (default from config)");

  // catalog-lint
  auto* lint = app.add_subcommand("catalog-lint", "Check key and placeholder parity of catalogs");
  std::string catalog_dir;
  lint->add_option("--dir", catalog_dir, "Catalog directory (default <data>/catalog)");
  lint->add_option("--data", common.data_dir);

  // candidates
  auto* cand = app.add_subcommand("candidates", "Sentences holding every lemma of an idiom");
  std::string corpus_path;
  add_common(*cand, common);
  cand->add_option("--idiom", idiom_id, "Idiom id from the shipped list")->required();
  cand->add_option("--corpus", corpus_path, "One sentence per line")->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*play) {
      const auto cfg = game_config(common);
      const auto clock_now = [&]() { return at_text.empty() ? clock::now_in(cfg.timezone) : clock::parse_timestamp(at_text); };
      std::unique_ptr<EventLog> log;
      if (log_path.empty()) {
        log = std::make_unique<MemoryEventLog>();
      } else {
        log = std::make_unique<FileEventLog>(log_path);
      }
      Engine engine(cfg, dictionary_for(common, cfg.language), *log);
      engine.replay_log();
      const auto catalog = Catalog::from_file(fs::path(common.data_dir) / "catalog" / (cfg.language + ".txt"), cfg.language);
      const auto now = clock_now();
      const auto today = clock::format_date(clock::date_of(now));
      if (!engine.day(today)) {
        const auto idioms = parse_idiom_list(read_text(fs::path(common.data_dir) / "idioms" / (cfg.language + ".tsv")), cfg.language);
        for (const auto& p : idioms) {
          if (!engine.idiom(p.id)) engine.add_idiom(format_idiom_line(p), now);
        }
        const auto chosen = idiom_id.empty() ? idioms.at(0).id : idiom_id;
        engine.open_day(today, chosen, now);
      }
      LoopbackTransport loopback;
      TerminalTransport terminal(std::cout);
      Transport& transport = transport_kind == "terminal" ? static_cast<Transport&>(terminal) : loopback;
      Dispatcher dispatcher(engine, catalog, transport);
      dispatcher.flush_notifications();
      std::string line;
      while (std::getline(std::cin, line)) {
        if (unicode::trim(line).empty()) continue;
        if (line == "quit" || line == "exit") break;
        dispatcher.dispatch(parse_line(player, line, clock_now()));
      }
      if (transport_kind == "loopback") {
        for (const auto& m : loopback.messages()) {
          nlohmann::json j{{"kind", m.kind == OutboundMessage::Kind::Push ? "push" : "reply"},
                           {"to", m.recipient},
                           {"key", m.key},
                           {"text", m.text}};
          for (const auto& b : m.buttons) j["buttons"].push_back({{"label", b.label}, {"payload", b.payload}});
          std::cout << j.dump() << '\n';
        }
      }
      return 0;
    }

    if (*serve) {
      const auto cfg = game_config(common);
      FileEventLog log(log_path);
      Engine engine(cfg, dictionary_for(common, cfg.language), log);
      engine.replay_log();
      const auto catalog = Catalog::from_file(fs::path(common.data_dir) / "catalog" / (cfg.language + ".txt"), cfg.language);
      TerminalTransport transport(std::cout);
      Dispatcher dispatcher(engine, catalog, transport);
      AdminApi api(engine, cfg.admin_token, [tz = cfg.timezone] { return clock::now_in(tz); }, &dispatcher);
      running_api = &api;
      std::signal(SIGINT, stop_serving);
      std::signal(SIGTERM, stop_serving);
      std::cerr << "listening on " << host << ":" << port << " (" << cfg.language << ")\n";
      const bool ok = api.serve(host, port);
      running_api = nullptr;
      return ok ? 0 : 1;
    }

    if (*simc) {
      sc.data_dir = common.data_dir;
      sc.regime = sim::regime_from_string(regime);
      const auto run = sim::run_sim(sc);
      fs::create_directories(out_dir);
      write_text(fs::path(out_dir) / "report.jsonl", run.report.jsonl());
      write_text(fs::path(out_dir) / "summary.csv", run.report.csv());
      write_text(fs::path(out_dir) / "events.jsonl", serialize_event_log(run.events));
      std::cout << run.report.csv();
      return 0;
    }

    if (*stats || *histogram || *exportc || *replay) {
      const auto r = replay_file(common, log_path);
      const auto state = r->engine->snapshot();
      if (*stats) std::cout << stats_csv(all_day_stats(state), state.idioms);
      if (*histogram) std::cout << histogram_csv(all_day_stats(state));
      if (*replay) std::cout << r->engine->state_hash() << '\n';
      if (*exportc) {
        ExportFilter filter;
        filter.language = state.language;
        if (!from.empty()) filter.from = clock::format_date(clock::parse_date(from));
        if (!to.empty()) filter.to = clock::format_date(clock::parse_date(to));
        filter.include_excluded = include_excluded;
        const auto records = export_corpus(state, filter, salt.empty() ? r->engine->config().pseudonym_salt : salt);
        std::cout << (format == "tsv" ? to_tsv(records) : to_jsonl(records));
      }
      return 0;
    }

    if (*lint) {
      const auto dir = catalog_dir.empty() ? fs::path(common.data_dir) / "catalog" : fs::path(catalog_dir);
      const auto issues = lint_catalogs(load_catalog_dir(dir));
      for (const auto& i : issues) std::cout << i.language << '\t' << i.key << '\t' << i.message << '\n';
      if (!issues.empty()) {
        std::cerr << issues.size() << " catalog issue(s)\n";
        return 1;
      }
      std::cerr << "catalogs consistent\n";
      return 0;
    }

    if (*cand) {
      const auto cfg = game_config(common);
      const auto idioms = parse_idiom_list(read_text(fs::path(common.data_dir) / "idioms" / (cfg.language + ".tsv")), cfg.language);
      const auto it = std::find_if(idioms.begin(), idioms.end(), [&](const IdiomPattern& p) { return p.id == idiom_id; });
      if (it == idioms.end()) fail(ErrorCode::UnknownIdiom, "no idiom '" + idiom_id + "' for " + cfg.language);
      std::vector<std::string> corpus;
      std::istringstream in(read_text(corpus_path));
      for (std::string line; std::getline(in, line);) {
        if (!unicode::trim(line).empty()) corpus.push_back(line);
      }
      for (const auto& c : find_candidate_sentences(corpus, *it, dictionary_for(common, cfg.language))) {
        std::cout << (c.matched ? "match" : "lemmas") << '\t' << c.sentence << '\n';
      }
      return 0;
    }
  } catch (const GameError& e) {
    std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
