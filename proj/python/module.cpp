// Python bindings. Structured results cross the boundary as JSON text and
// are decoded by the idiomcraft package.
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "idiomcraft/admin_api.hpp"
#include "idiomcraft/analytics.hpp"
#include "idiomcraft/config.hpp"
#include "idiomcraft/corpus.hpp"
#include "idiomcraft/engine.hpp"
#include "idiomcraft/json_io.hpp"
#include "idiomcraft/l10n.hpp"
#include "idiomcraft/sim.hpp"
#include "idiomcraft/store.hpp"

namespace py = pybind11;
namespace fs = std::filesystem;
using namespace idiomcraft;
using nlohmann::json;

namespace {

Timestamp ts(const std::string& text) { return clock::parse_timestamp(text); }

// Engine plus the log it writes to.
class Game {
 public:
  Game(const std::string& data_dir, const std::string& language, const std::optional<std::string>& log_path,
       const std::string& scoring)
      : data_dir_(data_dir) {
    const auto conf = fs::path(data_dir) / "config" / "idiomcraft.conf";
    auto cfg = fs::exists(conf) ? load_config(conf) : GameConfig{};
    cfg.language = language;
    if (log_path) {
      log_ = std::make_unique<FileEventLog>(*log_path);
    } else {
      log_ = std::make_unique<MemoryEventLog>();
    }
    engine_ = std::make_unique<Engine>(
        cfg, LemmaDictionary::from_file(fs::path(data_dir) / "lemmas" / (language + ".tsv"), language), *log_,
        sim::make_policy(sim::regime_from_string(scoring), cfg.scoring));
    engine_->replay_log();
  }

  Engine& engine() { return *engine_; }

 private:
  std::string data_dir_;
  std::unique_ptr<EventLog> log_;
  std::unique_ptr<Engine> engine_;
};

json outcome_json(const CommandOutcome& o) {
  json j{{"seq", o.seq}, {"reviewer_points", o.reviewer_points}, {"score_snapshot", o.score_snapshot}};
  if (o.submission_id) j["submission_id"] = *o.submission_id;
  if (o.sample_type) j["sample_type"] = std::string(to_string(*o.sample_type));
  if (!o.tip_key.empty()) j["tip_key"] = o.tip_key;
  j["achievements"] = json::array();
  for (const auto a : o.achievements) j["achievements"].push_back(std::string(to_string(a)));
  j["notifications"] = o.notifications;
  return j;
}

}  // namespace

PYBIND11_MODULE(_idiomcraft, m) {
  m.doc() = "idiomcraft engine bindings";

  py::register_exception<GameError>(m, "GameError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const GameError& e) {
      py::set_error(py::module_::import("idiomcraft._idiomcraft").attr("GameError"),
                    (std::string(to_string(e.code())) + ": " + e.what()).c_str());
    }
  });

  m.def("tokenize", [](const std::string& text) {
    std::vector<std::string> out;
    for (const auto& t : tokenize(text)) out.push_back(t.surface);
    return out;
  });

  py::class_<LemmaDictionary>(m, "LemmaDictionary")
      .def(py::init<std::string>(), py::arg("language"))
      .def_static("from_file", [](const std::string& path, const std::string& language) {
        return LemmaDictionary::from_file(path, language);
      })
      .def("load", &LemmaDictionary::load)
      .def("add", &LemmaDictionary::add)
      .def("lookup", [](const LemmaDictionary& d, const std::string& s) { return d.lookup(s); })
      .def("__len__", &LemmaDictionary::size)
      .def_property_readonly("language", &LemmaDictionary::language);

  m.def("lemmatize", [](const std::string& text, const LemmaDictionary& dict) {
    return lemmatize(tokenize(text), dict);
  });

  py::class_<IdiomPattern>(m, "IdiomPattern")
      .def_readonly("id", &IdiomPattern::id)
      .def_readonly("language", &IdiomPattern::language)
      .def_readonly("gloss", &IdiomPattern::gloss)
      .def_readonly("literal_gloss", &IdiomPattern::literal_gloss)
      .def_readonly("ordered", &IdiomPattern::ordered)
      .def_property_readonly("constituents", &IdiomPattern::constituent_lemmas)
      .def_property_readonly("pattern", &IdiomPattern::pattern_text)
      .def("display", &IdiomPattern::display_text)
      .def("line", [](const IdiomPattern& p) { return format_idiom_line(p); })
      .def("__repr__", [](const IdiomPattern& p) { return "<IdiomPattern " + p.id + " '" + p.pattern_text() + "'>"; });

  m.def("parse_pattern", [](const std::string& source, const std::string& language) {
    return parse_pattern(source, language);
  });
  m.def("parse_idiom_line", [](const std::string& line, const std::string& language) {
    return parse_idiom_line(line, language);
  });

  // (positions, gap_tokens) or None
  m.def("locate",
        [](const std::string& text, const IdiomPattern& pattern, const LemmaDictionary& dict)
            -> std::optional<std::pair<std::vector<std::size_t>, std::size_t>> {
          const auto tokens = tokenize(text);
          const auto match = locate(tokens, lemmatize(tokens, dict), pattern);
          if (!match) return std::nullopt;
          return std::make_pair(match->constituent_positions, match->gap_tokens);
        });
  m.def("classify", [](const std::string& text, const IdiomPattern& pattern, const LemmaDictionary& dict,
                       bool idiomatic) -> std::optional<std::string> {
    const auto tokens = tokenize(text);
    const auto match = locate(tokens, lemmatize(tokens, dict), pattern);
    if (!match) return std::nullopt;
    return std::string(to_string(classify(*match, idiomatic)));
  });
  m.def("find_candidate_sentences",
        [](const std::vector<std::string>& corpus, const IdiomPattern& pattern, const LemmaDictionary& dict) {
          std::vector<std::pair<std::string, bool>> out;
          for (const auto& c : find_candidate_sentences(corpus, pattern, dict)) out.emplace_back(c.sentence, c.matched);
          return out;
        });

  m.def("effective_scores", [](const std::string& state) {
    const auto s = effective_scores(balance_state_from_string(state));
    return std::vector<Points>{s.a, s.b, s.c, s.d};
  });
  m.def("update_balance", [](std::int64_t a, std::int64_t c, const std::string& state) {
    TypeCounts t;
    t[SampleType::A] = a;
    t[SampleType::C] = c;
    return std::string(to_string(update_balance(t, balance_state_from_string(state))));
  });
  m.def("level_for", [](Points total) { return level_for(total); });

  py::class_<Game>(m, "Game")
      .def(py::init<std::string, std::string, std::optional<std::string>, std::string>(), py::arg("data_dir"),
           py::arg("language") = "en", py::arg("log_path") = py::none(), py::arg("scoring") = "hysteresis")
      .def("register_player",
           [](Game& g, const std::string& id, const std::string& name, const std::string& at) {
             return outcome_json(g.engine().register_player(id, name, ts(at))).dump();
           })
      .def("add_idiom",
           [](Game& g, const std::string& line, const std::string& at) { return g.engine().add_idiom(line, ts(at)); })
      .def("schedule_idiom",
           [](Game& g, const std::string& date, const std::string& idiom, const std::string& at) {
             return outcome_json(g.engine().schedule_idiom(date, idiom, ts(at))).dump();
           })
      .def("open_day",
           [](Game& g, const std::string& date, const std::string& idiom, const std::string& at, std::uint64_t seed) {
             return outcome_json(g.engine().open_day(date, idiom, ts(at), seed)).dump();
           },
           py::arg("date"), py::arg("idiom_id"), py::arg("at"), py::arg("seed") = 0)
      .def("close_day",
           [](Game& g, const std::string& date, const std::string& at) {
             return outcome_json(g.engine().close_day(date, ts(at))).dump();
           })
      .def("submit",
           [](Game& g, const std::string& player, const std::string& text, bool idiomatic, const std::string& at) {
             return outcome_json(g.engine().label_submission(player, text, idiomatic, ts(at))).dump();
           })
      .def("review",
           [](Game& g, const std::string& reviewer, std::uint64_t id, const std::string& verdict,
              const std::string& at) {
             return outcome_json(g.engine().record_review(reviewer, id, verdict_from_string(verdict), ts(at))).dump();
           })
      .def("next_for",
           [](Game& g, const std::string& reviewer, const std::string& date) -> std::optional<std::uint64_t> {
             const auto s = g.engine().next_for(reviewer, date);
             if (!s) return std::nullopt;
             return s->id;
           })
      .def("start_happy_hour",
           [](Game& g, const std::string& moderator, const std::string& at) {
             const auto hh = g.engine().start_happy_hour(moderator, ts(at));
             return std::make_pair(clock::format_timestamp(hh.start), clock::format_timestamp(hh.end));
           })
      .def("ban",
           [](Game& g, const std::string& moderator, const std::string& player, const std::string& reason,
              const std::string& at) { g.engine().ban(moderator, player, reason, ts(at)); })
      .def("unban",
           [](Game& g, const std::string& moderator, const std::string& player, const std::string& reason,
              const std::string& at) { g.engine().unban(moderator, player, reason, ts(at)); })
      .def("leaderboard",
           [](Game& g, const std::string& date) { return json(g.engine().leaderboard(date)).dump(); })
      .def("day_stats",
           [](Game& g, const std::string& date) { return to_json_value(day_stats(g.engine().snapshot(), date)).dump(); })
      .def("export",
           [](Game& g, const std::string& format, bool include_excluded) {
             ExportFilter f;
             f.include_excluded = include_excluded;
             const auto records = export_corpus(g.engine().snapshot(), f, g.engine().config().pseudonym_salt);
             if (format == "tsv") return to_tsv(records);
             if (format != "jsonl") fail(ErrorCode::ValidationFailed, "format must be jsonl or tsv");
             return to_jsonl(records);
           },
           py::arg("format") = "jsonl", py::arg("include_excluded") = false)
      .def("state_hash", [](Game& g) { return g.engine().state_hash(); })
      .def("events", [](Game& g) { return serialize_event_log(g.engine().log().records()); });

  m.def("run_sim",
        [](const std::string& data_dir, int players, int days, const std::string& policy, const std::string& scoring,
           std::uint64_t seed, int submissions_per_day, int idle_players, const std::string& language) {
          sim::SimConfig c;
          c.data_dir = data_dir;
          c.players = players;
          c.days = days;
          c.policy = policy;
          c.regime = sim::regime_from_string(scoring);
          c.seed = seed;
          c.submissions_per_day = submissions_per_day;
          c.idle_players = idle_players;
          c.language = language;
          const auto run = sim::run_sim(c);
          py::dict out;
          out["jsonl"] = run.report.jsonl();
          out["csv"] = run.report.csv();
          out["state_hash"] = run.report.state_hash;
          out["events"] = serialize_event_log(run.events);
          return out;
        },
        py::arg("data_dir"), py::arg("players") = 20, py::arg("days") = 1, py::arg("policy") = "natural",
        py::arg("scoring") = "hysteresis", py::arg("seed") = 1, py::arg("submissions_per_day") = 100,
        py::arg("idle_players") = 0, py::arg("language") = "en");

  m.def("lint_catalogs", [](const std::string& dir) {
    std::vector<std::tuple<std::string, std::string, std::string>> out;
    for (const auto& i : lint_catalogs(load_catalog_dir(dir))) out.emplace_back(i.language, i.key, i.message);
    return out;
  });
}
