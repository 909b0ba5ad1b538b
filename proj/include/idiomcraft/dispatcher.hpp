#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "idiomcraft/engine.hpp"
#include "idiomcraft/error.hpp"
#include "idiomcraft/l10n.hpp"
#include "idiomcraft/transport.hpp"

namespace idiomcraft {

struct InboundEvent {
  enum class Kind { Start, MenuChoice, FreeText, ReviewVerdict };
  std::string player;
  Kind kind = Kind::Start;
  std::string payload;      // menu choice, sentence, or "<submission id>:<verdict>"
  Timestamp at = 0;
  std::string display_name;  // used on Start
};

// menu payloads
inline constexpr const char* kMenuSubmit = "submit";
inline constexpr const char* kMenuReview = "review";
inline constexpr const char* kMenuScoreboard = "scoreboard";
inline constexpr const char* kMenuIdiom = "idiom";
inline constexpr const char* kMenuHelp = "help";
inline constexpr const char* kLabelYes = "label:yes";
inline constexpr const char* kLabelNo = "label:no";

/// Chat session state machine. Maps inbound events to engine commands and
/// renders replies and notifications through one catalog.
class Dispatcher {
 public:
  enum class Step { Idle, AwaitSentence, AwaitLabel };

  Dispatcher(Engine& engine, const Catalog& catalog, Transport& transport);

  /// Replies for the event followed by any notifications it caused.
  std::vector<OutboundMessage> dispatch(const InboundEvent& event);

  /// Renders engine notifications not yet delivered, one push per recipient.
  std::vector<OutboundMessage> flush_notifications();

  Step step(const std::string& player) const;

 private:
  struct Session {
    Step step = Step::Idle;
    std::string pending;  // sentence awaiting its label
  };

  using Out = std::vector<OutboundMessage>;

  void reply(Out& out, const std::string& to, const std::string& key, const Params& params = {},
             std::vector<Button> buttons = {}) const;
  void menu(Out& out, const std::string& to) const;
  void error(Out& out, const std::string& to, const GameError& e) const;
  void serve_review(Out& out, const std::string& player, const std::string& date);
  void on_start(Out& out, const InboundEvent& e);
  void on_menu(Out& out, const InboundEvent& e);
  void on_text(Out& out, const InboundEvent& e);
  void on_verdict(Out& out, const InboundEvent& e);
  void on_label(Out& out, const InboundEvent& e, bool idiomatic);
  Out flush_locked();

  Engine& engine_;
  const Catalog& catalog_;
  Transport& transport_;
  mutable std::mutex mutex_;
  std::map<std::string, Session> sessions_;
  std::uint64_t notified_seq_ = 0;
};

/// Sentence with constituent tokens wrapped in [brackets].
std::string mark_constituents(const std::string& text, const std::vector<std::size_t>& positions);

}  // namespace idiomcraft
