#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace idiomcraft {

enum class ErrorCode {
  // lexical
  EmptyText,
  DictionaryFormat,
  // patterns
  PatternSyntax,
  TooFewConstituents,
  BadWildcardPosition,
  // scoring
  SelfReview,
  // game day
  DayAlreadyOpen,
  NoIdiomScheduled,
  UnknownIdiom,
  DuplicateIdiom,
  DayClosed,
  OutsideWindow,
  Banned,
  DuplicateSentence,
  NoMatch,
  HappyHourActive,
  // review queue / moderation
  AlreadyReviewed,
  UnknownSubmission,
  UnknownPlayer,
  AlreadyBanned,
  NotBanned,
  AlreadyRegistered,
  // store
  ValidationFailed,
  CorruptLog,
  // analytics
  UnknownDay,
  // l10n
  MissingKey,
  MissingParam,
  CatalogFormat,
  // config / sim
  ConfigInvalid,
};

std::string_view to_string(ErrorCode code);

/// All domain failures surface as GameError; callers branch on code().
class GameError : public std::runtime_error {
 public:
  GameError(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace idiomcraft
