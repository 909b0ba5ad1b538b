#include "idiomcraft/error.hpp"

namespace idiomcraft {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyText: return "EmptyText";
    case ErrorCode::DictionaryFormat: return "DictionaryFormat";
    case ErrorCode::PatternSyntax: return "PatternSyntax";
    case ErrorCode::TooFewConstituents: return "TooFewConstituents";
    case ErrorCode::BadWildcardPosition: return "BadWildcardPosition";
    case ErrorCode::SelfReview: return "SelfReview";
    case ErrorCode::DayAlreadyOpen: return "DayAlreadyOpen";
    case ErrorCode::NoIdiomScheduled: return "NoIdiomScheduled";
    case ErrorCode::UnknownIdiom: return "UnknownIdiom";
    case ErrorCode::DuplicateIdiom: return "DuplicateIdiom";
    case ErrorCode::DayClosed: return "DayClosed";
    case ErrorCode::OutsideWindow: return "OutsideWindow";
    case ErrorCode::Banned: return "Banned";
    case ErrorCode::DuplicateSentence: return "DuplicateSentence";
    case ErrorCode::NoMatch: return "NoMatch";
    case ErrorCode::HappyHourActive: return "HappyHourActive";
    case ErrorCode::AlreadyReviewed: return "AlreadyReviewed";
    case ErrorCode::UnknownSubmission: return "UnknownSubmission";
    case ErrorCode::UnknownPlayer: return "UnknownPlayer";
    case ErrorCode::AlreadyBanned: return "AlreadyBanned";
    case ErrorCode::NotBanned: return "NotBanned";
    case ErrorCode::AlreadyRegistered: return "AlreadyRegistered";
    case ErrorCode::ValidationFailed: return "ValidationFailed";
    case ErrorCode::CorruptLog: return "CorruptLog";
    case ErrorCode::UnknownDay: return "UnknownDay";
    case ErrorCode::MissingKey: return "MissingKey";
    case ErrorCode::MissingParam: return "MissingParam";
    case ErrorCode::CatalogFormat: return "CatalogFormat";
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
  }
  return "Unknown";
}

void fail(ErrorCode code, const std::string& message) {
  throw GameError(code, message);
}

}  // namespace idiomcraft
