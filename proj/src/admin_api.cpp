#include "idiomcraft/admin_api.hpp"

#include <regex>

#include <httplib.h>

#include "idiomcraft/corpus.hpp"
#include "idiomcraft/json_io.hpp"
#include "idiomcraft/unicode.hpp"

namespace idiomcraft {

using nlohmann::json;

namespace {

ApiResponse json_response(int status, const json& body) { return {status, body.dump(), "application/json"}; }

ApiResponse error_response(int status, std::string_view code, const std::string& message) {
  return json_response(status, {{"error", code}, {"message", message}});
}

// Body as a JSON object; an empty body is an empty object.
json body_object(const std::string& body) {
  if (unicode::trim(body).empty()) return json::object();
  auto j = json::parse(body, nullptr, false);
  if (j.is_discarded() || !j.is_object()) fail(ErrorCode::ValidationFailed, "body must be a JSON object");
  return j;
}

std::string string_field(const json& j, const char* name, std::string fallback = {}) {
  if (!j.contains(name)) return fallback;
  if (!j[name].is_string()) fail(ErrorCode::ValidationFailed, std::string(name) + " must be a string");
  return j[name].get<std::string>();
}

bool truthy(const std::string& v) { return v == "1" || v == "true" || v == "yes"; }

}  // namespace

int status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownDay:
    case ErrorCode::UnknownPlayer:
    case ErrorCode::UnknownSubmission:
      return 404;
    case ErrorCode::DayAlreadyOpen:
    case ErrorCode::DuplicateIdiom:
    case ErrorCode::HappyHourActive:
    case ErrorCode::AlreadyBanned:
    case ErrorCode::NotBanned:
    case ErrorCode::AlreadyRegistered:
    case ErrorCode::DayClosed:
    case ErrorCode::OutsideWindow:
      return 409;
    default:
      return 422;
  }
}

json to_json_value(const DayStats& s) {
  json hist = json::object();
  for (const auto& [reviews, subs] : s.review_histogram) hist[std::to_string(reviews)] = subs;
  return {{"date", s.date},
          {"idiom_id", s.idiom_id},
          {"idiomatic_count", s.idiomatic_count},
          {"nonidiomatic_count", s.nonidiomatic_count},
          {"total", s.total},
          {"likes", s.likes},
          {"dislikes", s.dislikes},
          {"reports", s.reports},
          {"avg_reviews_per_submission", s.avg_reviews_per_submission.value()},
          {"avg_reviews_ratio", {s.avg_reviews_per_submission.num, s.avg_reviews_per_submission.den}},
          {"dislike_pct", s.dislike_pct.value()},
          {"dislike_pct_ratio", {s.dislike_pct.num, s.dislike_pct.den}},
          {"type_counts", s.type_counts},
          {"review_histogram", hist},
          {"hourly_interactions", s.hourly_interactions}};
}

AdminApi::AdminApi(Engine& engine, std::string token, Clock now, Dispatcher* dispatcher)
    : engine_(engine), token_(std::move(token)), now_(std::move(now)), dispatcher_(dispatcher) {}

void AdminApi::after_mutation() {
  if (dispatcher_) dispatcher_->flush_notifications();
}

ApiResponse AdminApi::handle(const ApiRequest& request) {
  if (token_.empty() || request.authorization != "Bearer " + token_) {
    return error_response(401, "Unauthorized", "missing or wrong bearer token");
  }
  try {
    return route(request);
  } catch (const GameError& e) {
    return error_response(status_for(e.code()), to_string(e.code()), e.what());
  } catch (const json::exception& e) {
    return error_response(422, "ValidationFailed", e.what());
  }
}

ApiResponse AdminApi::route(const ApiRequest& req) {
  static const std::regex stats_route(R"(^/api/days/([^/]+)/stats$)");
  static const std::regex day_open(R"(^/api/days/([^/]+)/open$)");
  static const std::regex day_close(R"(^/api/days/([^/]+)/close$)");
  static const std::regex ban(R"(^/api/players/([^/]+)/ban$)");
  static const std::regex unban(R"(^/api/players/([^/]+)/unban$)");
  static const std::regex leaderboard_route(R"(^/api/leaderboard/([^/]+)$)");
  static const std::regex flag(R"(^/api/submissions/([0-9]+)/flag$)");

  const bool get = req.method == "GET";
  const bool post = req.method == "POST";
  std::smatch m;
  const auto& path = req.path;
  const auto wrong_method = [] { return error_response(405, "MethodNotAllowed", "method not allowed"); };

  if (std::regex_match(path, m, stats_route)) {
    if (!get) return wrong_method();
    const auto state = engine_.snapshot();
    auto body = to_json_value(day_stats(state, m[1].str()));
    const auto& day = state.days.at(m[1]);
    body["submission_count"] = day.submission_count;
    body["balance"] = std::string(to_string(day.balance));
    body["soft_target"] = engine_.config().soft_target;
    body["target_reached"] = day.target_reached;
    body["closed"] = day.closed;
    return json_response(200, body);
  }
  if (path == "/api/reports") {
    if (!get) return wrong_method();
    json list = json::array();
    for (const auto& s : engine_.reports()) list.push_back(s);
    return json_response(200, list);
  }
  if (path == "/api/idioms") {
    if (!post) return wrong_method();
    std::string line = req.body;
    std::string date;
    if (const auto trimmed = unicode::trim(req.body); !trimmed.empty() && trimmed.front() == '{') {
      const auto j = body_object(req.body);
      line = string_field(j, "line");
      date = string_field(j, "date");
    }
    while (!line.empty() && (line.back() == '\n' || line.back() == '\r')) line.pop_back();
    const auto at = now_();
    const auto pattern = engine_.add_idiom(line, at);
    if (!date.empty()) engine_.schedule_idiom(date, pattern.id, at);
    json body = pattern;
    if (!date.empty()) body["scheduled_for"] = date;
    return json_response(201, body);
  }
  if (std::regex_match(path, m, day_open)) {
    if (!post) return wrong_method();
    const auto j = body_object(req.body);
    const auto seed = j.contains("seed") ? j.at("seed").get<std::uint64_t>() : 0;
    engine_.open_day(m[1], string_field(j, "idiom_id"), now_(), seed);
    after_mutation();
    return json_response(200, *engine_.day(m[1]));
  }
  if (std::regex_match(path, m, day_close)) {
    if (!post) return wrong_method();
    engine_.close_day(m[1], now_());
    return json_response(200, *engine_.day(m[1]));
  }
  if (path == "/api/happy-hour") {
    if (!post) return wrong_method();
    const auto j = body_object(req.body);
    const auto hh = engine_.start_happy_hour(string_field(j, "moderator", "admin"), now_());
    after_mutation();
    return json_response(200, {{"start", clock::format_timestamp(hh.start)},
                               {"end", clock::format_timestamp(hh.end)},
                               {"minutes", engine_.config().happy_hour_minutes}});
  }
  if (std::regex_match(path, m, ban) || std::regex_match(path, m, unban)) {
    if (!post) return wrong_method();
    const bool banning = path.ends_with("/ban");
    const auto j = body_object(req.body);
    const auto moderator = string_field(j, "moderator", "admin");
    const auto reason = string_field(j, "reason");
    if (banning) {
      engine_.ban(moderator, m[1], reason, now_());
    } else {
      engine_.unban(moderator, m[1], reason, now_());
    }
    return json_response(200, *engine_.player(m[1]));
  }
  if (std::regex_match(path, m, flag)) {
    if (!post) return wrong_method();
    const auto j = body_object(req.body);
    const auto id = std::stoull(m[1]);
    engine_.flag_submission(string_field(j, "moderator", "admin"), id, string_field(j, "reason"), now_());
    return json_response(200, *engine_.submission(id));
  }
  if (std::regex_match(path, m, leaderboard_route)) {
    if (!get) return wrong_method();
    if (!engine_.day(m[1])) fail(ErrorCode::UnknownDay, "no game day " + std::string(m[1]));
    json rows = json::array();
    for (const auto& r : engine_.leaderboard(m[1])) rows.push_back(r);
    return json_response(200, rows);
  }
  if (path == "/api/export") {
    if (!get) return wrong_method();
    ExportFilter filter;
    filter.language = engine_.config().language;
    if (const auto it = req.query.find("from"); it != req.query.end() && !it->second.empty()) {
      clock::parse_date(it->second);
      filter.from = it->second;
    }
    if (const auto it = req.query.find("to"); it != req.query.end() && !it->second.empty()) {
      clock::parse_date(it->second);
      filter.to = it->second;
    }
    if (const auto it = req.query.find("include_excluded"); it != req.query.end()) {
      filter.include_excluded = truthy(it->second);
    }
    const auto records = export_corpus(engine_.snapshot(), filter, engine_.config().pseudonym_salt);
    const auto format = req.query.count("format") ? req.query.at("format") : std::string("jsonl");
    if (format == "tsv") return {200, to_tsv(records), "text/tab-separated-values; charset=utf-8"};
    if (format != "jsonl") fail(ErrorCode::ValidationFailed, "format must be jsonl or tsv");
    return {200, to_jsonl(records), "application/x-ndjson; charset=utf-8"};
  }
  return error_response(404, "NotFound", "no route for " + req.method + " " + path);
}

bool AdminApi::serve(const std::string& host, int port) {
  httplib::Server server;
  const auto bridge = [this](const httplib::Request& req, httplib::Response& res) {
    ApiRequest r;
    r.method = req.method;
    r.path = req.path;
    r.body = req.body;
    r.authorization = req.get_header_value("Authorization");
    for (const auto& [k, v] : req.params) r.query[k] = v;
    const auto out = handle(r);
    res.status = out.status;
    res.set_content(out.body, out.content_type);
  };
  server.Get(R"(/api/.*)", bridge);
  server.Post(R"(/api/.*)", bridge);
  {
    std::lock_guard lock(stop_mutex_);
    stop_ = [&server] { server.stop(); };
  }
  const bool ok = server.listen(host, port);
  std::lock_guard lock(stop_mutex_);
  stop_ = nullptr;
  return ok;
}

void AdminApi::stop() {
  std::lock_guard lock(stop_mutex_);
  if (stop_) stop_();
}

}  // namespace idiomcraft
