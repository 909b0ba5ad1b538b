#pragma once

#include <functional>
#include <map>
#include <mutex>
#include <string>

#include <json.hpp>

#include "idiomcraft/analytics.hpp"
#include "idiomcraft/dispatcher.hpp"
#include "idiomcraft/engine.hpp"

namespace idiomcraft {

struct ApiRequest {
  std::string method;
  std::string path;
  std::map<std::string, std::string> query;
  std::string body;
  std::string authorization;  // raw Authorization header
};

struct ApiResponse {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

nlohmann::json to_json_value(const DayStats& stats);

/// Moderator HTTP API over one engine. handle() is transport-free so tests
/// can drive it directly; serve() binds it to an HTTP listener.
class AdminApi {
 public:
  using Clock = std::function<Timestamp()>;

  AdminApi(Engine& engine, std::string token, Clock now, Dispatcher* dispatcher = nullptr);

  ApiResponse handle(const ApiRequest& request);

  /// Blocks until stop() is called or the listener fails.
  bool serve(const std::string& host, int port);
  void stop();

 private:
  ApiResponse route(const ApiRequest& request);
  void after_mutation();

  Engine& engine_;
  std::string token_;
  Clock now_;
  Dispatcher* dispatcher_;
  std::mutex stop_mutex_;
  std::function<void()> stop_;
};

int status_for(ErrorCode code);

}  // namespace idiomcraft
