#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace idiomcraft {

struct Button {
  std::string label;
  std::string payload;
  bool operator==(const Button&) const = default;
};

struct OutboundMessage {
  enum class Kind { Reply, Edit, Push } kind = Kind::Reply;
  std::string recipient;
  std::string text;
  std::vector<Button> buttons;  // inline keyboard
  std::string key;              // catalog key it was rendered from
  std::optional<std::uint64_t> edits;  // message id being replaced
  std::uint64_t id = 0;         // assigned by the transport
};

/// Outbound side of a chat platform: send, edit, inline keyboards and
/// unsolicited pushes. Delivery order is preserved per recipient.
class Transport {
 public:
  virtual ~Transport() = default;
  /// Returns the platform message id.
  virtual std::uint64_t deliver(OutboundMessage message) = 0;

  std::uint64_t send(const std::string& to, const std::string& text);
  std::uint64_t send_keyboard(const std::string& to, const std::string& text, std::vector<Button> buttons);
  void edit(const std::string& to, std::uint64_t message_id, const std::string& text);
  std::uint64_t push(const std::string& to, const std::string& text);
};

/// Keeps every message in memory; used by tests and the simulator.
class LoopbackTransport final : public Transport {
 public:
  std::uint64_t deliver(OutboundMessage message) override;

  std::vector<OutboundMessage> messages() const;
  std::vector<OutboundMessage> inbox(const std::string& recipient) const;
  std::size_t size() const;
  void clear();

 private:
  mutable std::mutex mutex_;
  std::vector<OutboundMessage> messages_;
};

/// Writes messages as plain text, buttons as `[label -> payload]`.
class TerminalTransport final : public Transport {
 public:
  explicit TerminalTransport(std::ostream& out) : out_(out) {}
  std::uint64_t deliver(OutboundMessage message) override;

 private:
  std::mutex mutex_;
  std::ostream& out_;
  std::uint64_t next_id_ = 0;
};

}  // namespace idiomcraft
