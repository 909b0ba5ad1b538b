#include "idiomcraft/transport.hpp"

#include <ostream>

namespace idiomcraft {

std::uint64_t Transport::send(const std::string& to, const std::string& text) {
  OutboundMessage m;
  m.recipient = to;
  m.text = text;
  return deliver(std::move(m));
}

std::uint64_t Transport::send_keyboard(const std::string& to, const std::string& text,
                                       std::vector<Button> buttons) {
  OutboundMessage m;
  m.recipient = to;
  m.text = text;
  m.buttons = std::move(buttons);
  return deliver(std::move(m));
}

void Transport::edit(const std::string& to, std::uint64_t message_id, const std::string& text) {
  OutboundMessage m;
  m.kind = OutboundMessage::Kind::Edit;
  m.recipient = to;
  m.text = text;
  m.edits = message_id;
  deliver(std::move(m));
}

std::uint64_t Transport::push(const std::string& to, const std::string& text) {
  OutboundMessage m;
  m.kind = OutboundMessage::Kind::Push;
  m.recipient = to;
  m.text = text;
  return deliver(std::move(m));
}

std::uint64_t LoopbackTransport::deliver(OutboundMessage message) {
  std::lock_guard lock(mutex_);
  message.id = messages_.size() + 1;
  messages_.push_back(std::move(message));
  return messages_.back().id;
}

std::vector<OutboundMessage> LoopbackTransport::messages() const {
  std::lock_guard lock(mutex_);
  return messages_;
}

std::vector<OutboundMessage> LoopbackTransport::inbox(const std::string& recipient) const {
  std::lock_guard lock(mutex_);
  std::vector<OutboundMessage> out;
  for (const auto& m : messages_) {
    if (m.recipient == recipient) out.push_back(m);
  }
  return out;
}

std::size_t LoopbackTransport::size() const {
  std::lock_guard lock(mutex_);
  return messages_.size();
}

void LoopbackTransport::clear() {
  std::lock_guard lock(mutex_);
  messages_.clear();
}

std::uint64_t TerminalTransport::deliver(OutboundMessage message) {
  std::lock_guard lock(mutex_);
  const auto id = ++next_id_;
  const char* tag = message.kind == OutboundMessage::Kind::Push ? "push"
                    : message.kind == OutboundMessage::Kind::Edit ? "edit"
                                                                  : "bot";
  out_ << '[' << tag << " -> " << message.recipient << "] " << message.text << '\n';
  for (const auto& b : message.buttons) out_ << "    [" << b.label << " -> " << b.payload << "]\n";
  out_.flush();
  return id;
}

}  // namespace idiomcraft
