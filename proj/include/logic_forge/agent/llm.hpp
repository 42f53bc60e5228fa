#pragma once

#include <chrono>
#include <memory>
#include <mutex>
#include <semaphore>
#include <string>
#include <vector>

#include "logic_forge/agent/formalizer.hpp"

namespace logic_forge::agent {

struct LlmClientConfig {
  /// Full URL of a chat-completion endpoint, e.g. http://host:8000/v1/chat/completions.
  std::string endpoint;
  std::string model;
  std::string api_key;  // sent as a bearer token when non-empty
  std::chrono::seconds timeout{120};
  double temperature = 0.0;
  int max_in_flight = 8;

  /// Reads LOGIC_AGENT_ENDPOINT, LOGIC_AGENT_MODEL and LOGIC_AGENT_API_KEY.
  static LlmClientConfig from_env();
};

struct ChatMessage {
  std::string role;
  std::string content;

  friend bool operator==(const ChatMessage&, const ChatMessage&) = default;
};

/// One chat-completion round trip. Implementations are safe to share across
/// concurrent pipelines.
class ChatTransport {
 public:
  virtual ~ChatTransport() = default;
  virtual std::string complete(const std::vector<ChatMessage>& messages) = 0;
};

/// OpenAI-style HTTP endpoint: POST {model, messages, temperature}, reply text
/// taken from choices[0].message.content.
class HttpChatTransport : public ChatTransport {
 public:
  explicit HttpChatTransport(LlmClientConfig config);
  std::string complete(const std::vector<ChatMessage>& messages) override;

 private:
  LlmClientConfig config_;
  std::string base_;  // scheme://host[:port]
  std::string path_;
  std::counting_semaphore<> in_flight_;
};

/// Forwards to another transport and appends each exchange to a JSONL file.
class RecordingTransport : public ChatTransport {
 public:
  RecordingTransport(std::shared_ptr<ChatTransport> inner, std::string path);
  std::string complete(const std::vector<ChatMessage>& messages) override;

 private:
  std::shared_ptr<ChatTransport> inner_;
  std::string path_;
  std::mutex mutex_;
};

/// Serves replies from a recorded JSONL transcript in order. A request that
/// differs from the recorded one raises TransportError.
class ReplayTransport : public ChatTransport {
 public:
  explicit ReplayTransport(const std::string& path);
  std::string complete(const std::vector<ChatMessage>& messages) override;
  std::size_t remaining() const;

 private:
  struct Exchange {
    std::vector<ChatMessage> request;
    std::string response;
  };
  std::vector<Exchange> exchanges_;
  std::size_t next_ = 0;
  mutable std::mutex mutex_;
};

/// Body of the first fenced code block in `reply`. Throws ExtractionError.
std::string extract_code_block(const std::string& reply);

struct PromptSet {
  std::string language_guide;
  std::string data_structure;  // placeholders: {puzzle}, {format}
  std::string constraints;     // placeholders: {puzzle}, {data_structure}

  /// The prompt assets bundled with the library.
  static PromptSet bundled();
};

/// Formalizer backed by a chat model: one request per step, zero-shot.
class LlmFormalizer : public Formalizer {
 public:
  LlmFormalizer(std::shared_ptr<ChatTransport> transport, PromptSet prompts = PromptSet::bundled());

  frontend::SourceText gen_data_structure(const std::string& puzzle_text,
                                          const OutputFormat& expected_format) override;
  frontend::SourceText gen_constraints(const frontend::SourceText& data_structure,
                                       const std::string& puzzle_text) override;

 private:
  std::shared_ptr<ChatTransport> transport_;
  PromptSet prompts_;
};

}  // namespace logic_forge::agent
