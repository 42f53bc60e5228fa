#include "logic_forge/agent/llm.hpp"

#include <cstdlib>
#include <fstream>

#include "httplib.h"
#include "json.hpp"
#include "logic_forge/agent/prompts.hpp"

namespace logic_forge::agent {

namespace {

std::string env_or_empty(const char* name) {
  const char* v = std::getenv(name);
  return v == nullptr ? std::string() : std::string(v);
}

nlohmann::json messages_json(const std::vector<ChatMessage>& messages) {
  auto arr = nlohmann::json::array();
  for (const auto& m : messages) arr.push_back({{"role", m.role}, {"content", m.content}});
  return arr;
}

std::string fill(std::string text, const std::string& key, const std::string& value) {
  const std::string marker = "{" + key + "}";
  for (auto at = text.find(marker); at != std::string::npos; at = text.find(marker, at + value.size())) {
    text.replace(at, marker.size(), value);
  }
  return text;
}

}  // namespace

LlmClientConfig LlmClientConfig::from_env() {
  LlmClientConfig c;
  c.endpoint = env_or_empty("LOGIC_AGENT_ENDPOINT");
  c.model = env_or_empty("LOGIC_AGENT_MODEL");
  c.api_key = env_or_empty("LOGIC_AGENT_API_KEY");
  return c;
}

HttpChatTransport::HttpChatTransport(LlmClientConfig config)
    : config_(std::move(config)), in_flight_(std::max(1, config_.max_in_flight)) {
  if (config_.endpoint.empty() || config_.model.empty()) {
    throw std::invalid_argument("LLM endpoint and model must be set");
  }
  const auto scheme_end = config_.endpoint.find("://");
  if (scheme_end == std::string::npos) throw std::invalid_argument("endpoint must be an absolute URL");
  const auto path_start = config_.endpoint.find('/', scheme_end + 3);
  base_ = config_.endpoint.substr(0, path_start);
  path_ = path_start == std::string::npos ? "/" : config_.endpoint.substr(path_start);
}

std::string HttpChatTransport::complete(const std::vector<ChatMessage>& messages) {
  const nlohmann::json body = {
      {"model", config_.model}, {"messages", messages_json(messages)}, {"temperature", config_.temperature}};
  httplib::Result res;
  {
    in_flight_.acquire();
    struct Release {
      std::counting_semaphore<>& s;
      ~Release() { s.release(); }
    } release{in_flight_};
    httplib::Client client(base_);
    const auto secs = static_cast<time_t>(config_.timeout.count());
    client.set_connection_timeout(secs);
    client.set_read_timeout(secs);
    client.set_write_timeout(secs);
    if (!config_.api_key.empty()) client.set_bearer_token_auth(config_.api_key);
    res = client.Post(path_, body.dump(), "application/json");
  }
  if (!res) throw TransportError("request to " + config_.endpoint + " failed: " + httplib::to_string(res.error()));
  if (res->status != 200) {
    throw TransportError("endpoint answered HTTP " + std::to_string(res->status));
  }
  try {
    const auto reply = nlohmann::json::parse(res->body);
    return reply.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw TransportError(std::string("malformed completion response: ") + e.what());
  }
}

RecordingTransport::RecordingTransport(std::shared_ptr<ChatTransport> inner, std::string path)
    : inner_(std::move(inner)), path_(std::move(path)) {}

std::string RecordingTransport::complete(const std::vector<ChatMessage>& messages) {
  std::string reply = inner_->complete(messages);
  const nlohmann::json line = {{"request", messages_json(messages)}, {"response", reply}};
  std::lock_guard lock(mutex_);
  std::ofstream out(path_, std::ios::app | std::ios::binary);
  out << line.dump() << '\n';
  return reply;
}

ReplayTransport::ReplayTransport(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open transcript " + path);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto j = nlohmann::json::parse(line);
    Exchange ex;
    for (const auto& m : j.at("request")) {
      ex.request.push_back({m.at("role").get<std::string>(), m.at("content").get<std::string>()});
    }
    ex.response = j.at("response").get<std::string>();
    exchanges_.push_back(std::move(ex));
  }
}

std::string ReplayTransport::complete(const std::vector<ChatMessage>& messages) {
  std::lock_guard lock(mutex_);
  if (next_ >= exchanges_.size()) throw TransportError("transcript exhausted");
  const Exchange& ex = exchanges_[next_];
  if (ex.request != messages) {
    throw TransportError("request " + std::to_string(next_ + 1) + " differs from the transcript");
  }
  ++next_;
  return ex.response;
}

std::size_t ReplayTransport::remaining() const {
  std::lock_guard lock(mutex_);
  return exchanges_.size() - next_;
}

std::string extract_code_block(const std::string& reply) {
  const auto open = reply.find("```");
  if (open == std::string::npos) throw ExtractionError("reply contains no fenced code block");
  const auto body = reply.find('\n', open);
  if (body == std::string::npos) throw ExtractionError("unterminated code block");
  const auto close = reply.find("```", body + 1);
  if (close == std::string::npos) throw ExtractionError("unterminated code block");
  // The closing fence sits at the start of its line.
  std::string code = reply.substr(body + 1, close - body - 1);
  return code;
}

PromptSet PromptSet::bundled() {
  return PromptSet{std::string(prompt_text("language_guide_v1")), std::string(prompt_text("data_structure_v1")),
                   std::string(prompt_text("constraints_v1"))};
}

LlmFormalizer::LlmFormalizer(std::shared_ptr<ChatTransport> transport, PromptSet prompts)
    : transport_(std::move(transport)), prompts_(std::move(prompts)) {}

frontend::SourceText LlmFormalizer::gen_data_structure(const std::string& puzzle_text,
                                                       const OutputFormat& expected_format) {
  std::string columns;
  for (const auto& c : expected_format.columns) columns += (columns.empty() ? "" : ", ") + c;
  std::string user = fill(prompts_.data_structure, "puzzle", puzzle_text);
  user = fill(user, "format", columns.empty() ? "(any)" : columns);
  const auto reply = transport_->complete({{"system", prompts_.language_guide}, {"user", user}});
  return frontend::SourceText{extract_code_block(reply), "data structure"};
}

frontend::SourceText LlmFormalizer::gen_constraints(const frontend::SourceText& data_structure,
                                                    const std::string& puzzle_text) {
  std::string user = fill(prompts_.constraints, "puzzle", puzzle_text);
  user = fill(user, "data_structure", data_structure.text);
  const auto reply = transport_->complete({{"system", prompts_.language_guide}, {"user", user}});
  return frontend::SourceText{extract_code_block(reply), "constraints"};
}

}  // namespace logic_forge::agent
