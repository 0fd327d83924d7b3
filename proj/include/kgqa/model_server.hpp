#pragma once

#include <filesystem>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "kgqa/knowledge_model.hpp"

namespace httplib {
class Server;
}

namespace kgqa {

// One recorded request/response pair of the remote wire protocol.
struct Exchange {
  std::string endpoint;  // "/v1/logprobs" or "/v1/score"
  nlohmann::json request;
  nlohmann::json response;
};

struct Recording {
  std::vector<Exchange> exchanges;

  nlohmann::json to_json() const;
  static Recording from_json(const nlohmann::json& j);
  void save(const std::filesystem::path& path) const;
  static Recording load(const std::filesystem::path& path);
};

// Test fixture that speaks the remote wire protocol. It either answers from a
// live KnowledgeModel (optionally recording every exchange) or replays a
// Recording, answering unknown requests with 404.
class ModelServer {
 public:
  explicit ModelServer(const KnowledgeModel& model, bool record = false);
  explicit ModelServer(Recording replay);
  ~ModelServer();

  ModelServer(const ModelServer&) = delete;
  ModelServer& operator=(const ModelServer&) = delete;

  // Binds (port 0 picks a free port) and serves on a background thread.
  int start(const std::string& host = "127.0.0.1", int port = 0);
  // Blocks serving on the calling thread.
  void run(const std::string& host, int port);
  void stop();

  std::string url() const;
  Recording recording() const;

 private:
  void install_handlers();
  nlohmann::json answer(const std::string& endpoint, const nlohmann::json& request);

  const KnowledgeModel* model_ = nullptr;
  bool record_ = false;
  Recording replay_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
  std::string host_;
  int port_ = 0;
  mutable std::mutex mu_;
  Recording recorded_;
};

}  // namespace kgqa
