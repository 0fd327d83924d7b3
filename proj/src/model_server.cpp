#include "kgqa/model_server.hpp"

#include <fstream>

#include <httplib.h>

#include "kgqa/errors.hpp"
#include "kgqa/json_util.hpp"
#include "kgqa/remote_model.hpp"

namespace kgqa {

nlohmann::json Recording::to_json() const {
  auto arr = nlohmann::json::array();
  for (const auto& ex : exchanges) {
    arr.push_back({{"endpoint", ex.endpoint}, {"request", ex.request}, {"response", ex.response}});
  }
  return {{"exchanges", arr}};
}

Recording Recording::from_json(const nlohmann::json& j) {
  Recording rec;
  for (const auto& ex : j.at("exchanges")) {
    rec.exchanges.push_back({ex.at("endpoint").get<std::string>(), ex.at("request"),
                             ex.at("response")});
  }
  return rec;
}

void Recording::save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  out << to_json().dump(2) << '\n';
}

Recording Recording::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  try {
    return from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

ModelServer::ModelServer(const KnowledgeModel& model, bool record)
    : model_(&model), record_(record), server_(std::make_unique<httplib::Server>()) {
  install_handlers();
}

ModelServer::ModelServer(Recording replay)
    : replay_(std::move(replay)), server_(std::make_unique<httplib::Server>()) {
  install_handlers();
}

ModelServer::~ModelServer() { stop(); }

nlohmann::json ModelServer::answer(const std::string& endpoint, const nlohmann::json& request) {
  if (!model_) {
    for (const auto& ex : replay_.exchanges) {
      if (ex.endpoint == endpoint && ex.request == request) return ex.response;
    }
    throw std::out_of_range("no recorded exchange for " + endpoint + " " + request.dump());
  }
  auto relation_of = [](const nlohmann::json& r) -> std::optional<Relation> {
    if (r.is_null()) return std::nullopt;
    auto parsed = parse_relation(r.get<std::string>());
    if (!parsed) throw std::invalid_argument("unknown relation " + r.dump());
    return parsed;
  };
  nlohmann::ordered_json response;
  if (endpoint == "/v1/logprobs") {
    ConditionalQuery q{tokenize(request.at("context").get<std::string>()),
                       relation_of(request.at("relation")),
                       request.at("prefix").get<TokenSeq>()};
    nlohmann::ordered_json lps = nlohmann::ordered_json::object();
    const auto dist = model_->next_token_logprobs(q);
    for (const auto& [tok, lp] : dist.entries()) lps[tok] = encode_real(lp);
    response["logprobs"] = std::move(lps);
  } else {
    auto target = request.at("target").get<TokenSeq>();
    auto context = tokenize(request.at("context").get<std::string>());
    auto lps = nlohmann::json::array();
    for (double lp : model_->token_logprobs(context, relation_of(request.at("relation")), target)) {
      lps.push_back(encode_real(lp));
    }
    response["token_logprobs"] = std::move(lps);
  }
  auto plain = nlohmann::json::parse(response.dump());
  if (record_) {
    std::lock_guard lock(mu_);
    recorded_.exchanges.push_back({endpoint, request, plain});
  }
  return plain;
}

void ModelServer::install_handlers() {
  for (const char* endpoint : {"/v1/logprobs", "/v1/score"}) {
    std::string ep = endpoint;
    server_->Post(ep, [this, ep](const httplib::Request& req, httplib::Response& res) {
      nlohmann::json request;
      try {
        request = nlohmann::json::parse(req.body);
      } catch (const nlohmann::json::exception& e) {
        res.status = 400;
        res.set_content(nlohmann::json{{"error", e.what()}}.dump(), "application/json");
        return;
      }
      try {
        res.set_content(answer(ep, request).dump(), "application/json");
      } catch (const std::out_of_range& e) {
        res.status = 404;
        res.set_content(nlohmann::json{{"error", e.what()}}.dump(), "application/json");
      } catch (const std::exception& e) {
        res.status = 400;
        res.set_content(nlohmann::json{{"error", e.what()}}.dump(), "application/json");
      }
    });
  }
}

int ModelServer::start(const std::string& host, int port) {
  host_ = host;
  port_ = port == 0 ? server_->bind_to_any_port(host) : (server_->bind_to_port(host, port) ? port : -1);
  if (port_ < 0) throw TransportError("cannot bind " + host + ":" + std::to_string(port));
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
  return port_;
}

void ModelServer::run(const std::string& host, int port) {
  host_ = host;
  port_ = port;
  if (!server_->listen(host, port)) {
    throw TransportError("cannot listen on " + host + ":" + std::to_string(port));
  }
}

void ModelServer::stop() {
  if (server_) server_->stop();
  if (thread_.joinable()) thread_.join();
}

std::string ModelServer::url() const { return "http://" + host_ + ":" + std::to_string(port_); }

Recording ModelServer::recording() const {
  std::lock_guard lock(mu_);
  return recorded_;
}

}  // namespace kgqa
