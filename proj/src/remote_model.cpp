#include "kgqa/remote_model.hpp"

#include <cmath>

#include <httplib.h>

#include "kgqa/errors.hpp"
#include "kgqa/json_util.hpp"

namespace kgqa {

nlohmann::json logprobs_request(const ConditionalQuery& query) {
  nlohmann::ordered_json j;
  j["context"] = detokenize(query.context_tokens);
  j["relation"] = query.relation ? nlohmann::ordered_json(to_string(*query.relation)) : nlohmann::ordered_json(nullptr);
  j["prefix"] = query.generated_prefix;
  return nlohmann::json::parse(j.dump());
}

nlohmann::json score_request(std::span<const Token> context, std::optional<Relation> relation,
                             std::span<const Token> target) {
  nlohmann::ordered_json j;
  j["context"] = detokenize(context);
  j["relation"] = relation ? nlohmann::ordered_json(to_string(*relation)) : nlohmann::ordered_json(nullptr);
  j["target"] = TokenSeq(target.begin(), target.end());
  return nlohmann::json::parse(j.dump());
}

RemoteModel::RemoteModel(std::string base_url, Token end_token, std::chrono::milliseconds timeout)
    : end_token_(std::move(end_token)), timeout_(timeout) {
  constexpr std::string_view kScheme = "http://";
  if (!base_url.starts_with(kScheme) || base_url.size() == kScheme.size()) {
    throw ConfigError("remote backend URL must look like http://host:port, got '" + base_url + "'");
  }
  auto slash = base_url.find('/', kScheme.size());
  if (slash == std::string::npos) {
    scheme_host_port_ = base_url;
  } else {
    scheme_host_port_ = base_url.substr(0, slash);
    base_path_ = base_url.substr(slash);
    while (!base_path_.empty() && base_path_.back() == '/') base_path_.pop_back();
  }
}

nlohmann::json RemoteModel::post(const std::string& path, const nlohmann::json& body) const {
  httplib::Client client(scheme_host_port_);
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(timeout_);
  const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(timeout_ - secs);
  client.set_connection_timeout(secs.count(), usecs.count());
  client.set_read_timeout(secs.count(), usecs.count());
  auto res = client.Post(base_path_ + path, body.dump(), "application/json");
  if (!res) {
    throw TransportError("POST " + scheme_host_port_ + base_path_ + path + " failed: " +
                         httplib::to_string(res.error()));
  }
  if (res->status < 200 || res->status >= 300) {
    throw TransportError("POST " + path + " returned HTTP " + std::to_string(res->status));
  }
  try {
    return nlohmann::json::parse(res->body);
  } catch (const nlohmann::json::exception& e) {
    throw MalformedResponseError("POST " + path + ": response is not JSON: " + e.what());
  }
}

TokenDistribution RemoteModel::next_token_logprobs(const ConditionalQuery& query) const {
  auto body = post("/v1/logprobs", logprobs_request(query));
  std::map<Token, double> entries;
  try {
    const auto& lps = body.at("logprobs");
    if (!lps.is_object()) throw MalformedResponseError("'logprobs' is not an object");
    for (const auto& [tok, lp] : lps.items()) entries[tok] = decode_real(lp);
  } catch (const nlohmann::json::exception& e) {
    throw MalformedResponseError(std::string("/v1/logprobs: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw MalformedResponseError(std::string("/v1/logprobs: ") + e.what());
  }
  TokenDistribution dist(std::move(entries));
  for (const auto& [tok, lp] : dist.entries()) {
    if (lp == INFINITY) throw MalformedResponseError("/v1/logprobs: +inf log-probability");
  }
  const double mass = dist.total_probability();
  if (!(std::abs(mass - 1.0) <= kNormalizationTolerance)) {
    throw NormalizationError("/v1/logprobs: distribution mass " + std::to_string(mass));
  }
  return dist;
}

std::vector<double> RemoteModel::token_logprobs(std::span<const Token> context,
                                                std::optional<Relation> relation,
                                                std::span<const Token> target) const {
  auto body = post("/v1/score", score_request(context, relation, target));
  std::vector<double> out;
  try {
    const auto& lps = body.at("token_logprobs");
    if (!lps.is_array()) throw MalformedResponseError("'token_logprobs' is not an array");
    for (const auto& lp : lps) {
      double v = decode_real(lp);
      if (v > 0.0 || v == INFINITY) {
        throw MalformedResponseError("/v1/score: positive log-probability");
      }
      out.push_back(v);
    }
  } catch (const nlohmann::json::exception& e) {
    throw MalformedResponseError(std::string("/v1/score: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw MalformedResponseError(std::string("/v1/score: ") + e.what());
  }
  if (out.size() != target.size()) {
    throw MalformedResponseError("/v1/score: expected " + std::to_string(target.size()) +
                                 " log-probabilities, got " + std::to_string(out.size()));
  }
  return out;
}

}  // namespace kgqa
