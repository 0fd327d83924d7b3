#include "kgqa/config.hpp"

#include "kgqa/errors.hpp"
#include "kgqa/remote_model.hpp"
#include "kgqa/table_model.hpp"

namespace kgqa {

DecodeStrategy RunConfig::strategy() const {
  DecodeStrategy s;
  try {
    s = parse_strategy(decode, seed);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  s.max_length = max_length;
  return s;
}

AggregationConfig RunConfig::aggregation() const {
  AggregationConfig a;
  a.gamma_g = gamma_g.value_or(task == Task::StoryCommonsense ? 0.0 : 1.0);
  a.gamma_ga = gamma_ga;
  a.betas = betas;
  a.aggregator = aggregator;
  return a;
}

void RunConfig::validate() const {
  if (backend.empty()) throw ConfigError("no backend given (table:PATH or remote:URL)");
  if (levels < 0) throw ConfigError("levels must be >= 0");
  if (max_length < 1) throw ConfigError("max generation length must be >= 1");
  if (gamma_g && *gamma_g < 0) throw ConfigError("gamma-g must be >= 0");
  if (gamma_ga < 0) throw ConfigError("gamma-ga must be >= 0");
  if (jobs == 0) throw ConfigError("jobs must be >= 1");
  for (double b : betas) {
    if (!(b >= 0)) throw ConfigError("betas must be >= 0");
  }
  try {
    strategy().validate();
    aggregation().betas_for(levels);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (marginal_context.empty()) throw ConfigError("marginal context must not be empty");
}

std::unique_ptr<KnowledgeModel> make_model(const std::string& backend,
                                           const std::string& remote_end_token) {
  if (backend.starts_with("table:")) {
    return std::make_unique<TableModel>(TableModel::load(backend.substr(6)));
  }
  if (backend.starts_with("remote:")) {
    return std::make_unique<RemoteModel>(backend.substr(7), remote_end_token);
  }
  throw ConfigError("backend must be table:PATH or remote:URL, got '" + backend + "'");
}

}  // namespace kgqa
