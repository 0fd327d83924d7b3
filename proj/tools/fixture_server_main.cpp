// Serves a table model (or replays recorded exchanges) over the remote wire
// protocol, for exercising the remote backend without a neural model.
#include <atomic>
#include <chrono>
#include <csignal>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "kgqa/errors.hpp"
#include "kgqa/model_server.hpp"
#include "kgqa/table_model.hpp"

namespace {
std::atomic<bool> g_stop{false};
void on_signal(int) { g_stop = true; }
}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Knowledge model fixture server", "kgqa_fixture_server"};
  std::string table, replay, record, host = "127.0.0.1";
  int port = 8080;
  auto* table_opt = app.add_option("--table", table, "Table model to serve")->check(CLI::ExistingFile);
  auto* replay_opt = app.add_option("--replay", replay, "Recording to replay")->check(CLI::ExistingFile);
  table_opt->excludes(replay_opt);
  app.add_option("--record", record, "Write served exchanges here on shutdown")->needs(table_opt);
  app.add_option("--host", host)->capture_default_str();
  app.add_option("--port", port, "0 picks a free port")->capture_default_str();
  CLI11_PARSE(app, argc, argv);
  if (table.empty() && replay.empty()) {
    std::cerr << "one of --table or --replay is required\n";
    return 1;
  }

  try {
    std::unique_ptr<kgqa::TableModel> model;
    std::unique_ptr<kgqa::ModelServer> server;
    if (!table.empty()) {
      model = std::make_unique<kgqa::TableModel>(kgqa::TableModel::load(table));
      server = std::make_unique<kgqa::ModelServer>(*model, !record.empty());
    } else {
      server = std::make_unique<kgqa::ModelServer>(kgqa::Recording::load(replay));
    }
    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
    server->start(host, port);
    std::cout << server->url() << std::endl;
    while (!g_stop) std::this_thread::sleep_for(std::chrono::milliseconds(100));
    server->stop();
    if (!record.empty()) server->recording().save(record);
  } catch (const kgqa::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == kgqa::ErrorKind::Data ? 2 : 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
