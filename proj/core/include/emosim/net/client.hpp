#pragma once

// Agent-side protocol driver and the in-memory transport used for local runs.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "emosim/mind.hpp"
#include "emosim/net/server.hpp"
#include "emosim/net/wire.hpp"

namespace emosim::net {

/// Client-side, blocking, line-oriented connection.
class LineChannel {
 public:
  virtual ~LineChannel() = default;
  /// Next line without its newline; nullopt once the peer has closed.
  virtual std::optional<std::string> read_line() = 0;
  virtual void write(std::string_view line) = 0;
  virtual void close() = 0;
};

using ControllerFactory = std::function<AgentController(AgentId)>;

/// Protocol state machine for one agent: builds its controller on WEL and
/// answers each SEN with STA followed by MOT.
class AgentSession {
 public:
  explicit AgentSession(ControllerFactory factory) : factory_(std::move(factory)) {}

  std::string hello(const std::string& name) const;
  /// Encoded replies to one inbound line.
  std::vector<std::string> on_line(std::string_view line);

  bool done() const { return done_; }
  std::optional<AgentId> id() const { return id_; }
  const std::optional<Error>& error() const { return error_; }
  std::uint64_t cycles_answered() const { return answered_; }

 private:
  ControllerFactory factory_;
  std::optional<AgentController> controller_;
  std::optional<AgentId> id_;
  std::optional<Error> error_;
  std::uint64_t answered_ = 0;
  bool done_ = false;
};

/// Registers, then answers sensor frames until FIN, an error, or EOF.
/// Returns the number of cycles answered.
std::uint64_t run_agent_client(LineChannel& channel, ControllerFactory factory,
                               const std::string& name);

/// Factory for a client that knows the scenario, team and seed locally, so
/// the controller for slot `id` matches the in-process one exactly.
ControllerFactory local_factory(const ScenarioConfig& scenario, const TeamSpec& team,
                                std::uint64_t seed);

/// Connects a new client channel directly to `inbox`.
std::unique_ptr<LineChannel> connect_memory(Inbox& inbox);

/// Runs a full networked trial over the in-memory transport with one client
/// thread per agent.
TrialMetrics run_memory_trial(const ScenarioConfig& scenario, const TeamSpec& team,
                              std::uint64_t seed, ServerOptions options = {},
                              ServerStats* stats = nullptr);

}  // namespace emosim::net
