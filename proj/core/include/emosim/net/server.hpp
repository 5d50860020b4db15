#pragma once

// Cycle server: owns the world, registers agents and viewers, and drives the
// sense / report / command / step loop over any line transport.

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "emosim/harness.hpp"
#include "emosim/net/wire.hpp"
#include "emosim/scenario.hpp"

namespace emosim::net {

/// Server-side handle to one client connection.
class Link {
 public:
  virtual ~Link() = default;
  /// Queues one encoded line; must not block for long.
  virtual void send(std::string line) = 0;
  virtual void close() = 0;
};

using SessionId = std::uint64_t;

struct Inbound {
  enum class Kind { Connected, Line, Disconnected };
  Kind kind = Kind::Line;
  SessionId session = 0;
  std::shared_ptr<Link> link;  // set for Connected
  std::string line;            // set for Line
};

/// Thread-safe queue that transports feed and the server drains.
class Inbox {
 public:
  SessionId open(std::shared_ptr<Link> link);
  void deliver(SessionId session, std::string line);
  void close(SessionId session);

  /// Blocks until an event arrives or `deadline` passes.
  std::optional<Inbound> pop(std::optional<std::chrono::steady_clock::time_point> deadline = {});
  std::optional<Inbound> try_pop();

 private:
  void push(Inbound event);

  std::mutex mutex_;
  std::condition_variable ready_;
  std::deque<Inbound> queue_;
  SessionId next_session_ = 1;
};

struct ServerOptions {
  /// Lockstep waits for every connected agent each cycle; otherwise the
  /// server advances at the cycle period and late agents coast.
  bool lockstep = true;
  std::size_t expected_agents = kTeamSize;
  std::chrono::milliseconds registration_timeout{30000};
};

struct ServerStats {
  std::uint64_t stale_messages = 0;      // cycle tag other than the current one
  std::uint64_t duplicate_messages = 0;  // repeated STA or MOT within a cycle
  std::uint64_t parse_errors = 0;
  std::uint64_t late_agents = 0;         // agent-cycles without a command at the deadline
  std::vector<AgentId> dropped;          // sessions lost mid-trial
};

class CycleServer {
 public:
  CycleServer(ScenarioConfig scenario, TeamSpec team, std::uint64_t seed, Inbox& inbox,
              ServerOptions options = {});
  /// Closes every remaining client link.
  ~CycleServer();
  CycleServer(const CycleServer&) = delete;
  CycleServer& operator=(const CycleServer&) = delete;

  /// Waits for the team to register, then runs the trial to completion.
  /// Throws std::runtime_error when registration times out.
  TrialMetrics run();

  const ServerStats& stats() const { return stats_; }

 private:
  struct Session {
    std::shared_ptr<Link> link;
    enum class Role { Pending, Agent, Viewer } role = Role::Pending;
    AgentId agent = -1;
  };

  void wait_for_agents();
  void handle_control(const Inbound& event);
  void send_to(SessionId session, const WireMessage& msg);
  void broadcast_view(std::uint64_t cycle);
  void finish_all(std::uint64_t cycle);

  ScenarioConfig scenario_;
  TeamSpec team_;
  std::uint64_t seed_;
  Inbox& inbox_;
  ServerOptions options_;
  ServerStats stats_;
  World world_;
  std::vector<std::optional<SessionId>> agent_sessions_;
  std::vector<std::optional<PadVector>> last_pad_;
  std::vector<bool> finished_;
  std::vector<std::pair<SessionId, Session>> sessions_;
  bool running_ = false;

  Session* find(SessionId id);
};

}  // namespace emosim::net
