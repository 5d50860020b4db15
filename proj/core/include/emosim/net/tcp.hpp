#pragma once

// TCP transport for the line protocol.

#include <cstdint>
#include <memory>
#include <string>

#include "emosim/net/client.hpp"
#include "emosim/net/server.hpp"

namespace emosim::net {

/// Accepts connections on a background thread and feeds their lines into an
/// Inbox. Lines longer than 64 KiB close the connection.
class TcpListener {
 public:
  /// Port 0 picks an ephemeral port; see port().
  TcpListener(Inbox& inbox, std::uint16_t port, const std::string& address = "127.0.0.1");
  ~TcpListener();
  TcpListener(const TcpListener&) = delete;
  TcpListener& operator=(const TcpListener&) = delete;

  std::uint16_t port() const;
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Blocking client connection. Throws std::runtime_error on failure.
std::unique_ptr<LineChannel> connect_tcp(const std::string& host, std::uint16_t port);

/// Networked trial over loopback TCP with one local client thread per agent.
TrialMetrics run_tcp_trial(const ScenarioConfig& scenario, const TeamSpec& team,
                           std::uint64_t seed, ServerOptions options = {},
                           ServerStats* stats = nullptr);

}  // namespace emosim::net
