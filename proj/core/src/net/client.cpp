#include "emosim/net/client.hpp"

#include <condition_variable>
#include <deque>
#include <mutex>
#include <thread>

namespace emosim::net {

std::string AgentSession::hello(const std::string& name) const {
  return encode(Register{Role::Agent, name});
}

std::vector<std::string> AgentSession::on_line(std::string_view line) {
  std::vector<std::string> replies;
  if (done_) return replies;
  const WireMessage msg = decode(line);
  if (const auto* wel = std::get_if<Welcome>(&msg)) {
    id_ = wel->agent_id;
    controller_.emplace(factory_(wel->agent_id));
  } else if (const auto* sen = std::get_if<Sensors>(&msg)) {
    if (!controller_) {
      replies.push_back(encode(Error{"protocol", "sensors before welcome"}));
      return replies;
    }
    const AgentOutput out = controller_->step(sen->readings, sen->cycle);
    replies.push_back(encode(Status{sen->cycle, out.pad, out.motor_ceiling, out.sensor_reach}));
    replies.push_back(encode(Motors{sen->cycle, out.command}));
    ++answered_;
  } else if (std::holds_alternative<Finish>(msg)) {
    done_ = true;
  } else if (const auto* err = std::get_if<Error>(&msg)) {
    error_ = *err;
    done_ = true;
  }
  return replies;
}

std::uint64_t run_agent_client(LineChannel& channel, ControllerFactory factory,
                               const std::string& name) {
  AgentSession session(std::move(factory));
  channel.write(session.hello(name));
  while (!session.done()) {
    auto line = channel.read_line();
    if (!line) break;
    for (const auto& reply : session.on_line(*line)) channel.write(reply);
  }
  channel.close();
  return session.cycles_answered();
}

ControllerFactory local_factory(const ScenarioConfig& scenario, const TeamSpec& team,
                                std::uint64_t seed) {
  return [scenario, team, seed](AgentId id) {
    return make_agent(scenario, team.composition.at(static_cast<std::size_t>(id)), seed,
                      static_cast<std::size_t>(id));
  };
}

namespace {

class LineQueue {
 public:
  void push(std::optional<std::string> line) {
    {
      std::lock_guard lock(mutex_);
      if (closed_) return;
      if (!line) closed_ = true;
      queue_.push_back(std::move(line));
    }
    ready_.notify_one();
  }

  std::optional<std::string> pop() {
    std::unique_lock lock(mutex_);
    ready_.wait(lock, [this] { return !queue_.empty(); });
    auto line = std::move(queue_.front());
    if (line) queue_.pop_front();
    return line;
  }

 private:
  std::mutex mutex_;
  std::condition_variable ready_;
  std::deque<std::optional<std::string>> queue_;
  bool closed_ = false;
};

class MemoryLink final : public Link {
 public:
  explicit MemoryLink(std::shared_ptr<LineQueue> to_client) : to_client_(std::move(to_client)) {}
  void send(std::string line) override {
    if (!line.empty() && line.back() == '\n') line.pop_back();
    to_client_->push(std::move(line));
  }
  void close() override { to_client_->push(std::nullopt); }

 private:
  std::shared_ptr<LineQueue> to_client_;
};

class MemoryChannel final : public LineChannel {
 public:
  MemoryChannel(Inbox& inbox, std::shared_ptr<LineQueue> from_server)
      : inbox_(inbox), from_server_(std::move(from_server)) {}
  ~MemoryChannel() override { close(); }

  void attach(SessionId session) { session_ = session; }

  std::optional<std::string> read_line() override { return from_server_->pop(); }

  void write(std::string_view line) override {
    if (closed_) return;
    if (!line.empty() && line.back() == '\n') line.remove_suffix(1);
    inbox_.deliver(session_, std::string(line));
  }

  void close() override {
    if (closed_) return;
    closed_ = true;
    inbox_.close(session_);
  }

 private:
  Inbox& inbox_;
  std::shared_ptr<LineQueue> from_server_;
  SessionId session_ = 0;
  bool closed_ = false;
};

}  // namespace

std::unique_ptr<LineChannel> connect_memory(Inbox& inbox) {
  auto queue = std::make_shared<LineQueue>();
  auto channel = std::make_unique<MemoryChannel>(inbox, queue);
  channel->attach(inbox.open(std::make_shared<MemoryLink>(queue)));
  return channel;
}

TrialMetrics run_memory_trial(const ScenarioConfig& scenario, const TeamSpec& team,
                              std::uint64_t seed, ServerOptions options, ServerStats* stats) {
  Inbox inbox;
  const auto factory = local_factory(scenario, team, seed);
  std::vector<std::jthread> clients;
  CycleServer server(scenario, team, seed, inbox, options);
  for (std::size_t i = 0; i < team.composition.size(); ++i) {
    clients.emplace_back([&inbox, factory, i] {
      auto channel = connect_memory(inbox);
      run_agent_client(*channel, factory, "agent" + std::to_string(i));
    });
  }
  TrialMetrics metrics = server.run();
  clients.clear();
  if (stats != nullptr) *stats = server.stats();
  return metrics;
}

}  // namespace emosim::net
