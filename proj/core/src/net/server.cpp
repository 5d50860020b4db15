#include "emosim/net/server.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <thread>

namespace emosim::net {

SessionId Inbox::open(std::shared_ptr<Link> link) {
  SessionId id = 0;
  {
    std::lock_guard lock(mutex_);
    id = next_session_++;
    queue_.push_back({Inbound::Kind::Connected, id, std::move(link), {}});
  }
  ready_.notify_one();
  return id;
}

void Inbox::deliver(SessionId session, std::string line) {
  push({Inbound::Kind::Line, session, nullptr, std::move(line)});
}

void Inbox::close(SessionId session) { push({Inbound::Kind::Disconnected, session, nullptr, {}}); }

void Inbox::push(Inbound event) {
  {
    std::lock_guard lock(mutex_);
    queue_.push_back(std::move(event));
  }
  ready_.notify_one();
}

std::optional<Inbound> Inbox::pop(std::optional<std::chrono::steady_clock::time_point> deadline) {
  std::unique_lock lock(mutex_);
  const auto has_event = [this] { return !queue_.empty(); };
  if (deadline) {
    if (!ready_.wait_until(lock, *deadline, has_event)) return std::nullopt;
  } else {
    ready_.wait(lock, has_event);
  }
  Inbound event = std::move(queue_.front());
  queue_.pop_front();
  return event;
}

std::optional<Inbound> Inbox::try_pop() {
  std::lock_guard lock(mutex_);
  if (queue_.empty()) return std::nullopt;
  Inbound event = std::move(queue_.front());
  queue_.pop_front();
  return event;
}

CycleServer::CycleServer(ScenarioConfig scenario, TeamSpec team, std::uint64_t seed,
                         Inbox& inbox, ServerOptions options)
    : scenario_(std::move(scenario)),
      team_(std::move(team)),
      seed_(seed),
      inbox_(inbox),
      options_(options) {
  options_.expected_agents = team_.composition.size();
  world_ = load_world(scenario_, seed_, team_.composition.size());
  agent_sessions_.assign(team_.composition.size(), std::nullopt);
  last_pad_.assign(team_.composition.size(), std::nullopt);
  finished_.assign(team_.composition.size(), false);
}

CycleServer::~CycleServer() {
  for (auto& [sid, s] : sessions_) s.link->close();
}

CycleServer::Session* CycleServer::find(SessionId id) {
  for (auto& [sid, s] : sessions_)
    if (sid == id) return &s;
  return nullptr;
}

void CycleServer::send_to(SessionId session, const WireMessage& msg) {
  if (auto* s = find(session)) s->link->send(encode(msg));
}

void CycleServer::handle_control(const Inbound& event) {
  switch (event.kind) {
    case Inbound::Kind::Connected:
      sessions_.emplace_back(event.session, Session{event.link});
      return;
    case Inbound::Kind::Disconnected: {
      auto it = std::find_if(sessions_.begin(), sessions_.end(),
                             [&](const auto& p) { return p.first == event.session; });
      if (it == sessions_.end()) return;
      if (it->second.role == Session::Role::Agent) {
        const auto id = it->second.agent;
        agent_sessions_[static_cast<std::size_t>(id)].reset();
        if (running_ && !finished_[static_cast<std::size_t>(id)]) stats_.dropped.push_back(id);
      }
      sessions_.erase(it);
      return;
    }
    case Inbound::Kind::Line:
      break;
  }

  Session* session = find(event.session);
  if (session == nullptr) return;
  const WireMessage msg = decode(event.line);
  if (is_parse_error(msg)) {
    ++stats_.parse_errors;
    session->link->send(encode(msg));
    return;
  }
  const auto* reg = std::get_if<Register>(&msg);
  if (reg == nullptr) {
    if (session->role == Session::Role::Pending)
      session->link->send(encode(Error{"protocol", "register first"}));
    else
      ++stats_.stale_messages;
    return;
  }
  if (session->role != Session::Role::Pending) {
    session->link->send(encode(Error{"protocol", "already registered"}));
    return;
  }
  if (reg->role == Role::Viewer) {
    session->role = Session::Role::Viewer;
    session->link->send(encode(Welcome{0, world_.params().cycle_seconds}));
    return;
  }
  const auto slot = std::find(agent_sessions_.begin(), agent_sessions_.end(), std::nullopt);
  if (running_ || slot == agent_sessions_.end()) {
    session->link->send(encode(Error{"full", "team is complete"}));
    session->link->close();
    std::erase_if(sessions_, [&](const auto& p) { return p.first == event.session; });
    return;
  }
  const auto id = static_cast<AgentId>(slot - agent_sessions_.begin());
  *slot = event.session;
  session->role = Session::Role::Agent;
  session->agent = id;
  session->link->send(encode(Welcome{id, world_.params().cycle_seconds}));
}

void CycleServer::wait_for_agents() {
  const auto deadline = std::chrono::steady_clock::now() + options_.registration_timeout;
  while (std::any_of(agent_sessions_.begin(), agent_sessions_.end(),
                     [](const auto& s) { return !s.has_value(); })) {
    auto event = inbox_.pop(deadline);
    if (!event) throw std::runtime_error("timed out waiting for agents to register");
    handle_control(*event);
  }
}

void CycleServer::broadcast_view(std::uint64_t cycle) {
  ViewFrame frame{cycle, {}};
  for (const auto& body : world_.bodies()) {
    const auto i = static_cast<std::size_t>(body.id);
    frame.agents.push_back({body.id, body.position, body.heading, body.broadcast_label,
                            scale_for_report(last_pad_[i].value_or(PadVector{})),
                            finished_[i]});
  }
  std::string line;
  for (auto& [sid, s] : sessions_) {
    if (s.role != Session::Role::Viewer) continue;
    if (line.empty()) line = encode(frame);
    s.link->send(line);
  }
}

void CycleServer::finish_all(std::uint64_t cycle) {
  const std::string fin = encode(Finish{cycle});
  for (auto& [sid, s] : sessions_) {
    if (s.role == Session::Role::Agent && finished_[static_cast<std::size_t>(s.agent)]) continue;
    s.link->send(fin);
  }
}

TrialMetrics CycleServer::run() {
  wait_for_agents();
  running_ = true;
  world_.start_all();

  const std::size_t n = team_.composition.size();
  enum class Phase { Active, Arrived, Retired };
  std::vector<Phase> phase(n, Phase::Active);
  TrialRecorder recorder(scenario_.id, team_, seed_, scenario_.max_cycles);
  const auto period = std::chrono::duration_cast<std::chrono::steady_clock::duration>(
      std::chrono::duration<double>(world_.params().cycle_seconds));

  auto readings = sense_all(world_);
  std::uint32_t cycle = 0;
  auto cycle_start = std::chrono::steady_clock::now();
  for (; cycle < scenario_.max_cycles; ++cycle) {
    std::vector<std::optional<Status>> status(n);
    std::vector<std::optional<Motors>> motors(n);
    std::vector<bool> waiting(n, false);
    for (std::size_t i = 0; i < n; ++i) {
      if (phase[i] == Phase::Retired || !agent_sessions_[i]) continue;
      waiting[i] = true;
      send_to(*agent_sessions_[i], Sensors{cycle, readings[i]});
    }
    broadcast_view(cycle);

    const auto deadline = cycle_start + period;
    auto pending = [&] {
      for (std::size_t i = 0; i < n; ++i)
        if (waiting[i] && agent_sessions_[i] && (!status[i] || !motors[i])) return true;
      return false;
    };
    auto absorb = [&](const Inbound& event) {
      Session* s = event.kind == Inbound::Kind::Line ? find(event.session) : nullptr;
      if (s == nullptr || s->role != Session::Role::Agent) {
        handle_control(event);
        return;
      }
      const auto i = static_cast<std::size_t>(s->agent);
      const WireMessage msg = decode(event.line);
      if (const auto* st = std::get_if<Status>(&msg)) {
        if (st->cycle != cycle || !waiting[i]) {
          ++stats_.stale_messages;
        } else {
          if (status[i]) ++stats_.duplicate_messages;
          status[i] = *st;
        }
      } else if (const auto* mo = std::get_if<Motors>(&msg)) {
        if (mo->cycle != cycle || !waiting[i]) {
          ++stats_.stale_messages;
        } else {
          if (motors[i]) ++stats_.duplicate_messages;
          motors[i] = *mo;
        }
      } else {
        handle_control(event);
      }
    };

    while (pending()) {
      auto event = options_.lockstep ? inbox_.pop() : inbox_.pop(deadline);
      if (!event) break;
      absorb(*event);
    }
    while (auto event = inbox_.try_pop()) absorb(*event);

    std::map<AgentId, MotorCommand> commands;
    for (std::size_t i = 0; i < n; ++i) {
      if (phase[i] == Phase::Retired) continue;
      const auto id = static_cast<AgentId>(i);
      if (status[i]) last_pad_[i] = status[i]->pad;
      if (last_pad_[i] && (status[i] || agent_sessions_[i])) {
        recorder.record_pad(id, *last_pad_[i]);
        if (status[i])
          apply_agent_report(world_, id, status[i]->pad, status[i]->motor_ceiling,
                             status[i]->sensor_reach);
      }
      if (phase[i] == Phase::Active) {
        if (motors[i]) {
          commands[id] = motors[i]->command;
        } else if (waiting[i]) {
          ++stats_.late_agents;
        }
      } else {
        phase[i] = Phase::Retired;
        finished_[i] = true;
        if (agent_sessions_[i]) send_to(*agent_sessions_[i], Finish{cycle});
      }
    }
    if (std::none_of(phase.begin(), phase.end(), [](Phase p) { return p == Phase::Active; }))
      break;

    readings = step_world(world_, commands);
    recorder.record_positions(world_);
    for (std::size_t i = 0; i < n; ++i) {
      if (phase[i] == Phase::Active && world_.body(static_cast<AgentId>(i)).stopped) {
        phase[i] = Phase::Arrived;
        recorder.record_arrival(static_cast<AgentId>(i), cycle + 1);
      }
    }

    cycle_start += period;
    if (!options_.lockstep) {
      std::this_thread::sleep_until(cycle_start);
    }
  }
  recorder.set_cycles_run(std::min<std::uint32_t>(cycle, scenario_.max_cycles));
  finish_all(cycle);
  running_ = false;
  return recorder.finish();
}

}  // namespace emosim::net
