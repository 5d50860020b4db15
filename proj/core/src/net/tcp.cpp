#include "emosim/net/tcp.hpp"

#include <boost/asio.hpp>
#include <deque>
#include <istream>
#include <stdexcept>
#include <thread>

namespace emosim::net {

namespace asio = boost::asio;
using asio::ip::tcp;

namespace {

constexpr std::size_t kMaxLine = 64 * 1024;

class TcpSession final : public Link, public std::enable_shared_from_this<TcpSession> {
 public:
  TcpSession(tcp::socket socket, Inbox& inbox)
      : socket_(std::move(socket)), inbox_(inbox), buffer_(kMaxLine) {}

  void start() {
    session_ = inbox_.open(shared_from_this());
    read();
  }

  void send(std::string line) override {
    asio::post(socket_.get_executor(), [self = shared_from_this(), line = std::move(line)]() mutable {
      self->outbox_.push_back(std::move(line));
      if (self->outbox_.size() == 1) self->write();
    });
  }

  void close() override {
    asio::post(socket_.get_executor(), [self = shared_from_this()] {
      self->closing_ = true;
      if (self->outbox_.empty()) self->shutdown();
    });
  }

 private:
  void read() {
    asio::async_read_until(socket_, buffer_, '\n',
                           [self = shared_from_this()](boost::system::error_code ec, std::size_t) {
                             self->on_read(ec);
                           });
  }

  void on_read(boost::system::error_code ec) {
    if (ec) {
      disconnect();
      return;
    }
    std::istream in(&buffer_);
    std::string line;
    std::getline(in, line);
    inbox_.deliver(session_, std::move(line));
    read();
  }

  void write() {
    asio::async_write(socket_, asio::buffer(outbox_.front()),
                      [self = shared_from_this()](boost::system::error_code ec, std::size_t) {
                        if (ec) {
                          self->disconnect();
                          return;
                        }
                        self->outbox_.pop_front();
                        if (!self->outbox_.empty()) {
                          self->write();
                        } else if (self->closing_) {
                          self->shutdown();
                        }
                      });
  }

  void shutdown() {
    boost::system::error_code ignored;
    socket_.shutdown(tcp::socket::shutdown_both, ignored);
    socket_.close(ignored);
  }

  void disconnect() {
    if (reported_) return;
    reported_ = true;
    outbox_.clear();
    shutdown();
    inbox_.close(session_);
  }

  tcp::socket socket_;
  Inbox& inbox_;
  asio::streambuf buffer_;
  std::deque<std::string> outbox_;
  SessionId session_ = 0;
  bool closing_ = false;
  bool reported_ = false;
};

class TcpChannel final : public LineChannel {
 public:
  TcpChannel(const std::string& host, std::uint16_t port) : socket_(io_), buffer_(kMaxLine) {
    tcp::resolver resolver(io_);
    boost::system::error_code ec;
    asio::connect(socket_, resolver.resolve(host, std::to_string(port), ec), ec);
    if (ec) throw std::runtime_error("cannot connect to " + host + ":" + std::to_string(port) +
                                     ": " + ec.message());
    socket_.set_option(tcp::no_delay(true));
  }
  ~TcpChannel() override { close(); }

  std::optional<std::string> read_line() override {
    boost::system::error_code ec;
    asio::read_until(socket_, buffer_, '\n', ec);
    if (ec) return std::nullopt;
    std::istream in(&buffer_);
    std::string line;
    std::getline(in, line);
    return line;
  }

  void write(std::string_view line) override {
    boost::system::error_code ec;
    asio::write(socket_, asio::buffer(line.data(), line.size()), ec);
  }

  void close() override {
    boost::system::error_code ignored;
    if (!socket_.is_open()) return;
    socket_.shutdown(tcp::socket::shutdown_both, ignored);
    socket_.close(ignored);
  }

 private:
  asio::io_context io_;
  tcp::socket socket_;
  asio::streambuf buffer_;
};

}  // namespace

struct TcpListener::Impl {
  Impl(Inbox& inbox, std::uint16_t port, const std::string& address)
      : inbox(inbox),
        acceptor(io, tcp::endpoint(asio::ip::make_address(address), port)),
        guard(asio::make_work_guard(io)) {
    accept();
    thread = std::thread([this] { io.run(); });
  }

  void accept() {
    acceptor.async_accept([this](boost::system::error_code ec, tcp::socket socket) {
      if (ec) return;
      socket.set_option(tcp::no_delay(true));
      auto session = std::make_shared<TcpSession>(std::move(socket), inbox);
      session->start();
      sessions.push_back(session);
      accept();
    });
  }

  void stop() {
    if (!thread.joinable()) return;
    asio::post(io, [this] {
      boost::system::error_code ignored;
      acceptor.close(ignored);
      for (auto& weak : sessions)
        if (auto session = weak.lock()) session->close();
      sessions.clear();
    });
    guard.reset();
    thread.join();
  }

  Inbox& inbox;
  asio::io_context io;
  tcp::acceptor acceptor;
  asio::executor_work_guard<asio::io_context::executor_type> guard;
  std::vector<std::weak_ptr<TcpSession>> sessions;
  std::thread thread;
};

TcpListener::TcpListener(Inbox& inbox, std::uint16_t port, const std::string& address)
    : impl_(std::make_unique<Impl>(inbox, port, address)) {}

TcpListener::~TcpListener() { stop(); }

std::uint16_t TcpListener::port() const { return impl_->acceptor.local_endpoint().port(); }

void TcpListener::stop() { impl_->stop(); }

std::unique_ptr<LineChannel> connect_tcp(const std::string& host, std::uint16_t port) {
  return std::make_unique<TcpChannel>(host, port);
}

TrialMetrics run_tcp_trial(const ScenarioConfig& scenario, const TeamSpec& team,
                           std::uint64_t seed, ServerOptions options, ServerStats* stats) {
  Inbox inbox;
  TcpListener listener(inbox, 0);
  const std::uint16_t port = listener.port();
  const auto factory = local_factory(scenario, team, seed);
  std::vector<std::jthread> clients;
  CycleServer server(scenario, team, seed, inbox, options);
  for (std::size_t i = 0; i < team.composition.size(); ++i) {
    clients.emplace_back([port, factory, i] {
      auto channel = connect_tcp("127.0.0.1", port);
      run_agent_client(*channel, factory, "agent" + std::to_string(i));
    });
  }
  TrialMetrics metrics = server.run();
  clients.clear();
  if (stats != nullptr) *stats = server.stats();
  return metrics;
}

}  // namespace emosim::net
