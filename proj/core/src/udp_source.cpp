#include "agisim/udp_source.hpp"

#include "agisim/errors.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

namespace agisim {

namespace {

constexpr std::size_t kMaxDatagram = 65536;
constexpr int kPollSliceMs = 50;

std::string errno_text() { return std::strerror(errno); }

}  // namespace

UdpListener::UdpListener(std::uint16_t port, StreamConfig cfg, UdpOptions opts)
    : cfg_(std::move(cfg)), opts_(std::move(opts)), channel_(opts_.buffer_capacity) {
  cfg_.validate();
  fd_ = ::socket(AF_INET, SOCK_DGRAM, 0);
  if (fd_ < 0) throw SocketError("socket(): " + errno_text());

  int rcvbuf = 4 << 20;
  ::setsockopt(fd_, SOL_SOCKET, SO_RCVBUF, &rcvbuf, sizeof(rcvbuf));

  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(port);
  if (::inet_pton(AF_INET, opts_.bind_address.c_str(), &addr.sin_addr) != 1) {
    ::close(fd_);
    throw SocketError("invalid bind address: " + opts_.bind_address);
  }
  if (::bind(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0) {
    const std::string why = errno_text();
    ::close(fd_);
    throw SocketError("cannot bind UDP port " + std::to_string(port) + ": " + why);
  }
  socklen_t len = sizeof(addr);
  ::getsockname(fd_, reinterpret_cast<sockaddr*>(&addr), &len);
  port_ = ntohs(addr.sin_port);

  worker_ = std::thread([this] { run(); });
}

UdpListener::~UdpListener() {
  stop();
  if (worker_.joinable()) worker_.join();
  if (fd_ >= 0) ::close(fd_);
}

void UdpListener::run() {
  std::string buffer(kMaxDatagram, '\0');
  auto last_activity = std::chrono::steady_clock::now();
  while (!stop_.load()) {
    pollfd pfd{fd_, POLLIN, 0};
    const int ready = ::poll(&pfd, 1, kPollSliceMs);
    if (ready < 0 && errno != EINTR) break;
    if (ready <= 0) {
      if (std::chrono::steady_clock::now() - last_activity >= opts_.idle_timeout) {
        UdpEndReason running = UdpEndReason::kRunning;
        end_reason_.compare_exchange_strong(running, UdpEndReason::kIdleTimeout);
        break;
      }
      continue;
    }
    const ssize_t n = ::recv(fd_, buffer.data(), buffer.size(), 0);
    if (n < 0) continue;
    last_activity = std::chrono::steady_clock::now();
    std::string_view payload(buffer.data(), static_cast<std::size_t>(n));
    try {
      UdpRecord rec{std::string(payload), parse_fdm_datagram(payload, cfg_)};
      if (!channel_.push(std::move(rec))) break;
      const std::size_t got = ++received_;
      if (opts_.max_samples != 0 && got >= opts_.max_samples) {
        UdpEndReason running = UdpEndReason::kRunning;
        end_reason_.compare_exchange_strong(running, UdpEndReason::kSampleLimit);
        break;
      }
    } catch (const RecordError&) {
      ++dropped_;
    }
  }
  UdpEndReason running = UdpEndReason::kRunning;
  end_reason_.compare_exchange_strong(running, UdpEndReason::kStopped);
  channel_.close();
}

std::optional<UdpRecord> UdpListener::next_record() { return channel_.pop(); }

std::optional<PoseSample> UdpListener::next() {
  auto rec = next_record();
  if (!rec) return std::nullopt;
  return rec->sample;
}

void UdpListener::stop() {
  UdpEndReason running = UdpEndReason::kRunning;
  end_reason_.compare_exchange_strong(running, UdpEndReason::kStopped);
  stop_ = true;
  channel_.close();
}

UdpStats UdpListener::stats() const {
  return UdpStats{received_.load(), dropped_.load(), end_reason_.load()};
}

std::vector<PoseSample> listen_udp(std::uint16_t port, const StreamConfig& cfg,
                                   const UdpOptions& opts, UdpStats* stats) {
  UdpListener listener(port, cfg, opts);
  std::vector<PoseSample> out = drain(listener);
  if (stats != nullptr) *stats = listener.stats();
  return out;
}

void send_udp_datagrams(std::uint16_t port, const std::vector<std::string>& payloads,
                        std::chrono::microseconds spacing) {
  const int fd = ::socket(AF_INET, SOCK_DGRAM, 0);
  if (fd < 0) throw SocketError("socket(): " + errno_text());
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(port);
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  for (const auto& p : payloads) {
    const ssize_t sent = ::sendto(fd, p.data(), p.size(), 0,
                                  reinterpret_cast<const sockaddr*>(&addr), sizeof(addr));
    if (sent < 0) {
      const std::string why = errno_text();
      ::close(fd);
      throw SocketError("sendto(): " + why);
    }
    if (spacing.count() > 0) std::this_thread::sleep_for(spacing);
  }
  ::close(fd);
}

}  // namespace agisim
