// UDP telemetry listener: one ASCII CSV record per datagram.
#pragma once

#include "agisim/channel.hpp"
#include "agisim/trajectory.hpp"

#include <atomic>
#include <chrono>
#include <cstdint>
#include <string>
#include <thread>

namespace agisim {

struct UdpOptions {
  std::chrono::milliseconds idle_timeout{5000};
  std::size_t max_samples = 0;  // 0 = unlimited
  std::size_t buffer_capacity = 1024;
  std::string bind_address = "0.0.0.0";
};

enum class UdpEndReason { kRunning, kIdleTimeout, kSampleLimit, kStopped };

struct UdpStats {
  std::size_t received = 0;  // well-formed samples delivered
  std::size_t dropped = 0;   // malformed datagrams discarded
  UdpEndReason end_reason = UdpEndReason::kRunning;
};

/// A parsed datagram plus its raw payload (kept for capture/replay).
struct UdpRecord {
  std::string raw;
  PoseSample sample;
};

/// Binds on construction (port 0 picks an ephemeral port) and receives on a
/// background thread into a bounded channel. Malformed datagrams are
/// dropped and counted; ordering is not checked here.
class UdpListener final : public PoseSource {
 public:
  UdpListener(std::uint16_t port, StreamConfig cfg, UdpOptions opts = {});
  ~UdpListener() override;

  UdpListener(const UdpListener&) = delete;
  UdpListener& operator=(const UdpListener&) = delete;

  std::uint16_t port() const noexcept { return port_; }

  /// Blocks for the next record; std::nullopt after idle timeout / limit / stop().
  std::optional<UdpRecord> next_record();
  std::optional<PoseSample> next() override;

  void stop();
  UdpStats stats() const;

 private:
  void run();

  StreamConfig cfg_;
  UdpOptions opts_;
  int fd_ = -1;
  std::uint16_t port_ = 0;
  BoundedChannel<UdpRecord> channel_;
  std::atomic<bool> stop_{false};
  std::atomic<std::size_t> received_{0};
  std::atomic<std::size_t> dropped_{0};
  std::atomic<UdpEndReason> end_reason_{UdpEndReason::kRunning};
  std::thread worker_;
};

/// Collects every sample until the listener ends; stats are written to *stats if given.
std::vector<PoseSample> listen_udp(std::uint16_t port, const StreamConfig& cfg,
                                   const UdpOptions& opts = {}, UdpStats* stats = nullptr);

/// Sends each payload as one datagram to 127.0.0.1:port (test feeder / replay tool).
void send_udp_datagrams(std::uint16_t port, const std::vector<std::string>& payloads,
                        std::chrono::microseconds spacing = std::chrono::microseconds{0});

}  // namespace agisim
