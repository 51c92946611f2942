#include "agisim/errors.hpp"
#include "agisim/udp_source.hpp"
#include "records.hpp"

#include <gtest/gtest.h>

#include <chrono>
#include <thread>

using namespace agisim;
using namespace std::chrono_literals;
using testing_records::record;
using testing_records::sample_at;

namespace {

std::vector<std::string> corpus_with_corruptions(std::size_t n, const std::vector<std::size_t>& bad) {
  std::vector<std::string> out;
  for (std::size_t k = 0; k < n; ++k) out.push_back(record(sample_at(0.02 * static_cast<double>(k))));
  const std::vector<std::string> damage{"0.4,45,1,2", "garbage", "0.9,45,0,0,0,0,0,0,0,0,0,0"};
  for (std::size_t i = 0; i < bad.size(); ++i) out[bad[i]] = damage[i % damage.size()];
  return out;
}

UdpOptions fast_options() {
  UdpOptions o;
  o.idle_timeout = 400ms;
  o.bind_address = "127.0.0.1";
  return o;
}

}  // namespace

TEST(UdpListener, CountsCorruptedRecordsExactly) {
  UdpListener listener(0, {}, fast_options());
  const auto corpus = corpus_with_corruptions(100, {17, 50, 83});
  std::thread feeder([&] { send_udp_datagrams(listener.port(), corpus, 200us); });

  std::vector<UdpRecord> got;
  while (auto r = listener.next_record()) got.push_back(*r);
  feeder.join();

  const UdpStats stats = listener.stats();
  EXPECT_EQ(stats.received, 97u);
  EXPECT_EQ(stats.dropped, 3u);
  EXPECT_EQ(stats.end_reason, UdpEndReason::kIdleTimeout);
  ASSERT_EQ(got.size(), 97u);
  for (const auto& r : got) EXPECT_EQ(parse_fdm_datagram(r.raw, {}).t, r.sample.t);
}

TEST(UdpListener, StopsAtSampleLimit) {
  UdpOptions o = fast_options();
  o.max_samples = 10;
  UdpStats stats;
  std::vector<PoseSample> got;
  {
    UdpListener listener(0, {}, o);
    const auto corpus = corpus_with_corruptions(30, {});
    std::thread feeder([&] { send_udp_datagrams(listener.port(), corpus, 200us); });
    while (auto s = listener.next()) got.push_back(*s);
    feeder.join();
    stats = listener.stats();
  }
  EXPECT_EQ(got.size(), 10u);
  EXPECT_EQ(stats.end_reason, UdpEndReason::kSampleLimit);
}

TEST(UdpListener, StopUnblocksConsumer) {
  UdpOptions o = fast_options();
  o.idle_timeout = 60s;
  UdpListener listener(0, {}, o);
  std::thread stopper([&] {
    std::this_thread::sleep_for(100ms);
    listener.stop();
  });
  const auto t0 = std::chrono::steady_clock::now();
  EXPECT_FALSE(listener.next());
  EXPECT_LT(std::chrono::steady_clock::now() - t0, 5s);
  stopper.join();
  EXPECT_EQ(listener.stats().end_reason, UdpEndReason::kStopped);
}

TEST(UdpListener, BindConflictIsReported) {
  UdpListener first(0, {}, fast_options());
  EXPECT_THROW(UdpListener(first.port(), {}, fast_options()), SocketError);
}

TEST(UdpListener, LiveStreamFeedsValidatingSource) {
  UdpListener listener(0, {}, fast_options());
  const auto corpus = corpus_with_corruptions(50, {});
  std::thread feeder([&] { send_udp_datagrams(listener.port(), corpus, 200us); });
  ValidatingPoseSource checked(listener, {});
  const auto samples = drain(checked);
  feeder.join();
  EXPECT_EQ(samples.size(), 50u);
}
