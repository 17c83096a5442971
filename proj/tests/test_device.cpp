#include <gtest/gtest.h>

#include "mvsim/storage/device.hpp"
#include "support/oracles.hpp"

using namespace mvsim;

TEST(Device, BudgetArithmetic) {
  EXPECT_EQ((DeviceConfig{125, 1000}.pages_per_window()), 32000u);
  EXPECT_EQ((DeviceConfig{660, 1000}.pages_per_window()), 168960u);
  EXPECT_EQ((DeviceConfig{125, 10}.pages_per_window()), 320u);
}

TEST(Device, RejectsNonPositiveSettings) {
  EXPECT_THROW(Device(DeviceConfig{0, 10}), ConfigError);
  EXPECT_THROW(Device(DeviceConfig{-5, 10}), ConfigError);
  EXPECT_THROW(Device(DeviceConfig{125, 0}), ConfigError);
  Device d(DeviceConfig{125, 10});
  EXPECT_THROW(d.set_target_bandwidth(DeviceConfig{0, 10}), ConfigError);
}

TEST(Device, DemandAboveBudgetSpillsIntoLaterWindows) {
  Device d(DeviceConfig{125, 1000});
  for (int i = 0; i < 40000; ++i) d.transfer(OpClass::Select, IoKind::Read);
  const auto log = d.window_log();
  const auto expect = oracle::token_bucket(32000, 1'000'000, 40000);
  ASSERT_EQ(log.size(), expect.size());
  ASSERT_GE(log.size(), 2u);
  std::size_t i = 0;
  for (const auto& [w, n] : expect) {
    EXPECT_EQ(log[i].served, n);
    ++i;
  }
  EXPECT_EQ(d.now_us(), 1'000'000);
}

TEST(Device, ComputeTimeOverlapsWithTransfers) {
  Device d(DeviceConfig{125, 10});
  for (int i = 0; i < 100; ++i) d.transfer(OpClass::Select, IoKind::Read);
  d.advance(3000);
  EXPECT_EQ(d.now_us(), 3000);
  for (int i = 0; i < 400; ++i) d.transfer(OpClass::Select, IoKind::Read);
  // 320 per 10 ms window: the 321st page waits for the next window.
  EXPECT_EQ(d.now_us(), 10'000);
}

TEST(Device, NewBandwidthStartsAtNextWindow) {
  Device d(DeviceConfig{125, 10});
  for (int i = 0; i < 10; ++i) d.transfer(OpClass::Select, IoKind::Read);
  d.set_target_bandwidth(DeviceConfig{250, 10});
  for (int i = 0; i < 310; ++i) d.transfer(OpClass::Select, IoKind::Read);
  EXPECT_EQ(d.now_us(), 0);
  d.transfer(OpClass::Select, IoKind::Read);
  EXPECT_EQ(d.now_us(), 10'000);
  for (int i = 0; i < 639; ++i) d.transfer(OpClass::Select, IoKind::Read);
  EXPECT_EQ(d.now_us(), 10'000);
  const auto log = d.window_log();
  EXPECT_EQ(log.front().budget, 320u);
  EXPECT_EQ(log.back().budget, 640u);
}

TEST(Device, ReportIsACopyAndSplitsByClass) {
  Device d(DeviceConfig{});
  EXPECT_EQ(d.io_report().total(), 0u);
  d.transfer(OpClass::Select, IoKind::Read);
  IoCounters snap = d.io_report();
  EXPECT_EQ(snap.pages_read(), 1u);
  d.transfer(OpClass::Vacuum, IoKind::Write);
  EXPECT_EQ(snap.pages_written(), 0u);
  const IoCounters now = d.io_report();
  EXPECT_EQ(now.pages(OpClass::Select) + now.pages(OpClass::Vacuum), now.total());
  EXPECT_EQ(now.since(snap).written(OpClass::Vacuum), 1u);
  EXPECT_THROW(snap.since(now), InvariantViolation);
}

TEST(Device, AlignSkipsToAFreshWindow) {
  Device d(DeviceConfig{125, 10});
  d.align_to_window();
  EXPECT_EQ(d.now_us(), 0);
  d.transfer(OpClass::Select, IoKind::Read);
  d.align_to_window();
  EXPECT_EQ(d.now_us(), 10'000);
  d.advance(1);
  d.align_to_window();
  EXPECT_EQ(d.now_us(), 20'000);
}

TEST(Device, SaturatingDemandStaysWithinBudgetAndNearTarget) {
  for (std::int64_t bw : {125, 250, 375, 500, 660}) {
    Device d(DeviceConfig{bw, 10});
    for (int i = 0; i < 100'000; ++i) d.transfer(OpClass::Select, IoKind::Read);
    const auto log = d.window_log();
    for (const auto& w : log) ASSERT_LE(w.served, w.budget);
    const double seconds = static_cast<double>(log.size()) * 0.010;
    const double mib_s = 100'000.0 * 4096 / 1048576 / seconds;
    EXPECT_NEAR(mib_s / static_cast<double>(bw), 1.0, 0.05) << bw;
  }
}
