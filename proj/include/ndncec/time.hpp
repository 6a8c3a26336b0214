#pragma once

#include <cstdint>

namespace ndncec {

// Simulation time is integer nanoseconds since simulation start.
// Integers keep event ordering exact and runs bit-reproducible.
using SimTime = std::int64_t;
using Duration = std::int64_t;

constexpr Duration kNanosecond = 1;
constexpr Duration kMicrosecond = 1000;
constexpr Duration kMillisecond = 1000 * kMicrosecond;
constexpr Duration kSecond = 1000 * kMillisecond;

constexpr double to_us(Duration d) { return static_cast<double>(d) / kMicrosecond; }
constexpr double to_ms(Duration d) { return static_cast<double>(d) / kMillisecond; }
constexpr double to_sec(Duration d) { return static_cast<double>(d) / kSecond; }

} // namespace ndncec
