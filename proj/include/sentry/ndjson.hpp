#pragma once

// Line-oriented JSON records. Every function returns exactly one line without
// the trailing newline. Field sets are fixed:
//
//   frame: record, frame, verdict, movement, active_count, quadrant_means,
//          flags, state, elapsed_us
//   zone:  record, frame, kind, quadrant | (from, to)
//   method (eval): record, method, tp, fp, fn, tn, total, accuracy,
//          accuracy_1dp, latency_us{max, mean, p99}
//   summary (eval): record, frames, mode
//   bench: record, kernel, iterations, width, height, method, latency_us{...}

#include <string>
#include <vector>

#include "sentry/evaluation.hpp"
#include "sentry/hybrid.hpp"
#include "sentry/zones.hpp"

namespace sentry::ndjson {

std::string frame_record(const Detection& detection, SafetyState state);
std::string zone_record(const ZoneEvent& event);
std::vector<std::string> eval_records(const EvalReport& report);
std::string bench_record(std::string_view kernel, std::uint64_t iterations, std::uint32_t width,
                         std::uint32_t height, Method method, const LatencyStats& latency);

}  // namespace sentry::ndjson
