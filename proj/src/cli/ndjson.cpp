#include "sentry/ndjson.hpp"

#include "json.hpp"

namespace sentry::ndjson {
namespace {

using Json = nlohmann::ordered_json;

Json latency_json(const LatencyStats& s) {
  return Json{{"max", s.max_us}, {"mean", s.mean_us}, {"p99", s.p99_us}};
}

}  // namespace

std::string frame_record(const Detection& detection, SafetyState state) {
  Json j;
  j["record"] = "frame";
  j["frame"] = detection.frame_index;
  j["verdict"] = detection.verdict;
  // No motion result for the first frame (no background yet) or when withheld.
  if (detection.motion && !detection.motion->indeterminate) {
    j["movement"] = detection.motion->movement;
    j["active_count"] = detection.motion->active_count;
  } else {
    j["movement"] = nullptr;
    j["active_count"] = nullptr;
  }
  if (detection.roi) {
    j["quadrant_means"] = detection.roi->quadrant_means;
    j["flags"] = detection.roi->flags;
  } else {
    j["quadrant_means"] = nullptr;
    j["flags"] = nullptr;
  }
  j["state"] = to_string(state);
  j["elapsed_us"] = detection.elapsed_us;
  return j.dump();
}

std::string zone_record(const ZoneEvent& event) {
  Json j;
  j["record"] = "zone";
  j["frame"] = event.frame_index;
  j["kind"] = to_string(event.kind);
  if (event.kind == ZoneEventKind::StateChanged) {
    j["from"] = to_string(*event.from_state);
    j["to"] = to_string(*event.to_state);
  } else {
    j["quadrant"] = to_string(*event.quadrant);
  }
  return j.dump();
}

std::vector<std::string> eval_records(const EvalReport& report) {
  std::vector<std::string> lines;
  for (Method m : kMethods) {
    const ConfusionMatrix& cm = report.matrix(m);
    Json j;
    j["record"] = "method";
    j["method"] = to_string(m);
    j["tp"] = cm.tp;
    j["fp"] = cm.fp;
    j["fn"] = cm.fn;
    j["tn"] = cm.tn;
    j["total"] = cm.total();
    j["accuracy"] = report.accuracy_of(m);
    j["accuracy_1dp"] = format_accuracy(report.accuracy_of(m));
    j["latency_us"] = latency_json(report.latency_of(m));
    lines.push_back(j.dump());
  }
  Json summary;
  summary["record"] = "summary";
  summary["frames"] = report.frames_evaluated;
  summary["mode"] = to_string(report.mode);
  lines.push_back(summary.dump());
  return lines;
}

std::string bench_record(std::string_view kernel, std::uint64_t iterations, std::uint32_t width,
                         std::uint32_t height, Method method, const LatencyStats& latency) {
  Json j;
  j["record"] = "bench";
  j["kernel"] = kernel;
  j["iterations"] = iterations;
  j["width"] = width;
  j["height"] = height;
  j["method"] = to_string(method);
  j["latency_us"] = latency_json(latency);
  return j.dump();
}

}  // namespace sentry::ndjson
