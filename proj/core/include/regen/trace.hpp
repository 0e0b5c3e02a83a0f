#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "regen/rng.hpp"

namespace regen::trace {

inline constexpr std::int64_t kSecondsPerDay = 86400;
inline constexpr std::int64_t kDefaultTimeout = kSecondsPerDay;  // t = 1 day

struct UpInterval {
    std::int64_t start = 0;  // unix seconds, inclusive
    std::int64_t end = 0;    // exclusive

    friend bool operator==(const UpInterval&, const UpInterval&) = default;
};

// Per-node up intervals, sorted and non-overlapping. The observation
// window [traceStart, traceEnd) is the hull of all intervals.
struct AvailabilityTrace {
    std::int64_t traceStart = 0;
    std::int64_t traceEnd = 0;
    std::map<std::string, std::vector<UpInterval>> nodes;
};

// CSV lines `node_id,up_start_unix,up_end_unix`; `#` comments and a
// `node_id,...` header line are skipped. Lines may arrive in any order;
// overlapping intervals for one node are a FormatError. Adjacent
// intervals are merged.
AvailabilityTrace parse(std::istream& is);
void serialize(const AvailabilityTrace& t, std::ostream& os);

// Downtimes start only after a node has first been seen; a node is "in
// the system" from its first up interval onward.
struct Downtime {
    std::int64_t start = 0;
    std::int64_t end = 0;  // traceEnd for trailing downtimes
    bool permanent = false;
    std::int64_t detectedAt = 0;  // start + timeout, for permanent ones
};

struct FailureClassification {
    std::int64_t timeout = kDefaultTimeout;
    std::map<std::string, std::vector<Downtime>> downtimes;
};

// Timeout heuristic: a downtime longer than `timeout` is a permanent
// failure. Trailing downtimes count only once they exceed the timeout
// inside the trace window, which undercounts failures during the final
// `timeout` seconds of the trace.
FailureClassification classify(const AvailabilityTrace& t, std::int64_t timeout);

struct ParamEstimate {
    double f = 0.0;  // fraction of live nodes failing permanently per day
    double a = 1.0;  // mean availability among nodes not permanently failed
    std::int64_t timeout = kDefaultTimeout;
    int nodeCount = 0;
    double spanDays = 0.0;
};

// f = (permanent failures per day) / (time-mean live population);
// a = time-average of up-count / live-count. A node counts as dead from
// the start of each permanent downtime (the trace is analyzed offline,
// so hindsight is available) and rejoins if it ever comes back up.
// Throws EstimateUndefined if there is no live-node time at all.
ParamEstimate estimate(const AvailabilityTrace& t, std::int64_t timeout = kDefaultTimeout);

// Drops measurement-wide outages: any downtime period during which the
// mean number of nodes up is below half the all-time mean is treated as
// up time. Applied until a fixed point so the cleaning is idempotent.
AvailabilityTrace clean_planetlab(const AvailabilityTrace& t);

struct Preset {
    std::string name;
    double f = 0.0;
    double a = 1.0;
};

// Canonical (f, a) presets: planetlab, microsoft, skype, gnutella.
const std::vector<Preset>& presets();
bool find_preset(const std::string& name, Preset& out);

struct SynthParams {
    int nodeCount = 100;
    double meanLifetimeDays = 0.0;  // <= 0 means nodes never fail permanently
    double upFraction = 1.0;
    double durationDays = 100.0;
    double meanCycleDays = 0.25;  // transient up/down renewal scale
};

// Synthetic churn: exponential lifetimes with immediate replacement (the
// population size is constant), alternating up/down renewal within each
// lifetime. Transient downtimes are bounded by 2*(1-a)*meanCycleDays so
// they never masquerade as permanent failures at the default timeout.
AvailabilityTrace synth(const SynthParams& p, std::uint64_t seed);

}  // namespace regen::trace
