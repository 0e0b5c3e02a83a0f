#include "regen/trace.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "regen/errors.hpp"

namespace regen::trace {

AvailabilityTrace parse(std::istream& is) {
    AvailabilityTrace t;
    std::string line;
    int lineNo = 0;
    bool any = false;
    while (std::getline(is, line)) {
        ++lineNo;
        if (line.empty() || line[0] == '#') continue;
        if (line.rfind("node_id", 0) == 0) continue;  // header
        std::istringstream ls(line);
        std::string id, startS, endS;
        if (!std::getline(ls, id, ',') || !std::getline(ls, startS, ',') ||
            !std::getline(ls, endS, ','))
            throw FormatError("line " + std::to_string(lineNo) + ": expected id,start,end");
        std::int64_t start, end;
        try {
            start = std::stoll(startS);
            end = std::stoll(endS);
        } catch (const std::exception&) {
            throw FormatError("line " + std::to_string(lineNo) + ": bad timestamp");
        }
        if (end <= start)
            throw FormatError("line " + std::to_string(lineNo) + ": empty or inverted interval");
        t.nodes[id].push_back({start, end});
        t.traceStart = any ? std::min(t.traceStart, start) : start;
        t.traceEnd = any ? std::max(t.traceEnd, end) : end;
        any = true;
    }
    for (auto& [id, ivs] : t.nodes) {
        std::sort(ivs.begin(), ivs.end(),
                  [](const UpInterval& a, const UpInterval& b) { return a.start < b.start; });
        std::vector<UpInterval> merged;
        for (const auto& iv : ivs) {
            if (!merged.empty() && iv.start < merged.back().end)
                throw FormatError("overlapping intervals for node " + id);
            if (!merged.empty() && iv.start == merged.back().end)
                merged.back().end = iv.end;
            else
                merged.push_back(iv);
        }
        ivs = std::move(merged);
    }
    return t;
}

void serialize(const AvailabilityTrace& t, std::ostream& os) {
    os << "node_id,up_start_unix,up_end_unix\n";
    for (const auto& [id, ivs] : t.nodes)
        for (const auto& iv : ivs) os << id << "," << iv.start << "," << iv.end << "\n";
}

FailureClassification classify(const AvailabilityTrace& t, std::int64_t timeout) {
    if (timeout <= 0) throw InvalidInput("timeout must be positive");
    FailureClassification fc;
    fc.timeout = timeout;
    for (const auto& [id, ivs] : t.nodes) {
        if (ivs.empty()) continue;
        auto& out = fc.downtimes[id];
        auto push = [&](std::int64_t s, std::int64_t e) {
            if (e <= s) return;
            Downtime d{s, e, (e - s) > timeout, 0};
            if (d.permanent) d.detectedAt = s + timeout;
            out.push_back(d);
        };
        for (std::size_t i = 1; i < ivs.size(); ++i) push(ivs[i - 1].end, ivs[i].start);
        push(ivs.back().end, t.traceEnd);  // trailing
    }
    return fc;
}

namespace {

// Step function of how many nodes are up, as breakpoints + prefix
// integrals, for range-mean queries.
struct UpCountCurve {
    std::vector<std::int64_t> ts;      // breakpoints
    std::vector<std::int64_t> counts;  // value on [ts[i], ts[i+1])
    std::vector<double> integral;      // integral of count up to ts[i]

    double mean(std::int64_t from, std::int64_t to) const {
        if (to <= from) return 0.0;
        return (value_integral(to) - value_integral(from)) / static_cast<double>(to - from);
    }

    double value_integral(std::int64_t x) const {
        auto it = std::upper_bound(ts.begin(), ts.end(), x);
        std::size_t i = static_cast<std::size_t>(it - ts.begin());
        if (i == 0) return 0.0;
        return integral[i - 1] + static_cast<double>(counts[i - 1]) * static_cast<double>(x - ts[i - 1]);
    }
};

UpCountCurve up_count_curve(const AvailabilityTrace& t) {
    std::vector<std::pair<std::int64_t, int>> deltas;
    for (const auto& [id, ivs] : t.nodes)
        for (const auto& iv : ivs) {
            deltas.emplace_back(iv.start, +1);
            deltas.emplace_back(iv.end, -1);
        }
    std::sort(deltas.begin(), deltas.end());
    UpCountCurve c;
    std::int64_t cur = 0;
    std::size_t i = 0;
    while (i < deltas.size()) {
        std::int64_t at = deltas[i].first;
        while (i < deltas.size() && deltas[i].first == at) cur += deltas[i++].second;
        if (!c.ts.empty() && c.counts.back() == cur) continue;
        double base = c.ts.empty() ? 0.0
                                   : c.integral.back() + static_cast<double>(c.counts.back()) *
                                                             static_cast<double>(at - c.ts.back());
        c.ts.push_back(at);
        c.counts.push_back(cur);
        c.integral.push_back(base);
    }
    return c;
}

}  // namespace

AvailabilityTrace clean_planetlab(const AvailabilityTrace& t) {
    AvailabilityTrace cur = t;
    for (int pass = 0; pass < 100; ++pass) {
        if (cur.nodes.empty()) return cur;
        UpCountCurve curve = up_count_curve(cur);
        double overallMean = curve.mean(cur.traceStart, cur.traceEnd);
        double threshold = 0.5 * overallMean;

        bool changed = false;
        AvailabilityTrace next = cur;
        for (auto& [id, ivs] : next.nodes) {
            if (ivs.empty()) continue;
            // gather this node's downtimes (leading, interior, trailing)
            std::vector<UpInterval> downs;
            if (ivs.front().start > cur.traceStart) downs.push_back({cur.traceStart, ivs.front().start});
            for (std::size_t i = 1; i < ivs.size(); ++i)
                downs.push_back({ivs[i - 1].end, ivs[i].start});
            if (ivs.back().end < cur.traceEnd) downs.push_back({ivs.back().end, cur.traceEnd});

            std::vector<UpInterval> fills;
            for (const auto& d : downs)
                if (curve.mean(d.start, d.end) < threshold) fills.push_back(d);
            if (fills.empty()) continue;

            changed = true;
            std::vector<UpInterval> all = ivs;
            all.insert(all.end(), fills.begin(), fills.end());
            std::sort(all.begin(), all.end(),
                      [](const UpInterval& a, const UpInterval& b) { return a.start < b.start; });
            std::vector<UpInterval> merged;
            for (const auto& iv : all) {
                if (!merged.empty() && iv.start <= merged.back().end)
                    merged.back().end = std::max(merged.back().end, iv.end);
                else
                    merged.push_back(iv);
            }
            ivs = std::move(merged);
        }
        if (!changed) return cur;
        cur = std::move(next);
    }
    return cur;
}

ParamEstimate estimate(const AvailabilityTrace& t, std::int64_t timeout) {
    FailureClassification fc = classify(t, timeout);

    // Sweep deltas: up count, and live count (arrived, not inside a
    // permanent downtime in hindsight).
    std::map<std::int64_t, std::pair<int, int>> deltas;  // time -> (dUp, dLive)
    long permanentEvents = 0;
    bool anyNode = false;
    for (const auto& [id, ivs] : t.nodes) {
        if (ivs.empty()) continue;
        anyNode = true;
        for (const auto& iv : ivs) {
            deltas[iv.start].first += 1;
            deltas[iv.end].first -= 1;
        }
        deltas[ivs.front().start].second += 1;  // arrival
        deltas[t.traceEnd].second -= 1;
        auto it = fc.downtimes.find(id);
        if (it != fc.downtimes.end()) {
            for (const auto& d : it->second) {
                if (!d.permanent) continue;
                ++permanentEvents;
                deltas[d.start].second -= 1;  // dead from the start of the gap
                deltas[d.end].second += 1;    // rejoin if it came back
            }
        }
    }
    if (!anyNode) throw EstimateUndefined("trace has no nodes");

    double upLiveTime = 0.0;   // integral of up/live over live > 0
    double liveSpan = 0.0;     // measure of {live > 0}
    double liveNodeTime = 0.0; // integral of live count
    int up = 0, live = 0;
    std::int64_t prev = 0;
    bool first = true;
    for (const auto& [at, d] : deltas) {
        if (!first && live > 0) {
            double len = static_cast<double>(at - prev);
            upLiveTime += len * (static_cast<double>(up) / live);
            liveSpan += len;
            liveNodeTime += len * live;
        }
        up += d.first;
        live += d.second;
        prev = at;
        first = false;
    }
    if (liveSpan <= 0.0) throw EstimateUndefined("no live-node time in trace");

    ParamEstimate e;
    e.timeout = timeout;
    e.nodeCount = static_cast<int>(t.nodes.size());
    e.spanDays = static_cast<double>(t.traceEnd - t.traceStart) / kSecondsPerDay;
    e.a = upLiveTime / liveSpan;
    double meanLive = liveNodeTime / liveSpan;
    double failuresPerDay = static_cast<double>(permanentEvents) / (liveSpan / kSecondsPerDay);
    e.f = meanLive > 0.0 ? failuresPerDay / meanLive : 0.0;
    return e;
}

const std::vector<Preset>& presets() {
    static const std::vector<Preset> kPresets = {
        {"planetlab", 0.017, 0.97},
        {"microsoft", 0.038, 0.91},
        {"skype", 0.12, 0.65},
        {"gnutella", 0.30, 0.38},
    };
    return kPresets;
}

bool find_preset(const std::string& name, Preset& out) {
    for (const auto& p : presets()) {
        if (p.name == name) {
            out = p;
            return true;
        }
    }
    return false;
}

AvailabilityTrace synth(const SynthParams& p, std::uint64_t seed) {
    if (p.nodeCount < 1 || p.durationDays <= 0.0 || p.upFraction < 0.0 || p.upFraction > 1.0)
        throw InvalidInput("bad synth parameters");
    const double daySecs = kSecondsPerDay;
    const double horizon = p.durationDays * daySecs;
    const double meanUp = p.upFraction * p.meanCycleDays * daySecs;
    const double meanDown = (1.0 - p.upFraction) * p.meanCycleDays * daySecs;

    AvailabilityTrace t;
    t.traceStart = 0;
    t.traceEnd = static_cast<std::int64_t>(horizon);
    Rng root(seed);
    for (int slot = 0; slot < p.nodeCount; ++slot) {
        Rng rng = root.split(static_cast<std::uint64_t>(slot));
        double now = 0.0;
        int gen = 0;
        while (now < horizon) {
            double life = p.meanLifetimeDays > 0.0
                              ? rng.exponential(p.meanLifetimeDays * daySecs)
                              : horizon - now;
            double deathAt = std::min(now + life, horizon);
            std::string id = "n" + std::to_string(slot) + "_" + std::to_string(gen++);
            // stationary phase start: up with probability upFraction
            bool upNow = p.upFraction >= 1.0 || rng.bernoulli(p.upFraction);
            double cursor = now;
            auto& ivs = t.nodes[id];
            while (cursor < deathAt) {
                if (upNow) {
                    double len = p.upFraction >= 1.0 ? deathAt - cursor : rng.exponential(meanUp);
                    double end = std::min(cursor + len, deathAt);
                    auto s = static_cast<std::int64_t>(cursor), e = static_cast<std::int64_t>(end);
                    if (e > s) {
                        if (!ivs.empty() && ivs.back().end == s)
                            ivs.back().end = e;
                        else
                            ivs.push_back({s, e});
                    }
                    cursor = end;
                } else {
                    // bounded transient downtime: uniform on [0, 2*meanDown]
                    cursor += rng.unit() * 2.0 * meanDown;
                }
                upNow = !upNow;
            }
            if (ivs.empty()) t.nodes.erase(id);
            now = deathAt;
        }
    }
    return t;
}

}  // namespace regen::trace
