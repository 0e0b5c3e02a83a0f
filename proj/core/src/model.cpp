#include "regen/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "regen/errors.hpp"

namespace regen::model {

const char* strategy_name(Strategy s) {
    switch (s) {
        case Strategy::Replication: return "replication";
        case Strategy::IdealErasure: return "ideal";
        case Strategy::Hybrid: return "hybrid";
        case Strategy::Ommds: return "ommds";
        case Strategy::Rc: return "rc";
    }
    return "?";
}

bool parse_strategy(const std::string& name, Strategy& out) {
    for (Strategy s : {Strategy::Replication, Strategy::IdealErasure, Strategy::Hybrid,
                       Strategy::Ommds, Strategy::Rc}) {
        if (name == strategy_name(s)) {
            out = s;
            return true;
        }
    }
    return false;
}

StrategySpec StrategySpec::replication(int r) {
    if (r < 1) throw InvalidInput("replication needs r >= 1");
    return {Strategy::Replication, 1, 0, r};
}
StrategySpec StrategySpec::ideal_erasure(int k, int n) {
    if (k < 1 || n < k) throw InvalidInput("ideal erasure needs n >= k >= 1");
    return {Strategy::IdealErasure, k, n, 0};
}
StrategySpec StrategySpec::hybrid(int k, int n) {
    if (k < 1 || n < k) throw InvalidInput("hybrid needs n >= k >= 1");
    return {Strategy::Hybrid, k, n, 1};
}
StrategySpec StrategySpec::ommds(int k, int n) {
    if (k < 1 || n <= k) throw InvalidInput("ommds needs n > k >= 1");
    return {Strategy::Ommds, k, n, 0};
}
StrategySpec StrategySpec::rc(int k, int n) {
    if (k < 1 || n <= k) throw InvalidInput("rc needs n > k >= 1");
    return {Strategy::Rc, k, n, 0};
}

StrategySpec StrategySpec::for_step(Strategy kind, int k, int step) {
    switch (kind) {
        case Strategy::Replication: return replication(step);
        case Strategy::IdealErasure: return ideal_erasure(k, step);
        case Strategy::Hybrid: return hybrid(k, step);
        case Strategy::Ommds: return ommds(k, step);
        case Strategy::Rc: return rc(k, step);
    }
    throw InvalidInput("unknown strategy");
}

Rational StrategySpec::redundancy() const {
    return Rational(replicas) + Rational(n, std::max(k, 1));
}

double u_ideal(int n, int k, double a) {
    if (n < 1 || k < 1 || k > n) throw InvalidInput("u_ideal needs 1 <= k <= n");
    if (a >= 1.0) return 0.0;
    if (a <= 0.0) return 1.0;
    // log-domain accumulation, largest term factored out
    double la = std::log(a), lq = std::log1p(-a);
    std::vector<double> lt(k);
    double lmax = -INFINITY;
    for (int i = 0; i < k; ++i) {
        double lc = std::lgamma(n + 1.0) - std::lgamma(i + 1.0) - std::lgamma(n - i + 1.0);
        lt[i] = lc + i * la + (n - i) * lq;
        lmax = std::max(lmax, lt[i]);
    }
    double sum = 0.0;
    for (int i = 0; i < k; ++i) sum += std::exp(lt[i] - lmax);
    double v = std::exp(lmax) * sum;
    return std::min(v, 1.0);
}

Rational overhead_beta(RepairScheme scheme, int n, int k) {
    if (k < 1) throw InvalidInput("beta needs k >= 1");
    switch (scheme) {
        case RepairScheme::Naive: return Rational(k);
        case RepairScheme::Ommds:
            if (n <= k) throw InvalidInput("beta_ommds needs n > k");
            return Rational(n - 1, n - k);
        case RepairScheme::Rc: return Rational(static_cast<std::int64_t>(k) * k,
                                               static_cast<std::int64_t>(k) * k - k + 1);
    }
    throw InvalidInput("unknown repair scheme");
}

TradeoffPoint evaluate(const StrategySpec& s, const Environment& env) {
    TradeoffPoint p;
    p.kind = s.kind;
    p.k = s.k;
    p.n = s.n;
    p.redundancy = s.redundancy();

    Rational storageFactor = p.redundancy;  // in units of M
    Rational bwFactor = p.redundancy;       // bandwidth = f * M * bwFactor
    double unavail = 0.0;

    switch (s.kind) {
        case Strategy::Replication:
            unavail = std::pow(1.0 - env.a, s.replicas);
            break;
        case Strategy::IdealErasure:
            unavail = u_ideal(s.n, s.k, env.a);
            break;
        case Strategy::Hybrid:
            // replica down AND fewer than k fragments up
            unavail = (1.0 - env.a) * u_ideal(s.n, s.k, env.a);
            break;
        case Strategy::Ommds:
            bwFactor = p.redundancy * overhead_beta(RepairScheme::Ommds, s.n, s.k);
            unavail = u_ideal(s.n, s.k, env.a);
            break;
        case Strategy::Rc: {
            Rational beta = overhead_beta(RepairScheme::Rc, s.n, s.k);
            storageFactor = p.redundancy * beta;  // n fragments of alpha_c * M
            bwFactor = storageFactor;
            unavail = u_ideal(s.n, s.k, env.a);
            break;
        }
    }

    p.exactBandwidthFactor = bwFactor;
    p.exactStorageFactor = storageFactor;
    p.bandwidthBytesPerDay = env.f * env.fileSizeBytes * bwFactor.to_double();
    p.storageBytes = env.fileSizeBytes * storageFactor.to_double();
    p.unavailability = unavail;
    return p;
}

std::vector<TradeoffPoint> sweep(Strategy kind, int k, const Environment& env,
                                 std::span<const int> redundancySteps) {
    if (redundancySteps.empty()) throw InvalidInput("empty redundancy range");
    std::vector<TradeoffPoint> out;
    out.reserve(redundancySteps.size());
    for (int step : redundancySteps) out.push_back(evaluate(StrategySpec::for_step(kind, k, step), env));
    return out;
}

double bandwidth_at_unavailability(Strategy kind, int k, const Environment& env, double target,
                                   std::span<const int> redundancySteps) {
    std::vector<int> steps(redundancySteps.begin(), redundancySteps.end());
    std::sort(steps.begin(), steps.end());
    for (int step : steps) {
        TradeoffPoint p = evaluate(StrategySpec::for_step(kind, k, step), env);
        if (p.unavailability <= target) return p.bandwidthBytesPerDay;
    }
    throw Unreachable("unavailability target not reachable in the swept range");
}

std::string tradeoff_csv_header(bool simColumns) {
    std::string h = "strategy,k,n,R,f,a,bandwidth_bytes_per_day,unavailability,storage_bytes,exact_bw_factor";
    if (simColumns) h += ",ci95_bw,ci95_unavail,decode_failures";
    return h;
}

namespace {
std::string sig6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}
}  // namespace

std::string tradeoff_csv_row(const TradeoffPoint& p, const Environment& env) {
    std::string row;
    row += strategy_name(p.kind);
    row += "," + std::to_string(p.k);
    row += "," + std::to_string(p.n);
    row += "," + sig6(p.redundancy.to_double());
    row += "," + sig6(env.f);
    row += "," + sig6(env.a);
    row += "," + sig6(p.bandwidthBytesPerDay);
    row += "," + sig6(p.unavailability);
    row += "," + sig6(p.storageBytes);
    row += "," + p.exactBandwidthFactor.str();
    return row;
}

}  // namespace regen::model
