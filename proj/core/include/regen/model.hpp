#pragma once

#include <span>
#include <string>
#include <vector>

#include "regen/rational.hpp"

namespace regen::model {

// Churn environment: f is the fraction of storing nodes failing
// permanently per day, a the probability a live node is reachable at any
// instant (independent across nodes).
struct Environment {
    double f = 0.0;
    double a = 1.0;
    double fileSizeBytes = 1.0;  // M
};

enum class Strategy {
    Replication,
    IdealErasure,
    Hybrid,  // one full replica plus an erasure code
    Ommds,
    Rc,
};

const char* strategy_name(Strategy s);
bool parse_strategy(const std::string& name, Strategy& out);

// A concrete operating point of one strategy. redundancy() is the total
// stored bytes over M: R for replication, 1 + n/k for Hybrid, n/k for the
// plain erasure schemes (RC stores a further beta_rc factor on top).
struct StrategySpec {
    Strategy kind = Strategy::Replication;
    int k = 1;
    int n = 0;  // coded fragments (0 for replication)
    int replicas = 0;

    static StrategySpec replication(int r);
    static StrategySpec ideal_erasure(int k, int n);
    static StrategySpec hybrid(int k, int n);
    static StrategySpec ommds(int k, int n);
    static StrategySpec rc(int k, int n);
    // The operating point of `kind` whose coded part has `step` fragments
    // (or `step` replicas for replication).
    static StrategySpec for_step(Strategy kind, int k, int step);

    Rational redundancy() const;
};

struct TradeoffPoint {
    Strategy kind = Strategy::Replication;
    int k = 0;
    int n = 0;
    Rational redundancy;
    double bandwidthBytesPerDay = 0.0;
    double unavailability = 0.0;
    double storageBytes = 0.0;
    // bandwidth = f * M * exactBandwidthFactor, storage = M * exactStorageFactor;
    // the factors are exact rationals (R, R*beta, ...) free of float noise.
    Rational exactBandwidthFactor;
    Rational exactStorageFactor;
};

// P[fewer than k of n independent a-availability nodes are up]:
// sum_{i=0}^{k-1} C(n,i) a^i (1-a)^(n-i), accumulated in the log domain
// so deep tails keep full relative precision.
double u_ideal(int n, int k, double a);

// Repair overhead relative to an MDS fragment of M/k bytes:
// naive k, OMMDS (n-1)/(n-k), RC k^2/(k^2-k+1).
enum class RepairScheme { Naive, Ommds, Rc };
Rational overhead_beta(RepairScheme scheme, int n, int k);

TradeoffPoint evaluate(const StrategySpec& s, const Environment& env);

// One point per redundancy step (replica count for Replication, coded n
// for everything else), in the given order.
std::vector<TradeoffPoint> sweep(Strategy kind, int k, const Environment& env,
                                 std::span<const int> redundancySteps);

// Bandwidth of the cheapest point reaching unavailability <= target using
// the smallest sufficient integer redundancy step. Throws Unreachable.
double bandwidth_at_unavailability(Strategy kind, int k, const Environment& env, double target,
                                   std::span<const int> redundancySteps);

// CSV emission (schema shared with the simulator, which appends columns).
std::string tradeoff_csv_header(bool simColumns = false);
std::string tradeoff_csv_row(const TradeoffPoint& p, const Environment& env);

}  // namespace regen::model
