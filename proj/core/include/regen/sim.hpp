#pragma once

#include <cstdint>

#include "regen/model.hpp"

namespace regen::sim {

enum class Mode {
    Accounting,   // transfers charged analytically per failure
    CodecBacked,  // real GF(256) repairs and decode attempts
};

struct SimConfig {
    model::StrategySpec strategy;
    model::Environment env;
    int epochs = 365;  // one epoch = one day, matching f's units
    int trials = 100;
    std::uint64_t seed = 1;
    Mode mode = Mode::Accounting;
};

struct SimResult {
    double meanBandwidthPerEpoch = 0.0;  // bytes
    double meanUnavailability = 0.0;
    double ci95Bandwidth = 0.0;  // normal-approximation half-widths over trials
    double ci95Unavailability = 0.0;
    long repairEvents = 0;
    // codec-backed only:
    long decodeAttempts = 0;
    long decodeFailures = 0;
    long blocksPerRepair = -1;  // constant across repairs; -1 until one happens
    std::uint32_t blockSize = 0;
};

// Churn Monte Carlo. Each epoch every storing node fails permanently with
// probability f and is rebuilt at once (bandwidth charged per strategy);
// availability is sampled per node with probability a. Identical
// (config, seed) gives identical results; trials draw from split
// sub-seeds so any parallel schedule aggregates the same numbers.
SimResult run(const SimConfig& config);

// As run(), but failures trigger real codec regenerations and every
// availability sample attempts a real decode from a random k-subset of
// the up fragments. Decode failures (rank deficiency) are counted on top
// of plain availability loss; the chance draws are shared with
// Accounting mode, so unavailability can only grow. OMMDS/RC only,
// small n.
SimResult run_codec_backed(const SimConfig& config);

}  // namespace regen::sim
