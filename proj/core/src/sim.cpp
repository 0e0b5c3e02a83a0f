#include "regen/sim.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "regen/codec.hpp"
#include "regen/errors.hpp"
#include "regen/rng.hpp"

namespace regen::sim {

namespace {

using model::Strategy;

struct TrialStats {
    double bandwidth = 0.0;  // mean bytes per epoch
    double unavailability = 0.0;
    long repairs = 0;
    long decodeAttempts = 0;
    long decodeFailures = 0;
    long blocksPerRepair = -1;
    std::uint32_t blockSize = 0;
};

// Per-failure transfer in bytes. Replica loss costs M; fragment loss
// costs M/k times the scheme's beta (1 for ideal and hybrid fragments).
struct Costs {
    double replica = 0.0;
    double fragment = 0.0;
    int replicas = 0;
    int fragments = 0;
};

Costs costs_for(const model::StrategySpec& s, const model::Environment& env) {
    Costs c;
    double m = env.fileSizeBytes;
    switch (s.kind) {
        case Strategy::Replication:
            c.replicas = s.replicas;
            c.replica = m;
            break;
        case Strategy::IdealErasure:
            c.fragments = s.n;
            c.fragment = m / s.k;
            break;
        case Strategy::Hybrid:
            c.replicas = 1;
            c.replica = m;
            c.fragments = s.n;
            c.fragment = m / s.k;
            break;
        case Strategy::Ommds:
            c.fragments = s.n;
            c.fragment = model::overhead_beta(model::RepairScheme::Ommds, s.n, s.k).to_double() *
                         m / s.k;
            break;
        case Strategy::Rc:
            c.fragments = s.n;
            c.fragment = model::overhead_beta(model::RepairScheme::Rc, s.n, s.k).to_double() *
                         m / s.k;
            break;
    }
    return c;
}

bool unavailable_now(const model::StrategySpec& s, int replicasUp, int fragmentsUp) {
    switch (s.kind) {
        case Strategy::Replication: return replicasUp == 0;
        case Strategy::Hybrid: return replicasUp == 0 && fragmentsUp < s.k;
        default: return fragmentsUp < s.k;
    }
}

TrialStats accounting_trial(const SimConfig& cfg, Rng rng) {
    const Costs c = costs_for(cfg.strategy, cfg.env);
    TrialStats st;
    double bytes = 0.0;
    long unavailableEpochs = 0;
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        // permanent failures, replaced immediately
        for (int i = 0; i < c.replicas; ++i)
            if (rng.bernoulli(cfg.env.f)) {
                bytes += c.replica;
                ++st.repairs;
            }
        for (int i = 0; i < c.fragments; ++i)
            if (rng.bernoulli(cfg.env.f)) {
                bytes += c.fragment;
                ++st.repairs;
            }
        // availability sample
        int replicasUp = 0, fragmentsUp = 0;
        for (int i = 0; i < c.replicas; ++i) replicasUp += rng.bernoulli(cfg.env.a);
        for (int i = 0; i < c.fragments; ++i) fragmentsUp += rng.bernoulli(cfg.env.a);
        unavailableEpochs += unavailable_now(cfg.strategy, replicasUp, fragmentsUp);
    }
    st.bandwidth = bytes / cfg.epochs;
    st.unavailability = static_cast<double>(unavailableEpochs) / cfg.epochs;
    return st;
}

TrialStats codec_trial(const SimConfig& cfg, Rng rng) {
    const auto& s = cfg.strategy;
    auto scheme = s.kind == Strategy::Rc ? codec::Scheme::Rc : codec::Scheme::Ommds;
    codec::CodeParams params = codec::CodeParams::make(scheme, s.k, s.n);

    // Chance draws (failures, availability) come from `rng` in exactly the
    // accounting order; coding randomness uses a split stream so both
    // modes see identical churn for one seed.
    Rng codingRng = rng.split(0x636f646563ULL);

    auto fileLen = static_cast<std::uint64_t>(std::llround(cfg.env.fileSizeBytes));
    std::vector<std::uint8_t> file(fileLen);
    for (auto& b : file) b = codingRng.byte();
    std::vector<codec::Fragment> nodes = codec::encode(file, params, codingRng.u64());
    std::uint32_t nextId = static_cast<std::uint32_t>(s.n);

    TrialStats st;
    st.blockSize = nodes.front().blockSize;
    double bytes = 0.0;
    long unavailableEpochs = 0;

    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        for (int i = 0; i < s.n; ++i) {
            if (!rng.bernoulli(cfg.env.f)) continue;
            // regenerate node i from randomly chosen survivors
            std::vector<codec::RepairResponse> responses;
            int need = params.helpers_required();
            std::vector<int> pool;
            for (int h = 0; h < s.n; ++h)
                if (h != i) pool.push_back(h);
            for (int j = 0; j < need; ++j) {
                int idx = static_cast<int>(codingRng.below(pool.size()));
                responses.push_back(codec::helper_respond(nodes[pool[idx]], 1, codingRng.u64()));
                pool.erase(pool.begin() + idx);
            }
            codec::Fragment fresh =
                scheme == codec::Scheme::Rc
                    ? codec::regenerate_rc(responses, params, nextId++, codingRng.u64())
                    : codec::regenerate_ommds(responses, params, nextId++, codingRng.u64());
            long transferredBlocks = 0;
            for (const auto& r : responses) transferredBlocks += static_cast<long>(r.payload.rows());
            if (st.blocksPerRepair < 0) st.blocksPerRepair = transferredBlocks;
            bytes += static_cast<double>(transferredBlocks) * st.blockSize;
            ++st.repairs;
            nodes[i] = std::move(fresh);
        }
        // availability sample + real decode from a random k-subset of up nodes
        std::vector<int> up;
        for (int i = 0; i < s.n; ++i)
            if (rng.bernoulli(cfg.env.a)) up.push_back(i);
        bool unavailable = static_cast<int>(up.size()) < s.k;
        if (!unavailable) {
            std::vector<codec::Fragment> pick;
            for (int j = 0; j < s.k; ++j) {
                int idx = static_cast<int>(codingRng.below(up.size()));
                pick.push_back(nodes[up[idx]]);
                up.erase(up.begin() + idx);
            }
            ++st.decodeAttempts;
            try {
                codec::FileObject got = codec::reconstruct(pick, params);
                if (got.bytes != file) throw SingularSystem("decode produced wrong bytes");
            } catch (const SingularSystem&) {
                ++st.decodeFailures;
                unavailable = true;
            }
        }
        unavailableEpochs += unavailable;
    }
    st.bandwidth = bytes / cfg.epochs;
    st.unavailability = static_cast<double>(unavailableEpochs) / cfg.epochs;
    return st;
}

SimResult aggregate(const std::vector<TrialStats>& trials) {
    SimResult r;
    double bwSum = 0.0, unSum = 0.0;
    for (const auto& t : trials) {
        bwSum += t.bandwidth;
        unSum += t.unavailability;
        r.repairEvents += t.repairs;
        r.decodeAttempts += t.decodeAttempts;
        r.decodeFailures += t.decodeFailures;
        if (t.blocksPerRepair >= 0) {
            r.blocksPerRepair = t.blocksPerRepair;
            r.blockSize = t.blockSize;
        }
    }
    const auto n = static_cast<double>(trials.size());
    r.meanBandwidthPerEpoch = bwSum / n;
    r.meanUnavailability = unSum / n;
    if (trials.size() >= 30) {
        double bwVar = 0.0, unVar = 0.0;
        for (const auto& t : trials) {
            bwVar += (t.bandwidth - r.meanBandwidthPerEpoch) * (t.bandwidth - r.meanBandwidthPerEpoch);
            unVar += (t.unavailability - r.meanUnavailability) *
                     (t.unavailability - r.meanUnavailability);
        }
        bwVar /= n - 1;
        unVar /= n - 1;
        r.ci95Bandwidth = 1.96 * std::sqrt(bwVar / n);
        r.ci95Unavailability = 1.96 * std::sqrt(unVar / n);
    }
    return r;
}

}  // namespace

SimResult run(const SimConfig& cfg) {
    if (cfg.epochs < 1 || cfg.trials < 1) throw InvalidInput("epochs and trials must be >= 1");
    Rng root(cfg.seed);
    std::vector<TrialStats> trials;
    trials.reserve(cfg.trials);
    for (int t = 0; t < cfg.trials; ++t)
        trials.push_back(accounting_trial(cfg, root.split(static_cast<std::uint64_t>(t))));
    return aggregate(trials);
}

SimResult run_codec_backed(const SimConfig& cfg) {
    if (cfg.epochs < 1 || cfg.trials < 1) throw InvalidInput("epochs and trials must be >= 1");
    if (cfg.strategy.kind != Strategy::Ommds && cfg.strategy.kind != Strategy::Rc)
        throw InvalidInput("codec-backed simulation supports OMMDS and RC only");
    if (cfg.strategy.n > 64) throw InvalidInput("codec-backed simulation is meant for small n");
    Rng root(cfg.seed);
    std::vector<TrialStats> trials;
    trials.reserve(cfg.trials);
    for (int t = 0; t < cfg.trials; ++t)
        trials.push_back(codec_trial(cfg, root.split(static_cast<std::uint64_t>(t))));
    return aggregate(trials);
}

}  // namespace regen::sim
