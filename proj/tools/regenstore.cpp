// regenstore: encode/repair/reconstruct files with repair-friendly codes,
// verify the min-cut bandwidth bounds behind them, estimate churn
// parameters from availability traces, and emit tradeoff curves.
//
// JSON results go to stdout, human-readable notes to stderr.
// Exit codes: 0 ok, 2 bad usage/parameters, 3 I/O failure, 4 decode failure.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "regen/codec.hpp"
#include "regen/errors.hpp"
#include "regen/flowgraph.hpp"
#include "regen/fragment_io.hpp"
#include "regen/model.hpp"
#include "regen/sim.hpp"
#include "regen/trace.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace regen;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitDecode = 4;

std::uint64_t default_seed() {
    if (const char* env = std::getenv("REGENSTORE_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            std::cerr << "warning: ignoring unparsable REGENSTORE_SEED\n";
        }
    }
    return 1;
}

bool parse_scheme(const std::string& name, codec::Scheme& out) {
    if (name == "naive") out = codec::Scheme::MdsNaive;
    else if (name == "ommds") out = codec::Scheme::Ommds;
    else if (name == "rc") out = codec::Scheme::Rc;
    else return false;
    return true;
}

std::vector<std::uint8_t> read_file_bytes(const fs::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw FormatError("cannot open " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(is)),
                                    std::istreambuf_iterator<char>());
    return bytes;
}

fs::path fragment_path(const fs::path& dir, std::uint32_t nodeId) {
    return dir / ("fragment_" + std::to_string(nodeId) + ".rgn");
}

struct EnvFlags {
    std::string preset;
    double f = -1.0, a = -1.0;
    double fileSize = 1e9;

    model::Environment resolve() const {
        model::Environment env;
        env.fileSizeBytes = fileSize;
        if (!preset.empty()) {
            trace::Preset p;
            if (!trace::find_preset(preset, p)) throw InvalidInput("unknown preset " + preset);
            env.f = p.f;
            env.a = p.a;
        } else {
            if (f < 0.0 || a < 0.0) throw InvalidInput("need --preset or both --f and --a");
            env.f = f;
            env.a = a;
        }
        return env;
    }
};

std::vector<int> steps_for(model::Strategy kind, int k, double rLo, double rHi) {
    std::vector<int> steps;
    auto push_range = [&](int lo, int hi) {
        for (int s = lo; s <= hi; ++s) steps.push_back(s);
    };
    switch (kind) {
        case model::Strategy::Replication:
            push_range(std::max(1, static_cast<int>(std::ceil(rLo))),
                       static_cast<int>(std::floor(rHi)));
            break;
        case model::Strategy::Hybrid:
            // R = 1 + n/k, coded part needs n >= k
            push_range(std::max(k, static_cast<int>(std::ceil((rLo - 1.0) * k))),
                       static_cast<int>(std::floor((rHi - 1.0) * k)));
            break;
        case model::Strategy::IdealErasure:
            push_range(std::max(k, static_cast<int>(std::ceil(rLo * k))),
                       static_cast<int>(std::floor(rHi * k)));
            break;
        default:
            // OMMDS/RC need n > k
            push_range(std::max(k + 1, static_cast<int>(std::ceil(rLo * k))),
                       static_cast<int>(std::floor(rHi * k)));
            break;
    }
    if (steps.empty()) throw InvalidInput("redundancy range selects no operating points");
    return steps;
}

bool parse_r_range(const std::string& s, double& lo, double& hi) {
    auto colon = s.find(':');
    if (colon == std::string::npos) return false;
    try {
        lo = std::stod(s.substr(0, colon));
        hi = std::stod(s.substr(colon + 1));
    } catch (const std::exception&) {
        return false;
    }
    return lo > 0.0 && hi >= lo;
}

// --- subcommand implementations -------------------------------------------

int cmd_encode(const std::string& file, int k, int n, const std::string& schemeName,
               const std::string& outDir, std::uint64_t seed) {
    codec::Scheme scheme;
    if (!parse_scheme(schemeName, scheme)) {
        std::cerr << "unknown scheme " << schemeName << " (naive|ommds|rc)\n";
        return kExitUsage;
    }
    codec::CodeParams params;
    try {
        params = codec::CodeParams::make(scheme, k, n);
    } catch (const InvalidInput& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }
    std::vector<std::uint8_t> bytes;
    try {
        bytes = read_file_bytes(file);
    } catch (const FormatError& e) {
        std::cerr << e.what() << "\n";
        return kExitIo;
    }
    if (bytes.empty()) {
        std::cerr << "refusing to encode an empty file\n";
        return kExitUsage;
    }
    try {
        auto fragments = codec::encode(bytes, params, seed);
        fs::create_directories(outDir);
        for (const auto& f : fragments) codec::write_fragment_file(fragment_path(outDir, f.nodeId), f);

        const auto& f0 = fragments.front();
        std::uint64_t fragmentBytes =
            codec::kFragmentHeaderSize + f0.coeffs.data().size() + f0.payload.data().size();
        json out = {
            {"scheme", schemeName},
            {"k", k},
            {"n", n},
            {"B", params.blockCount},
            {"block_size", f0.blockSize},
            {"fragment_bytes", fragmentBytes},
            {"total_bytes", fragmentBytes * fragments.size()},
        };
        std::cout << out.dump() << "\n";
        std::cerr << "wrote " << n << " fragments to " << outDir << "\n";
        return kExitOk;
    } catch (const InvalidInput& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return kExitIo;
    }
}

int cmd_repair(const std::string& schemeName, const std::string& dir, int lostId,
               std::uint64_t seed) {
    codec::Scheme scheme;
    if (!parse_scheme(schemeName, scheme)) {
        std::cerr << "unknown scheme " << schemeName << "\n";
        return kExitUsage;
    }
    try {
        std::vector<codec::Fragment> have;
        for (const auto& entry : fs::directory_iterator(dir)) {
            if (entry.path().extension() != ".rgn") continue;
            codec::Fragment f = codec::read_fragment_file(entry.path());
            if (f.nodeId != static_cast<std::uint32_t>(lostId)) have.push_back(std::move(f));
        }
        if (have.empty()) throw FormatError("no helper fragments in " + dir);
        std::sort(have.begin(), have.end(),
                  [](const auto& a, const auto& b) { return a.nodeId < b.nodeId; });
        codec::CodeParams params = have.front().params;
        if (params.scheme != scheme) throw InvalidInput("fragments on disk use a different scheme");

        int need = params.helpers_required();
        if (static_cast<int>(have.size()) < need)
            throw InvalidInput("repair needs " + std::to_string(need) + " helpers, found " +
                               std::to_string(have.size()));

        Rng rng(seed);
        codec::Fragment fresh;
        long blocksDownloaded = 0;
        if (scheme == codec::Scheme::MdsNaive) {
            std::vector<codec::Fragment> helpers(have.begin(), have.begin() + params.k);
            fresh = codec::regenerate_naive(helpers, params, lostId, rng.u64());
            blocksDownloaded = static_cast<long>(params.k) * params.blocksPerFragment;
        } else {
            std::vector<codec::RepairResponse> responses;
            for (int i = 0; i < need; ++i)
                responses.push_back(codec::helper_respond(have[i], 1, rng.u64()));
            fresh = scheme == codec::Scheme::Rc
                        ? codec::regenerate_rc(responses, params, lostId, rng.u64())
                        : codec::regenerate_ommds(responses, params, lostId, rng.u64());
            blocksDownloaded = need;
        }
        codec::write_fragment_file(fragment_path(dir, fresh.nodeId), fresh);

        // beta = bytes downloaded / (M/k), exact in block units
        Rational beta(blocksDownloaded * params.k, params.blockCount);
        json out = {
            {"scheme", schemeName},
            {"lost_id", lostId},
            {"bytes_downloaded", blocksDownloaded * static_cast<std::uint64_t>(fresh.blockSize)},
            {"blocks_downloaded", blocksDownloaded},
            {"beta", beta.to_double()},
            {"beta_exact", beta.str()},
        };
        std::cout << out.dump() << "\n";
        std::cerr << "regenerated fragment " << lostId << " from " << need << " helpers\n";
        return kExitOk;
    } catch (const SingularSystem& e) {
        std::cerr << e.what() << "\n";
        return kExitDecode;
    } catch (const InvalidInput& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return kExitIo;
    } catch (const fs::filesystem_error& e) {
        std::cerr << e.what() << "\n";
        return kExitIo;
    }
}

int cmd_reconstruct(const std::vector<std::string>& fragmentPaths, const std::string& outPath) {
    try {
        std::vector<codec::Fragment> fragments;
        for (const auto& p : fragmentPaths) fragments.push_back(codec::read_fragment_file(p));
        if (fragments.empty()) {
            std::cerr << "no fragments supplied\n";
            return kExitUsage;
        }
        codec::CodeParams params = fragments.front().params;
        if (static_cast<int>(fragments.size()) < params.k) {
            std::cerr << "need k=" << params.k << " fragments, got " << fragments.size() << "\n";
            return kExitUsage;
        }
        codec::FileObject file = codec::reconstruct(fragments, params);
        std::ofstream os(outPath, std::ios::binary);
        if (!os) {
            std::cerr << "cannot open " << outPath << " for writing\n";
            return kExitIo;
        }
        os.write(reinterpret_cast<const char*>(file.bytes.data()),
                 static_cast<std::streamsize>(file.bytes.size()));
        json out = {{"bytes", file.bytes.size()}, {"out", outPath}};
        std::cout << out.dump() << "\n";
        std::cerr << "reconstructed " << file.bytes.size() << " bytes\n";
        return kExitOk;
    } catch (const SingularSystem& e) {
        std::cerr << "decode failed: " << e.what() << "\n";
        return kExitDecode;
    } catch (const InvalidInput& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return kExitIo;
    }
}

int cmd_verify_bounds(const std::string& scenario, int k, int n, int chainLength,
                      std::uint64_t seed) {
    try {
        flow::ThresholdScenario ts;
        Rational expected;
        if (scenario == "fig1") {
            ts = flow::fig1_threshold_scenario();
            expected = Rational(1);
        } else if (scenario == "ommds") {
            ts = flow::ommds_threshold_scenario(n, k);
            expected = Rational(1, n - k);
        } else if (scenario == "rc") {
            ts = flow::rc_threshold_scenario(n, k, chainLength, seed);
            expected = flow::rc_alpha_c(k);
        } else if (scenario == "mds-h-equals-k") {
            ts = flow::mds_h_threshold_scenario(n, k, k);
            expected = Rational(1);
        } else {
            std::cerr << "unknown scenario " << scenario
                      << " (fig1|ommds|rc|mds-h-equals-k)\n";
            return kExitUsage;
        }
        Rational got = flow::threshold_alpha(ts);
        bool pass = got == expected;
        json out = {
            {"scenario", scenario},
            {"k", ts.k},
            {"n", n},
            {"chain_length", scenario == "rc" ? chainLength : 0},
            {"threshold", got.str()},
            {"closed_form", expected.str()},
            {"pass", pass},
        };
        std::cout << out.dump() << "\n";
        std::cerr << "threshold " << got.str() << " vs closed form " << expected.str() << ": "
                  << (pass ? "PASS" : "FAIL") << "\n";
        return pass ? kExitOk : 1;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }
}

int cmd_tradeoff(const EnvFlags& envFlags, int k, const std::string& strategiesCsv,
                 const std::string& rRange, const std::string& outPath) {
    try {
        model::Environment env = envFlags.resolve();
        double rLo, rHi;
        if (!parse_r_range(rRange, rLo, rHi)) {
            std::cerr << "bad --r-range, expected lo:hi\n";
            return kExitUsage;
        }
        std::vector<model::Strategy> kinds;
        std::istringstream ss(strategiesCsv);
        std::string name;
        while (std::getline(ss, name, ',')) {
            model::Strategy s;
            if (!model::parse_strategy(name, s)) {
                std::cerr << "unknown strategy " << name
                          << " (replication|ideal|hybrid|ommds|rc)\n";
                return kExitUsage;
            }
            kinds.push_back(s);
        }
        if (kinds.empty()) {
            std::cerr << "no strategies selected\n";
            return kExitUsage;
        }

        std::ostringstream csv;
        csv << model::tradeoff_csv_header() << "\n";
        for (model::Strategy kind : kinds) {
            auto steps = steps_for(kind, k, rLo, rHi);
            for (const auto& p : model::sweep(kind, k, env, steps))
                csv << model::tradeoff_csv_row(p, env) << "\n";
        }
        if (outPath.empty() || outPath == "-") {
            std::cout << csv.str();
        } else {
            std::ofstream os(outPath);
            if (!os) {
                std::cerr << "cannot open " << outPath << "\n";
                return kExitIo;
            }
            os << csv.str();
            std::cerr << "wrote tradeoff CSV to " << outPath << "\n";
        }
        return kExitOk;
    } catch (const InvalidInput& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }
}

int cmd_estimate(const std::string& tracePath, double timeoutDays, bool cleanPlanetlab,
                 const trace::SynthParams& synthParams, bool useSynth, std::uint64_t seed,
                 const std::string& emitTracePath) {
    try {
        trace::AvailabilityTrace tr;
        if (useSynth) {
            tr = trace::synth(synthParams, seed);
        } else {
            std::ifstream is(tracePath);
            if (!is) {
                std::cerr << "cannot open " << tracePath << "\n";
                return kExitIo;
            }
            tr = trace::parse(is);
        }
        if (!emitTracePath.empty()) {
            std::ofstream os(emitTracePath);
            if (!os) {
                std::cerr << "cannot open " << emitTracePath << "\n";
                return kExitIo;
            }
            trace::serialize(tr, os);
        }
        if (cleanPlanetlab) tr = trace::clean_planetlab(tr);
        auto timeout = static_cast<std::int64_t>(timeoutDays * trace::kSecondsPerDay);
        trace::ParamEstimate est = trace::estimate(tr, timeout);
        json out = {
            {"f", est.f},
            {"a", est.a},
            {"t_days", static_cast<double>(est.timeout) / trace::kSecondsPerDay},
            {"nodes", est.nodeCount},
            {"span_days", est.spanDays},
        };
        std::cout << out.dump() << "\n";
        std::cerr << "f=" << est.f << " a=" << est.a << " over " << est.spanDays << " days\n";
        return kExitOk;
    } catch (const FormatError& e) {
        std::cerr << e.what() << "\n";
        return kExitIo;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }
}

int cmd_simulate(const EnvFlags& envFlags, const std::string& strategyName, int k, int r,
                 int epochs, int trials, std::uint64_t seed, bool codecBacked,
                 const std::string& outPath) {
    try {
        model::Environment env = envFlags.resolve();
        model::Strategy kind;
        if (!model::parse_strategy(strategyName, kind)) {
            std::cerr << "unknown strategy " << strategyName << "\n";
            return kExitUsage;
        }
        sim::SimConfig cfg;
        cfg.strategy = model::StrategySpec::for_step(kind, k, r);
        cfg.env = env;
        cfg.epochs = epochs;
        cfg.trials = trials;
        cfg.seed = seed;
        cfg.mode = codecBacked ? sim::Mode::CodecBacked : sim::Mode::Accounting;

        if (codecBacked) {
            // keep the real coding tractable: one block = 16 bytes
            auto params = codec::CodeParams::make(
                kind == model::Strategy::Rc ? codec::Scheme::Rc : codec::Scheme::Ommds,
                cfg.strategy.k, cfg.strategy.n);
            cfg.env.fileSizeBytes = static_cast<double>(params.blockCount) * 16.0;
            std::cerr << "codec-backed mode: file size set to " << cfg.env.fileSizeBytes
                      << " bytes (" << params.blockCount << " blocks)\n";
        }

        sim::SimResult res =
            codecBacked ? sim::run_codec_backed(cfg) : sim::run(cfg);

        json out = {
            {"strategy", strategyName},
            {"k", cfg.strategy.k},
            {"n", cfg.strategy.n},
            {"R", cfg.strategy.redundancy().to_double()},
            {"epochs", epochs},
            {"trials", trials},
            {"seed", seed},
            {"mean_bandwidth_bytes_per_day", res.meanBandwidthPerEpoch},
            {"mean_unavailability", res.meanUnavailability},
            {"ci95_bw", res.ci95Bandwidth},
            {"ci95_unavail", res.ci95Unavailability},
            {"repair_events", res.repairEvents},
        };
        if (codecBacked) {
            out["decode_failures"] = res.decodeFailures;
            out["decode_attempts"] = res.decodeAttempts;
            out["blocks_per_repair"] = res.blocksPerRepair;
        }
        std::cout << out.dump() << "\n";

        if (!outPath.empty()) {
            bool fresh = !fs::exists(outPath) || fs::file_size(outPath) == 0;
            std::ofstream os(outPath, std::ios::app);
            if (!os) {
                std::cerr << "cannot open " << outPath << "\n";
                return kExitIo;
            }
            if (fresh) os << model::tradeoff_csv_header(true) << "\n";
            model::TradeoffPoint p = model::evaluate(cfg.strategy, cfg.env);
            p.bandwidthBytesPerDay = res.meanBandwidthPerEpoch;
            p.unavailability = res.meanUnavailability;
            os << model::tradeoff_csv_row(p, cfg.env) << "," << res.ci95Bandwidth << ","
               << res.ci95Unavailability << "," << res.decodeFailures << "\n";
            std::cerr << "appended simulation row to " << outPath << "\n";
        }
        std::cerr << "simulated " << trials << " trials x " << epochs << " epochs\n";
        return kExitOk;
    } catch (const InvalidInput& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"regenerating-code storage toolkit"};
    app.require_subcommand(1);
    std::uint64_t seed = default_seed();

    // encode
    auto* encode = app.add_subcommand("encode", "encode a file into coded fragments");
    std::string encFile, encScheme = "rc", encOut = ".";
    int encK = 7, encN = 14;
    encode->add_option("--file", encFile, "input file")->required();
    encode->add_option("--k", encK, "fragments needed to reconstruct");
    encode->add_option("--n", encN, "fragments stored");
    encode->add_option("--scheme", encScheme, "naive|ommds|rc");
    encode->add_option("--out-dir", encOut, "output directory");
    encode->add_option("--seed", seed, "rng seed (default $REGENSTORE_SEED or 1)");

    // repair
    auto* repair = app.add_subcommand("repair", "regenerate a lost fragment from helpers");
    std::string repScheme = "rc", repDir = ".";
    int repLost = 0;
    repair->add_option("--scheme", repScheme, "naive|ommds|rc");
    repair->add_option("--fragments-dir", repDir, "directory with .rgn fragments");
    repair->add_option("--lost-id", repLost, "node id to regenerate")->required();
    repair->add_option("--seed", seed, "rng seed");

    // reconstruct
    auto* reconstruct = app.add_subcommand("reconstruct", "rebuild the original file");
    std::vector<std::string> recFragments;
    std::string recOut = "reconstructed.bin";
    reconstruct->add_option("--fragments", recFragments, "fragment files (need >= k)")
        ->required()
        ->expected(-1);
    reconstruct->add_option("--out", recOut, "output path");

    // verify-bounds
    auto* verify = app.add_subcommand("verify-bounds", "min-cut threshold vs closed form");
    std::string vScenario = "rc";
    int vK = 7, vN = 14, vChain = 1;
    verify->add_option("--scenario", vScenario, "fig1|ommds|rc|mds-h-equals-k");
    verify->add_option("--k", vK, "k");
    verify->add_option("--n", vN, "n");
    verify->add_option("--chain-length", vChain, "failure/join rounds (rc)");
    verify->add_option("--seed", seed, "rng seed for helper choices");

    // estimate
    auto* estimate = app.add_subcommand("estimate", "estimate (f, a) from a trace");
    std::string estTrace, estEmit;
    double estTimeoutDays = 1.0;
    bool estClean = false, estSynth = false;
    trace::SynthParams synthParams;
    estimate->add_option("--trace", estTrace, "availability trace CSV");
    estimate->add_option("--timeout-days", estTimeoutDays, "permanent-failure timeout");
    estimate->add_flag("--clean-planetlab", estClean, "drop measurement-wide outages first");
    estimate->add_flag("--synth", estSynth, "estimate from a generated synthetic trace");
    estimate->add_option("--synth-nodes", synthParams.nodeCount, "synthetic population size");
    estimate->add_option("--synth-lifetime-days", synthParams.meanLifetimeDays,
                         "mean permanent lifetime (0 = immortal)");
    estimate->add_option("--synth-up-fraction", synthParams.upFraction, "availability target");
    estimate->add_option("--synth-days", synthParams.durationDays, "trace length");
    estimate->add_option("--emit-trace", estEmit, "also write the trace CSV here");
    estimate->add_option("--seed", seed, "rng seed");

    // tradeoff
    auto* tradeoff = app.add_subcommand("tradeoff", "analytical availability/bandwidth curves");
    EnvFlags tEnv;
    int tK = 7;
    std::string tStrategies = "replication,ideal,hybrid,ommds,rc", tRange = "1:8", tOut;
    tradeoff->add_option("--preset", tEnv.preset, "planetlab|microsoft|skype|gnutella");
    tradeoff->add_option("--f", tEnv.f, "fraction of nodes failing per day");
    tradeoff->add_option("--a", tEnv.a, "node availability");
    tradeoff->add_option("--file-size", tEnv.fileSize, "file size in bytes");
    tradeoff->add_option("--k", tK, "k");
    tradeoff->add_option("--strategies", tStrategies, "comma-separated list");
    tradeoff->add_option("--r-range", tRange, "redundancy factor range lo:hi");
    tradeoff->add_option("--out", tOut, "CSV path (default stdout)");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo churn simulation");
    EnvFlags sEnv;
    std::string sStrategy = "rc", sOut;
    int sK = 7, sR = 14, sEpochs = 365, sTrials = 100;
    bool sCodec = false;
    simulate->add_option("--preset", sEnv.preset, "planetlab|microsoft|skype|gnutella");
    simulate->add_option("--f", sEnv.f, "fraction of nodes failing per day");
    simulate->add_option("--a", sEnv.a, "node availability");
    simulate->add_option("--file-size", sEnv.fileSize, "file size in bytes");
    simulate->add_option("--strategy", sStrategy, "replication|ideal|hybrid|ommds|rc");
    simulate->add_option("--k", sK, "k");
    simulate->add_option("--r", sR, "redundancy step: replicas, or coded n");
    simulate->add_option("--epochs", sEpochs, "days per trial");
    simulate->add_option("--trials", sTrials, "independent trials");
    simulate->add_flag("--codec-backed", sCodec, "run real repairs and decodes");
    simulate->add_option("--out", sOut, "append a CSV row here");
    simulate->add_option("--seed", seed, "rng seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (encode->parsed())
        return cmd_encode(encFile, encK, encN, encScheme, encOut, seed);
    if (repair->parsed()) return cmd_repair(repScheme, repDir, repLost, seed);
    if (reconstruct->parsed()) return cmd_reconstruct(recFragments, recOut);
    if (verify->parsed()) return cmd_verify_bounds(vScenario, vK, vN, vChain, seed);
    if (estimate->parsed()) {
        if (!estSynth && estTrace.empty()) {
            std::cerr << "estimate needs --trace or --synth\n";
            return kExitUsage;
        }
        return cmd_estimate(estTrace, estTimeoutDays, estClean, synthParams, estSynth, seed,
                            estEmit);
    }
    if (tradeoff->parsed()) return cmd_tradeoff(tEnv, tK, tStrategies, tRange, tOut);
    if (simulate->parsed())
        return cmd_simulate(sEnv, sStrategy, sK, sR, sEpochs, sTrials, seed, sCodec, sOut);
    return kExitUsage;
}
