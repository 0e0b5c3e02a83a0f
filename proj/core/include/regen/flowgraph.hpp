#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "regen/rational.hpp"

namespace regen::flow {

// Events that grow the information flow graph. Capacities are exact
// rationals in units of the file size (M = 1).
struct InitialPlacement {
    int nodeCount = 0;
    Rational perNodeStorage;
};
struct NodeFail {
    int id = 0;
};
struct NewcomerJoin {
    int id = 0;
    Rational perEdgeDownload;
    std::vector<int> helperIds;
};
using Event = std::variant<InitialPlacement, NodeFail, NewcomerJoin>;

struct EventLog {
    std::vector<Event> events;

    // Line format: `init <n> <p/q>`, `fail <id>`, `join <id> <p/q> <helper>...`
    static EventLog parse(std::istream& is);  // throws FormatError
    void serialize(std::ostream& os) const;
};

// Directed acyclic information flow graph: a source, one (x_in, x_out)
// pair per storage node, and edges whose capacities bound what any data
// collector can ever learn. Nodes go inactive on failure but keep their
// historical edges; newcomers may only attach to nodes active at the
// time they join. A newcomer stores min(initial per-node storage, total
// bytes downloaded) - it cannot hold more information than it received.
class FlowGraph {
  public:
    struct Edge {
        int from = 0;
        int to = 0;
        Rational cap;
        bool infinite = false;
    };

    static FlowGraph build(const EventLog& log);  // throws InvalidEvent

    int vertex_count() const { return 1 + 2 * static_cast<int>(nodes_.size()); }
    int node_count() const { return static_cast<int>(nodes_.size()); }
    bool is_active(int id) const;
    std::vector<int> active_ids() const;
    Rational stored_at(int id) const;
    std::vector<int> helpers_of(int id) const;  // nodes it downloaded from

    int x_in(int id) const;
    int x_out(int id) const;
    static constexpr int source() { return 0; }

    const std::vector<Edge>& edges() const { return edges_; }

  private:
    struct NodeRec {
        int id = 0;
        bool active = true;
        Rational storage;
        std::vector<int> helpers;
    };
    int index_of(int id) const;  // throws InvalidEvent on unknown id

    std::vector<NodeRec> nodes_;
    std::vector<Edge> edges_;
};

struct WitnessEdge {
    int from = 0;
    int to = 0;
    Rational cap;
};

struct CutValue {
    Rational value;
    std::vector<WitnessEdge> witnessEdges;
};

// Exact max-flow = min-cut between the source and a data collector
// attached with infinite-capacity edges to the chosen active nodes.
CutValue min_cut(const FlowGraph& g, const std::vector<int>& collectorNodeIds);

struct VerifyResult {
    CutValue minimum;
    std::vector<int> worstCollector;
    bool feasible = false;
    std::size_t collectorsChecked = 0;
};

// Check every (n choose k) data collector over the active nodes.
// Feasible iff all min-cuts reach fileSize. With stopAtFirstWitness the
// scan enumerates newest-node-first and returns at the first collector
// whose cut falls short (its cut is then the reported minimum).
VerifyResult verify_all_collectors(const FlowGraph& g, int k, const Rational& fileSize,
                                   bool stopAtFirstWitness = false);

// A scenario is an event-log template parameterized by alpha, with a
// grid denominator that all candidate thresholds are multiples of.
struct ThresholdScenario {
    std::function<EventLog(const Rational& alpha)> build;
    int k = 0;
    Rational fileSize = Rational(1);
    std::int64_t gridDenominator = 1;
};

// Minimal alpha in [0, 1] (on the scenario's grid) making every collector
// feasible: integer bisection over the grid, then exact confirmation that
// the candidate is feasible and one grid step below it is not.
// Throws NoThreshold when even alpha = 1 fails.
Rational threshold_alpha(const ThresholdScenario& scenario);

struct WorstCaseSplit {
    int outsideHelpers = 0;  // y1: collector nodes outside the newcomer's helper set
    int insideHelpers = 0;   // y2: collector nodes among the helpers
    Rational cut;
    std::vector<int> collector;
};

// Over all collectors containing the newcomer, the (y1, y2) split with
// the smallest min-cut. Ties go to the smaller y1.
WorstCaseSplit worst_case_collector(const FlowGraph& g, int newcomerId, int k);

// --- canonical scenarios -------------------------------------------------

// (n,k) MDS placement, one failure, newcomer downloads alpha of a fragment
// from each of n-1 survivors. Threshold is 1/(n-k).
EventLog ommds_scenario(int n, int k, const Rational& alpha);

// Same but the newcomer reaches only h helpers (h = k forces a whole-file
// download). alpha in fragments, per-edge capacity alpha/k of M.
EventLog mds_scenario(int n, int k, int h, const Rational& alpha);

// The (4,3) single-failure example; alpha in fragments. Threshold 1.
EventLog fig1_scenario(const Rational& alpha);

// RC storage system: n nodes each storing alpha*M, then chainLength
// failure/join rounds; each newcomer pulls alpha/k from k random active
// helpers. Threshold is alpha_c = k/(k^2-k+1).
EventLog rc_chain_scenario(int n, int k, const Rational& alpha, int chainLength,
                           std::uint64_t seed);

ThresholdScenario ommds_threshold_scenario(int n, int k);
ThresholdScenario mds_h_threshold_scenario(int n, int k, int h);
ThresholdScenario fig1_threshold_scenario();
ThresholdScenario rc_threshold_scenario(int n, int k, int chainLength, std::uint64_t seed);

Rational rc_alpha_c(int k);  // k/(k^2-k+1)

}  // namespace regen::flow
