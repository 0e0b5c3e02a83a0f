#include "regen/flowgraph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "regen/errors.hpp"
#include "regen/rng.hpp"

namespace regen::flow {

// --- event log ------------------------------------------------------------

EventLog EventLog::parse(std::istream& is) {
    EventLog log;
    std::string line;
    int lineNo = 0;
    while (std::getline(is, line)) {
        ++lineNo;
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok) || tok[0] == '#') continue;
        auto want_rational = [&](const std::string& what) {
            std::string s;
            if (!(ls >> s)) throw FormatError("line " + std::to_string(lineNo) + ": missing " + what);
            auto r = Rational::parse(s);
            if (!r) throw FormatError("line " + std::to_string(lineNo) + ": bad rational " + s);
            return *r;
        };
        if (tok == "init") {
            InitialPlacement e;
            if (!(ls >> e.nodeCount)) throw FormatError("line " + std::to_string(lineNo) + ": bad init");
            e.perNodeStorage = want_rational("per-node storage");
            log.events.emplace_back(e);
        } else if (tok == "fail") {
            NodeFail e;
            if (!(ls >> e.id)) throw FormatError("line " + std::to_string(lineNo) + ": bad fail");
            log.events.emplace_back(e);
        } else if (tok == "join") {
            NewcomerJoin e;
            if (!(ls >> e.id)) throw FormatError("line " + std::to_string(lineNo) + ": bad join");
            e.perEdgeDownload = want_rational("download");
            int h;
            while (ls >> h) e.helperIds.push_back(h);
            if (e.helperIds.empty())
                throw FormatError("line " + std::to_string(lineNo) + ": join with no helpers");
            log.events.emplace_back(e);
        } else {
            throw FormatError("line " + std::to_string(lineNo) + ": unknown event " + tok);
        }
    }
    return log;
}

void EventLog::serialize(std::ostream& os) const {
    for (const auto& ev : events) {
        if (const auto* e = std::get_if<InitialPlacement>(&ev)) {
            os << "init " << e->nodeCount << " " << e->perNodeStorage.str() << "\n";
        } else if (const auto* e = std::get_if<NodeFail>(&ev)) {
            os << "fail " << e->id << "\n";
        } else if (const auto* e = std::get_if<NewcomerJoin>(&ev)) {
            os << "join " << e->id << " " << e->perEdgeDownload.str();
            for (int h : e->helperIds) os << " " << h;
            os << "\n";
        }
    }
}

// --- graph construction ----------------------------------------------------

int FlowGraph::index_of(int id) const {
    for (std::size_t i = 0; i < nodes_.size(); ++i)
        if (nodes_[i].id == id) return static_cast<int>(i);
    throw InvalidEvent("unknown node id " + std::to_string(id));
}

int FlowGraph::x_in(int id) const { return 1 + 2 * index_of(id); }
int FlowGraph::x_out(int id) const { return 2 + 2 * index_of(id); }

bool FlowGraph::is_active(int id) const { return nodes_[index_of(id)].active; }

Rational FlowGraph::stored_at(int id) const { return nodes_[index_of(id)].storage; }

std::vector<int> FlowGraph::helpers_of(int id) const { return nodes_[index_of(id)].helpers; }

std::vector<int> FlowGraph::active_ids() const {
    std::vector<int> ids;
    for (const auto& n : nodes_)
        if (n.active) ids.push_back(n.id);
    return ids;
}

FlowGraph FlowGraph::build(const EventLog& log) {
    FlowGraph g;
    Rational initialStorage;
    bool placed = false;

    auto add_node = [&](int id, const Rational& storage, std::vector<int> helpers) {
        for (const auto& n : g.nodes_)
            if (n.id == id) throw InvalidEvent("duplicate node id " + std::to_string(id));
        g.nodes_.push_back({id, true, storage, std::move(helpers)});
        int xin = 1 + 2 * (static_cast<int>(g.nodes_.size()) - 1);
        g.edges_.push_back({xin, xin + 1, storage, false});
    };

    for (const auto& ev : log.events) {
        if (const auto* e = std::get_if<InitialPlacement>(&ev)) {
            if (placed) throw InvalidEvent("second initial placement");
            if (e->nodeCount < 1) throw InvalidEvent("empty initial placement");
            placed = true;
            initialStorage = e->perNodeStorage;
            for (int i = 0; i < e->nodeCount; ++i) {
                add_node(i, e->perNodeStorage, {});
                g.edges_.push_back({source(), g.x_in(i), Rational(0), true});
            }
        } else if (const auto* e = std::get_if<NodeFail>(&ev)) {
            auto& n = g.nodes_[g.index_of(e->id)];
            if (!n.active) throw InvalidEvent("node " + std::to_string(e->id) + " already failed");
            n.active = false;
        } else if (const auto* e = std::get_if<NewcomerJoin>(&ev)) {
            if (!placed) throw InvalidEvent("join before initial placement");
            if (e->helperIds.empty()) throw InvalidEvent("join with no helpers");
            for (int h : e->helperIds)
                if (!g.is_active(h))
                    throw InvalidEvent("join helper " + std::to_string(h) + " is inactive");
            Rational total = e->perEdgeDownload * Rational(static_cast<std::int64_t>(e->helperIds.size()));
            Rational storage = std::min(initialStorage, total);
            add_node(e->id, storage, e->helperIds);
            for (int h : e->helperIds)
                g.edges_.push_back({g.x_out(h), g.x_in(e->id), e->perEdgeDownload, false});
        }
    }
    if (!placed) throw InvalidEvent("event log has no initial placement");
    return g;
}

// --- max-flow --------------------------------------------------------------

namespace {

// Dinic over exact rationals. Deterministic: edges keep insertion order.
class Dinic {
  public:
    explicit Dinic(int n) : head_(n, -1), level_(n), it_(n) {}

    void add_edge(int u, int v, const Rational& cap) {
        arcs_.push_back({v, head_[u], cap});
        head_[u] = static_cast<int>(arcs_.size()) - 1;
        arcs_.push_back({u, head_[v], Rational(0)});
        head_[v] = static_cast<int>(arcs_.size()) - 1;
    }

    Rational run(int s, int t) {
        Rational flow(0);
        while (bfs(s, t)) {
            it_ = head_;
            while (true) {
                Rational pushed = dfs(s, t, Rational());
                if (pushed.num() == 0) break;
                flow += pushed;
            }
        }
        return flow;
    }

    // After run(): vertices reachable from s in the residual graph.
    std::vector<bool> reachable(int s) const {
        std::vector<bool> seen(head_.size(), false);
        std::vector<int> stack{s};
        seen[s] = true;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int a = head_[u]; a != -1; a = arcs_[a].next) {
                if (arcs_[a].cap.num() > 0 && !seen[arcs_[a].to]) {
                    seen[arcs_[a].to] = true;
                    stack.push_back(arcs_[a].to);
                }
            }
        }
        return seen;
    }

  private:
    struct Arc {
        int to;
        int next;
        Rational cap;
    };

    bool bfs(int s, int t) {
        std::fill(level_.begin(), level_.end(), -1);
        level_[s] = 0;
        queue_.clear();
        queue_.push_back(s);
        for (std::size_t qi = 0; qi < queue_.size(); ++qi) {
            int u = queue_[qi];
            for (int a = head_[u]; a != -1; a = arcs_[a].next) {
                if (arcs_[a].cap.num() > 0 && level_[arcs_[a].to] == -1) {
                    level_[arcs_[a].to] = level_[u] + 1;
                    queue_.push_back(arcs_[a].to);
                }
            }
        }
        return level_[t] != -1;
    }

    // limit.num() == 0 means "no limit yet" (flow conservation keeps every
    // real augmentation strictly positive).
    Rational dfs(int u, int t, Rational limit) {
        if (u == t) return limit;
        for (int& a = it_[u]; a != -1; a = arcs_[a].next) {
            Arc& arc = arcs_[a];
            if (arc.cap.num() <= 0 || level_[arc.to] != level_[u] + 1) continue;
            Rational sub = limit.num() == 0 ? arc.cap : std::min(limit, arc.cap);
            Rational pushed = dfs(arc.to, t, sub);
            if (pushed.num() > 0) {
                arc.cap -= pushed;
                arcs_[a ^ 1].cap += pushed;
                return pushed;
            }
        }
        level_[u] = -1;
        return Rational(0);
    }

    std::vector<int> head_;
    std::vector<int> level_;
    std::vector<int> it_;
    std::vector<Arc> arcs_;
    std::vector<int> queue_;
};

struct FlowProblem {
    Dinic dinic;
    int sink;
    std::vector<FlowGraph::Edge> materialized;  // infinite caps replaced by the sentinel
};

// Sentinel strictly above the total finite capacity stands in for
// "infinite"; no finite cut ever prefers such an edge.
Rational infinite_sentinel(const FlowGraph& g) {
    Rational totalFinite(0);
    for (const auto& e : g.edges())
        if (!e.infinite) totalFinite += e.cap;
    return totalFinite + Rational(1);
}

FlowProblem make_problem(const FlowGraph& g, const std::vector<int>& collectorNodeIds,
                         const Rational& inf) {
    int sink = g.vertex_count();
    FlowProblem p{Dinic(g.vertex_count() + 1), sink, {}};
    for (const auto& e : g.edges()) {
        Rational cap = e.infinite ? inf : e.cap;
        p.dinic.add_edge(e.from, e.to, cap);
        p.materialized.push_back({e.from, e.to, cap, e.infinite});
    }
    for (int id : collectorNodeIds) {
        if (!g.is_active(id))
            throw InvalidEvent("collector attached to inactive node " + std::to_string(id));
        p.dinic.add_edge(g.x_out(id), sink, inf);
        p.materialized.push_back({g.x_out(id), sink, inf, true});
    }
    return p;
}

}  // namespace

CutValue min_cut(const FlowGraph& g, const std::vector<int>& collectorNodeIds) {
    FlowProblem p = make_problem(g, collectorNodeIds, infinite_sentinel(g));
    CutValue cut;
    cut.value = p.dinic.run(FlowGraph::source(), p.sink);
    auto reach = p.dinic.reachable(FlowGraph::source());
    for (const auto& e : p.materialized)
        if (reach[e.from] && !reach[e.to]) cut.witnessEdges.push_back({e.from, e.to, e.cap});
    return cut;
}

namespace {

// Lightweight min-cut when only the value (and whether it reaches the
// target) matters.
Rational cut_value(const FlowGraph& g, const std::vector<int>& collectorNodeIds,
                   const Rational& inf) {
    FlowProblem p = make_problem(g, collectorNodeIds, inf);
    return p.dinic.run(FlowGraph::source(), p.sink);
}

}  // namespace

VerifyResult verify_all_collectors(const FlowGraph& g, int k, const Rational& fileSize,
                                   bool stopAtFirstWitness) {
    std::vector<int> ids = g.active_ids();
    int n = static_cast<int>(ids.size());
    if (k < 1 || k > n) throw InvalidInput("collector size k out of range");
    // Newest nodes first: in threshold scans the binding collectors contain
    // the latest newcomer, so witnesses surface immediately.
    std::sort(ids.begin(), ids.end(), std::greater<int>());

    VerifyResult res;
    res.feasible = true;
    const Rational inf = infinite_sentinel(g);
    std::vector<int> pick(k);
    for (int i = 0; i < k; ++i) pick[i] = i;
    std::vector<int> collector(k);
    bool first = true;
    while (true) {
        for (int i = 0; i < k; ++i) collector[i] = ids[pick[i]];
        Rational v = cut_value(g, collector, inf);
        ++res.collectorsChecked;
        if (first || v < res.minimum.value) {
            res.minimum.value = v;
            res.worstCollector = collector;
            first = false;
        }
        if (v < fileSize) {
            res.feasible = false;
            if (stopAtFirstWitness) break;
        }
        // next k-combination of {0..n-1} in lexicographic order
        int i = k - 1;
        while (i >= 0 && pick[i] == n - k + i) --i;
        if (i < 0) break;
        ++pick[i];
        for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
    if (!res.worstCollector.empty())
        res.minimum = min_cut(g, res.worstCollector);  // recompute with witness edges
    return res;
}

Rational threshold_alpha(const ThresholdScenario& scenario) {
    const std::int64_t den = scenario.gridDenominator;
    if (den < 1) throw InvalidInput("grid denominator must be positive");

    auto feasible = [&](std::int64_t p) {
        FlowGraph g = FlowGraph::build(scenario.build(Rational(p, den)));
        return verify_all_collectors(g, scenario.k, scenario.fileSize, true).feasible;
    };

    if (feasible(0)) return Rational(0);
    if (!feasible(den)) throw NoThreshold("no alpha <= 1 makes the scenario feasible");

    std::int64_t lo = 0, hi = den;  // lo infeasible, hi feasible
    while (hi - lo > 1) {
        std::int64_t mid = lo + (hi - lo) / 2;
        (feasible(mid) ? hi : lo) = mid;
    }
    // Exact confirmation at the candidate and one grid step below.
    if (!feasible(hi) || feasible(hi - 1))
        throw NoThreshold("threshold not isolated on the grid; capacities not monotone?");
    return Rational(hi, den);
}

WorstCaseSplit worst_case_collector(const FlowGraph& g, int newcomerId, int k) {
    if (!g.is_active(newcomerId)) throw InvalidEvent("newcomer is not active");
    std::vector<int> helpers = g.helpers_of(newcomerId);
    std::vector<int> insiders, outsiders;
    for (int id : g.active_ids()) {
        if (id == newcomerId) continue;
        bool isHelper = std::find(helpers.begin(), helpers.end(), id) != helpers.end();
        (isHelper ? insiders : outsiders).push_back(id);
    }
    std::sort(insiders.begin(), insiders.end());
    std::sort(outsiders.begin(), outsiders.end());

    WorstCaseSplit best;
    bool first = true;
    const Rational inf = infinite_sentinel(g);
    std::vector<int> collector;

    // all (y1 from outsiders) x (y2 from insiders), y1 + y2 = k - 1
    auto for_each_combo = [](const std::vector<int>& pool, int m, auto&& fn) {
        std::vector<int> pick(m);
        for (int i = 0; i < m; ++i) pick[i] = i;
        int poolN = static_cast<int>(pool.size());
        if (m > poolN) return;
        while (true) {
            std::vector<int> chosen(m);
            for (int i = 0; i < m; ++i) chosen[i] = pool[pick[i]];
            fn(chosen);
            int i = m - 1;
            while (i >= 0 && pick[i] == poolN - m + i) --i;
            if (i < 0) break;
            ++pick[i];
            for (int j = i + 1; j < m; ++j) pick[j] = pick[j - 1] + 1;
        }
    };

    for (int y1 = 0; y1 <= k - 1; ++y1) {
        int y2 = k - 1 - y1;
        if (y1 > static_cast<int>(outsiders.size()) || y2 > static_cast<int>(insiders.size()))
            continue;
        for_each_combo(outsiders, y1, [&](const std::vector<int>& outPick) {
            for_each_combo(insiders, y2, [&](const std::vector<int>& inPick) {
                collector.clear();
                collector.push_back(newcomerId);
                collector.insert(collector.end(), outPick.begin(), outPick.end());
                collector.insert(collector.end(), inPick.begin(), inPick.end());
                Rational v = cut_value(g, collector, inf);
                if (first || v < best.cut || (v == best.cut && y1 < best.outsideHelpers)) {
                    best = {y1, y2, v, collector};
                    first = false;
                }
            });
        });
    }
    if (first) throw InvalidInput("no collector of size k containing the newcomer exists");
    return best;
}

// --- canonical scenarios -----------------------------------------------------

EventLog mds_scenario(int n, int k, int h, const Rational& alpha) {
    if (n <= k || h < 1 || h > n - 1) throw InvalidInput("bad (n, k, h)");
    EventLog log;
    log.events.emplace_back(InitialPlacement{n, Rational(1, k)});
    log.events.emplace_back(NodeFail{n - 1});
    NewcomerJoin join;
    join.id = n;
    join.perEdgeDownload = alpha * Rational(1, k);  // alpha is a fraction of one fragment
    for (int i = 0; i < h; ++i) join.helperIds.push_back(i);
    log.events.emplace_back(join);
    return log;
}

EventLog ommds_scenario(int n, int k, const Rational& alpha) { return mds_scenario(n, k, n - 1, alpha); }

EventLog fig1_scenario(const Rational& alpha) { return mds_scenario(4, 3, 3, alpha); }

EventLog rc_chain_scenario(int n, int k, const Rational& alpha, int chainLength,
                           std::uint64_t seed) {
    if (n <= k) throw InvalidInput("bad (n, k)");
    EventLog log;
    log.events.emplace_back(InitialPlacement{n, alpha});
    Rng rng(seed);
    std::vector<int> active(n);
    for (int i = 0; i < n; ++i) active[i] = i;
    int nextId = n;
    for (int step = 0; step < chainLength; ++step) {
        int victimIdx = static_cast<int>(rng.below(active.size()));
        int victim = active[victimIdx];
        active.erase(active.begin() + victimIdx);
        log.events.emplace_back(NodeFail{victim});

        // k distinct helpers among the survivors
        std::vector<int> pool = active;
        NewcomerJoin join;
        join.id = nextId;
        join.perEdgeDownload = alpha * Rational(1, k);
        for (int i = 0; i < k; ++i) {
            int j = static_cast<int>(rng.below(pool.size()));
            join.helperIds.push_back(pool[j]);
            pool.erase(pool.begin() + j);
        }
        std::sort(join.helperIds.begin(), join.helperIds.end());
        log.events.emplace_back(join);
        active.push_back(nextId++);
    }
    return log;
}

ThresholdScenario mds_h_threshold_scenario(int n, int k, int h) {
    ThresholdScenario s;
    s.k = k;
    s.gridDenominator = static_cast<std::int64_t>(k) * (n - k) * (h - k + 1);
    s.build = [n, k, h](const Rational& alpha) { return mds_scenario(n, k, h, alpha); };
    return s;
}

ThresholdScenario ommds_threshold_scenario(int n, int k) {
    return mds_h_threshold_scenario(n, k, n - 1);
}

ThresholdScenario fig1_threshold_scenario() { return mds_h_threshold_scenario(4, 3, 3); }

ThresholdScenario rc_threshold_scenario(int n, int k, int chainLength, std::uint64_t seed) {
    ThresholdScenario s;
    s.k = k;
    s.gridDenominator = static_cast<std::int64_t>(k) * (k * k - k + 1);
    s.build = [n, k, chainLength, seed](const Rational& alpha) {
        return rc_chain_scenario(n, k, alpha, chainLength, seed);
    };
    return s;
}

Rational rc_alpha_c(int k) { return Rational(k, static_cast<std::int64_t>(k) * k - k + 1); }

}  // namespace regen::flow
