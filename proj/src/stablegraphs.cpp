#include "nckdv/stablegraphs.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

#include "json.hpp"

namespace nckdv {

int StableGraph::total_genus() const {
    int s = 0;
    for (int gv : genus) s += gv;
    return s + h1();
}

int StableGraph::valence(int v) const {
    int val = 0;
    for (int lv : leg_vertex) {
        if (lv == v) ++val;
    }
    for (const auto& [u, w] : edges) {
        if (u == v) ++val;
        if (w == v) ++val;
    }
    return val;
}

namespace {

StableGraph relabel(const StableGraph& graph, const std::vector<int>& perm) {
    StableGraph out;
    out.genus.resize(graph.genus.size());
    for (std::size_t v = 0; v < graph.genus.size(); ++v) {
        out.genus[static_cast<std::size_t>(perm[v])] = graph.genus[v];
    }
    out.edges.reserve(graph.edges.size());
    for (const auto& [u, w] : graph.edges) {
        int a = perm[static_cast<std::size_t>(u)];
        int b = perm[static_cast<std::size_t>(w)];
        out.edges.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(out.edges.begin(), out.edges.end());
    out.leg_vertex.reserve(graph.leg_vertex.size());
    for (int lv : graph.leg_vertex) out.leg_vertex.push_back(perm[static_cast<std::size_t>(lv)]);
    return out;
}

bool connected(const StableGraph& graph) {
    const int v_count = graph.vertex_count();
    std::vector<int> parent(static_cast<std::size_t>(v_count));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
        while (parent[static_cast<std::size_t>(v)] != v) {
            parent[static_cast<std::size_t>(v)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
            v = parent[static_cast<std::size_t>(v)];
        }
        return v;
    };
    for (const auto& [u, w] : graph.edges) {
        parent[static_cast<std::size_t>(find(u))] = find(w);
    }
    for (int v = 0; v < v_count; ++v) {
        if (find(v) != find(0)) return false;
    }
    return true;
}

bool stable(const StableGraph& graph) {
    for (int v = 0; v < graph.vertex_count(); ++v) {
        if (2 * graph.genus[static_cast<std::size_t>(v)] - 2 + graph.valence(v) <= 0) {
            return false;
        }
    }
    return true;
}

}  // namespace

StableGraph canonical_form(const StableGraph& graph) {
    const int v_count = graph.vertex_count();
    std::vector<int> perm(static_cast<std::size_t>(v_count));
    std::iota(perm.begin(), perm.end(), 0);
    StableGraph best = relabel(graph, perm);
    while (std::next_permutation(perm.begin(), perm.end())) {
        StableGraph candidate = relabel(graph, perm);
        if (candidate < best) best = candidate;
    }
    return best;
}

std::vector<StableGraph> enumerate(int g, int n, unsigned seed) {
    if (g < 0 || n < 0 || 2 * g - 2 + n <= 0) {
        throw std::invalid_argument("enumerate: need g,n >= 0 and 2g-2+n > 0");
    }
    std::mt19937 rng(seed);
    std::set<StableGraph> found;

    const int max_v = std::max(1, 2 * g - 2 + n);
    for (int v_count = 1; v_count <= max_v; ++v_count) {
        // All unordered vertex pairs, self-pairs included, as edge slots.
        std::vector<std::pair<int, int>> slots;
        for (int u = 0; u < v_count; ++u) {
            for (int w = u; w < v_count; ++w) slots.emplace_back(u, w);
        }

        std::vector<int> genus(static_cast<std::size_t>(v_count), 0);
        auto genus_loop = [&](auto&& self, int v, int remaining) -> void {
            if (v == v_count) {
                // remaining = g - sum(genus); the genus identity pins E.
                const int edges_needed = remaining + v_count - 1;
                if (edges_needed < 0) return;

                std::vector<int> edge_mult(slots.size(), 0);
                auto edge_loop = [&](auto&& inner, std::size_t slot, int left) -> void {
                    if (slot == slots.size()) {
                        if (left != 0) return;
                        StableGraph base;
                        base.genus = genus;
                        for (std::size_t s = 0; s < slots.size(); ++s) {
                            for (int c = 0; c < edge_mult[s]; ++c) base.edges.push_back(slots[s]);
                        }
                        base.leg_vertex.assign(static_cast<std::size_t>(n), 0);
                        auto leg_loop = [&](auto&& legs, int leg) -> void {
                            if (leg == n) {
                                if (!connected(base) || !stable(base)) return;
                                StableGraph candidate = base;
                                if (seed != 0) {
                                    std::vector<int> shuffle_perm(
                                        static_cast<std::size_t>(v_count));
                                    std::iota(shuffle_perm.begin(), shuffle_perm.end(), 0);
                                    std::shuffle(shuffle_perm.begin(), shuffle_perm.end(), rng);
                                    candidate = relabel(candidate, shuffle_perm);
                                }
                                found.insert(canonical_form(candidate));
                                return;
                            }
                            for (int v2 = 0; v2 < v_count; ++v2) {
                                base.leg_vertex[static_cast<std::size_t>(leg)] = v2;
                                legs(legs, leg + 1);
                            }
                        };
                        leg_loop(leg_loop, 0);
                        return;
                    }
                    for (int m = 0; m <= left; ++m) {
                        edge_mult[slot] = m;
                        inner(inner, slot + 1, left - m);
                    }
                    edge_mult[slot] = 0;
                };
                edge_loop(edge_loop, 0, edges_needed);
                return;
            }
            for (int gv = 0; gv <= remaining; ++gv) {
                genus[static_cast<std::size_t>(v)] = gv;
                self(self, v + 1, remaining - gv);
            }
        };
        genus_loop(genus_loop, 0, g);
    }

    return std::vector<StableGraph>(found.begin(), found.end());
}

long aut_order(const StableGraph& graph) {
    const int v_count = graph.vertex_count();
    std::vector<int> perm(static_cast<std::size_t>(v_count));
    std::iota(perm.begin(), perm.end(), 0);
    long vertex_syms = 0;
    const StableGraph reference = relabel(graph, perm);
    do {
        StableGraph candidate = relabel(graph, perm);
        if (candidate == reference) ++vertex_syms;
    } while (std::next_permutation(perm.begin(), perm.end()));

    std::map<std::pair<int, int>, long> mult;
    for (const auto& e : graph.edges) mult[e] += 1;
    long edge_syms = 1;
    for (const auto& [e, m] : mult) {
        for (long k = 2; k <= m; ++k) edge_syms *= k;
        if (e.first == e.second) {
            for (long k = 0; k < m; ++k) edge_syms *= 2;  // half-edge swap per loop
        }
    }
    return vertex_syms * edge_syms;
}

long weighting_count(const StableGraph& graph, const std::vector<long>& a, long r) {
    if (r < 1) throw std::invalid_argument("weighting_count: r must be >= 1");
    if (a.size() != graph.leg_vertex.size()) {
        throw std::invalid_argument("weighting_count: one leg value per leg required");
    }
    long total = 0;
    for (long ai : a) total += ai;
    if (total % r != 0) return 0;

    std::vector<long> base_sum(static_cast<std::size_t>(graph.vertex_count()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        long v = ((a[i] % r) + r) % r;
        base_sum[static_cast<std::size_t>(graph.leg_vertex[i])] += v;
    }

    long count = 0;
    std::vector<long> w(graph.edges.size(), 0);
    auto rec = [&](auto&& self, std::size_t e) -> void {
        if (e == graph.edges.size()) {
            std::vector<long> sum = base_sum;
            for (std::size_t i = 0; i < graph.edges.size(); ++i) {
                const auto& [u, v] = graph.edges[i];
                sum[static_cast<std::size_t>(u)] += w[i];
                sum[static_cast<std::size_t>(v)] += (r - w[i]) % r;
            }
            for (long s : sum) {
                if (s % r != 0) return;
            }
            ++count;
            return;
        }
        for (long x = 0; x < r; ++x) {
            w[e] = x;
            self(self, e + 1);
        }
    };
    rec(rec, 0);
    return count;
}

std::string to_json(const StableGraph& graph) {
    nlohmann::ordered_json out;
    out["genus"] = graph.genus;
    out["edges"] = nlohmann::ordered_json::array();
    for (const auto& [u, v] : graph.edges) out["edges"].push_back({u, v});
    out["legs"] = graph.leg_vertex;
    out["h1"] = graph.h1();
    return out.dump();
}

}  // namespace nckdv
