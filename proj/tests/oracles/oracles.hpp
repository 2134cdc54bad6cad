#pragma once

// Brute-force reference implementations. They work on plain integers and
// vectors and share no code with the library beyond the value types, so a
// disagreement points at one side or the other, never at both.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

using Family = std::set<std::uint64_t>;
using Relation = std::vector<std::vector<bool>>;  // r[i][j]: i ⪯ j

inline bool is_topology(int n, const Family& f) {
    const std::uint64_t full = (std::uint64_t{1} << n) - 1;
    if (!f.contains(0) || !f.contains(full)) return false;
    for (auto a : f)
        for (auto b : f)
            if (!f.contains(a | b) || !f.contains(a & b)) return false;
    return true;
}

// Every topology on n points, by filtering all 2^(2^n) families (n <= 3).
inline std::vector<Family> all_topologies(int n) {
    const int subsets = 1 << n;
    std::vector<Family> out;
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << subsets); ++code) {
        Family f;
        for (int s = 0; s < subsets; ++s)
            if ((code >> s) & 1u) f.insert(static_cast<std::uint64_t>(s));
        if (is_topology(n, f)) out.push_back(std::move(f));
    }
    return out;
}

// Every reflexive, transitive relation on n points (n <= 4).
inline std::vector<Relation> all_preorders(int n) {
    std::vector<std::pair<int, int>> off;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) off.emplace_back(i, j);
    std::vector<Relation> out;
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << off.size()); ++code) {
        Relation r(n, std::vector<bool>(n, false));
        for (int i = 0; i < n; ++i) r[i][i] = true;
        for (std::size_t k = 0; k < off.size(); ++k)
            if ((code >> k) & 1u) r[off[k].first][off[k].second] = true;
        bool transitive = true;
        for (int i = 0; i < n && transitive; ++i)
            for (int j = 0; j < n && transitive; ++j)
                for (int k = 0; k < n && transitive; ++k)
                    if (r[i][j] && r[j][k] && !r[i][k]) transitive = false;
        if (transitive) out.push_back(std::move(r));
    }
    return out;
}

inline Family upper_sets(const Relation& r) {
    const int n = static_cast<int>(r.size());
    Family f;
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
        bool up = true;
        for (int i = 0; i < n && up; ++i)
            for (int j = 0; j < n && up; ++j)
                if (((s >> i) & 1u) && r[i][j] && !((s >> j) & 1u)) up = false;
        if (up) f.insert(s);
    }
    return f;
}

// x ⪯ y iff every open set containing x contains y (x in the closure of {y}).
inline Relation specialization(int n, const Family& f) {
    Relation r(n, std::vector<bool>(n, true));
    for (auto u : f)
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                if (((u >> x) & 1u) && !((u >> y) & 1u)) r[x][y] = false;
    return r;
}

// Every point can be separated from every other by an open set.
inline bool t1(int n, const Family& f) {
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            if (x == y) continue;
            bool sep = std::any_of(f.begin(), f.end(), [&](std::uint64_t u) { return ((u >> x) & 1u) && !((u >> y) & 1u); });
            if (!sep) return false;
        }
    return true;
}

// No clopen set besides ∅ and X.
inline bool connected_by_clopens(int n, const Family& f) {
    const std::uint64_t full = (std::uint64_t{1} << n) - 1;
    for (auto u : f)
        if (u != 0 && u != full && f.contains(full & ~u)) return false;
    return true;
}

// Path-connected when the preorder is read as an undirected graph.
inline bool graph_connected(const Relation& r) {
    const int n = static_cast<int>(r.size());
    if (n == 0) return true;
    std::vector<bool> seen(n, false);
    std::vector<int> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int u = 0; u < n; ++u)
            if (!seen[u] && (r[v][u] || r[u][v])) {
                seen[u] = true;
                stack.push_back(u);
            }
    }
    return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

// Components of the ε-graph by repeated reachability sweeps; each component
// is a bitmask, sorted by smallest member.
inline std::vector<std::uint64_t> reach_components(const std::vector<std::vector<double>>& d, double eps) {
    const int n = static_cast<int>(d.size());
    std::vector<std::uint64_t> reach(n);
    for (int i = 0; i < n; ++i) {
        reach[i] = std::uint64_t{1} << i;
        bool grew = true;
        while (grew) {
            grew = false;
            for (int a = 0; a < n; ++a) {
                if (!((reach[i] >> a) & 1u)) continue;
                for (int b = 0; b < n; ++b)
                    if (d[a][b] <= eps && !((reach[i] >> b) & 1u)) {
                        reach[i] |= std::uint64_t{1} << b;
                        grew = true;
                    }
            }
        }
    }
    std::set<std::uint64_t> distinct(reach.begin(), reach.end());
    std::vector<std::uint64_t> out(distinct.begin(), distinct.end());
    std::sort(out.begin(), out.end(), [](std::uint64_t a, std::uint64_t b) { return (a & -a) < (b & -b); });
    return out;
}

// Horn rules over strings: atoms are (relation, args) and variables are
// names starting with an uppercase letter.
struct Atom {
    std::string rel;
    std::vector<std::string> args;
    friend bool operator<(const Atom& a, const Atom& b) { return std::tie(a.rel, a.args) < std::tie(b.rel, b.args); }
    friend bool operator==(const Atom&, const Atom&) = default;
};

struct Rule {
    std::vector<Atom> body;
    Atom head;
};

inline bool is_var(const std::string& s) { return !s.empty() && s[0] >= 'A' && s[0] <= 'Z'; }

// Saturation by trying every assignment of constants to the rule's
// variables, until nothing changes.
inline std::set<Atom> saturate(std::set<Atom> facts, const std::vector<Rule>& rules) {
    bool changed = true;
    while (changed) {
        changed = false;
        std::set<std::string> constants;
        for (const auto& f : facts) constants.insert(f.args.begin(), f.args.end());
        std::vector<std::string> consts(constants.begin(), constants.end());
        for (const auto& r : rules) {
            std::vector<std::string> vars;
            for (const auto& a : r.body)
                for (const auto& t : a.args)
                    if (is_var(t) && std::find(vars.begin(), vars.end(), t) == vars.end()) vars.push_back(t);
            std::map<std::string, std::string> bind;
            std::function<void(std::size_t)> go = [&](std::size_t k) {
                if (k == vars.size()) {
                    auto ground = [&](const Atom& a) {
                        Atom g{a.rel, {}};
                        for (const auto& t : a.args) g.args.push_back(is_var(t) ? bind.at(t) : t);
                        return g;
                    };
                    for (const auto& b : r.body)
                        if (!facts.contains(ground(b))) return;
                    if (facts.insert(ground(r.head)).second) changed = true;
                    return;
                }
                for (const auto& c : consts) {
                    bind[vars[k]] = c;
                    go(k + 1);
                }
            };
            go(0);
        }
    }
    return facts;
}

// Reflexive-transitive closure of an edge list on n nodes.
inline Relation reach(int n, const std::vector<std::pair<int, int>>& edges) {
    Relation r(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i) r[i][i] = true;
    for (auto [a, b] : edges) r[a][b] = true;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (r[i][k] && r[k][j]) r[i][j] = true;
    return r;
}

// Section checker, read straight off the definition: a singleton with no
// derivation in or out, or a set whose members are pairwise related by
// derivation (so any two are joined by a derivation path inside the set).
inline bool is_section(const Relation& r, const std::vector<int>& members) {
    if (members.empty()) return false;
    if (members.size() == 1) return true;  // (a), or a one-element chain that (b) accepts vacuously
    for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t j = i + 1; j < members.size(); ++j)
            if (!r[members[i]][members[j]] && !r[members[j]][members[i]]) return false;
    // listed in chain order
    for (std::size_t i = 0; i + 1 < members.size(); ++i)
        if (!r[members[i]][members[i + 1]]) return false;
    return true;
}

inline bool isolated(const std::vector<std::pair<int, int>>& edges, int v) {
    return std::none_of(edges.begin(), edges.end(), [&](auto e) { return e.first == v || e.second == v; });
}

using Decomposition = std::set<std::uint64_t>;  // chains as bitmasks

// Every outcome of "take isolated nodes as singletons, then repeatedly
// remove a longest chain", branching over every longest chain. Chains are
// found by testing all subsets for total order.
inline std::set<Decomposition> peel_outcomes(int n, const std::vector<std::pair<int, int>>& edges) {
    const auto r = reach(n, edges);
    std::uint64_t rest = 0;
    Decomposition base;
    for (int v = 0; v < n; ++v) {
        if (isolated(edges, v)) base.insert(std::uint64_t{1} << v);
        else rest |= std::uint64_t{1} << v;
    }
    auto chain = [&](std::uint64_t s) {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (((s >> i) & 1u) && ((s >> j) & 1u) && !r[i][j] && !r[j][i]) return false;
        return true;
    };
    std::set<Decomposition> out;
    std::function<void(std::uint64_t, Decomposition&)> go = [&](std::uint64_t alive, Decomposition& taken) {
        if (alive == 0) {
            out.insert(taken);
            return;
        }
        int best = 0;
        std::vector<std::uint64_t> longest;
        for (std::uint64_t s = alive;; s = (s - 1) & alive) {
            if (s && chain(s)) {
                int c = __builtin_popcountll(s);
                if (c > best) {
                    best = c;
                    longest.clear();
                }
                if (c == best) longest.push_back(s);
            }
            if (s == 0) break;
        }
        for (auto c : longest) {
            taken.insert(c);
            go(alive & ~c, taken);
            taken.erase(c);
        }
    };
    go(rest, base);
    return out;
}

// S_K membership by its definition, over the joint derivation relation on
// nt + np nodes (declarative first).
inline bool in_s_k(const Relation& joint, int nt, const std::vector<int>& kt, const std::vector<int>& kp) {
    for (int a : kt)
        if (std::none_of(kp.begin(), kp.end(), [&](int b) { return joint[a][nt + b]; })) return false;
    for (int b : kp)
        if (std::none_of(kt.begin(), kt.end(), [&](int a) { return joint[nt + b][a]; })) return false;
    return true;
}

// Nodes that belong to at least one element of S_K, by enumerating every
// pair of subsets (nt, np <= 6).
inline std::pair<std::uint64_t, std::uint64_t> s_k_coverable(const Relation& joint, int nt, int np) {
    std::uint64_t ct = 0, cp = 0;
    for (std::uint64_t st = 1; st < (std::uint64_t{1} << nt); ++st)
        for (std::uint64_t sp = 1; sp < (std::uint64_t{1} << np); ++sp) {
            std::vector<int> kt, kp;
            for (int i = 0; i < nt; ++i)
                if ((st >> i) & 1u) kt.push_back(i);
            for (int i = 0; i < np; ++i)
                if ((sp >> i) & 1u) kp.push_back(i);
            if (in_s_k(joint, nt, kt, kp)) {
                ct |= st;
                cp |= sp;
            }
        }
    return {ct, cp};
}

}  // namespace oracle
