#include "dik/knowledge.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "dik/error.hpp"
#include "dik/metric.hpp"

namespace dik {

std::string_view to_string(KnowledgeKind k) {
    return k == KnowledgeKind::Declarative ? "declarative" : "procedural";
}

std::string_view to_string(SectionForm f) {
    switch (f) {
        case SectionForm::Isolated: return "isolated";
        case SectionForm::Chain: return "chain";
        case SectionForm::Component: return "component";
    }
    return "?";
}

std::string describe(const KnowledgeContent& c) {
    struct Visitor {
        std::string operator()(const GroundAtom& a) const { return to_string(a); }
        std::string operator()(const QuantifiedFormula& f) const { return to_string(f); }
        std::string operator()(const PieceOfInformation& p) const { return p.key(); }
        std::string operator()(const MethodSpec& m) const { return "method " + m.name; }
        std::string operator()(const OperationTrace& t) const {
            std::string s = "execution of " + t.method + " on ";
            bool first = true;
            for (const auto& [slot, v] : t.inputs) {
                s += (first ? "" : ", ") + slot + "=" + to_string(v);
                first = false;
            }
            return s;
        }
        std::string operator()(const ValidationRecord& r) const {
            return "verification of " + r.target + ": " + std::string(to_string(r.outcome));
        }
        std::string operator()(const std::string& s) const { return s; }
    };
    return std::visit(Visitor{}, c);
}

namespace {

Eigen::Index ix(std::size_t i) { return static_cast<Eigen::Index>(i); }

// Some directed cycle among the nodes Kahn's algorithm could not remove.
std::vector<std::size_t> find_cycle(std::size_t n, const std::vector<Edge>& edges, const std::vector<bool>& stuck) {
    std::vector<std::vector<std::size_t>> out(n);
    for (auto [a, b] : edges)
        if (stuck[a] && stuck[b]) out[a].push_back(b);
    // Every stuck node keeps a stuck successor, so walking forward must repeat.
    std::size_t start = static_cast<std::size_t>(std::find(stuck.begin(), stuck.end(), true) - stuck.begin());
    std::vector<std::size_t> seen_at(n, n), walk;
    std::size_t v = start;
    while (seen_at[v] == n) {
        seen_at[v] = walk.size();
        walk.push_back(v);
        v = out[v].front();
    }
    std::vector<std::size_t> cycle(walk.begin() + static_cast<std::ptrdiff_t>(seen_at[v]), walk.end());
    cycle.push_back(v);
    return cycle;
}

}  // namespace

DerivationDag::DerivationDag(std::vector<std::string> ids, std::vector<Edge> edges) : ids_(std::move(ids)) {
    const auto n = ids_.size();
    std::set<std::string> distinct;
    for (const auto& id : ids_) {
        if (id.empty()) throw MalformedInput("knowledge object with empty id");
        if (!distinct.insert(id).second) throw MalformedInput("duplicate knowledge object id " + id);
    }
    for (auto [a, b] : edges) {
        if (a >= n || b >= n) throw MalformedInput("derivation edge references a missing node");
        if (a != b) edges_.emplace_back(a, b);
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

    std::vector<std::size_t> indegree(n, 0);
    std::vector<std::vector<std::size_t>> out(n);
    for (auto [a, b] : edges_) {
        out[a].push_back(b);
        ++indegree[b];
    }
    std::vector<std::size_t> ready;
    for (std::size_t i = 0; i < n; ++i)
        if (indegree[i] == 0) ready.push_back(i);
    std::size_t removed = 0;
    while (!ready.empty()) {
        auto v = ready.back();
        ready.pop_back();
        ++removed;
        for (auto w : out[v])
            if (--indegree[w] == 0) ready.push_back(w);
    }
    if (removed != n) {
        std::vector<bool> stuck(n);
        for (std::size_t i = 0; i < n; ++i) stuck[i] = indegree[i] > 0;
        std::string text;
        for (auto v : find_cycle(n, edges_, stuck)) text += (text.empty() ? "" : " -> ") + ids_[v];
        throw OrderViolation("derivation cycle: " + text);
    }

    reach_ = BoolMatrix::Constant(ix(n), ix(n), false);
    for (auto [a, b] : edges_) reach_(ix(a), ix(b)) = true;
    reflexive_transitive_closure(reach_);
}

std::optional<std::size_t> DerivationDag::index_of(const std::string& id) const {
    auto it = std::find(ids_.begin(), ids_.end(), id);
    if (it == ids_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - ids_.begin());
}

std::vector<Edge> transitive_reduction(const DerivationDag& dag) {
    std::vector<Edge> out;
    const auto n = dag.size();
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            if (a == b || !dag.derives(a, b)) continue;
            bool cover = true;
            for (std::size_t w = 0; w < n && cover; ++w)
                if (w != a && w != b && dag.derives(a, w) && dag.derives(w, b)) cover = false;
            if (cover) out.emplace_back(a, b);
        }
    }
    return out;
}

GroundSet dag_ground(const DerivationDag& dag) { return GroundSet(dag.ids()); }

Preorder reachability_preorder(const DerivationDag& dag) { return Preorder(dag_ground(dag), dag.reachability()); }

FiniteTopology upper_set_topology(const DerivationDag& dag) { return alexandrov_topology(reachability_preorder(dag)); }

KnowledgeSpaces build_knowledge_spaces(std::vector<KnowledgeObject> objects,
                                       const std::vector<std::pair<std::string, std::string>>& edges) {
    KnowledgeSpaces s;
    std::map<std::string, std::pair<KnowledgeKind, std::size_t>> where;
    for (auto& o : objects) {
        if (o.validation.outcome != Outcome::Valid)
            throw AdmissionError("knowledge object " + o.id + " is not validated (outcome " +
                                 std::string(to_string(o.validation.outcome)) + ")");
        auto& side = o.kind == KnowledgeKind::Declarative ? s.declarative : s.procedural;
        if (!where.emplace(o.id, std::pair{o.kind, side.size()}).second)
            throw MalformedInput("duplicate knowledge object id " + o.id);
        side.push_back(std::move(o));
    }

    std::vector<Edge> tt, pp;
    for (const auto& [from, to] : edges) {
        auto a = where.find(from), b = where.find(to);
        if (a == where.end()) throw MalformedInput("derivation edge from unknown object " + from);
        if (b == where.end()) throw MalformedInput("derivation edge to unknown object " + to);
        const Edge e{a->second.second, b->second.second};
        const bool ta = a->second.first == KnowledgeKind::Declarative, tb = b->second.first == KnowledgeKind::Declarative;
        if (ta && tb) tt.push_back(e);
        else if (!ta && !tb) pp.push_back(e);
        else if (ta) s.cross.t_to_p.push_back(e);
        else s.cross.p_to_t.push_back(e);
    }
    for (auto* v : {&s.cross.t_to_p, &s.cross.p_to_t}) {
        std::sort(v->begin(), v->end());
        v->erase(std::unique(v->begin(), v->end()), v->end());
    }

    auto ids = [](const std::vector<KnowledgeObject>& os) {
        std::vector<std::string> out;
        for (const auto& o : os) out.push_back(o.id);
        return out;
    };
    s.k_t = DerivationDag(ids(s.declarative), std::move(tt));
    s.k_p = DerivationDag(ids(s.procedural), std::move(pp));
    return s;
}

namespace {

std::vector<std::vector<std::size_t>> weak_components(const DerivationDag& dag, const std::vector<bool>& take) {
    UnionFind uf(dag.size());
    for (auto [a, b] : dag.edges()) uf.unite(a, b);
    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < dag.size(); ++i)
        if (take[i]) groups[uf.find(i)].push_back(i);
    std::vector<std::vector<std::size_t>> out;
    for (auto& [root, members] : groups) out.push_back(std::move(members));
    return out;
}

std::vector<bool> touched(const DerivationDag& dag) {
    std::vector<bool> t(dag.size(), false);
    for (auto [a, b] : dag.edges()) t[a] = t[b] = true;
    return t;
}

// Longest chain length starting at each alive node, in the order restricted to `alive`.
std::vector<std::size_t> chain_lengths(const DerivationDag& dag, const std::vector<std::size_t>& alive) {
    // Nodes reaching more nodes come first in no particular topological
    // order, so iterate by descending number of strict successors: a strict
    // successor always has fewer.
    std::vector<std::size_t> order = alive;
    std::vector<std::size_t> above(dag.size(), 0);
    for (auto v : alive)
        for (auto u : alive)
            if (u != v && dag.derives(v, u)) ++above[v];
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return above[a] < above[b]; });
    std::vector<std::size_t> len(dag.size(), 0);
    for (auto v : order) {
        len[v] = 1;
        for (auto u : alive)
            if (u != v && dag.derives(v, u)) len[v] = std::max(len[v], len[u] + 1);
    }
    return len;
}

bool id_less(const DerivationDag& dag, std::size_t a, std::size_t b) { return dag.id(a) < dag.id(b); }

std::vector<std::size_t> least_longest_chain(const DerivationDag& dag, const std::vector<std::size_t>& alive) {
    auto len = chain_lengths(dag, alive);
    std::size_t best = 0;
    for (auto v : alive) best = std::max(best, len[v]);
    std::vector<std::size_t> chain;
    std::optional<std::size_t> prev;
    for (std::size_t want = best; want > 0; --want) {
        std::optional<std::size_t> pick;
        for (auto v : alive) {
            if (len[v] != want) continue;
            if (prev && !(dag.derives(*prev, v) && *prev != v)) continue;
            if (!pick || id_less(dag, v, *pick)) pick = v;
        }
        chain.push_back(*pick);
        prev = pick;
    }
    return chain;
}

void remove_members(std::vector<std::size_t>& alive, const std::vector<std::size_t>& chain) {
    std::erase_if(alive, [&](std::size_t v) { return std::find(chain.begin(), chain.end(), v) != chain.end(); });
}

// Every longest chain of the restricted order.
void all_longest_chains(const DerivationDag& dag, const std::vector<std::size_t>& alive,
                        std::vector<std::vector<std::size_t>>& out) {
    auto len = chain_lengths(dag, alive);
    std::size_t best = 0;
    for (auto v : alive) best = std::max(best, len[v]);
    std::vector<std::size_t> chain;
    std::function<void(std::size_t)> extend = [&](std::size_t want) {
        if (want == 0) {
            out.push_back(chain);
            return;
        }
        for (auto v : alive) {
            if (len[v] != want) continue;
            if (!chain.empty() && !(dag.derives(chain.back(), v) && chain.back() != v)) continue;
            chain.push_back(v);
            extend(want - 1);
            chain.pop_back();
        }
    };
    extend(best);
}

void peel_all(const DerivationDag& dag, std::vector<std::size_t> alive, std::vector<std::vector<std::size_t>>& taken,
              std::set<std::vector<std::vector<std::size_t>>>& outcomes) {
    if (alive.empty()) {
        auto key = taken;
        std::sort(key.begin(), key.end());
        outcomes.insert(std::move(key));
        return;
    }
    std::vector<std::vector<std::size_t>> chains;
    all_longest_chains(dag, alive, chains);
    for (const auto& c : chains) {
        auto rest = alive;
        remove_members(rest, c);
        taken.push_back(c);
        peel_all(dag, std::move(rest), taken, outcomes);
        taken.pop_back();
    }
}

}  // namespace

std::vector<KnowledgeSection> decompose_sections(const DerivationDag& dag, SectionMode mode) {
    std::vector<KnowledgeSection> out;
    const auto linked = touched(dag);
    for (std::size_t i = 0; i < dag.size(); ++i)
        if (!linked[i]) out.push_back({{i}, SectionForm::Isolated});

    for (auto& component : weak_components(dag, linked)) {
        if (mode == SectionMode::Connected) {
            out.push_back({std::move(component), SectionForm::Component});
            continue;
        }
        auto alive = component;
        while (!alive.empty()) {
            auto chain = least_longest_chain(dag, alive);
            remove_members(alive, chain);
            out.push_back({std::move(chain), SectionForm::Chain});
        }
    }
    std::sort(out.begin(), out.end(), [](const KnowledgeSection& a, const KnowledgeSection& b) {
        return *std::min_element(a.members.begin(), a.members.end()) <
               *std::min_element(b.members.begin(), b.members.end());
    });
    return out;
}

UniquenessReport check_uniqueness(const DerivationDag& dag, std::size_t max_component) {
    UniquenessReport r{true, 1};
    for (const auto& component : weak_components(dag, touched(dag))) {
        if (component.size() > max_component) return {false, 0};
        std::set<std::vector<std::vector<std::size_t>>> outcomes;
        std::vector<std::vector<std::size_t>> taken;
        peel_all(dag, component, taken, outcomes);
        r.outcomes *= outcomes.size();
    }
    return r;
}

AssumptionReport check_assumption(const DerivationDag& k_t, const DerivationDag& k_p, const CrossEdges& cross) {
    const auto nt = k_t.size(), np = k_p.size();
    const auto joint = joint_derivation(k_t, k_p, cross);
    auto linked = [&](std::size_t a, std::size_t b) { return joint(ix(a), ix(nt + b)) || joint(ix(nt + b), ix(a)); };
    AssumptionReport r;
    for (std::size_t a = 0; a < nt; ++a) {
        bool any = false;
        for (std::size_t b = 0; b < np && !any; ++b) any = linked(a, b);
        if (!any) r.unmatched_t.push_back(a);
    }
    for (std::size_t b = 0; b < np; ++b) {
        bool any = false;
        for (std::size_t a = 0; a < nt && !any; ++a) any = linked(a, b);
        if (!any) r.unmatched_p.push_back(b);
    }
    return r;
}

BoolMatrix joint_derivation(const DerivationDag& k_t, const DerivationDag& k_p, const CrossEdges& cross) {
    const auto nt = k_t.size(), n = nt + k_p.size();
    BoolMatrix rel = BoolMatrix::Constant(ix(n), ix(n), false);
    for (auto [a, b] : k_t.edges()) rel(ix(a), ix(b)) = true;
    for (auto [a, b] : k_p.edges()) rel(ix(nt + a), ix(nt + b)) = true;
    for (auto [a, b] : cross.t_to_p) rel(ix(a), ix(nt + b)) = true;
    for (auto [b, a] : cross.p_to_t) rel(ix(nt + b), ix(a)) = true;
    reflexive_transitive_closure(rel);
    return rel;
}

ChapterDecomposition decompose_chapters(const DerivationDag& k_t, const DerivationDag& k_p, const CrossEdges& cross) {
    if (auto report = check_assumption(k_t, k_p, cross); !report.holds()) {
        std::string text;
        for (auto i : report.unmatched_t) text += " " + k_t.id(i);
        for (auto i : report.unmatched_p) text += " " + k_p.id(i);
        throw CapabilityError("assumption violated; objects without a cross derivation:" + text);
    }
    const auto nt = k_t.size();
    const auto joint = joint_derivation(k_t, k_p, cross);
    auto t_to_p = [&](std::size_t a, std::size_t b) { return joint(ix(a), ix(nt + b)); };
    auto p_to_t = [&](std::size_t b, std::size_t a) { return joint(ix(nt + b), ix(a)); };

    ChapterDecomposition d;
    d.t_sections = decompose_sections(k_t);
    d.p_sections = decompose_sections(k_p);
    std::vector<bool> covered_t(nt, false), covered_p(k_p.size(), false);

    for (std::size_t i = 0; i < d.t_sections.size(); ++i) {
        for (std::size_t j = 0; j < d.p_sections.size(); ++j) {
            auto kt = d.t_sections[i].members;
            auto kp = d.p_sections[j].members;
            // Greatest fixpoint: drop members without a partner until stable.
            bool changed = true;
            while (changed) {
                changed = false;
                changed |= std::erase_if(kt, [&](std::size_t a) {
                               return std::none_of(kp.begin(), kp.end(), [&](std::size_t b) { return t_to_p(a, b); });
                           }) > 0;
                changed |= std::erase_if(kp, [&](std::size_t b) {
                               return std::none_of(kt.begin(), kt.end(), [&](std::size_t a) { return p_to_t(b, a); });
                           }) > 0;
            }
            if (kt.empty() || kp.empty()) {
                d.empty_pairs.emplace_back(i, j);
                continue;
            }
            Chapter c{i, j, kt, kp, {}, {}};
            for (auto a : kt) {
                c.t_to_p.emplace_back(a, *std::find_if(kp.begin(), kp.end(), [&](std::size_t b) { return t_to_p(a, b); }));
                covered_t[a] = true;
            }
            for (auto b : kp) {
                c.p_to_t.emplace_back(b, *std::find_if(kt.begin(), kt.end(), [&](std::size_t a) { return p_to_t(b, a); }));
                covered_p[b] = true;
            }
            d.chapters.push_back(std::move(c));
        }
    }
    for (std::size_t i = 0; i < covered_t.size(); ++i)
        if (!covered_t[i]) d.uncovered_t.push_back(i);
    for (std::size_t i = 0; i < covered_p.size(); ++i)
        if (!covered_p[i]) d.uncovered_p.push_back(i);
    return d;
}

FiniteTopology product_space(const FiniteTopology& a, const FiniteTopology& b) {
    const auto na = a.ground().size(), nb = b.ground().size();
    std::vector<std::string> names;
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nb; ++j) names.push_back("(" + a.ground().element(i) + "," + b.ground().element(j) + ")");
    GroundSet ground(std::move(names));
    std::vector<SubsetMask> rectangles;
    for (const auto& u : a.opens()) {
        for (const auto& v : b.opens()) {
            auto r = ground.empty_set();
            for (auto i : u.members())
                for (auto j : v.members()) r = r.with(i * nb + j);
            rectangles.push_back(r);
        }
    }
    std::sort(rectangles.begin(), rectangles.end());
    rectangles.erase(std::unique(rectangles.begin(), rectangles.end()), rectangles.end());
    return generate_topology(ground, rectangles);
}

}  // namespace dik
