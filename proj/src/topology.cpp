#include "dik/topology.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "dik/metric.hpp"

namespace dik {

// ---------------------------------------------------------------------------
// GroundSet

GroundSet::GroundSet(std::vector<std::string> elements) : elements_(std::move(elements)) {
    if (elements_.empty()) throw MalformedInput("ground set must be nonempty");
    if (elements_.size() > kMaxGroundSize)
        throw MalformedInput("ground set has " + std::to_string(elements_.size()) + " elements; at most 62 supported");
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        if (!index_.emplace(elements_[i], i).second)
            throw MalformedInput("duplicate ground element '" + elements_[i] + "'");
    }
}

std::optional<std::size_t> GroundSet::find(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::size_t GroundSet::index_of(const std::string& id) const {
    if (auto i = find(id)) return *i;
    throw MalformedInput("unknown ground element '" + id + "'");
}

SubsetMask GroundSet::mask_of(std::span<const std::string> ids) const {
    SubsetMask m = empty_set();
    for (const auto& id : ids) m = m.with(index_of(id));
    return m;
}

std::vector<std::string> GroundSet::names_of(const SubsetMask& mask) const {
    std::vector<std::string> out;
    for (auto i : mask.members()) out.push_back(elements_.at(i));
    return out;
}

std::string format_subset(const GroundSet& ground, const SubsetMask& mask) {
    std::string out = "{";
    bool first = true;
    for (auto i : mask.members()) {
        if (!first) out += ',';
        out += ground.element(i);
        first = false;
    }
    return out + "}";
}

// ---------------------------------------------------------------------------
// FiniteTopology

namespace {

std::vector<SubsetMask> canonicalize(std::vector<SubsetMask> family) {
    std::sort(family.begin(), family.end());
    family.erase(std::unique(family.begin(), family.end()), family.end());
    return family;
}

void check_widths(const GroundSet& ground, std::span<const SubsetMask> family) {
    for (const auto& s : family) {
        if (s.width() != ground.size())
            throw MalformedInput("subset of width " + std::to_string(s.width()) + " over a ground set of size " +
                                 std::to_string(ground.size()));
    }
}

// Adds (b | r) for every r already present; the result is closed under union
// once every generator has been folded in.
void fold_union(std::unordered_set<SubsetMask, SubsetMaskHash>& acc, const SubsetMask& b) {
    std::vector<SubsetMask> fresh;
    for (const auto& r : acc) {
        auto u = r | b;
        if (!acc.contains(u)) fresh.push_back(u);
    }
    acc.insert(fresh.begin(), fresh.end());
}

void fold_intersection(std::unordered_set<SubsetMask, SubsetMaskHash>& acc, const SubsetMask& b) {
    std::vector<SubsetMask> fresh;
    for (const auto& r : acc) {
        auto u = r & b;
        if (!acc.contains(u)) fresh.push_back(u);
    }
    acc.insert(fresh.begin(), fresh.end());
}

}  // namespace

FiniteTopology make_topology_unchecked(GroundSet ground, std::vector<SubsetMask> family) {
    return FiniteTopology(std::move(ground), canonicalize(std::move(family)));
}

FiniteTopology FiniteTopology::from_opens(GroundSet ground, std::vector<SubsetMask> family) {
    auto report = verify_topology(ground, family);
    if (!report.valid) {
        const auto& v = report.violations.front();
        throw ConstraintError("not a topology: axiom (" + std::to_string(v.axiom) + ") " + v.description);
    }
    return make_topology_unchecked(std::move(ground), std::move(family));
}

bool FiniteTopology::is_open(const SubsetMask& s) const {
    return std::binary_search(opens_.begin(), opens_.end(), s);
}

TopologyReport verify_topology(const GroundSet& ground, std::span<const SubsetMask> family) {
    check_widths(ground, family);
    std::vector<SubsetMask> opens = canonicalize({family.begin(), family.end()});
    std::unordered_set<SubsetMask, SubsetMaskHash> lookup(opens.begin(), opens.end());

    TopologyReport report;
    auto fail = [&](int axiom, std::string what, std::optional<SubsetMask> a = {}, std::optional<SubsetMask> b = {}) {
        report.valid = false;
        report.violations.push_back({axiom, std::move(what), a, b});
    };

    if (!lookup.contains(ground.empty_set())) fail(1, "empty set missing");
    if (!lookup.contains(ground.full_set())) fail(1, "X missing");
    for (std::size_t i = 0; i < opens.size(); ++i) {
        for (std::size_t j = i + 1; j < opens.size(); ++j) {
            const auto& a = opens[i];
            const auto& b = opens[j];
            if (!lookup.contains(a | b))
                fail(2, "union " + format_subset(ground, a) + " ∪ " + format_subset(ground, b) + " is not open", a, b);
            if (!lookup.contains(a & b))
                fail(3, "intersection " + format_subset(ground, a) + " ∩ " + format_subset(ground, b) + " is not open", a,
                     b);
        }
    }
    return report;
}

FiniteTopology generate_topology(const GroundSet& ground, std::span<const SubsetMask> subbasis) {
    check_widths(ground, subbasis);
    std::unordered_set<SubsetMask, SubsetMaskHash> basis{ground.full_set()};
    for (const auto& s : subbasis) fold_intersection(basis, s);

    std::vector<SubsetMask> sorted_basis(basis.begin(), basis.end());
    std::sort(sorted_basis.begin(), sorted_basis.end());
    std::unordered_set<SubsetMask, SubsetMaskHash> opens{ground.empty_set()};
    for (const auto& b : sorted_basis) fold_union(opens, b);
    return make_topology_unchecked(ground, {opens.begin(), opens.end()});
}

FiniteTopology discrete_topology(const GroundSet& ground) {
    std::vector<SubsetMask> singletons;
    for (std::size_t i = 0; i < ground.size(); ++i) singletons.push_back(ground.singleton(i));
    return generate_topology(ground, singletons);
}

FiniteTopology indiscrete_topology(const GroundSet& ground) {
    return make_topology_unchecked(ground, {ground.empty_set(), ground.full_set()});
}

SubsetMask closure(const FiniteTopology& t, const SubsetMask& s) {
    if (s.width() != t.ground().size()) throw MalformedInput("subset width mismatch");
    // Complement of the largest open set disjoint from s.
    SubsetMask outside = t.ground().empty_set();
    for (const auto& u : t.opens())
        if (u.disjoint(s)) outside = outside | u;
    return outside.complement();
}

SubsetMask minimal_neighborhood(const FiniteTopology& t, std::size_t i) {
    SubsetMask m = t.ground().full_set();
    for (const auto& u : t.opens())
        if (u.contains(i)) m = m & u;
    return m;
}

// ---------------------------------------------------------------------------
// Preorder

void reflexive_transitive_closure(BoolMatrix& rel) {
    const Eigen::Index n = rel.rows();
    for (Eigen::Index i = 0; i < n; ++i) rel(i, i) = true;
    for (Eigen::Index k = 0; k < n; ++k)
        for (Eigen::Index i = 0; i < n; ++i)
            if (rel(i, k))
                for (Eigen::Index j = 0; j < n; ++j)
                    if (rel(k, j)) rel(i, j) = true;
}

Preorder::Preorder(GroundSet ground, BoolMatrix leq) : ground_(std::move(ground)), leq_(std::move(leq)) {
    const auto n = static_cast<Eigen::Index>(ground_.size());
    if (leq_.rows() != n || leq_.cols() != n) throw MalformedInput("preorder matrix does not match ground set");
    for (Eigen::Index i = 0; i < n; ++i)
        if (!leq_(i, i)) throw ConstraintError("preorder is not reflexive at " + ground_.element(static_cast<std::size_t>(i)));
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            if (leq_(i, j))
                for (Eigen::Index k = 0; k < n; ++k)
                    if (leq_(j, k) && !leq_(i, k))
                        throw ConstraintError("preorder is not transitive: " + ground_.element(static_cast<std::size_t>(i)) +
                                              " ⪯ " + ground_.element(static_cast<std::size_t>(j)) + " ⪯ " +
                                              ground_.element(static_cast<std::size_t>(k)));
}

Preorder Preorder::closure_of(GroundSet ground, std::span<const std::pair<std::size_t, std::size_t>> pairs) {
    const auto n = static_cast<Eigen::Index>(ground.size());
    BoolMatrix rel = BoolMatrix::Constant(n, n, false);
    for (auto [a, b] : pairs) {
        if (a >= ground.size() || b >= ground.size()) throw MalformedInput("preorder pair out of range");
        rel(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = true;
    }
    reflexive_transitive_closure(rel);
    return Preorder(std::move(ground), std::move(rel));
}

Preorder Preorder::equality(GroundSet ground) {
    const auto n = static_cast<Eigen::Index>(ground.size());
    BoolMatrix rel = BoolMatrix::Identity(n, n);
    return Preorder(std::move(ground), std::move(rel));
}

SubsetMask Preorder::up_set(std::size_t i) const {
    SubsetMask m = ground_.empty_set();
    for (std::size_t j = 0; j < size(); ++j)
        if (leq(i, j)) m = m.with(j);
    return m;
}

SubsetMask Preorder::down_set(std::size_t i) const {
    SubsetMask m = ground_.empty_set();
    for (std::size_t j = 0; j < size(); ++j)
        if (leq(j, i)) m = m.with(j);
    return m;
}

bool Preorder::is_upper_set(const SubsetMask& s) const {
    for (auto i : s.members())
        if (!up_set(i).subset_of(s)) return false;
    return true;
}

Preorder specialization_preorder(const FiniteTopology& t) {
    const auto& ground = t.ground();
    const auto n = static_cast<Eigen::Index>(ground.size());
    BoolMatrix leq = BoolMatrix::Constant(n, n, false);
    for (std::size_t y = 0; y < ground.size(); ++y) {
        auto cl = closure(t, ground.singleton(y));
        for (auto x : cl.members()) leq(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) = true;
    }
    return Preorder(ground, std::move(leq));
}

FiniteTopology alexandrov_topology(const Preorder& p) {
    // Upper sets are exactly the unions of principal up-sets.
    std::unordered_set<SubsetMask, SubsetMaskHash> opens{p.ground().empty_set(), p.ground().full_set()};
    for (std::size_t i = 0; i < p.size(); ++i) fold_union(opens, p.up_set(i));
    return make_topology_unchecked(p.ground(), {opens.begin(), opens.end()});
}

// ---------------------------------------------------------------------------
// Properties

bool is_t1(const FiniteTopology& t) {
    const auto n = t.ground().size();
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            if (x == y) continue;
            bool separated = std::any_of(t.opens().begin(), t.opens().end(),
                                         [&](const SubsetMask& u) { return u.contains(x) && !u.contains(y); });
            if (!separated) return false;
        }
    }
    return true;
}

bool is_discrete(const FiniteTopology& t) {
    return t.size() == (std::size_t{1} << t.ground().size());
}

bool is_connected(const FiniteTopology& t) {
    const auto p = specialization_preorder(t);
    const auto n = p.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::size_t components = n;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (p.leq(i, j) || p.leq(j, i)) {
                auto a = find(i), b = find(j);
                if (a != b) {
                    parent[a] = b;
                    --components;
                }
            }
    return components == 1;
}

bool is_metrizable(const FiniteTopology& t) {
    // The only metric topology on a finite set is discrete, so it suffices to
    // try the discrete metric and compare the topology its open balls induce.
    const auto n = t.ground().size();
    MetricTable<double> m(t.ground(), Eigen::MatrixXd::Ones(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)) -
                                          Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)));
    if (!verify_metric(m).valid) return false;
    return metric_topology(m) == t;
}

}  // namespace dik
