#include <random>

#include "doctest.h"

#include "dik/data_space.hpp"
#include "dik/topology.hpp"
#include "../oracles/oracles.hpp"

using namespace dik;

namespace {

GroundSet letters(std::size_t n) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back(std::string(1, static_cast<char>('a' + i)));
    return GroundSet(names);
}

SubsetMask mask(const GroundSet& g, std::vector<std::string> ids) { return g.mask_of(ids); }

FiniteTopology sierpinski() {
    GroundSet g = letters(2);
    return FiniteTopology::from_opens(g, {g.empty_set(), mask(g, {"a"}), g.full_set()});
}

oracle::Family family_of(const FiniteTopology& t) {
    oracle::Family f;
    for (const auto& u : t.opens()) f.insert(u.bits());
    return f;
}

}  // namespace

TEST_CASE("ground set and masks") {
    GroundSet g({"3", "7", "11", "23"});
    CHECK(g.size() == 4);
    CHECK(g.index_of("11") == 2);
    CHECK_THROWS_AS(g.index_of("5"), MalformedInput);
    CHECK_THROWS_AS(GroundSet({"a", "a"}), MalformedInput);
    CHECK(format_subset(g, mask(g, {"23", "3"})) == "{3,23}");
    CHECK_THROWS_AS(SubsetMask(63, 0), MalformedInput);
    CHECK_THROWS_AS(SubsetMask(2, 4), MalformedInput);
}

TEST_CASE("verify_topology") {
    GroundSet x({"3", "7", "11", "23"});
    CHECK(verify_topology(x, std::vector{x.empty_set(), x.full_set()}).valid);

    GroundSet ab = letters(2);
    auto r = verify_topology(ab, std::vector{ab.empty_set(), mask(ab, {"a"}), mask(ab, {"b"})});
    CHECK_FALSE(r.valid);
    bool x_missing = false, union_witness = false;
    for (const auto& v : r.violations) {
        if (v.axiom == 1 && v.description == "X missing") x_missing = true;
        if (v.axiom == 2 && v.lhs && v.rhs && *v.lhs == mask(ab, {"a"}) && *v.rhs == mask(ab, {"b"})) union_witness = true;
    }
    CHECK(x_missing);
    CHECK(union_witness);

    GroundSet abc = letters(3);
    std::vector<SubsetMask> all;
    for (std::uint64_t b = 0; b < 8; ++b) all.emplace_back(3, b);
    CHECK(verify_topology(abc, all).valid);
    CHECK_THROWS_AS(FiniteTopology::from_opens(ab, {ab.empty_set(), mask(ab, {"a"})}), ConstraintError);
}

TEST_CASE("generate_topology") {
    GroundSet ab = letters(2);
    auto t = generate_topology(ab, {});
    CHECK(t == indiscrete_topology(ab));

    GroundSet abc = letters(3);
    auto u = generate_topology(abc, std::vector{mask(abc, {"a"}), mask(abc, {"b"})});
    oracle::Family want{0b000, 0b001, 0b010, 0b011, 0b111};
    CHECK(family_of(u) == want);

    std::vector<SubsetMask> singles;
    for (std::size_t i = 0; i < 3; ++i) singles.push_back(abc.singleton(i));
    CHECK(generate_topology(abc, singles) == discrete_topology(abc));
}

TEST_CASE("generate_topology is valid and minimal on random subbases") {
    std::mt19937 rng(7);
    GroundSet g = letters(4);
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<SubsetMask> sub;
        int k = static_cast<int>(rng() % 4);
        for (int i = 0; i < k; ++i) sub.emplace_back(4, rng() % 16);
        auto t = generate_topology(g, sub);
        REQUIRE(verify_topology(g, t.opens()).valid);
        auto opens = family_of(t);
        for (auto s : sub) CHECK(opens.contains(s.bits()));
        // minimal: dropping any open outside the subbasis breaks an axiom
        for (auto u : opens) {
            bool in_sub = std::any_of(sub.begin(), sub.end(), [&](const SubsetMask& s) { return s.bits() == u; });
            if (in_sub || u == 0 || u == 15) continue;
            auto smaller = opens;
            smaller.erase(u);
            CHECK_FALSE(oracle::is_topology(4, smaller));
        }
    }
}

TEST_CASE("closure and specialization on the Sierpinski space") {
    auto s = sierpinski();
    const auto& g = s.ground();
    CHECK(closure(s, mask(g, {"a"})) == g.full_set());
    CHECK(closure(s, mask(g, {"b"})) == mask(g, {"b"}));
    auto p = specialization_preorder(s);
    CHECK(p.leq(1, 0));
    CHECK_FALSE(p.leq(0, 1));
    CHECK(p.leq(0, 0));
    CHECK(p.leq(1, 1));
    CHECK(minimal_neighborhood(s, 1) == g.full_set());
    CHECK(minimal_neighborhood(s, 0) == mask(g, {"a"}));

    auto d = discrete_topology(letters(3));
    for (std::uint64_t b = 0; b < 8; ++b) CHECK(closure(d, SubsetMask(3, b)) == SubsetMask(3, b));
    CHECK(specialization_preorder(d) == Preorder::equality(letters(3)));

    auto all = specialization_preorder(indiscrete_topology(letters(3)));
    CHECK(all.matrix().all());
}

TEST_CASE("alexandrov topology") {
    GroundSet ab = letters(2);
    CHECK(alexandrov_topology(Preorder::equality(ab)) == discrete_topology(ab));
    std::vector<std::pair<std::size_t, std::size_t>> ba{{1, 0}};
    CHECK(alexandrov_topology(Preorder::closure_of(ab, ba)) == sierpinski());
    std::vector<std::pair<std::size_t, std::size_t>> both{{0, 1}, {1, 0}};
    CHECK(alexandrov_topology(Preorder::closure_of(ab, both)) == indiscrete_topology(ab));

    BoolMatrix bad = BoolMatrix::Constant(2, 2, false);
    CHECK_THROWS_AS(Preorder(ab, bad), ConstraintError);
}

TEST_CASE("properties") {
    auto s = sierpinski();
    CHECK_FALSE(is_t1(s));
    CHECK(is_connected(s));
    auto d = discrete_topology(letters(2));
    CHECK(is_t1(d));
    CHECK_FALSE(is_connected(d));
    CHECK(is_metrizable(d));
    auto i = indiscrete_topology(letters(3));
    CHECK(is_connected(i));
    CHECK_FALSE(is_discrete(i));
    CHECK(is_compact(i));
}

TEST_CASE("round trips against the brute-force enumeration") {
    for (int n = 1; n <= 3; ++n) {
        GroundSet g = letters(static_cast<std::size_t>(n));
        for (const auto& f : oracle::all_topologies(n)) {
            std::vector<SubsetMask> fam;
            for (auto b : f) fam.emplace_back(static_cast<std::size_t>(n), b);
            auto t = FiniteTopology::from_opens(g, fam);
            CHECK(alexandrov_topology(specialization_preorder(t)) == t);
            CHECK(is_connected(t) == oracle::connected_by_clopens(n, f));
            auto spec = oracle::specialization(n, f);
            auto p = specialization_preorder(t);
            for (int x = 0; x < n; ++x)
                for (int y = 0; y < n; ++y) CHECK(p.leq(static_cast<std::size_t>(x), static_cast<std::size_t>(y)) == spec[x][y]);
        }
    }
}

TEST_CASE("data functions and relations") {
    GroundSet x({"3", "7", "11", "23"});
    auto t = discrete_topology(x);
    auto s3 = mask(x, {"3"}), s37 = mask(x, {"3", "7"});
    CHECK(eval_data_function(t, DataFunction::intersection(), {s3, s37}) == s3);
    CHECK(eval_data_function(t, DataFunction::union_of(), {x.empty_set(), s37}) == s37);
    CHECK(eval_data_relation(t, DataRelation::subset(), {s3, s37}));
    CHECK(eval_data_relation(t, DataRelation::equal(), {x.empty_set(), x.empty_set()}));

    GroundSet ab = letters(2);
    auto d = discrete_topology(ab);
    DataFunction f{"glue", 2, DataFunction::Kind::Table, {}};
    f.table[{mask(ab, {"a"}), mask(ab, {"b"})}] = ab.full_set();
    CHECK(eval_data_function(d, f, {mask(ab, {"a"}), mask(ab, {"b"})}) == ab.full_set());
    CHECK_THROWS_AS(eval_data_function(d, f, {mask(ab, {"b"}), mask(ab, {"a"})}), DomainError);

    // ∀t∈τ ∃s∈τ (t ∪ s = X) holds on any topology
    QuantifiedOpenRelation q{{Quantifier::ForAll, Quantifier::Exists},
                             OpenFormula::atom(DataRelation::equal(),
                                               {OpenTerm::apply(DataFunction::union_of(), {OpenTerm::var(0), OpenTerm::var(1)}),
                                                OpenTerm::constant(x.full_set())})};
    CHECK(eval_data_relation(t, q));
    CHECK(eval_data_relation(indiscrete_topology(x), q));
    CHECK(eval_data_relation(sierpinski(), QuantifiedOpenRelation{q.prefix,
        OpenFormula::atom(DataRelation::equal(),
                          {OpenTerm::apply(DataFunction::union_of(), {OpenTerm::var(0), OpenTerm::var(1)}),
                           OpenTerm::constant(sierpinski().ground().full_set())})}));
}
