#include <random>

#include "doctest.h"

#include "dik/inference.hpp"
#include "dik/information.hpp"

using namespace dik;

namespace {

GroundAtom atom(const std::string& s) { return parse_ground_atom(s); }

AtomSet atoms(std::initializer_list<const char*> xs) {
    AtomSet out;
    for (auto x : xs) out.insert(atom(x));
    return out;
}

const std::map<std::string, std::vector<Object>> kNoSets;

ClosureOperator no_rules = [](const AtomSet& s) { return s; };

}  // namespace

TEST_CASE("pieces for the numbers") {
    std::map<std::string, std::vector<Object>> sets{{"X'", {"3", "7", "11", "23"}}};
    auto facts = atoms({"average(X',11)", "prime(3)", "prime(7)", "prime(11)", "prime(23)", "in(3,X')"});
    auto pieces = build_pieces(facts, sets);
    REQUIRE(pieces.size() == 5);
    const auto& whole = pieces.back();
    CHECK(whole.objects == ObjectSet{"3", "7", "11", "23", "X'"});
    CHECK(whole.atoms.size() == 6);
    CHECK(to_string(pieces.front()) == "<{3},{prime(3)}>");
    CHECK(objects_of(atom("average(X',11)"), sets) == ObjectSet{"3", "7", "11", "23", "X'"});
    CHECK(build_pieces({}, kNoSets).empty());
}

TEST_CASE("pieces for China and Beijing") {
    auto facts = atoms({"country(China)", "city(Beijing)", "cityOf(Beijing,China)", "capital(Beijing,China)"});
    auto pieces = build_pieces(facts, kNoSets);
    REQUIRE(pieces.size() == 3);
    CHECK(to_string(pieces[0]) == "<{Beijing},{city(Beijing)}>");  // B_i
    CHECK(to_string(pieces[1]) == "<{China},{country(China)}>");   // C_i
    CHECK(pieces[2].objects == ObjectSet{"Beijing", "China"});      // A_i
    CHECK(pieces[2].atoms.size() == 4);
    CHECK(pieces[2].key() != pieces[1].key());
}

TEST_CASE("deductive preorder") {
    DomainSignature sig;
    sig.name = "admin";
    auto rules = parse_rules("capital(X, Y) -> HasCapital(Y)");
    ClosureOperator closure = [&](const AtomSet& s) { return deduce(s, rules, sig).atoms; };

    std::vector<PieceOfInformation> pieces{
        {{"Beijing", "China"}, {atom("capital(Beijing,China)")}, {}, {}},
        {{"China"}, {atom("HasCapital(China)")}, {}, {}},
    };
    auto space = deductive_preorder_topology(pieces, closure);
    REQUIRE(space.preorder);
    CHECK(space.preorder->leq(0, 1));
    CHECK_FALSE(space.preorder->leq(1, 0));
    CHECK(verify_topology(space.structure.ground(), space.structure.opens()).valid);

    std::vector<PieceOfInformation> twins{{{"a"}, {atom("p(a)")}, {}, {}}, {{"a"}, {atom("p(a)")}, {}, {}}};
    auto t = deductive_preorder_topology(twins, no_rules);
    CHECK(t.structure.size() == 2);  // indiscrete

    std::vector<PieceOfInformation> apart{{{"a"}, {atom("p(a)")}, {}, {}}, {{"b"}, {atom("q(b)")}, {}, {}}};
    CHECK(is_discrete(deductive_preorder_topology(apart, no_rules).structure));
}

TEST_CASE("deductive preorder is a preorder on random rule sets") {
    std::mt19937 rng(5);
    const std::vector<std::string> rels{"p", "q", "r", "s"};
    const std::vector<std::string> consts{"a", "b", "c"};
    DomainSignature sig;
    for (int trial = 0; trial < 40; ++trial) {
        RuleSet rules;
        const int nr = static_cast<int>(rng() % 9);
        for (int i = 0; i < nr; ++i)
            rules.push_back(make_rule({{rels[rng() % 4], {Term::variable("X")}}}, {rels[rng() % 4], {Term::variable("X")}}));
        ClosureOperator closure = [&](const AtomSet& s) { return deduce(s, rules, sig).atoms; };
        std::vector<PieceOfInformation> pieces;
        const int np = 1 + static_cast<int>(rng() % 6);
        for (int i = 0; i < np; ++i) {
            PieceOfInformation p;
            const int na = 1 + static_cast<int>(rng() % 3);
            for (int k = 0; k < na; ++k) {
                GroundAtom a{rels[rng() % 4], {consts[rng() % 3]}};
                p.atoms.push_back(a);
                p.objects.insert(a.args[0]);
            }
            std::sort(p.atoms.begin(), p.atoms.end());
            p.atoms.erase(std::unique(p.atoms.begin(), p.atoms.end()), p.atoms.end());
            pieces.push_back(p);
        }
        auto space = deductive_preorder_topology(pieces, closure);
        const auto& o = *space.preorder;
        for (int a = 0; a < np; ++a) {
            CHECK(o.leq(a, a));
            for (int b = 0; b < np; ++b)
                for (int c = 0; c < np; ++c)
                    if (o.leq(a, b) && o.leq(b, c)) CHECK(o.leq(a, c));
        }
        CHECK(verify_topology(space.structure.ground(), space.structure.opens()).valid);
    }
}

TEST_CASE("induced structure") {
    std::vector<PieceOfInformation> pieces{
        {{"a"}, {atom("p(a)")}, {}, {}},
        {{"a"}, {atom("q(a)")}, {}, {}},
        {{"a"}, {atom("p(a)"), atom("q(a)")}, {}, {}},
        {{"b"}, {atom("p(b)")}, {}, {}},
    };
    auto one = induced_structure(pieces, {{0}});
    CHECK(one.structure.size() == 3);  // ∅, u, S

    auto two = induced_structure(pieces, {{0, 2}, {1, 2}});
    const auto& g = two.structure.ground();
    CHECK(two.structure.is_open(g.singleton(2)));                          // u ∩ v
    CHECK(two.structure.is_open(g.singleton(0).with(1).with(2)));          // u ∪ v
    CHECK(verify_topology(g, two.structure.opens()).valid);

    CHECK_THROWS_AS(induced_structure(pieces, {{0, 3}}), ConstraintError);
    CHECK(is_discrete(discrete_structure(pieces).structure));
    CHECK(indiscrete_structure(pieces).structure.size() == 2);
    CHECK(piece_ground(3).elements() == std::vector<std::string>{"I1", "I2", "I3"});
}
