#include <random>

#include "doctest.h"

#include "dik/interpretation.hpp"
#include "dik/method.hpp"

using namespace dik;

namespace {

DomainSignature mathematics() {
    DomainSignature s;
    s.name = "mathematics";
    for (int i = 1; i <= 30; ++i) s.classes["Number"].members.push_back(std::to_string(i));
    s.classes["Number"].members = make_value(s.classes["Number"].members);
    for (const char* f : {"sum", "count", "div", "mean"}) s.functions[f] = {f, 1, builtin_from_name(f), {}, {}};
    s.functions["div"].arity = 2;
    s.relations["in"] = {"in", 2, true, {}, {}};
    s.relations["prime"] = {"prime", 1, true, {}, {}};
    return resolve_signature(s);
}

MethodSpec average() {
    MethodSpec m;
    m.name = "average";
    m.given.slots = {"input"};
    m.instructions = {{"sum", {InstructionArg::slot("input")}, "s"},
                      {"count", {InstructionArg::slot("input")}, "c"},
                      {"div", {InstructionArg::slot("s"), InstructionArg::slot("c")}, "avg"}};
    m.goal.output = "avg";
    m.goal.equals = GoalExpr{GoalExpr::Kind::Apply, "mean", {GoalExpr{GoalExpr::Kind::Slot, "input", {}}}};
    m.goal.statement = "the average of {input} is equal to {avg}";
    return m;
}

struct Numbers {
    GroundSet ground{{"3", "7", "11", "23"}};
    FiniteTopology space = discrete_topology(ground);
    DStar dstar;
    InterpretationMap imap;

    Numbers() {
        dstar.opens["X"] = ground.full_set();
        for (std::size_t i = 0; i < ground.size(); ++i) {
            dstar.opens["n" + ground.element(i)] = ground.singleton(i);
            imap.objects["n" + ground.element(i)] = {scalar(ground.element(i)), std::nullopt};
            dstar.instances.push_back({"subset", {"n" + ground.element(i), "X"}});
        }
        imap.objects["X"] = {ground.elements(), "X'"};
        dstar.relations["subset"] = DataRelation::subset();
        imap.relations["subset"] = "in";
    }
};

}  // namespace

TEST_CASE("numbers read as numbers") {
    CHECK(object_less("7", "11"));
    CHECK(object_less("11", "X'"));
    CHECK(to_string(make_value({"23", "3", "11", "7", "3"})) == "{3,7,11,23}");
    CHECK(to_string(scalar("11")) == "11");
    CHECK(format_number(44.0 / 4.0) == "11");
    CHECK(format_number(2.5) == "2.5");
}

TEST_CASE("ground atoms") {
    auto a = parse_ground_atom("capital(Beijing,China)");
    CHECK(a.relation == "capital");
    CHECK(a.args == std::vector<Object>{"Beijing", "China"});
    CHECK_FALSE(a.negated);
    CHECK(parse_ground_atom("!prime(4)").negated);
    CHECK(parse_ground_atom("¬prime(4)").negated);
    CHECK(to_string(parse_ground_atom("!prime(4)")) == "¬prime(4)");
    CHECK_THROWS_AS(parse_ground_atom("prime(4"), MalformedInput);
}

TEST_CASE("interpret the numbers") {
    Numbers n;
    auto sig = mathematics();
    auto in = interpret(n.space, n.dstar, n.imap, sig);
    CHECK(in.atoms.size() == 4);
    CHECK(in.atoms.contains(GroundAtom{"in", {"3", "X'"}}));
    CHECK(in.set_objects.at("X'") == Value{"3", "7", "11", "23"});
    CHECK(in.assignments.at("n7").name() == "7");

    auto wider = with_set_classes(sig, in);
    CHECK(wider.in_class("23", "X'"));
    CHECK(wider.knows_object("X'"));

    DStar empty;
    CHECK(interpret(n.space, empty, n.imap, sig).atoms.empty());
}

TEST_CASE("interpret rejects incomplete or inconsistent maps") {
    auto sig = mathematics();
    {
        Numbers n;
        n.imap.objects.erase("n3");
        CHECK_THROWS_AS(interpret(n.space, n.dstar, n.imap, sig), IncompleteInterpretation);
    }
    {
        Numbers n;
        n.imap.relations["subset"] = "divides";
        CHECK_THROWS_AS(interpret(n.space, n.dstar, n.imap, sig), SignatureError);
    }
    {
        Numbers n;
        n.imap.objects["n3"] = {scalar("three"), std::nullopt};
        CHECK_THROWS_AS(interpret(n.space, n.dstar, n.imap, sig), SignatureError);
    }
    {
        Numbers n;
        n.dstar.relations["subset"].arity = 3;
        CHECK_THROWS_AS(interpret(n.space, n.dstar, n.imap, sig), SignatureError);
    }
}

TEST_CASE("interpret is monotone in D*") {
    std::mt19937 rng(3);
    auto sig = mathematics();
    for (int trial = 0; trial < 30; ++trial) {
        Numbers full;
        Numbers part;
        part.dstar.instances.clear();
        for (const auto& inst : full.dstar.instances)
            if (rng() % 2) part.dstar.instances.push_back(inst);
        auto small = interpret(part.space, part.dstar, part.imap, sig);
        auto big = interpret(full.space, full.dstar, full.imap, sig);
        for (const auto& a : small.atoms) CHECK(big.atoms.contains(a));
    }
}

TEST_CASE("averaging method") {
    auto sig = mathematics();
    auto r = execute_method(average(), sig, {Value{"3", "7", "11", "23"}});
    CHECK(r.slots.at("avg") == scalar("11"));
    CHECK(r.trace.operations.size() == 3);
    CHECK(render_statement(average().goal.statement, r.slots, {{"input", "X'"}}) == "the average of X' is equal to 11");
    CHECK(replay(r.trace, sig) == r.slots);
    CHECK(evaluate(*average().goal.equals, sig, r.slots) == r.slots.at("avg"));

    MethodSpec noop;
    noop.name = "noop";
    noop.given.slots = {"x"};
    auto same = execute_method(noop, sig, {scalar("5")});
    CHECK(same.slots == std::map<std::string, Value>{{"x", scalar("5")}});

    auto broken = average();
    broken.instructions[2].args[1] = InstructionArg::slot("n");
    CHECK_THROWS_AS(check_method(broken, sig), SignatureError);
    CHECK_THROWS_AS(execute_method(broken, sig, {Value{"3"}}), SignatureError);
}

TEST_CASE("replay detects a tampered trace") {
    auto sig = mathematics();
    auto r = execute_method(average(), sig, {Value{"3", "7", "11", "23"}});
    r.trace.operations[0].result = scalar("45");
    CHECK_THROWS_AS(replay(r.trace, sig), DomainError);
}

TEST_CASE("function graphs and derived objects") {
    DomainSignature s;
    s.name = "admin";
    s.classes["G"].members = {"China", "France"};
    FunctionSymbol cap{"capitalOf", 1, std::nullopt, {{{"China"}, "Beijing"}, {{"France"}, "Paris"}}, "G"};
    s.functions["capitalOf"] = cap;
    s.objects = {{"China", true, {}, {}}, {"Beijing", true, {}, {}}, {"chinaCapital", false, "capitalOf", {"China"}}};
    auto r = resolve_signature(s);
    CHECK(r.derived_values.at("chinaCapital") == scalar("Beijing"));
    CHECK(apply_function(r, "capitalOf", {scalar("France")}) == scalar("Paris"));
    CHECK_THROWS_AS(apply_function(r, "capitalOf", {scalar("Japan")}), DomainError);

    auto cyclic = s;
    cyclic.objects = {{"a", false, "capitalOf", {"b"}}, {"b", false, "capitalOf", {"a"}}};
    CHECK_THROWS_AS(resolve_signature(cyclic), SignatureError);
}
