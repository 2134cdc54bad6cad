#include "doctest.h"

#include "dik/io.hpp"
#include "dik/json_locator.hpp"
#include "../oracles/oracles.hpp"

using namespace dik;

namespace {

std::size_t error_line(const std::function<void()>& f) {
    try {
        f();
    } catch (const ParseError& e) {
        return e.line();
    }
    return 0;
}

const std::filesystem::path kFixtures = DIK_FIXTURES;

}  // namespace

TEST_CASE("json locator") {
    std::string text = "{\n  \"a\": [\n    1,\n    {\"b\": 2}\n  ],\n  \"c/d\": 3\n}\n";
    JsonLocator loc(text);
    CHECK(loc.line("") == 1);
    CHECK(loc.line("/a") == 2);
    CHECK(loc.line("/a/0") == 3);
    CHECK(loc.line("/a/1/b") == 4);
    CHECK(loc.line("/c~1d") == 6);
    CHECK(loc.line("/a/1/zzz") == 4);
    CHECK(pointer_escape("c/d~") == "c~1d~0");
    CHECK(JsonLocator::line_of_offset("a\nb\nc", 4) == 3);
}

TEST_CASE("dataset documents") {
    auto d = parse_dataset(R"({"elements": [3, 7, 11, 23], "topology": {"leq": [[7, 3]]}})", "d");
    CHECK(d.ground.elements() == std::vector<std::string>{"3", "7", "11", "23"});
    auto t = build_topology(d);
    CHECK(specialization_preorder(t).leq(1, 0));
    CHECK(d.relations.contains("subset"));
    CHECK(d.functions.contains("intersection"));

    CHECK(error_line([] { parse_dataset("{\n\"elements\": [1, 2],\n\"topology\": 5\n}", "d"); }) == 3);
    CHECK(error_line([] { parse_dataset("{\n\"elements\": [1, 1]\n}", "d"); }) == 2);
    CHECK(error_line([] { parse_dataset("{\"elements\": [1, 2],\n\"topology\": {\"opens\": [[3]]}}", "d"); }) == 2);
    CHECK(error_line([] { parse_dataset("{\"elements\": [1, 2],\n \"topology\": \"discrete\",\n\n \"metric\": {\"dist\": [[0]]}}", "d"); }) == 4);
    CHECK(error_line([] { parse_dataset("{\"elements\": [1,\n", "d"); }) >= 1);
    CHECK_THROWS_AS(parse_dataset("[]", "d"), ParseError);

    auto bad = parse_dataset(R"({"elements": ["a", "b"], "topology": {"opens": [[], ["a"]]}})", "d");
    CHECK_THROWS_AS(build_topology(bad), ConstraintError);

    auto m = parse_dataset(R"({"elements": ["a", "b"], "topology": "discrete", "metric": {"coords": [[0, 0], [3, 4]], "epsilon": 5}})", "d");
    REQUIRE(m.metric);
    CHECK((*m.metric)(0, 1) == doctest::Approx(5.0));
    CHECK(m.epsilon == 5.0);
}

TEST_CASE("fixtures load") {
    auto data = load_dataset(kFixtures / "numbers.json");
    CHECK(data.dstar.opens.size() == 5);
    auto dom = load_domain(kFixtures / "numbers.domain.json");
    CHECK(dom.signature.name == "mathematics");
    REQUIRE(find_method(dom, "average"));
    CHECK(dom.facts.size() == 10);
    auto interp = load_interpretation(kFixtures / "numbers.interpretation.json", data);
    CHECK(interp.map.objects.at("X").label == "X'");
    CHECK(interp.map.objects.at("X").members.size() == 4);
    CHECK(interp.methods.size() == 1);
    CHECK(load_rules(kFixtures / "admin.rules").size() == 1);
    auto kb = load_knowledge_base(kFixtures / "knowledge_base.json");
    CHECK(kb.objects.size() == 8);
    CHECK_THROWS_AS(load_dataset(kFixtures / "no-such-file.json"), MalformedInput);
}

TEST_CASE("domain documents report lines") {
    CHECK(error_line([] {
              parse_domain("{\n\"name\": \"m\",\n\"classes\": {\"N\": [1, 2]},\n\"facts\": [\"prime(3\"]\n}", "dom");
          }) == 4);
    CHECK(error_line([] {
              parse_domain("{\n\"name\": \"m\",\n\"functions\": {\"f\": {\"builtin\": \"sqrt\"}}\n}", "dom");
          }) == 3);
}

TEST_CASE("knowledge-base documents") {
    auto kb = parse_knowledge_base(R"({
      "objects": [
        {"id": "t", "kind": "declarative", "validation": {"method": "by-assumption", "outcome": "valid"}},
        {"id": "p", "kind": "procedural", "content": "do it", "validation": {"method": "by-belief", "outcome": "valid"}}
      ],
      "edges": [["t", "p"]],
      "cross": [["p", "t"]]
    })", "kb");
    CHECK(kb.objects.size() == 2);
    CHECK(kb.edges.size() == 2);
    CHECK(kb.objects[1].kind == KnowledgeKind::Procedural);
    CHECK(error_line([] {
              parse_knowledge_base("{\"objects\": [\n{\"id\": \"t\", \"kind\": \"maybe\"}\n]}", "kb");
          }) == 2);
}

TEST_CASE("complex text and dot") {
    GroundSet g({"a", "b", "c"});
    std::vector<Simplex> s{{0, 1}};
    auto c = SimplicialComplex::closure_of(3, s);
    CHECK(complex_text(c, g) == "a\nb\nc\na,b\n");
    DerivationDag d({"x", "y"}, {{0, 1}});
    auto dot = dag_dot("K_T", d, d.edges());
    CHECK(dot.find("digraph") != std::string::npos);
    CHECK(dot.find("n0 -> n1;") != std::string::npos);
    CHECK(dot.find("label=\"x\"") != std::string::npos);
}

TEST_CASE("topology exchange documents") {
    auto t = parse_topology_document(R"({"elements": ["a", "b", "c"], "leq": [["b", "a"]]})", "t");
    CHECK(t.size() == 6);
    CHECK(topology_document(t) == topology_document(parse_topology_document(topology_document(t), "t")));
    CHECK(preorder_document(specialization_preorder(t)) ==
          "{\n  \"elements\": [\n    \"a\",\n    \"b\",\n    \"c\"\n  ],\n  \"leq\": [\n    [\n      \"b\",\n      \"a\"\n    ]\n  ]\n}\n");
    CHECK(error_line([] { parse_topology_document("{\"elements\": [\"a\"],\n\"leq\": [[\"a\", \"z\"]]}", "t"); }) == 2);

    for (int n = 1; n <= 3; ++n) {
        std::vector<std::string> names;
        for (int i = 0; i < n; ++i) names.push_back(std::string(1, static_cast<char>('a' + i)));
        GroundSet g(names);
        for (const auto& f : oracle::all_topologies(n)) {
            std::vector<SubsetMask> fam;
            for (auto b : f) fam.emplace_back(static_cast<std::size_t>(n), b);
            auto top = FiniteTopology::from_opens(g, fam);
            CHECK(parse_topology_document(topology_document(top), "t") == top);
            CHECK(parse_topology_document(preorder_document(specialization_preorder(top)), "t") == top);
        }
    }
}
