#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dik/complex.hpp"
#include "dik/data_space.hpp"
#include "dik/domain.hpp"
#include "dik/inference.hpp"
#include "dik/interpretation.hpp"
#include "dik/knowledge.hpp"
#include "dik/method.hpp"
#include "dik/metric.hpp"
#include "dik/topology.hpp"

namespace dik {

// How the dataset states its topology.
struct TopologySpec {
    enum class Kind { Opens, Subbasis, Preorder, Discrete, Indiscrete };
    Kind kind = Kind::Discrete;
    std::vector<SubsetMask> sets;  // opens or subbasis
    std::vector<Edge> pairs;       // preorder: (lower, upper)
};

struct Dataset {
    std::string source;
    GroundSet ground;
    TopologySpec topology;
    std::optional<MetricTable<double>> metric;
    std::optional<double> epsilon;  // default similarity threshold stated with the metric
    std::map<std::string, DataFunction> functions;  // intersection and union always present
    std::map<std::string, DataRelation> relations;  // subset and equal always present
    DStar dstar;
};

// Topology of the dataset. Throws ConstraintError when a stated family of
// opens violates the axioms; use verify_topology for the full report.
FiniteTopology build_topology(const Dataset& d);
FiniteTopology build_topology(const TopologySpec& spec, const GroundSet& ground);

// Exchange documents: {"elements": [...], "opens": [[...]]} or
// {"elements": [...], "leq": [[lower, upper]]}, written in canonical order.
FiniteTopology parse_topology_document(const std::string& text, const std::string& source);
FiniteTopology load_topology_document(const std::filesystem::path& path);
std::string topology_document(const FiniteTopology& t);
std::string preorder_document(const Preorder& p);

struct DomainDocument {
    DomainSignature signature;  // resolved
    std::vector<MethodSpec> methods;
    AtomSet facts;
};

const MethodSpec* find_method(const DomainDocument& d, const std::string& name);

struct MethodCall {
    std::string method;
    std::vector<std::string> inputs;  // open-set labels of D*
};

struct InterpretationDocument {
    InterpretationMap map;
    std::vector<MethodCall> methods;
};

struct KnowledgeBaseDocument {
    std::vector<KnowledgeObject> objects;
    std::vector<std::pair<std::string, std::string>> edges;
};

std::string read_text(const std::filesystem::path& path);  // MalformedInput if unreadable

// Loaders throw ParseError (with the line of the offending value) for
// malformed documents.
Dataset parse_dataset(const std::string& text, const std::string& source);
DomainDocument parse_domain(const std::string& text, const std::string& source);
// Set images without explicit members take the element names of their open set.
InterpretationDocument parse_interpretation(const std::string& text, const std::string& source, const Dataset& data);
KnowledgeBaseDocument parse_knowledge_base(const std::string& text, const std::string& source);

Dataset load_dataset(const std::filesystem::path& path);
DomainDocument load_domain(const std::filesystem::path& path);
InterpretationDocument load_interpretation(const std::filesystem::path& path, const Dataset& data);
RuleSet load_rules(const std::filesystem::path& path);
KnowledgeBaseDocument load_knowledge_base(const std::filesystem::path& path);

// One simplex per line, vertex names separated by commas, by dimension.
std::string complex_text(const SimplicialComplex& c, const GroundSet& ground);

// DOT rendering of a dag; nodes of the same group share a cluster.
std::string dag_dot(const std::string& name, const DerivationDag& dag, const std::vector<Edge>& edges,
                    const std::vector<std::vector<std::size_t>>& groups = {});

}  // namespace dik
