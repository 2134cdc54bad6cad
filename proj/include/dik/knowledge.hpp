#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "dik/inference.hpp"
#include "dik/information.hpp"
#include "dik/method.hpp"
#include "dik/topology.hpp"

namespace dik {

enum class KnowledgeKind { Declarative, Procedural };

std::string_view to_string(KnowledgeKind k);

// Declarative content declares a relation; procedural content is a method,
// one of its executions, or the record of a verification run. Plain text is
// used for objects loaded from a knowledge-base document.
using KnowledgeContent =
    std::variant<GroundAtom, QuantifiedFormula, PieceOfInformation, MethodSpec, OperationTrace, ValidationRecord, std::string>;

struct KnowledgeObject {
    std::string id;
    KnowledgeKind kind = KnowledgeKind::Declarative;
    KnowledgeContent content;
    ValidationRecord validation;
};

std::string describe(const KnowledgeContent& c);

using Edge = std::pair<std::size_t, std::size_t>;

// Nodes with the derivation relation o1 ↠ o2 given by its generating edges.
// Reflexive pairs are implicit; construction rejects directed cycles.
class DerivationDag {
public:
    DerivationDag() = default;
    // Throws OrderViolation naming a cycle, MalformedInput on bad indices or ids.
    DerivationDag(std::vector<std::string> ids, std::vector<Edge> edges);

    std::size_t size() const noexcept { return ids_.size(); }
    const std::vector<std::string>& ids() const noexcept { return ids_; }
    const std::string& id(std::size_t i) const { return ids_.at(i); }
    std::optional<std::size_t> index_of(const std::string& id) const;
    const std::vector<Edge>& edges() const noexcept { return edges_; }  // sorted, no self loops
    const BoolMatrix& reachability() const noexcept { return reach_; }  // reflexive-transitive
    bool derives(std::size_t a, std::size_t b) const {
        return reach_(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
    }

private:
    std::vector<std::string> ids_;
    std::vector<Edge> edges_;
    BoolMatrix reach_;
};

// Edges of the Hasse diagram: a ↠ b with nothing strictly between.
std::vector<Edge> transitive_reduction(const DerivationDag& dag);

// Ground set of node ids; at most 62 nodes.
GroundSet dag_ground(const DerivationDag& dag);
Preorder reachability_preorder(const DerivationDag& dag);
FiniteTopology upper_set_topology(const DerivationDag& dag);

struct CrossEdges {
    std::vector<Edge> t_to_p;  // (declarative index, procedural index)
    std::vector<Edge> p_to_t;  // (procedural index, declarative index)
};

struct KnowledgeSpaces {
    std::vector<KnowledgeObject> declarative;
    std::vector<KnowledgeObject> procedural;
    DerivationDag k_t;
    DerivationDag k_p;
    CrossEdges cross;
};

// Splits objects by kind and edges (pairs of ids) by endpoint kinds.
// Throws AdmissionError for an object not validated as valid,
// OrderViolation for a cycle inside either space, MalformedInput for
// duplicate or unknown ids.
KnowledgeSpaces build_knowledge_spaces(std::vector<KnowledgeObject> objects,
                                       const std::vector<std::pair<std::string, std::string>>& edges);

enum class SectionForm { Isolated, Chain, Component };
enum class SectionMode { Directed, Connected };

std::string_view to_string(SectionForm f);

struct KnowledgeSection {
    std::vector<std::size_t> members;  // chain order for chains, ascending otherwise
    SectionForm form = SectionForm::Chain;
    friend bool operator==(const KnowledgeSection&, const KnowledgeSection&) = default;
};

// Isolated nodes become singleton sections; the rest is split into weak
// components and each is peeled into longest chains of the derivation order
// restricted to what remains. Equal-length chains are ordered by their id
// sequences and the least one is taken. Sections are returned ordered by
// their smallest member. In Connected mode edges lose their direction and
// each weak component is one section.
std::vector<KnowledgeSection> decompose_sections(const DerivationDag& dag, SectionMode mode = SectionMode::Directed);

struct UniquenessReport {
    bool checked = false;  // false when some component exceeds the size limit
    std::size_t outcomes = 0;  // distinct decompositions over all tie choices
    bool unique() const noexcept { return checked && outcomes == 1; }
};

// Re-runs the chain peeling along every tie choice.
UniquenessReport check_uniqueness(const DerivationDag& dag, std::size_t max_component = 7);

struct AssumptionReport {
    std::vector<std::size_t> unmatched_t;  // declarative nodes that derive no procedural node and are derived by none
    std::vector<std::size_t> unmatched_p;
    bool holds() const noexcept { return unmatched_t.empty() && unmatched_p.empty(); }
};

AssumptionReport check_assumption(const DerivationDag& k_t, const DerivationDag& k_p, const CrossEdges& cross);

// ↠ over both spaces: the reflexive-transitive closure of the edges of
// K_T, K_P and the cross edges. Declarative nodes come first.
BoolMatrix joint_derivation(const DerivationDag& k_t, const DerivationDag& k_p, const CrossEdges& cross);

struct Chapter {
    std::size_t t_section = 0;
    std::size_t p_section = 0;
    std::vector<std::size_t> k_t;  // in section order
    std::vector<std::size_t> k_p;
    std::vector<Edge> t_to_p;  // first partner of each declarative member
    std::vector<Edge> p_to_t;
};

struct ChapterDecomposition {
    std::vector<KnowledgeSection> t_sections;
    std::vector<KnowledgeSection> p_sections;
    std::vector<Chapter> chapters;
    std::vector<std::pair<std::size_t, std::size_t>> empty_pairs;  // section pairs hosting no chapter
    std::vector<std::size_t> uncovered_t;
    std::vector<std::size_t> uncovered_p;
};

// For every pair of complete sections keeps the largest sub-chains in which
// each declarative member derives a procedural one and vice versa.
// Throws CapabilityError when the cross edges violate the assumption.
ChapterDecomposition decompose_chapters(const DerivationDag& k_t, const DerivationDag& k_p, const CrossEdges& cross);

// Product topology on pairs "(a,b)", generated by the rectangles u × v.
FiniteTopology product_space(const FiniteTopology& a, const FiniteTopology& b);

}  // namespace dik
