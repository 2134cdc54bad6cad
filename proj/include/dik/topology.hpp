#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "dik/ground_set.hpp"
#include "dik/subset_mask.hpp"

namespace dik {

using BoolMatrix = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>;

// One failed axiom. `axiom` numbers follow the three data-space axioms:
// 1 = contains empty and full set, 2 = closed under union, 3 = closed under
// intersection. Witnesses are the offending pair, when there is one.
struct AxiomViolation {
    int axiom = 0;
    std::string description;
    std::optional<SubsetMask> lhs;
    std::optional<SubsetMask> rhs;
};

struct TopologyReport {
    bool valid = true;
    std::vector<AxiomViolation> violations;
};

// Ground set plus a canonically ordered, deduplicated family of open sets
// satisfying the topology axioms. Immutable once built.
class FiniteTopology {
public:
    // Verifies the family; throws ConstraintError listing the first violation.
    static FiniteTopology from_opens(GroundSet ground, std::vector<SubsetMask> family);

    const GroundSet& ground() const noexcept { return ground_; }
    std::span<const SubsetMask> opens() const noexcept { return opens_; }
    std::size_t size() const noexcept { return opens_.size(); }
    bool is_open(const SubsetMask& s) const;

    friend bool operator==(const FiniteTopology&, const FiniteTopology&) = default;

private:
    FiniteTopology(GroundSet ground, std::vector<SubsetMask> canonical)
        : ground_(std::move(ground)), opens_(std::move(canonical)) {}

    friend FiniteTopology make_topology_unchecked(GroundSet, std::vector<SubsetMask>);

    GroundSet ground_;
    std::vector<SubsetMask> opens_;
};

// Reflexive, transitive relation; leq(i, j) means element i ⪯ element j.
class Preorder {
public:
    // Throws ConstraintError if the matrix is not reflexive and transitive.
    Preorder(GroundSet ground, BoolMatrix leq);

    // Smallest preorder containing the given (lower, upper) index pairs.
    static Preorder closure_of(GroundSet ground, std::span<const std::pair<std::size_t, std::size_t>> pairs);
    static Preorder equality(GroundSet ground);

    const GroundSet& ground() const noexcept { return ground_; }
    const BoolMatrix& matrix() const noexcept { return leq_; }
    bool leq(std::size_t i, std::size_t j) const { return leq_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)); }
    std::size_t size() const noexcept { return ground_.size(); }

    SubsetMask up_set(std::size_t i) const;    // {j : i ⪯ j}
    SubsetMask down_set(std::size_t i) const;  // {j : j ⪯ i}
    bool is_upper_set(const SubsetMask& s) const;

    friend bool operator==(const Preorder& a, const Preorder& b) {
        return a.ground_ == b.ground_ && a.leq_ == b.leq_;
    }

private:
    GroundSet ground_;
    BoolMatrix leq_;
};

// Warshall closure in place; also sets the diagonal.
void reflexive_transitive_closure(BoolMatrix& rel);

TopologyReport verify_topology(const GroundSet& ground, std::span<const SubsetMask> family);

// Smallest topology containing the subbasis: closes under finite
// intersections (the empty intersection is X), then under unions.
FiniteTopology generate_topology(const GroundSet& ground, std::span<const SubsetMask> subbasis);

FiniteTopology discrete_topology(const GroundSet& ground);
FiniteTopology indiscrete_topology(const GroundSet& ground);

// Smallest closed set containing s.
SubsetMask closure(const FiniteTopology& t, const SubsetMask& s);

// Smallest open set containing element i.
SubsetMask minimal_neighborhood(const FiniteTopology& t, std::size_t i);

Preorder specialization_preorder(const FiniteTopology& t);

// Topology whose open sets are exactly the upper sets of p.
FiniteTopology alexandrov_topology(const Preorder& p);

bool is_t1(const FiniteTopology& t);
bool is_discrete(const FiniteTopology& t);
bool is_connected(const FiniteTopology& t);
bool is_metrizable(const FiniteTopology& t);

// Every finite space is compact; kept so the property set is complete.
constexpr bool is_compact(const FiniteTopology&) noexcept { return true; }

}  // namespace dik
