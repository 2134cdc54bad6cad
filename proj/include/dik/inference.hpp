#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dik/domain.hpp"
#include "dik/method.hpp"

namespace dik {

struct PieceOfInformation;

// Range-restricted Horn rule: body_1 & … & body_k -> head. Variables may be
// typed with a class of the signature.
struct HornRule {
    std::vector<PatternAtom> body;
    PatternAtom head;
    std::map<std::string, std::string> variable_classes;
    std::size_t line = 0;  // source line, 0 when built in code

    std::vector<std::string> variables() const;  // body variables, first-occurrence order
};

// Throws RuleError when a head variable does not occur in the body.
HornRule make_rule(std::vector<PatternAtom> body, PatternAtom head,
                   std::map<std::string, std::string> variable_classes = {}, std::size_t line = 0);

using RuleSet = std::vector<HornRule>;

// One rule per line: `capital(X:City, Y:Country) -> HasCapital(Y)`.
// Body atoms are joined with '&'; identifiers starting with an uppercase
// letter are variables; '#' starts a comment.
RuleSet parse_rules(std::string_view text, const std::string& source = "rules");

std::string to_string(const HornRule& r);

// Checks class annotations and relation arities against the signature.
void check_rules(const RuleSet& rules, const DomainSignature& sig);

struct Derivation {
    std::size_t rule = 0;
    std::map<std::string, Object> bindings;
    std::vector<GroundAtom> premises;
};

struct Closure {
    AtomSet atoms;
    std::map<GroundAtom, Derivation> derivations;  // derived atoms only
};

// Least fixpoint of rule application over the facts. Rules match positive
// atoms only; negated facts are carried through unchanged.
Closure deduce(const AtomSet& facts, const RuleSet& rules, const DomainSignature& sig);

struct InductionConfig {
    std::size_t min_support = 3;
    std::set<std::string> closed_world_relations;
    std::set<std::pair<std::string, std::vector<std::string>>> closed_world_tuples;
};

enum class ConjectureStatus { Conjectured, Validated, Refuted };

struct QuantifiedConjecture {
    QuantifiedFormula formula;
    std::string relation;
    std::vector<std::string> classes;
    std::size_t support = 0;
    std::size_t counterexamples = 0;
    ConjectureStatus status = ConjectureStatus::Conjectured;
    std::vector<GroundAtom> antecedents;  // the supporting instances
};

// Generalises R over every class tuple with at least `min_support`
// observed instances and no known failure of R. Conjectures are emitted in
// (relation, class tuple) order and are not yet validated.
std::vector<QuantifiedConjecture> induce(const AtomSet& atoms, const DomainSignature& sig, const InductionConfig& config);

enum class ValidationMethod { Assumption, ExhaustiveVerification, Belief };
enum class Outcome { Valid, Invalid, Undetermined };

std::string_view to_string(ValidationMethod m);
std::string_view to_string(Outcome o);
std::string_view to_string(ConjectureStatus s);

struct ValidationRecord {
    std::string target;
    ValidationMethod method = ValidationMethod::Assumption;
    Outcome outcome = Outcome::Undetermined;
    std::optional<std::vector<Object>> witness;  // set whenever outcome is Invalid
    std::vector<std::string> checks;             // verification log, one line per check
};

// Exhaustive truth of a formula under the closed-world reading of `facts`.
// Throws CapabilityError when a quantified class is unknown or not enumerable.
bool holds(const QuantifiedFormula& f, const DomainSignature& sig, const AtomSet& facts);

ValidationRecord validate(const QuantifiedFormula& f, ValidationMethod method, const DomainSignature& sig,
                          const AtomSet& facts);
ValidationRecord validate(const QuantifiedConjecture& c, ValidationMethod method, const DomainSignature& sig,
                          const AtomSet& facts);
ValidationRecord validate(const GroundAtom& a, ValidationMethod method, const AtomSet& facts);
ValidationRecord validate(const PieceOfInformation& p, ValidationMethod method, const DomainSignature& sig,
                          const AtomSet& facts);
// Runs the method on every input of its declared finite domain and checks
// the goal predicate.
ValidationRecord validate(const MethodSpec& m, ValidationMethod method, const DomainSignature& sig);

}  // namespace dik
