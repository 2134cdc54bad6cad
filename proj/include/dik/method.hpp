#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dik/domain.hpp"

namespace dik {

struct InstructionArg {
    enum class Kind { Slot, Literal };
    Kind kind = Kind::Slot;
    std::string text;

    static InstructionArg slot(std::string s) { return {Kind::Slot, std::move(s)}; }
    static InstructionArg literal(std::string s) { return {Kind::Literal, std::move(s)}; }
};

// result := function(args...)
struct Instruction {
    std::string function;
    std::vector<InstructionArg> args;
    std::string result;
};

// Expression over slots, literals and domain functions; used to state goals.
struct GoalExpr {
    enum class Kind { Slot, Literal, Apply };
    Kind kind = Kind::Slot;
    std::string name;
    std::vector<GoalExpr> args;
};

struct MethodGiven {
    std::vector<std::string> slots;
    std::string description;
    // Finite input domain used for exhaustive validation: each slot ranges
    // over the class members, or, when subset_size > 0, the single slot
    // ranges over all subsets of that size.
    std::optional<std::string> domain_class;
    std::size_t subset_size = 0;
};

struct MethodGoal {
    std::string output;
    std::string description;
    std::optional<GoalExpr> equals;  // goal predicate: output == expression
    std::string relation;            // relation(input labels..., output) recorded on success
    std::string statement;           // template with {slot} placeholders
};

struct MethodSpec {
    std::string name;
    MethodGiven given;
    MethodGoal goal;
    std::vector<Instruction> instructions;
};

// One evaluation f(x̄1, …, x̄n).
struct Operation {
    std::size_t instruction = 0;
    std::string function;
    std::vector<Value> args;
    Value result;
    std::string slot;
};

struct OperationTrace {
    std::string method;
    std::map<std::string, Value> inputs;
    std::vector<Operation> operations;
};

struct MethodResult {
    std::map<std::string, Value> slots;
    OperationTrace trace;
};

// Thrown when an instruction's function is undefined on its arguments.
class InstructionError : public DomainError {
public:
    InstructionError(std::size_t index, const std::string& what)
        : DomainError("instruction " + std::to_string(index) + ": " + what), index_(index) {}
    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

// Static check: every argument slot is given or produced earlier, every
// function exists with matching arity, and the goal output is produced.
// Throws SignatureError.
void check_method(const MethodSpec& spec, const DomainSignature& sig);

MethodResult execute_method(const MethodSpec& spec, const DomainSignature& sig, const std::vector<Value>& inputs);

// Re-evaluates every recorded operation and returns the slots it rebuilds.
// Throws DomainError if an operation no longer yields its recorded result.
std::map<std::string, Value> replay(const OperationTrace& trace, const DomainSignature& sig);

Value evaluate(const GoalExpr& e, const DomainSignature& sig, const std::map<std::string, Value>& slots);

// Fills "{slot}" placeholders; `labels` overrides how a slot is printed.
std::string render_statement(const std::string& tmpl, const std::map<std::string, Value>& slots,
                             const std::map<std::string, std::string>& labels = {});

std::string to_string(const OperationTrace& trace);

}  // namespace dik
