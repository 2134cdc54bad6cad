#include "dik/logic.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

namespace dik {

std::optional<double> as_number(std::string_view text) {
    if (text.empty()) return std::nullopt;
    double v = 0;
    auto first = text.data();
    if (*first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) return std::nullopt;
    return v;
}

std::string format_number(double v) {
    if (v == 0) return "0";
    if (std::nearbyint(v) == v && std::fabs(v) < 1e15) {
        char buf[32];
        auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, static_cast<long long>(v));
        return std::string(buf, ptr);
    }
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

bool object_less(const Object& a, const Object& b) {
    auto na = as_number(a), nb = as_number(b);
    if (na && nb) return *na != *nb ? *na < *nb : a < b;
    if (na || nb) return na.has_value();
    return a < b;
}

bool operator<(const GroundAtom& a, const GroundAtom& b) {
    if (a.relation != b.relation) return a.relation < b.relation;
    if (a.args != b.args)
        return std::lexicographical_compare(a.args.begin(), a.args.end(), b.args.begin(), b.args.end(), object_less);
    return a.negated < b.negated;
}

std::string to_string(const GroundAtom& a) {
    std::string out = a.negated ? "¬" : "";
    out += a.relation + "(";
    for (std::size_t i = 0; i < a.args.size(); ++i) out += (i ? "," : "") + a.args[i];
    return out + ")";
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

GroundAtom parse_ground_atom(std::string_view text) {
    GroundAtom atom;
    text = trim(text);
    if (text.starts_with("!")) {
        atom.negated = true;
        text.remove_prefix(1);
    } else if (text.starts_with("¬")) {
        atom.negated = true;
        text.remove_prefix(std::string_view("¬").size());
    }
    text = trim(text);
    const auto open = text.find('(');
    if (open == std::string_view::npos || text.back() != ')')
        throw MalformedInput("expected relation(args) in atom '" + std::string(text) + "'");
    atom.relation = std::string(trim(text.substr(0, open)));
    if (atom.relation.empty()) throw MalformedInput("atom without relation name");
    auto inner = text.substr(open + 1, text.size() - open - 2);
    if (!trim(inner).empty()) {
        std::size_t start = 0;
        while (true) {
            auto comma = inner.find(',', start);
            auto part = trim(inner.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
            if (part.empty()) throw MalformedInput("empty argument in atom '" + std::string(text) + "'");
            atom.args.emplace_back(part);
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
    }
    return atom;
}

std::string to_string(const PatternAtom& a) {
    std::string out = a.relation + "(";
    for (std::size_t i = 0; i < a.terms.size(); ++i) out += (i ? "," : "") + a.terms[i].name;
    return out + ")";
}

std::string variable_name(std::size_t position) {
    static const char* names[] = {"x", "y", "z"};
    return position < 3 ? names[position] : "x" + std::to_string(position + 1);
}

QuantifiedFormula QuantifiedFormula::universal(const std::string& relation, const std::vector<std::string>& classes) {
    QuantifiedFormula f;
    PatternAtom atom{relation, {}};
    for (std::size_t i = 0; i < classes.size(); ++i) {
        f.prefix.push_back({Quantifier::ForAll, variable_name(i), classes[i]});
        atom.terms.push_back(Term::variable(variable_name(i)));
    }
    f.matrix = FormulaNode::leaf(std::move(atom));
    return f;
}

namespace {

std::string node_string(const FormulaNode& n) {
    switch (n.op) {
        case FormulaNode::Op::Atom:
            return to_string(n.atom);
        case FormulaNode::Op::Not:
            return "¬" + node_string(n.children.at(0));
        case FormulaNode::Op::And:
        case FormulaNode::Op::Or: {
            std::string out = "(";
            for (std::size_t i = 0; i < n.children.size(); ++i) {
                if (i) out += n.op == FormulaNode::Op::And ? " ∧ " : " ∨ ";
                out += node_string(n.children[i]);
            }
            return out + ")";
        }
    }
    return {};
}

}  // namespace

std::string to_string(const QuantifiedFormula& f) {
    std::string out;
    for (const auto& b : f.prefix)
        out += (b.quantifier == Quantifier::ForAll ? "∀" : "∃") + b.variable + "∈" + b.class_name + " ";
    return out + node_string(f.matrix);
}

}  // namespace dik
