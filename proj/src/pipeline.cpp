#include "dik/pipeline.hpp"

#include <fstream>

#include "json.hpp"

#include "dik/error.hpp"

namespace dik {

using nlohmann::json;

void check_config(const PipelineConfig& c) {
    if (c.stage < 1 || c.stage > 7) throw ParameterError("--stage must be between 1 and 7");
    if (c.max_dim < 0) throw ParameterError("--max-dim must be nonnegative");
    if (c.min_support < 1) throw ParameterError("--min-support must be positive");
    if (c.epsilon) check_epsilon(*c.epsilon);
    if (c.knowledge_base) {
        if (c.stage < 6) throw ParameterError("a knowledge-base document only feeds stages 6 and 7");
        return;
    }
    if (!c.dataset) throw ParameterError("--dataset is required");
    if (c.stage >= 3 && !c.domain) throw ParameterError("--domain is required from stage 3 on");
    if (c.stage >= 3 && !c.interpretation) throw ParameterError("--interpretation is required from stage 3 on");
}

Inputs load_inputs(const PipelineConfig& c) {
    check_config(c);
    Inputs in;
    if (c.knowledge_base) {
        in.knowledge_base = load_knowledge_base(*c.knowledge_base);
        return in;
    }
    // Read every file first so that a missing one fails before any work.
    for (const auto& p : {c.dataset, c.domain, c.interpretation, c.rules})
        if (p) read_text(*p);
    in.dataset = load_dataset(*c.dataset);
    if (c.stage >= 3) {
        in.domain = load_domain(*c.domain);
        in.interpretation = load_interpretation(*c.interpretation, *in.dataset);
        if (c.rules) in.rules = load_rules(*c.rules);
    }
    return in;
}

namespace {

constexpr std::size_t kListLimit = 64;           // longest family printed in full
constexpr std::size_t kTopologyNodeLimit = 16;   // largest space whose opens are enumerated
constexpr std::size_t kProductPairLimit = 16;

void add(std::string& out, const std::string& line) { out += line + "\n"; }

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
    return out;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string number(double v) { return format_number(v); }

std::string tuple(const std::vector<Object>& t) { return "(" + join(t, ",") + ")"; }

std::vector<std::string> atom_strings(const AtomSet& atoms) {
    std::vector<std::string> out;
    for (const auto& a : atoms) out.push_back(to_string(a));
    return out;
}

json topology_json(const FiniteTopology& t) {
    json opens = json::array();
    for (const auto& o : t.opens()) opens.push_back(t.ground().names_of(o));
    return opens;
}

void list_opens(std::string& text, const FiniteTopology& t) {
    if (t.size() > kListLimit) {
        add(text, "  (" + std::to_string(t.size()) + " open sets, not listed)");
        return;
    }
    for (const auto& o : t.opens()) add(text, "  " + format_subset(t.ground(), o));
}

json validation_json(const ValidationRecord& r) {
    json j{{"target", r.target},
           {"method", std::string(to_string(r.method))},
           {"outcome", std::string(to_string(r.outcome))},
           {"checks", r.checks}};
    if (r.witness) j["witness"] = *r.witness;
    return j;
}

std::string validation_summary(const ValidationRecord& r) {
    std::string s = std::string(to_string(r.outcome)) + " " + std::string(to_string(r.method));
    if (!r.checks.empty() && r.method == ValidationMethod::ExhaustiveVerification) s += ", " + r.checks.front();
    if (r.witness) s += ", witness " + tuple(*r.witness);
    return s;
}

struct Execution {
    MethodCall call;
    const MethodSpec* spec = nullptr;
    MethodResult result;
    std::map<std::string, std::string> labels;  // input slot -> object name
    std::string statement;
    std::optional<GroundAtom> atom;
};

struct VerifiedConjecture {
    QuantifiedConjecture conjecture;
    ValidationRecord record;
};

class Run {
public:
    Run(const Inputs& in, const PipelineConfig& c, const std::function<void(const Artifact&)>& emit)
        : in_(in), c_(c), emit_(emit) {}

    void go() {
        if (in_.knowledge_base) {
            knowledge_from_document();
            if (c_.stage >= 7) decompositions();
            return;
        }
        data_space();
        if (c_.stage >= 2) clusters();
        if (c_.stage >= 3) interpretation();
        if (c_.stage >= 4) information();
        if (c_.stage >= 5) inference();
        if (c_.stage >= 6) knowledge();
        if (c_.stage >= 7) decompositions();
    }

private:
    const Inputs& in_;
    const PipelineConfig& c_;
    const std::function<void(const Artifact&)>& emit_;

    std::optional<FiniteTopology> topology_;
    Interpretation interp_;
    DomainSignature sig_;
    std::vector<Execution> executions_;
    ObjectSet interpreted_objects_;
    AtomSet information_atoms_;
    Closure closure_;
    std::vector<VerifiedConjecture> conjectures_;
    std::map<std::string, ValidationRecord> method_validations_;
    KnowledgeSpaces spaces_;
    std::vector<std::string> not_admitted_;

    void finish(Artifact& a, const std::string& text, const json& j) {
        a.text = text;
        a.structured = j.dump(2) + "\n";
        emit_(a);
    }

    // ---- 1 -----------------------------------------------------------------
    void data_space() {
        const auto& d = *in_.dataset;
        Artifact a{1, "01_data_space", {}, {}, {}};
        std::string text;
        json j;
        add(text, "== 1 data space ==");
        add(text, "source: " + d.source);
        add(text, "elements: " + format_subset(d.ground, d.ground.full_set()));
        j["source"] = d.source;
        j["elements"] = d.ground.elements();

        static const char* kinds[] = {"opens", "subbasis", "preorder", "discrete", "indiscrete"};
        j["topology_given_as"] = kinds[static_cast<int>(d.topology.kind)];
        if (d.topology.kind == TopologySpec::Kind::Opens) {
            auto report = verify_topology(d.ground, d.topology.sets);
            if (!report.valid) {
                add(text, "topology: the given family is not a topology");
                json vs = json::array();
                for (const auto& v : report.violations) {
                    add(text, "  axiom " + std::to_string(v.axiom) + ": " + v.description);
                    vs.push_back({{"axiom", v.axiom}, {"description", v.description}});
                }
                j["axiom_violations"] = vs;
                finish(a, text, j);
                throw ConstraintError("the open sets of " + d.source + " violate the topology axioms");
            }
        }
        topology_ = build_topology(d);
        const auto& t = *topology_;
        add(text, "topology (" + std::string(kinds[static_cast<int>(d.topology.kind)]) + "): " +
                      std::to_string(t.size()) + " open sets");
        list_opens(text, t);
        j["opens"] = topology_json(t);
        j["properties"] = {{"t1", is_t1(t)},
                           {"discrete", is_discrete(t)},
                           {"connected", is_connected(t)},
                           {"metrizable", is_metrizable(t)},
                           {"compact", is_compact(t)}};
        add(text, "properties: T1 " + yes_no(is_t1(t)) + ", discrete " + yes_no(is_discrete(t)) + ", connected " +
                      yes_no(is_connected(t)) + ", metrizable " + yes_no(is_metrizable(t)) + ", compact " +
                      yes_no(is_compact(t)));

        auto order = specialization_preorder(t);
        std::vector<std::string> pairs;
        json jp = json::array();
        for (std::size_t x = 0; x < order.size(); ++x)
            for (std::size_t y = 0; y < order.size(); ++y)
                if (x != y && order.leq(x, y)) {
                    pairs.push_back(d.ground.element(x) + " ⪯ " + d.ground.element(y));
                    jp.push_back({d.ground.element(x), d.ground.element(y)});
                }
        add(text, "specialization preorder: " + (pairs.empty() ? std::string("equality only") : join(pairs, ", ")));
        j["specialization"] = jp;

        if (d.metric) {
            auto report = verify_metric(*d.metric);
            json vs = json::array();
            for (const auto& v : report.violations) vs.push_back({{"clause", v.clause}, {"description", v.description}});
            j["metric"] = {{"valid", report.valid}, {"violations", vs}};
            add(text, std::string("metric: ") + (report.valid ? "valid" : "invalid"));
            for (const auto& v : report.violations)
                add(text, "  clause " + std::to_string(v.clause) + ": " + v.description);
            if (!report.valid) {
                finish(a, text, j);
                throw ConstraintError("the distance table of " + d.source + " is not a metric");
            }
        } else {
            add(text, "metric: none");
        }

        if (!d.dstar.opens.empty()) {
            add(text, "D*:");
            json jd;
            for (const auto& [label, mask] : d.dstar.opens) {
                add(text, "  " + label + " = " + format_subset(d.ground, mask) + (t.is_open(mask) ? "" : "  (not open)"));
                jd[label] = d.ground.names_of(mask);
            }
            j["dstar"] = jd;
            json ji = json::array();
            for (const auto& inst : d.dstar.instances) {
                const auto& rel = d.dstar.relations.at(inst.relation);
                OpenTuple args;
                for (const auto& l : inst.args) args.push_back(d.dstar.opens.at(l));
                const bool v = eval_data_relation(t, rel, args);
                add(text, "  " + inst.relation + "(" + join(inst.args, ",") + ") = " + (v ? "true" : "false"));
                ji.push_back({{"relation", inst.relation}, {"args", inst.args}, {"value", v}});
            }
            j["instances"] = ji;
        }

        // ∀t∈τ ∃s∈τ (t ∪ s = X), true on every topology.
        QuantifiedOpenRelation cover{{Quantifier::ForAll, Quantifier::Exists},
                                     OpenFormula::atom(DataRelation::equal(),
                                                       {OpenTerm::apply(DataFunction::union_of(), {OpenTerm::var(0), OpenTerm::var(1)}),
                                                        OpenTerm::constant(d.ground.full_set())})};
        const bool covers = eval_data_relation(t, cover);
        add(text, std::string("∀t∈τ ∃s∈τ (t ∪ s = X): ") + (covers ? "true" : "false"));
        j["forall_t_exists_s_union_is_X"] = covers;
        finish(a, text, j);
    }

    // ---- 2 -----------------------------------------------------------------
    void clusters() {
        const auto& d = *in_.dataset;
        Artifact a{2, "02_clusters", {}, {}, {}};
        std::string text;
        json j;
        add(text, "== 2 clusters and complex ==");
        if (!d.metric) {
            add(text, "no metric given; nothing to cluster");
            j["metric"] = nullptr;
            finish(a, text, j);
            return;
        }
        const auto& m = *d.metric;
        const double eps = c_.epsilon.value_or(d.epsilon.value_or(0.0));
        check_epsilon(eps);
        add(text, "epsilon: " + number(eps));
        j["epsilon"] = eps;

        auto graph = similarity_graph(m, eps);
        std::vector<std::string> edges;
        json je = json::array();
        for (auto [x, y] : graph.edges) {
            edges.push_back(d.ground.element(x) + "~" + d.ground.element(y));
            je.push_back({d.ground.element(x), d.ground.element(y)});
        }
        add(text, "similar pairs: " + (edges.empty() ? std::string("none") : join(edges, ", ")));
        j["similar_pairs"] = je;

        auto parts = dik::clusters(m, eps);
        std::vector<std::string> cs;
        json jc = json::array();
        for (const auto& cl : parts.clusters) {
            cs.push_back(format_subset(d.ground, cl));
            jc.push_back(d.ground.names_of(cl));
        }
        add(text, "clusters: " + join(cs, " "));
        j["clusters"] = jc;

        auto complex = rips_complex(m, eps, c_.max_dim);
        std::vector<std::string> counts;
        json jn = json::array();
        for (int dim = 0; dim <= complex.dimension(); ++dim) {
            counts.push_back("dim " + std::to_string(dim) + ": " + std::to_string(complex.simplices(dim).size()));
            jn.push_back(complex.simplices(dim).size());
        }
        add(text, "Rips complex (max dim " + std::to_string(c_.max_dim) + "): " + join(counts, ", "));
        j["max_dim"] = c_.max_dim;
        j["simplex_counts"] = jn;
        add(text, "simplices:");
        auto lines = complex_text(complex, d.ground);
        json js = json::array();
        std::size_t start = 0;
        while (start < lines.size()) {
            auto nl = lines.find('\n', start);
            add(text, "  " + lines.substr(start, nl - start));
            js.push_back(lines.substr(start, nl - start));
            start = nl + 1;
        }
        j["simplices"] = js;

        // β_k needs the (k+1)-simplices, so the top grade is not reported.
        if (c_.max_dim >= 1) {
            auto betti = betti_numbers(complex, c_.max_dim - 1);
            std::vector<std::string> bs;
            for (std::size_t k = 0; k < betti.size(); ++k) bs.push_back("b" + std::to_string(k) + "=" + std::to_string(betti[k]));
            add(text, "betti numbers: " + join(bs, " "));
            j["betti"] = betti;
        } else {
            add(text, "betti numbers: need max dim >= 1");
        }
        finish(a, text, j);
    }

    // ---- 3 -----------------------------------------------------------------
    void interpretation() {
        const auto& dom = *in_.domain;
        const auto& idoc = *in_.interpretation;
        Artifact a{3, "03_interpretation", {}, {}, {}};
        std::string text;
        json j;
        add(text, "== 3 interpretation ==");
        add(text, "domain: " + dom.signature.name);
        j["domain"] = dom.signature.name;

        interp_ = interpret(*topology_, in_.dataset->dstar, idoc.map, dom.signature);
        sig_ = with_set_classes(dom.signature, interp_);

        add(text, "objects:");
        json jo;
        for (const auto& [label, image] : interp_.assignments) {
            std::string line = "  " + label + " -> " + image.name();
            if (image.is_set()) line += " = " + to_string(image.members);
            add(text, line);
            jo[label] = {{"name", image.name()}, {"members", image.members}};
            interpreted_objects_.insert(image.name());
            interpreted_objects_.insert(image.members.begin(), image.members.end());
        }
        j["objects"] = jo;
        for (const auto& [from, to] : idoc.map.functions) add(text, "function " + from + " -> " + to);
        for (const auto& [from, to] : idoc.map.relations) add(text, "relation " + from + " -> " + to);
        j["functions"] = idoc.map.functions;
        j["relations"] = idoc.map.relations;

        add(text, std::string("interpreted relations:") + (interp_.atoms.empty() ? " none" : ""));
        for (const auto& atom : interp_.atoms) add(text, "  " + to_string(atom));
        j["atoms"] = atom_strings(interp_.atoms);

        AtomSet known;
        for (const auto& f : dom.facts) {
            auto objs = objects_of(f, interp_.set_objects);
            if (std::includes(interpreted_objects_.begin(), interpreted_objects_.end(), objs.begin(), objs.end(),
                              object_less))
                known.insert(f);
        }
        add(text, std::string("known in the domain:") + (known.empty() ? " none" : ""));
        for (const auto& atom : known) add(text, "  " + to_string(atom));
        j["domain_facts"] = atom_strings(known);

        information_atoms_ = interp_.atoms;
        information_atoms_.insert(known.begin(), known.end());

        json jm = json::array();
        if (!idoc.methods.empty()) add(text, "method executions:");
        for (const auto& call : idoc.methods) {
            Execution e;
            e.call = call;
            e.spec = find_method(dom, call.method);
            if (!e.spec) throw SignatureError("interpretation calls unknown method '" + call.method + "'");
            if (call.inputs.size() != e.spec->given.slots.size())
                throw SignatureError("method '" + call.method + "' takes " + std::to_string(e.spec->given.slots.size()) +
                                     " inputs");
            std::vector<Value> inputs;
            for (std::size_t i = 0; i < call.inputs.size(); ++i) {
                auto it = interp_.assignments.find(call.inputs[i]);
                if (it == interp_.assignments.end())
                    throw IncompleteInterpretation("method input '" + call.inputs[i] + "' is not an interpreted open set");
                inputs.push_back(it->second.members);
                e.labels[e.spec->given.slots[i]] = it->second.name();
            }
            e.result = execute_method(*e.spec, sig_, inputs);
            e.statement = render_statement(e.spec->goal.statement, e.result.slots, e.labels);
            if (!e.spec->goal.relation.empty()) {
                GroundAtom atom{e.spec->goal.relation, {}, false};
                for (const auto& slot : e.spec->given.slots) atom.args.push_back(e.labels.at(slot));
                atom.args.push_back(to_string(e.result.slots.at(e.spec->goal.output)));
                e.atom = atom;
                information_atoms_.insert(atom);
            }

            add(text, "  " + call.method + " on " + join(call.inputs, ","));
            json ops = json::array();
            for (const auto& op : e.result.trace.operations) {
                std::vector<std::string> args;
                for (const auto& v : op.args) args.push_back(to_string(v));
                add(text, "    " + op.slot + " := " + op.function + "(" + join(args, ", ") + ") = " + to_string(op.result));
                ops.push_back({{"slot", op.slot}, {"function", op.function}, {"args", args}, {"result", to_string(op.result)}});
            }
            if (!e.statement.empty()) add(text, "    " + e.statement);
            if (e.atom) add(text, "    " + to_string(*e.atom));
            json je{{"method", call.method}, {"inputs", call.inputs}, {"operations", ops}, {"statement", e.statement}};
            if (e.atom) je["atom"] = to_string(*e.atom);
            jm.push_back(je);
            executions_.push_back(std::move(e));
        }
        j["executions"] = jm;
        finish(a, text, j);
    }

    // ---- 4 -----------------------------------------------------------------
    void information() {
        Artifact a{4, "04_information", {}, {}, {}};
        std::string text;
        json j;
        add(text, "== 4 information space ==");
        auto pieces = build_pieces(information_atoms_, interp_.set_objects);
        if (pieces.size() > kMaxGroundSize)
            throw CapabilityError("the information space has " + std::to_string(pieces.size()) + " pieces; at most " +
                                  std::to_string(kMaxGroundSize) + " are supported");
        const auto& rules = in_.rules;
        const auto& sig = sig_;
        auto space = deductive_preorder_topology(std::move(pieces), [&](const AtomSet& s) {
            return deduce(s, rules, sig).atoms;
        });
        const auto ground = piece_ground(space.pieces.size());

        add(text, "pieces:");
        json jp = json::array();
        for (std::size_t i = 0; i < space.pieces.size(); ++i) {
            add(text, "  " + ground.element(i) + " = " + space.pieces[i].key());
            std::vector<std::string> objs(space.pieces[i].objects.begin(), space.pieces[i].objects.end());
            std::vector<std::string> atoms;
            for (const auto& at : space.pieces[i].atoms) atoms.push_back(to_string(at));
            jp.push_back({{"id", ground.element(i)}, {"objects", objs}, {"relations", atoms}});
        }
        j["pieces"] = jp;

        // Hasse diagram of the deductive preorder; equivalent pieces get an edge both ways.
        const auto& order = *space.preorder;
        auto strictly = [&](std::size_t x, std::size_t y) { return order.leq(x, y) && !order.leq(y, x); };
        std::vector<std::string> covers;
        json jc = json::array();
        std::string dot = "digraph \"information\" {\n  rankdir=LR;\n";
        for (std::size_t i = 0; i < order.size(); ++i) dot += "  " + ground.element(i) + ";\n";
        for (std::size_t x = 0; x < order.size(); ++x) {
            for (std::size_t y = 0; y < order.size(); ++y) {
                if (x == y || !order.leq(x, y)) continue;
                bool cover = true;
                if (strictly(x, y))
                    for (std::size_t w = 0; w < order.size() && cover; ++w)
                        if (strictly(x, w) && strictly(w, y)) cover = false;
                if (!cover) continue;
                covers.push_back(ground.element(x) + " ⪯ " + ground.element(y));
                jc.push_back({ground.element(x), ground.element(y)});
                dot += "  " + ground.element(x) + " -> " + ground.element(y) + ";\n";
            }
        }
        dot += "}\n";
        add(text, "deductive preorder: " + (covers.empty() ? std::string("equality only") : join(covers, ", ")));
        j["deductive_preorder"] = jc;
        add(text, "information structure: " + std::to_string(space.structure.size()) + " open sets");
        list_opens(text, space.structure);
        j["opens"] = topology_json(space.structure);
        a.dot.emplace_back("04_information", dot);
        finish(a, text, j);
    }

    // ---- 5 -----------------------------------------------------------------
    AtomSet verification_facts() const {
        AtomSet facts = closure_.atoms;
        facts.insert(in_.domain->facts.begin(), in_.domain->facts.end());
        return facts;
    }

    void inference() {
        Artifact a{5, "05_inference", {}, {}, {}};
        std::string text;
        json j;
        add(text, "== 5 induction, deduction, validation ==");
        check_rules(in_.rules, sig_);
        add(text, "rules:");
        for (std::size_t r = 0; r < in_.rules.size(); ++r) add(text, "  " + std::to_string(r + 1) + ". " + to_string(in_.rules[r]));
        json jr = json::array();
        for (const auto& r : in_.rules) jr.push_back(to_string(r));
        j["rules"] = jr;

        closure_ = deduce(information_atoms_, in_.rules, sig_);
        add(text, "deduced:");
        json jd = json::array();
        for (const auto& [atom, d] : closure_.derivations) {
            std::vector<std::string> premises;
            for (const auto& p : d.premises) premises.push_back(to_string(p));
            add(text, "  " + to_string(atom) + " by deduction from " + join(premises, ", ") + " (rule " +
                          std::to_string(d.rule + 1) + ")");
            jd.push_back({{"atom", to_string(atom)}, {"rule", d.rule + 1}, {"premises", premises}});
        }
        if (closure_.derivations.empty()) add(text, "  nothing new");
        j["deduced"] = jd;

        InductionConfig config;
        config.min_support = c_.min_support;
        auto facts = verification_facts();
        add(text, "conjectures (min support " + std::to_string(c_.min_support) + "):");
        json jc = json::array();
        for (auto& conj : induce(closure_.atoms, sig_, config)) {
            auto record = validate(conj, ValidationMethod::ExhaustiveVerification, sig_, facts);
            conj.status = record.outcome == Outcome::Valid ? ConjectureStatus::Validated : ConjectureStatus::Refuted;
            add(text, "  " + to_string(conj.formula) + ": support " + std::to_string(conj.support) + ", " +
                          std::string(to_string(conj.status)) + " (" + validation_summary(record) + ")");
            jc.push_back({{"formula", to_string(conj.formula)},
                          {"support", conj.support},
                          {"status", std::string(to_string(conj.status))},
                          {"validation", validation_json(record)}});
            conjectures_.push_back({std::move(conj), std::move(record)});
        }
        if (conjectures_.empty()) add(text, "  none");
        j["conjectures"] = jc;

        json jm = json::array();
        for (const auto& e : executions_) {
            if (method_validations_.contains(e.spec->name)) continue;
            auto record = validate(*e.spec, ValidationMethod::ExhaustiveVerification, sig_);
            add(text, "method " + e.spec->name + ": " + validation_summary(record));
            jm.push_back(validation_json(record));
            method_validations_.emplace(e.spec->name, std::move(record));
        }
        j["methods"] = jm;
        finish(a, text, j);
    }

    // ---- 6 -----------------------------------------------------------------
    void knowledge() {
        std::vector<KnowledgeObject> objects;
        std::vector<std::pair<std::string, std::string>> edges;
        const auto facts = verification_facts();

        for (const auto& atom : closure_.atoms) {
            objects.push_back({to_string(atom), KnowledgeKind::Declarative, atom,
                               validate(atom, ValidationMethod::ExhaustiveVerification, facts)});
        }
        for (const auto& [atom, d] : closure_.derivations)
            for (const auto& p : d.premises) edges.emplace_back(to_string(p), to_string(atom));
        for (const auto& vc : conjectures_) {
            if (vc.record.outcome != Outcome::Valid) {
                not_admitted_.push_back(to_string(vc.conjecture.formula) + " (" + std::string(to_string(vc.record.outcome)) + ")");
                continue;
            }
            objects.push_back({to_string(vc.conjecture.formula), KnowledgeKind::Declarative, vc.conjecture.formula, vc.record});
            for (const auto& p : vc.conjecture.antecedents) edges.emplace_back(to_string(p), to_string(vc.conjecture.formula));
        }

        // Every declarative object carries the record of its verification run.
        const auto declarative_count = objects.size();
        for (std::size_t i = 0; i < declarative_count; ++i) {
            const auto& o = objects[i];
            ValidationRecord again = std::visit(
                [&](const auto& content) -> ValidationRecord {
                    using T = std::decay_t<decltype(content)>;
                    if constexpr (std::is_same_v<T, GroundAtom>)
                        return validate(content, ValidationMethod::ExhaustiveVerification, facts);
                    else if constexpr (std::is_same_v<T, QuantifiedFormula>)
                        return validate(content, ValidationMethod::ExhaustiveVerification, sig_, facts);
                    else
                        return o.validation;
                },
                o.content);
            ValidationRecord meta{"verify " + o.id, ValidationMethod::ExhaustiveVerification,
                                  again.outcome == o.validation.outcome ? Outcome::Valid : Outcome::Invalid,
                                  std::nullopt,
                                  {"re-run gives " + std::string(to_string(again.outcome))}};
            if (meta.outcome == Outcome::Invalid) meta.witness = std::vector<Object>{o.id};
            const std::string of = o.id, id = "verify " + o.id;
            auto record = o.validation;
            objects.push_back({id, KnowledgeKind::Procedural, std::move(record), meta});  // invalidates o
            edges.emplace_back(of, id);
            edges.emplace_back(id, of);
        }

        for (const auto& e : executions_) {
            const auto& mv = method_validations_.at(e.spec->name);
            const std::string mid = "method " + e.spec->name;
            const bool admitted = mv.outcome == Outcome::Valid;
            if (admitted && std::none_of(objects.begin(), objects.end(), [&](const KnowledgeObject& o) { return o.id == mid; }))
                objects.push_back({mid, KnowledgeKind::Procedural, *e.spec, mv});
            if (!admitted && std::find(not_admitted_.begin(), not_admitted_.end(), mid) == not_admitted_.end())
                not_admitted_.push_back(mid + " (" + std::string(to_string(mv.outcome)) + ")");

            const std::string tid = "run " + e.spec->name + "(" + join(e.call.inputs, ",") + ")";
            ValidationRecord replayed{tid, ValidationMethod::ExhaustiveVerification, Outcome::Valid, std::nullopt, {}};
            try {
                auto slots = replay(e.result.trace, sig_);
                replayed.checks.push_back("replay reproduces " + std::to_string(e.result.trace.operations.size()) +
                                          " operations");
                if (slots != e.result.slots) {
                    replayed.outcome = Outcome::Invalid;
                    replayed.witness = e.call.inputs;
                }
            } catch (const DomainError& err) {
                replayed.outcome = Outcome::Invalid;
                replayed.witness = e.call.inputs;
                replayed.checks.push_back(err.what());
            }
            if (replayed.outcome != Outcome::Valid) {
                not_admitted_.push_back(tid + " (replay failed)");
                continue;
            }
            objects.push_back({tid, KnowledgeKind::Procedural, e.result.trace, replayed});
            if (admitted) edges.emplace_back(mid, tid);
            if (e.atom) {
                const auto aid = to_string(*e.atom);
                if (admitted) edges.emplace_back(mid, aid);
                edges.emplace_back(tid, aid);
                edges.emplace_back(aid, tid);
            }
        }

        spaces_ = build_knowledge_spaces(std::move(objects), edges);
        knowledge_artifact();
    }

    void knowledge_from_document() {
        spaces_ = build_knowledge_spaces(in_.knowledge_base->objects, in_.knowledge_base->edges);
        knowledge_artifact();
    }

    std::string cross_id(bool t, std::size_t i) const {
        return t ? spaces_.k_t.id(i) : spaces_.k_p.id(i);
    }

    void space_text(std::string& text, json& j, const char* name, const std::vector<KnowledgeObject>& objs,
                    const DerivationDag& dag) {
        add(text, std::string(name) + " (" + std::to_string(objs.size()) + " objects):");
        json jo = json::array();
        for (const auto& o : objs) {
            add(text, "  " + o.id + "  [" + validation_summary(o.validation) + "]");
            jo.push_back({{"id", o.id}, {"content", describe(o.content)}, {"validation", validation_json(o.validation)}});
        }
        json je = json::array();
        std::vector<std::string> es;
        for (auto [x, y] : dag.edges()) {
            es.push_back(dag.id(x) + " ↠ " + dag.id(y));
            je.push_back({dag.id(x), dag.id(y)});
        }
        add(text, std::string("  derivations:") + (es.empty() ? " none" : ""));
        for (const auto& e : es) add(text, "    " + e);
        json jt;
        if (dag.size() <= kTopologyNodeLimit) {
            auto t = upper_set_topology(dag);
            add(text, "  upper-set topology: " + std::to_string(t.size()) + " open sets");
            list_opens(text, t);
            jt = topology_json(t);
        } else {
            add(text, "  upper-set topology: minimal open neighbourhoods");
            jt = json::object();
            for (std::size_t i = 0; i < dag.size(); ++i) {
                std::vector<std::string> up;
                for (std::size_t k = 0; k < dag.size(); ++k)
                    if (dag.derives(i, k)) up.push_back(dag.id(k));
                add(text, "    " + dag.id(i) + ": {" + join(up, ", ") + "}");
                jt[dag.id(i)] = up;
            }
        }
        j[name] = {{"objects", jo}, {"derivations", je}, {"topology", jt}};
    }

    void knowledge_artifact() {
        Artifact a{6, "06_knowledge", {}, {}, {}};
        std::string text;
        json j;
        add(text, "== 6 knowledge spaces ==");
        space_text(text, j, "declarative", spaces_.declarative, spaces_.k_t);
        space_text(text, j, "procedural", spaces_.procedural, spaces_.k_p);

        add(text, "cross derivations:");
        json jx = json::array();
        for (auto [t, p] : spaces_.cross.t_to_p) {
            add(text, "  " + cross_id(true, t) + " ↠ " + cross_id(false, p));
            jx.push_back({cross_id(true, t), cross_id(false, p)});
        }
        for (auto [p, t] : spaces_.cross.p_to_t) {
            add(text, "  " + cross_id(false, p) + " ↠ " + cross_id(true, t));
            jx.push_back({cross_id(false, p), cross_id(true, t)});
        }
        j["cross"] = jx;
        if (!not_admitted_.empty()) {
            add(text, "not admitted:");
            for (const auto& s : not_admitted_) add(text, "  " + s);
        }
        j["not_admitted"] = not_admitted_;

        const auto nt = spaces_.k_t.size(), np = spaces_.k_p.size();
        if (nt * np <= kProductPairLimit && nt <= kTopologyNodeLimit && np <= kTopologyNodeLimit && nt && np) {
            auto product = product_space(upper_set_topology(spaces_.k_t), upper_set_topology(spaces_.k_p));
            add(text, "knowledge space K_T x K_P: " + std::to_string(product.size()) + " open sets on " +
                          std::to_string(nt * np) + " pairs");
            list_opens(text, product);
            j["product"] = topology_json(product);
        } else {
            add(text, "knowledge space K_T x K_P: " + std::to_string(nt) + " x " + std::to_string(np) +
                          " pairs, product topology not enumerated");
            j["product"] = nullptr;
        }
        finish(a, text, j);
    }

    // ---- 7 -----------------------------------------------------------------
    json sections_text(std::string& text, const char* name, const DerivationDag& dag,
                       const std::vector<KnowledgeSection>& sections) {
        add(text, std::string(name) + " sections:");
        json js = json::array();
        for (std::size_t s = 0; s < sections.size(); ++s) {
            std::vector<std::string> ids;
            for (auto v : sections[s].members) ids.push_back(dag.id(v));
            add(text, "  " + std::to_string(s + 1) + ". " + std::string(to_string(sections[s].form)) + ": " + join(ids, " ↠ "));
            js.push_back({{"form", std::string(to_string(sections[s].form))}, {"members", ids}});
        }
        auto u = check_uniqueness(dag);
        if (!u.checked) add(text, "  uniqueness not checked (a component exceeds 7 objects)");
        else if (!u.unique()) add(text, "  not unique: " + std::to_string(u.outcomes) + " longest-chain decompositions exist");
        return {{"sections", js}, {"uniqueness_checked", u.checked}, {"decompositions", u.outcomes}};
    }

    void decompositions() {
        Artifact a{7, "07_decompositions", {}, {}, {}};
        std::string text;
        json j;
        add(text, "== 7 sections and chapters ==");
        const auto& kt = spaces_.k_t;
        const auto& kp = spaces_.k_p;
        auto t_sections = decompose_sections(kt);
        auto p_sections = decompose_sections(kp);
        j["declarative"] = sections_text(text, "declarative", kt, t_sections);
        j["procedural"] = sections_text(text, "procedural", kp, p_sections);

        auto grouped = [](const std::vector<KnowledgeSection>& ss) {
            std::vector<std::vector<std::size_t>> g;
            for (const auto& s : ss) g.push_back(s.members);
            return g;
        };
        a.dot.emplace_back("07_declarative", dag_dot("declarative", kt, transitive_reduction(kt), grouped(t_sections)));
        a.dot.emplace_back("07_procedural", dag_dot("procedural", kp, transitive_reduction(kp), grouped(p_sections)));

        auto report = check_assumption(kt, kp, spaces_.cross);
        json ja{{"holds", report.holds()}};
        std::vector<std::string> ut, up;
        for (auto i : report.unmatched_t) ut.push_back(kt.id(i));
        for (auto i : report.unmatched_p) up.push_back(kp.id(i));
        ja["unmatched_declarative"] = ut;
        ja["unmatched_procedural"] = up;
        j["assumption"] = ja;
        if (!report.holds()) {
            add(text, "assumption violated; no cross derivation for:");
            for (const auto& s : ut) add(text, "  " + s);
            for (const auto& s : up) add(text, "  " + s);
            finish(a, text, j);
            throw CapabilityError("chapters need every object to cross-derive (" + std::to_string(ut.size() + up.size()) +
                                  " objects do not)");
        }
        add(text, "assumption: holds");

        auto d = decompose_chapters(kt, kp, spaces_.cross);
        add(text, "chapters:");
        json jc = json::array();
        for (std::size_t i = 0; i < d.chapters.size(); ++i) {
            const auto& ch = d.chapters[i];
            std::vector<std::string> t, p;
            for (auto v : ch.k_t) t.push_back(kt.id(v));
            for (auto v : ch.k_p) p.push_back(kp.id(v));
            add(text, "  " + std::to_string(i + 1) + ". [" + join(t, " ↠ ") + "] ⊗ [" + join(p, " ↠ ") + "]");
            jc.push_back({{"declarative_section", ch.t_section + 1},
                          {"procedural_section", ch.p_section + 1},
                          {"declarative", t},
                          {"procedural", p}});
        }
        j["chapters"] = jc;
        add(text, "section pairs without a chapter: " + std::to_string(d.empty_pairs.size()));
        json je = json::array();
        for (auto [x, y] : d.empty_pairs) je.push_back({x + 1, y + 1});
        j["empty_pairs"] = je;
        std::vector<std::string> uncovered;
        for (auto v : d.uncovered_t) uncovered.push_back(kt.id(v));
        for (auto v : d.uncovered_p) uncovered.push_back(kp.id(v));
        add(text, "uncovered: " + (uncovered.empty() ? std::string("none") : join(uncovered, ", ")));
        j["uncovered"] = uncovered;
        finish(a, text, j);
    }
};

}  // namespace

void run_pipeline(const Inputs& in, const PipelineConfig& c, const std::function<void(const Artifact&)>& emit) {
    Run(in, c, emit).go();
}

void write_artifact(const Artifact& a, const std::filesystem::path& dir, const std::set<Format>& formats) {
    std::filesystem::create_directories(dir);
    auto write = [&](const std::filesystem::path& p, const std::string& body) {
        std::ofstream out(p, std::ios::binary);
        out << body;
        if (!out) throw MalformedInput("cannot write " + p.string());
    };
    if (formats.contains(Format::Text)) write(dir / (a.name + ".txt"), a.text);
    if (formats.contains(Format::Structured)) write(dir / (a.name + ".json"), a.structured);
    if (formats.contains(Format::Dot))
        for (const auto& [stem, body] : a.dot) write(dir / (stem + ".dot"), body);
}

}  // namespace dik
