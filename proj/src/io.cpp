#include "dik/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "dik/error.hpp"
#include "dik/json_locator.hpp"

namespace dik {

using nlohmann::json;

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MalformedInput("cannot read " + path.string());
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

namespace {

class Doc;

// A value inside a parsed document, with enough context to report the line
// it sits on.
class Node {
public:
    Node(const Doc* doc, const json* j, std::string ptr) : doc_(doc), j_(j), ptr_(std::move(ptr)) {}

    [[noreturn]] void fail(const std::string& what) const;

    const json& raw() const { return *j_; }
    bool is_string() const { return j_->is_string(); }
    bool is_object() const { return j_->is_object(); }
    bool is_array() const { return j_->is_array(); }

    bool has(const std::string& key) const { return j_->is_object() && j_->contains(key); }

    Node at(const std::string& key) const {
        if (!j_->is_object()) fail("expected an object");
        if (!j_->contains(key)) fail("missing member '" + key + "'");
        return child(key);
    }

    std::optional<Node> get(const std::string& key) const {
        if (!j_->is_object()) fail("expected an object");
        if (!j_->contains(key)) return std::nullopt;
        return child(key);
    }

    std::vector<Node> items() const {
        if (!j_->is_array()) fail("expected an array");
        std::vector<Node> out;
        for (std::size_t i = 0; i < j_->size(); ++i) out.emplace_back(doc_, &(*j_)[i], ptr_ + "/" + std::to_string(i));
        return out;
    }

    std::vector<std::pair<std::string, Node>> members() const {
        if (!j_->is_object()) fail("expected an object");
        std::vector<std::pair<std::string, Node>> out;
        for (auto it = j_->begin(); it != j_->end(); ++it)
            out.emplace_back(it.key(), Node(doc_, &it.value(), ptr_ + "/" + pointer_escape(it.key())));
        return out;
    }

    // Strings verbatim; numbers in their canonical text form.
    std::string str() const {
        if (j_->is_string()) return j_->get<std::string>();
        if (j_->is_number()) return format_number(j_->get<double>());
        fail("expected a string");
    }

    std::vector<std::string> strs() const {
        std::vector<std::string> out;
        for (const auto& n : items()) out.push_back(n.str());
        return out;
    }

    double num() const {
        if (!j_->is_number()) fail("expected a number");
        return j_->get<double>();
    }

    std::size_t count() const {
        if (!j_->is_number_integer() || j_->get<long long>() < 0) fail("expected a nonnegative integer");
        return static_cast<std::size_t>(j_->get<long long>());
    }

    bool boolean() const {
        if (!j_->is_boolean()) fail("expected true or false");
        return j_->get<bool>();
    }

private:
    Node child(const std::string& key) const { return Node(doc_, &(*j_)[key], ptr_ + "/" + pointer_escape(key)); }

    const Doc* doc_;
    const json* j_;
    std::string ptr_;
};

class Doc {
public:
    Doc(const std::string& text, std::string source) : source_(std::move(source)), locator_(text) {
        try {
            root_ = json::parse(text);
        } catch (const json::parse_error& e) {
            std::string what = e.what();
            if (auto p = what.find("parse error"); p != std::string::npos) what = what.substr(p);
            throw ParseError(source_, JsonLocator::line_of_offset(text, e.byte ? e.byte - 1 : 0), "invalid JSON: " + what);
        }
    }

    Node root() const { return Node(this, &root_, ""); }

    [[noreturn]] void fail(const std::string& ptr, const std::string& what) const {
        throw ParseError(source_, locator_.line(ptr), what);
    }

private:
    std::string source_;
    JsonLocator locator_;
    json root_;
};

void Node::fail(const std::string& what) const { doc_->fail(ptr_, what); }

// Runs f, moving any malformed-input complaint onto the node's line.
template <typename F>
auto located(const Node& n, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const ParseError&) {
        throw;
    } catch (const MalformedInput& e) {
        n.fail(e.what());
    }
}

SubsetMask subset(const Node& n, const GroundSet& g) {
    auto names = n.strs();
    return located(n, [&] { return g.mask_of(names); });
}

std::size_t element(const Node& n, const GroundSet& g) {
    auto name = n.str();
    return located(n, [&] { return g.index_of(name); });
}

TopologySpec parse_topology(const Node& n, const GroundSet& g) {
    TopologySpec t;
    if (n.is_string()) {
        auto kind = n.str();
        if (kind == "discrete") t.kind = TopologySpec::Kind::Discrete;
        else if (kind == "indiscrete") t.kind = TopologySpec::Kind::Indiscrete;
        else n.fail("unknown topology '" + kind + "'; expected discrete, indiscrete or an object");
        return t;
    }
    int given = n.has("opens") + n.has("subbasis") + n.has("leq");
    if (given != 1) n.fail("topology needs exactly one of 'opens', 'subbasis', 'leq'");
    if (auto o = n.get("opens")) {
        t.kind = TopologySpec::Kind::Opens;
        for (const auto& s : o->items()) t.sets.push_back(subset(s, g));
    } else if (auto s = n.get("subbasis")) {
        t.kind = TopologySpec::Kind::Subbasis;
        for (const auto& x : s->items()) t.sets.push_back(subset(x, g));
    } else {
        t.kind = TopologySpec::Kind::Preorder;
        for (const auto& p : n.at("leq").items()) {
            auto pair = p.items();
            if (pair.size() != 2) p.fail("leq pairs are [lower, upper]");
            t.pairs.emplace_back(element(pair[0], g), element(pair[1], g));
        }
    }
    return t;
}

MetricTable<double> parse_metric(const Node& n, const GroundSet& g) {
    const auto size = static_cast<Eigen::Index>(g.size());
    auto rows_of = [&](const Node& m) {
        auto rows = m.items();
        if (rows.size() != g.size()) m.fail("expected one row per element (" + std::to_string(g.size()) + ")");
        return rows;
    };
    if (auto c = n.get("coords")) {
        auto rows = rows_of(*c);
        const auto dim = rows.empty() ? 0 : rows.front().items().size();
        Eigen::MatrixXd coords(size, static_cast<Eigen::Index>(dim));
        for (std::size_t i = 0; i < rows.size(); ++i) {
            auto cells = rows[i].items();
            if (cells.size() != dim) rows[i].fail("coordinate rows must all have " + std::to_string(dim) + " entries");
            for (std::size_t k = 0; k < dim; ++k)
                coords(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = cells[k].num();
        }
        return MetricTable<double>::from_coordinates(g, coords);
    }
    if (auto d = n.get("dist")) {
        auto rows = rows_of(*d);
        Eigen::MatrixXd dist(size, size);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            auto cells = rows[i].items();
            if (cells.size() != g.size()) rows[i].fail("distance rows must have " + std::to_string(g.size()) + " entries");
            for (std::size_t k = 0; k < cells.size(); ++k)
                dist(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = cells[k].num();
        }
        return MetricTable<double>(g, dist);
    }
    n.fail("metric needs 'coords' or 'dist'");
}

OpenTuple open_tuple(const Node& n, const GroundSet& g, std::size_t arity) {
    auto parts = n.items();
    if (parts.size() != arity) n.fail("expected " + std::to_string(arity) + " arguments");
    OpenTuple t;
    for (const auto& p : parts) t.push_back(subset(p, g));
    return t;
}

}  // namespace

FiniteTopology build_topology(const TopologySpec& spec, const GroundSet& ground) {
    switch (spec.kind) {
        case TopologySpec::Kind::Opens: return FiniteTopology::from_opens(ground, spec.sets);
        case TopologySpec::Kind::Subbasis: return generate_topology(ground, spec.sets);
        case TopologySpec::Kind::Preorder: return alexandrov_topology(Preorder::closure_of(ground, spec.pairs));
        case TopologySpec::Kind::Discrete: return discrete_topology(ground);
        case TopologySpec::Kind::Indiscrete: return indiscrete_topology(ground);
    }
    throw MalformedInput("unknown topology kind");
}

FiniteTopology build_topology(const Dataset& d) { return build_topology(d.topology, d.ground); }

FiniteTopology parse_topology_document(const std::string& text, const std::string& source) {
    Doc doc(text, source);
    auto root = doc.root();
    auto elements = root.at("elements");
    auto names = elements.strs();
    auto ground = located(elements, [&] { return GroundSet(names); });
    return build_topology(parse_topology(root, ground), ground);
}

FiniteTopology load_topology_document(const std::filesystem::path& path) {
    return parse_topology_document(read_text(path), path.string());
}

std::string topology_document(const FiniteTopology& t) {
    json opens = json::array();
    for (const auto& o : t.opens()) opens.push_back(t.ground().names_of(o));
    return json{{"elements", t.ground().elements()}, {"opens", opens}}.dump(2) + "\n";
}

std::string preorder_document(const Preorder& p) {
    json leq = json::array();
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < p.size(); ++j)
            if (i != j && p.leq(i, j)) leq.push_back({p.ground().element(i), p.ground().element(j)});
    return json{{"elements", p.ground().elements()}, {"leq", leq}}.dump(2) + "\n";
}

Dataset parse_dataset(const std::string& text, const std::string& source) {
    Doc doc(text, source);
    auto root = doc.root();
    Dataset d;
    d.source = source;
    auto elements = root.at("elements");
    auto names = elements.strs();
    d.ground = located(elements, [&] { return GroundSet(names); });
    d.topology = parse_topology(root.at("topology"), d.ground);
    if (auto m = root.get("metric")) {
        d.metric = parse_metric(*m, d.ground);
        if (auto e = m->get("epsilon")) d.epsilon = e->num();
    }

    for (auto f : {DataFunction::intersection(), DataFunction::union_of()}) d.functions.emplace(f.name, f);
    for (auto r : {DataRelation::subset(), DataRelation::equal()}) d.relations.emplace(r.name, r);

    if (auto fs = root.get("data_functions")) {
        for (const auto& f : fs->items()) {
            DataFunction df{f.at("name").str(), f.at("arity").count(), DataFunction::Kind::Table, {}};
            for (const auto& row : f.at("table").items())
                df.table[open_tuple(row.at("args"), d.ground, df.arity)] = subset(row.at("value"), d.ground);
            if (!d.functions.emplace(df.name, df).second) f.fail("data function '" + df.name + "' defined twice");
        }
    }
    if (auto rs = root.get("data_relations")) {
        for (const auto& r : rs->items()) {
            DataRelation dr{r.at("name").str(), r.at("arity").count(), DataRelation::Kind::Table, {}};
            if (auto table = r.get("table"))
                for (const auto& row : table->items())
                    dr.table[open_tuple(row.at("args"), d.ground, dr.arity)] = row.at("value").boolean();
            if (auto holds = r.get("holds"))
                for (const auto& args : holds->items()) dr.table[open_tuple(args, d.ground, dr.arity)] = true;
            if (!d.relations.emplace(dr.name, dr).second) r.fail("data relation '" + dr.name + "' defined twice");
        }
    }

    if (auto ds = root.get("dstar")) {
        for (const auto& [label, members] : ds->at("opens").members()) d.dstar.opens[label] = subset(members, d.ground);
        if (auto fs = ds->get("functions")) {
            for (const auto& f : fs->items()) {
                auto it = d.functions.find(f.str());
                if (it == d.functions.end()) f.fail("unknown data function '" + f.str() + "'");
                d.dstar.functions.insert(*it);
            }
        }
        const bool listed = ds->has("relations");
        if (listed) {
            for (const auto& r : ds->at("relations").items()) {
                auto it = d.relations.find(r.str());
                if (it == d.relations.end()) r.fail("unknown data relation '" + r.str() + "'");
                d.dstar.relations.insert(*it);
            }
        }
        if (auto is = ds->get("instances")) {
            for (const auto& inst : is->items()) {
                RelationInstance ri{inst.at("relation").str(), inst.at("args").strs()};
                auto it = d.relations.find(ri.relation);
                if (it == d.relations.end()) inst.fail("unknown data relation '" + ri.relation + "'");
                if (ri.args.size() != it->second.arity)
                    inst.fail("'" + ri.relation + "' takes " + std::to_string(it->second.arity) + " arguments");
                if (!listed) d.dstar.relations.insert(*it);
                d.dstar.instances.push_back(std::move(ri));
            }
        }
    }
    return d;
}

namespace {

GoalExpr parse_goal_expr(const Node& n) {
    if (n.is_string()) return {GoalExpr::Kind::Slot, n.str(), {}};
    if (auto l = n.get("literal")) return {GoalExpr::Kind::Literal, l->str(), {}};
    GoalExpr e{GoalExpr::Kind::Apply, n.at("apply").str(), {}};
    if (auto args = n.get("args"))
        for (const auto& a : args->items()) e.args.push_back(parse_goal_expr(a));
    return e;
}

MethodSpec parse_method(const Node& n) {
    MethodSpec m;
    m.name = n.at("name").str();
    auto given = n.at("given");
    m.given.slots = given.at("slots").strs();
    if (auto d = given.get("description")) m.given.description = d->str();
    if (auto d = given.get("domain")) m.given.domain_class = d->str();
    if (auto k = given.get("subset_size")) m.given.subset_size = k->count();
    auto goal = n.at("goal");
    m.goal.output = goal.at("output").str();
    if (auto d = goal.get("description")) m.goal.description = d->str();
    if (auto e = goal.get("equals")) m.goal.equals = parse_goal_expr(*e);
    if (auto r = goal.get("relation")) m.goal.relation = r->str();
    if (auto s = goal.get("statement")) m.goal.statement = s->str();
    for (const auto& i : n.at("instructions").items()) {
        Instruction ins{i.at("function").str(), {}, i.at("result").str()};
        for (const auto& a : i.at("args").items()) {
            if (a.is_string()) ins.args.push_back(InstructionArg::slot(a.str()));
            else ins.args.push_back(InstructionArg::literal(a.at("literal").str()));
        }
        m.instructions.push_back(std::move(ins));
    }
    return m;
}

}  // namespace

const MethodSpec* find_method(const DomainDocument& d, const std::string& name) {
    for (const auto& m : d.methods)
        if (m.name == name) return &m;
    return nullptr;
}

DomainDocument parse_domain(const std::string& text, const std::string& source) {
    Doc doc(text, source);
    auto root = doc.root();
    DomainDocument out;
    auto& sig = out.signature;
    sig.name = root.at("name").str();

    if (auto cs = root.get("classes")) {
        for (const auto& [name, c] : cs->members()) {
            ClassInfo info;
            if (c.is_array()) {
                info.members = c.strs();
            } else {
                info.members = c.at("members").strs();
                if (auto e = c.get("enumerable")) info.enumerable = e->boolean();
            }
            sig.classes[name] = std::move(info);
        }
    }
    if (auto fs = root.get("functions")) {
        for (const auto& [name, f] : fs->members()) {
            FunctionSymbol sym;
            sym.name = name;
            if (auto b = f.get("builtin")) {
                auto which = builtin_from_name(b->str());
                if (!which) b->fail("unknown builtin '" + b->str() + "'");
                sym.builtin = which;
                sym.arity = builtin_arity(*which);
            } else {
                sym.arity = f.at("arity").count();
                for (const auto& row : f.at("graph").items()) {
                    auto args = row.at("args").strs();
                    if (args.size() != sym.arity) row.fail("graph row needs " + std::to_string(sym.arity) + " arguments");
                    sym.graph[args] = row.at("value").str();
                }
            }
            if (auto d = f.get("domain")) sym.domain_class = d->str();
            sig.functions[name] = std::move(sym);
        }
    }
    if (auto rs = root.get("relations")) {
        for (const auto& [name, r] : rs->members()) {
            RelationSymbol sym;
            sym.name = name;
            sym.arity = r.at("arity").count();
            if (auto p = r.get("primitive")) sym.primitive = p->boolean();
            if (auto d = r.get("depends_on")) sym.depends_on = d->strs();
            if (auto cw = r.get("closed_world")) {
                for (const auto& t : cw->items()) {
                    auto classes = t.strs();
                    if (classes.size() != sym.arity) t.fail("closed-world class tuple must match the arity");
                    sym.closed_world.push_back(std::move(classes));
                }
            }
            sig.relations[name] = std::move(sym);
        }
    }
    if (auto os = root.get("objects"))
        for (const auto& o : os->items()) sig.objects.push_back({o.str(), true, {}, {}});
    if (auto ds = root.get("derived"))
        for (const auto& [name, d] : ds->members())
            sig.objects.push_back({name, false, d.at("function").str(), d.at("args").strs()});
    if (auto ms = root.get("methods")) {
        for (const auto& m : ms->items()) {
            auto spec = parse_method(m);
            if (find_method(out, spec.name)) m.fail("method '" + spec.name + "' defined twice");
            out.methods.push_back(std::move(spec));
        }
    }
    if (auto fs = root.get("facts")) {
        for (const auto& f : fs->items()) {
            auto t = f.str();
            out.facts.insert(located(f, [&] { return parse_ground_atom(t); }));
        }
    }
    sig = resolve_signature(std::move(sig));
    for (const auto& m : out.methods) check_method(m, sig);
    return out;
}

InterpretationDocument parse_interpretation(const std::string& text, const std::string& source, const Dataset& data) {
    Doc doc(text, source);
    auto root = doc.root();
    InterpretationDocument out;
    for (const auto& [label, o] : root.at("objects").members()) {
        ObjectImage image;
        if (o.is_string()) {
            image.members = {o.str()};
        } else {
            if (auto l = o.get("label")) image.label = l->str();
            if (auto ms = o.get("members")) {
                image.members = ms->strs();
            } else {
                auto it = data.dstar.opens.find(label);
                if (it == data.dstar.opens.end()) o.fail("'" + label + "' is not an open set of D*; give 'members'");
                image.members = data.ground.names_of(it->second);
            }
        }
        out.map.objects[label] = std::move(image);
    }
    if (auto fs = root.get("functions"))
        for (const auto& [name, target] : fs->members()) out.map.functions[name] = target.str();
    if (auto rs = root.get("relations"))
        for (const auto& [name, target] : rs->members()) out.map.relations[name] = target.str();
    if (auto ms = root.get("methods"))
        for (const auto& m : ms->items()) out.methods.push_back({m.at("method").str(), m.at("inputs").strs()});
    return out;
}

KnowledgeBaseDocument parse_knowledge_base(const std::string& text, const std::string& source) {
    Doc doc(text, source);
    auto root = doc.root();
    KnowledgeBaseDocument out;
    for (const auto& o : root.at("objects").items()) {
        KnowledgeObject k;
        k.id = o.at("id").str();
        auto kind = o.at("kind").str();
        if (kind == "declarative") k.kind = KnowledgeKind::Declarative;
        else if (kind == "procedural") k.kind = KnowledgeKind::Procedural;
        else o.at("kind").fail("kind must be declarative or procedural");
        k.content = o.has("content") ? o.at("content").str() : k.id;
        k.validation.target = k.id;
        auto v = o.at("validation");
        auto method = v.at("method").str();
        if (method == "by-assumption") k.validation.method = ValidationMethod::Assumption;
        else if (method == "by-exhaustive-verification") k.validation.method = ValidationMethod::ExhaustiveVerification;
        else if (method == "by-belief") k.validation.method = ValidationMethod::Belief;
        else v.at("method").fail("unknown validation method '" + method + "'");
        auto outcome = v.at("outcome").str();
        if (outcome == "valid") k.validation.outcome = Outcome::Valid;
        else if (outcome == "invalid") k.validation.outcome = Outcome::Invalid;
        else if (outcome == "undetermined") k.validation.outcome = Outcome::Undetermined;
        else v.at("outcome").fail("unknown outcome '" + outcome + "'");
        if (auto w = v.get("witness")) k.validation.witness = w->strs();
        if (k.validation.outcome == Outcome::Invalid && !k.validation.witness)
            v.fail("an invalid outcome needs a witness");
        out.objects.push_back(std::move(k));
    }
    for (const auto* key : {"edges", "cross"}) {
        if (auto es = root.get(key)) {
            for (const auto& e : es->items()) {
                auto pair = e.strs();
                if (pair.size() != 2) e.fail("edges are [from, to]");
                out.edges.emplace_back(pair[0], pair[1]);
            }
        }
    }
    return out;
}

Dataset load_dataset(const std::filesystem::path& path) { return parse_dataset(read_text(path), path.string()); }

DomainDocument load_domain(const std::filesystem::path& path) { return parse_domain(read_text(path), path.string()); }

InterpretationDocument load_interpretation(const std::filesystem::path& path, const Dataset& data) {
    return parse_interpretation(read_text(path), path.string(), data);
}

RuleSet load_rules(const std::filesystem::path& path) { return parse_rules(read_text(path), path.string()); }

KnowledgeBaseDocument load_knowledge_base(const std::filesystem::path& path) {
    return parse_knowledge_base(read_text(path), path.string());
}

std::string complex_text(const SimplicialComplex& c, const GroundSet& ground) {
    std::string out;
    for (int dim = 0; dim <= c.dimension(); ++dim) {
        for (const auto& s : c.simplices(dim)) {
            for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + ground.element(s[i]);
            out += '\n';
        }
    }
    return out;
}

namespace {

std::string dot_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string dag_dot(const std::string& name, const DerivationDag& dag, const std::vector<Edge>& edges,
                    const std::vector<std::vector<std::size_t>>& groups) {
    std::string out = "digraph " + dot_quote(name) + " {\n  rankdir=LR;\n";
    std::vector<bool> grouped(dag.size(), false);
    for (std::size_t g = 0; g < groups.size(); ++g) {
        out += "  subgraph cluster_" + std::to_string(g) + " {\n    label=" + dot_quote("section " + std::to_string(g + 1)) +
               ";\n";
        for (auto v : groups[g]) {
            out += "    n" + std::to_string(v) + " [label=" + dot_quote(dag.id(v)) + "];\n";
            grouped[v] = true;
        }
        out += "  }\n";
    }
    for (std::size_t v = 0; v < dag.size(); ++v)
        if (!grouped[v]) out += "  n" + std::to_string(v) + " [label=" + dot_quote(dag.id(v)) + "];\n";
    for (auto [a, b] : edges) out += "  n" + std::to_string(a) + " -> n" + std::to_string(b) + ";\n";
    return out + "}\n";
}

}  // namespace dik
