#pragma once

// Declarative problem files: parsing with line/column diagnostics, semantic
// validation with field paths, and the task runner behind the command line.

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <future>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hopfmorita/covariance.hpp"
#include "hopfmorita/oracle.hpp"
#include "hopfmorita/picard.hpp"

namespace hopfmorita::cli {

inline constexpr int kReportVersion = 1;
inline constexpr int kFormatVersion = 1;

inline const std::vector<std::string>& task_names() {
    static const std::vector<std::string> names{"check-action", "hopf-axioms",     "convolution", "u-membership",
                                                "ce-cohomology", "classify-lifts", "lift-equivalence", "morita-check",
                                                "picard",        "covariance",     "forget-diagram"};
    return names;
}

enum ExitCode { kPass = 0, kVerdictFailure = 1, kInputError = 2, kInconsistency = 3 };

struct Flags {
    std::optional<int> truncation;
    std::optional<int> window;
    bool parallel = false;
    bool oracle = false;
};

/// Parses JSON text; syntax errors carry line and column.
inline Json parse_json(const std::string& text, const std::string& source = "input") {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        std::size_t line = 1, column = 1;
        const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        for (std::size_t k = 0; k < end; ++k) {
            if (text[k] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        std::string what = e.what();
        const auto colon = what.find("syntax error");
        throw ParseError(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " +
                         (colon == std::string::npos ? what : what.substr(colon)));
    }
}

/// A JSON value together with its field path.
class Node {
public:
    Node(const Json& j, std::string path) : j_(&j), path_(std::move(path)) {}

    const Json& json() const { return *j_; }
    const std::string& path() const { return path_; }

    [[noreturn]] void fail(const std::string& what) const { throw ValidationError(path_, what); }

    bool has(const std::string& key) const { return j_->is_object() && j_->contains(key); }

    Node at(const std::string& key) const {
        if (!j_->is_object()) fail("expected an object");
        if (!j_->contains(key)) Node(*j_, child(key)).fail("required field is missing");
        return Node((*j_)[key], child(key));
    }

    std::optional<Node> opt(const std::string& key) const {
        if (!has(key)) return std::nullopt;
        return Node((*j_)[key], child(key));
    }

    Node operator[](std::size_t k) const { return Node((*j_)[k], path_ + "[" + std::to_string(k) + "]"); }

    std::size_t size() const {
        if (!j_->is_array()) fail("expected an array");
        return j_->size();
    }

    std::vector<std::pair<std::string, Node>> items() const {
        if (!j_->is_object()) fail("expected an object");
        std::vector<std::pair<std::string, Node>> out;
        for (auto it = j_->begin(); it != j_->end(); ++it) out.emplace_back(it.key(), Node(it.value(), child(it.key())));
        return out;
    }

    long integer(long lo, long hi) const {
        if (!j_->is_number_integer()) fail("expected an integer");
        const long v = j_->get<long>();
        if (v < lo || v > hi) fail("value " + std::to_string(v) + " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
        return v;
    }

    std::string string() const {
        if (!j_->is_string()) fail("expected a string");
        return j_->get<std::string>();
    }

    bool boolean() const {
        if (!j_->is_boolean()) fail("expected true or false");
        return j_->get<bool>();
    }

    Scalar scalar() const {
        if (j_->is_number_integer()) return Scalar(j_->get<long>());
        if (!j_->is_string()) fail("expected a scalar string such as \"1/2 - 3*i\"");
        try {
            return Scalar::parse(j_->get<std::string>());
        } catch (const ParseError& e) {
            fail(e.what());
        }
    }

private:
    std::string child(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

    const Json* j_;
    std::string path_;
};

inline ModelSpec parse_model(const Node& n) {
    const std::string kind = n.at("model").string();
    if (kind == "FiniteFunctions") {
        const Node p = n.at("points");
        if (p.json().is_number_integer()) return finite_functions(static_cast<int>(p.integer(1, 64)));
        std::vector<std::string> names;
        for (std::size_t k = 0; k < p.size(); ++k) names.push_back(p[k].string());
        if (names.empty()) p.fail("needs at least one point");
        return finite_functions(names);
    }
    if (kind == "TruncatedPoly") return truncated_poly(static_cast<int>(n.at("order").integer(1, 64)));
    if (kind == "Matrix") return matrix_model(static_cast<int>(n.at("n").integer(1, 8)));
    if (kind == "Laurent") return laurent_model();
    if (kind == "Product") {
        const Node f = n.at("factors");
        std::vector<ModelSpec> factors;
        for (std::size_t k = 0; k < f.size(); ++k) factors.push_back(parse_model(f[k]));
        if (factors.empty()) f.fail("needs at least one factor");
        return product_model(factors);
    }
    if (kind == "MatrixOver") return matrix_over(static_cast<int>(n.at("n").integer(1, 8)), parse_model(n.at("base")));
    n.at("model").fail("unknown model '" + kind + "'");
}

/// {"label": scalar, ...}.
inline Element parse_element(const Node& n, const AlgebraPtr& A) {
    BasisVec v;
    for (const auto& [label, c] : n.items()) {
        auto k = A->find_label(label);
        if (!k) c.fail("unknown basis label '" + label + "' of " + A->name());
        v.add(*k, c.scalar());
    }
    return Element(A, v);
}

inline int parse_generator(const Node& n, int dim) {
    if (n.json().is_number_integer()) return static_cast<int>(n.integer(1, dim)) - 1;
    const std::string s = n.string();
    for (int i = 0; i < dim; ++i)
        if (s == "xi" + std::to_string(i + 1)) return i;
    n.fail("unknown generator '" + s + "'");
}

struct WindingDecl {
    std::string name;
    std::string path;
    ExpSum value;
};

enum class TwistKind { Cocycle, Values, Hat, Unit };

struct TwistDecl {
    std::string name;
    std::string path;
    TwistKind kind = TwistKind::Unit;
    std::vector<Element> cocycle;
    std::map<Monomial, Element> values;
    std::string winding;
};

enum class BimoduleKind { Canonical, Column, Graded };

struct BimoduleDecl {
    std::string name;
    BimoduleKind kind = BimoduleKind::Canonical;
    Bimodule module;
    InnerProductPair products;
};

struct LiftDecl {
    std::string name;
    std::string bimodule;
    std::optional<std::string> twist;
};

struct TaskDecl {
    std::string name;
    std::string path;
    Json params;
};

struct Problem {
    std::string name;
    int truncation = 4;
    int window = 3;
    AlgebraPtr algebra;
    std::optional<UEAAction> action;
    std::vector<WindingDecl> windings;
    std::vector<TwistDecl> twists;
    std::vector<BimoduleDecl> bimodules;
    std::vector<LiftDecl> lifts;
    std::vector<TaskDecl> tasks;

    const TwistDecl* twist(const std::string& n) const {
        for (const auto& t : twists)
            if (t.name == n) return &t;
        return nullptr;
    }
    const BimoduleDecl* bimodule(const std::string& n) const {
        for (const auto& b : bimodules)
            if (b.name == n) return &b;
        return nullptr;
    }
    const LiftDecl* lift(const std::string& n) const {
        for (const auto& l : lifts)
            if (l.name == n) return &l;
        return nullptr;
    }
};

namespace detail {

inline LieBrackets parse_brackets(const Node& n) {
    const int dim = static_cast<int>(n.at("dim").integer(1, 8));
    LieBrackets br(dim);
    if (auto list = n.opt("brackets")) {
        std::vector<std::vector<bool>> seen(static_cast<std::size_t>(dim), std::vector<bool>(static_cast<std::size_t>(dim)));
        for (std::size_t k = 0; k < list->size(); ++k) {
            const Node e = (*list)[k];
            if (!e.json().is_array() || e.json().size() != 3)
                e.fail("bracket entry needs three items [i, j, {\"xi_k\": coefficient}]");
            const int i = parse_generator(e[0], dim), j = parse_generator(e[1], dim);
            if (i == j) e.fail("bracket of a generator with itself is zero and cannot be declared");
            if (seen[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) e.fail("bracket declared twice");
            seen[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = true;
            seen[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = true;
            std::vector<Scalar> coeffs(static_cast<std::size_t>(dim));
            for (const auto& [g, c] : e[2].items()) coeffs[static_cast<std::size_t>(parse_generator(Node(Json(g), c.path()), dim))] = c.scalar();
            br.set(i, j, coeffs);
        }
    }
    return br;
}

inline LieAction parse_action(const Node& n, const AlgebraPtr& A, const LieBrackets& br) {
    if (n.json().is_string()) {
        if (n.string() != "trivial") n.fail("expected \"trivial\" or an object with derivations");
        return LieAction::trivial(A, br);
    }
    const Node ds = n.at("derivations");
    if (ds.size() != static_cast<std::size_t>(br.dim()))
        ds.fail("needs one derivation per generator (" + std::to_string(br.dim()) + ")");
    std::vector<Derivation> out;
    for (std::size_t k = 0; k < ds.size(); ++k) {
        const Node d = ds[k];
        if (d.json().is_string() && d.string() == "zero") {
            out.push_back(Derivation::zero(A));
        } else if (d.has("generator_image")) {
            if (A->kind() != ModelKind::Laurent && A->kind() != ModelKind::TruncatedPoly)
                d.at("generator_image").fail("generator images need a TruncatedPoly or Laurent algebra");
            out.push_back(Derivation::from_generator_image(A, parse_element(d.at("generator_image"), A)));
        } else if (d.has("table")) {
            if (!A->finite()) d.at("table").fail("tables need a finite algebra");
            std::vector<BasisVec> images(A->dim());
            for (const auto& [label, img] : d.at("table").items()) {
                auto b = A->find_label(label);
                if (!b) img.fail("unknown basis label '" + label + "'");
                images[static_cast<std::size_t>(*b)] = parse_element(img, A).coeffs();
            }
            out.push_back(Derivation::from_table(A, images));
        } else {
            d.fail("derivation needs \"zero\", generator_image or table");
        }
    }
    return LieAction(A, br, out);
}

inline std::optional<Monomial> find_monomial(const UEA& h, const std::string& label) {
    for (const auto& m : h.basis())
        if (h.label(m) == label) return m;
    return std::nullopt;
}

inline void require_names_unique(const Node& list, const std::string& what) {
    std::vector<std::string> seen;
    for (std::size_t k = 0; k < list.size(); ++k) {
        const std::string n = list[k].at("name").string();
        if (std::find(seen.begin(), seen.end(), n) != seen.end()) list[k].at("name").fail("duplicate " + what + " name '" + n + "'");
        seen.push_back(n);
    }
}

}  // namespace detail

/// Builds and validates a problem from parsed JSON. Flags override the
/// truncation order and mode window.
inline Problem load_problem(const Json& j, const Flags& flags = {}) {
    const Node root(j, "");
    if (!j.is_object()) root.fail("problem file must be a JSON object");
    const long version = root.at("format_version").integer(0, 1000);
    if (version != kFormatVersion) root.at("format_version").fail("unsupported format version " + std::to_string(version));
    Problem p;
    p.name = root.has("name") ? root.at("name").string() : "problem";
    p.truncation = flags.truncation ? *flags.truncation
                                    : (root.has("truncation") ? static_cast<int>(root.at("truncation").integer(0, 12)) : 4);
    p.window = flags.window ? *flags.window : (root.has("window") ? static_cast<int>(root.at("window").integer(0, 12)) : 3);
    if (p.truncation < 0 || p.truncation > 12) throw ValidationError("--truncation", "must lie in [0, 12]");
    if (p.window < 0 || p.window > 12) throw ValidationError("--window", "must lie in [0, 12]");

    try {
        p.algebra = build_model(parse_model(root.at("algebra")));
    } catch (const ConstructionError& e) {
        root.at("algebra").fail(e.what());
    }

    if (auto lie = root.opt("lie_algebra")) {
        LieBrackets br = detail::parse_brackets(*lie);
        Report axioms = br.axiom_report();
        if (!axioms.passed()) lie->fail("brackets violate the Lie axioms: " + failed_checks(axioms));
        const Node act = root.at("action");
        try {
            p.action = UEAAction::extend(detail::parse_action(act, p.algebra, br), p.truncation);
        } catch (const ConstructionError& e) {
            act.fail(e.what());
        }
    } else if (root.has("action")) {
        root.at("action").fail("an action needs a lie_algebra");
    }

    if (auto ws = root.opt("windings")) {
        if (!p.action) ws->fail("windings need a lie_algebra and an action");
        detail::require_names_unique(*ws, "winding");
        for (std::size_t k = 0; k < ws->size(); ++k) {
            const Node w = (*ws)[k];
            WindingDecl d{w.at("name").string(), w.path(), {}};
            if (w.has("element")) {
                d.value = ExpSum(parse_element(w.at("element"), p.algebra));
            } else if (w.has("exp")) {
                Rational phase = 0;
                if (auto ph = w.opt("phase")) {
                    Scalar s = ph->scalar();
                    if (s.im() != 0) ph->fail("phase must be rational");
                    phase = s.re();
                }
                try {
                    d.value = ExpSum::exp(parse_element(w.at("exp"), p.algebra), phase);
                } catch (const DomainError& e) {
                    w.at("exp").fail(e.what());
                }
            } else {
                w.fail("winding needs element or exp");
            }
            p.windings.push_back(std::move(d));
        }
    }

    if (auto ts = root.opt("twists")) {
        if (!p.action) ts->fail("twists need a lie_algebra and an action");
        detail::require_names_unique(*ts, "twist");
        const UEA& h = p.action->hopf();
        for (std::size_t k = 0; k < ts->size(); ++k) {
            const Node t = (*ts)[k];
            TwistDecl d;
            d.name = t.at("name").string();
            d.path = t.path();
            if (t.has("cocycle")) {
                d.kind = TwistKind::Cocycle;
                d.cocycle.assign(static_cast<std::size_t>(h.dim()), Element::zero(p.algebra));
                for (const auto& [g, v] : t.at("cocycle").items())
                    d.cocycle[static_cast<std::size_t>(parse_generator(Node(Json(g), v.path()), h.dim()))] = parse_element(v, p.algebra);
            } else if (t.has("values")) {
                d.kind = TwistKind::Values;
                for (const auto& [label, v] : t.at("values").items()) {
                    auto m = detail::find_monomial(h, label);
                    if (!m) v.fail("'" + label + "' is not a PBW monomial of degree <= " + std::to_string(h.truncation()));
                    d.values[*m] = parse_element(v, p.algebra);
                }
            } else if (t.has("hat")) {
                d.kind = TwistKind::Hat;
                d.winding = t.at("hat").string();
                bool found = false;
                for (const auto& w : p.windings) found = found || w.name == d.winding;
                if (!found) t.at("hat").fail("unknown winding '" + d.winding + "'");
            } else if (t.has("unit")) {
                d.kind = TwistKind::Unit;
            } else {
                t.fail("twist needs cocycle, values, hat or unit");
            }
            p.twists.push_back(std::move(d));
        }
    }

    if (auto bs = root.opt("bimodules")) {
        detail::require_names_unique(*bs, "bimodule");
        for (std::size_t k = 0; k < bs->size(); ++k) {
            const Node b = (*bs)[k];
            const std::string kind = b.at("kind").string();
            const std::string name = b.at("name").string();
            try {
                if (kind == "canonical") {
                    auto E = Bimodule::canonical(p.algebra);
                    p.bimodules.push_back({name, BimoduleKind::Canonical, E, InnerProductPair::canonical(p.algebra)});
                } else if (kind == "column") {
                    if (p.algebra->kind() != ModelKind::FiniteFunctions) b.at("kind").fail("column modules need a FiniteFunctions algebra");
                    const int n = static_cast<int>(b.at("n").integer(1, 4));
                    auto E = Bimodule::column(build_model(matrix_over(n, p.algebra->spec())));
                    p.bimodules.push_back({name, BimoduleKind::Column, E, InnerProductPair::column(E)});
                } else if (kind == "graded") {
                    if (p.algebra->kind() != ModelKind::FiniteFunctions) b.at("kind").fail("graded modules need a FiniteFunctions algebra");
                    const Node dn = b.at("dims");
                    IntMatrix dims;
                    for (std::size_t r = 0; r < dn.size(); ++r) {
                        std::vector<Integer> row;
                        for (std::size_t c = 0; c < dn[r].size(); ++c) row.push_back(Integer(dn[r][c].integer(0, 8)));
                        if (row.size() != p.algebra->dim()) dn[r].fail("row length must equal the number of points");
                        dims.push_back(row);
                    }
                    if (dims.size() != p.algebra->dim()) dn.fail("needs one row per point");
                    auto E = Bimodule::graded(p.algebra, p.algebra, dims);
                    p.bimodules.push_back({name, BimoduleKind::Graded, E, InnerProductPair::graded(E)});
                } else {
                    b.at("kind").fail("unknown bimodule kind '" + kind + "'");
                }
            } catch (const ConstructionError& e) {
                b.fail(e.what());
            } catch (const UnsupportedModelError& e) {
                b.fail(e.what());
            }
        }
    }

    if (auto ls = root.opt("lifts")) {
        if (!p.action) ls->fail("lifts need a lie_algebra and an action");
        detail::require_names_unique(*ls, "lift");
        for (std::size_t k = 0; k < ls->size(); ++k) {
            const Node l = (*ls)[k];
            LiftDecl d{l.at("name").string(), l.at("bimodule").string(), std::nullopt};
            const BimoduleDecl* b = p.bimodule(d.bimodule);
            if (!b) l.at("bimodule").fail("unknown bimodule '" + d.bimodule + "'");
            if (b->kind != BimoduleKind::Canonical) l.at("bimodule").fail("lifts are defined on canonical self-bimodules");
            if (auto t = l.opt("twist")) {
                d.twist = t->string();
                if (!p.twist(*d.twist)) t->fail("unknown twist '" + *d.twist + "'");
            }
            p.lifts.push_back(std::move(d));
        }
    }

    const Node tasks = root.at("tasks");
    if (tasks.size() == 0) tasks.fail("needs at least one task");
    for (std::size_t k = 0; k < tasks.size(); ++k) {
        const Node t = tasks[k];
        TaskDecl d;
        d.path = t.path();
        if (t.json().is_string()) {
            d.name = t.string();
            d.params = Json::object();
        } else {
            d.name = t.at("task").string();
            d.params = t.json();
        }
        const auto& names = task_names();
        if (std::find(names.begin(), names.end(), d.name) == names.end()) t.fail("unknown task '" + d.name + "'");
        const bool needs_action = d.name == "check-action" || d.name == "hopf-axioms" || d.name == "convolution" ||
                                  d.name == "u-membership" || d.name == "ce-cohomology" || d.name == "classify-lifts" ||
                                  d.name == "lift-equivalence" || d.name == "covariance";
        if (needs_action && !p.action) t.fail("task '" + d.name + "' needs lie_algebra and action");
        if ((d.name == "convolution" || d.name == "u-membership") && p.twists.empty() && p.windings.empty())
            t.fail("task '" + d.name + "' needs twists or windings");
        if (d.name == "lift-equivalence" && p.lifts.size() < 2) t.fail("task 'lift-equivalence' needs at least two lifts");
        if ((d.name == "covariance" || d.name == "forget-diagram") && p.lifts.empty() && d.name == "covariance")
            t.fail("task 'covariance' needs lifts");
        if (d.name == "morita-check" && p.bimodules.empty()) t.fail("task 'morita-check' needs bimodules");
        if (d.name == "picard" && p.algebra->kind() != ModelKind::FiniteFunctions)
            t.fail("task 'picard' needs a FiniteFunctions algebra");
        if (d.name == "forget-diagram") {
            if (!p.action) t.fail("task 'forget-diagram' needs lie_algebra and action");
            if (!p.algebra->finite()) t.fail("task 'forget-diagram' needs a finite algebra");
            if (p.lifts.empty()) t.fail("task 'forget-diagram' needs lifts");
        }
        const Node params(d.params, t.path());
        if (auto pairs = params.opt("pairs")) {
            for (std::size_t q = 0; q < pairs->size(); ++q) {
                const Node pr = (*pairs)[q];
                if (!pr.json().is_array() || pr.json().size() != 2) pr.fail("pair needs two lift names");
                for (std::size_t s = 0; s < 2; ++s)
                    if (!p.lift(pr[s].string())) pr[s].fail("unknown lift '" + pr[s].string() + "'");
            }
        }
        if (auto ex = params.opt("expect")) {
            if (!ex->json().is_array()) ex->fail("expected an array of verdicts");
            for (std::size_t q = 0; q < ex->size(); ++q) {
                const std::string v = (*ex)[q].string();
                if (v != "isomorphic" && v != "not-isomorphic") (*ex)[q].fail("verdict must be isomorphic or not-isomorphic");
            }
        }
        if (auto bb = params.opt("block_bound")) bb->integer(1, 3);
        if (auto tn = params.opt("tuple_size")) tn->integer(1, 4);
        if (auto ss = params.opt("strong_star")) ss->boolean();
        if (auto ln = params.opt("lifts")) {
            for (std::size_t q = 0; q < ln->size(); ++q)
                if (!p.lift((*ln)[q].string())) (*ln)[q].fail("unknown lift '" + (*ln)[q].string() + "'");
        }
        p.tasks.push_back(std::move(d));
    }
    return p;
}

inline Problem load_problem_file(const std::string& path, const Flags& flags = {}) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");
    std::stringstream ss;
    ss << in.rdbuf();
    return load_problem(parse_json(ss.str(), path), flags);
}

// ---------------------------------------------------------------------------
// Running

struct TaskResult {
    std::string task;
    std::string verdict = "PASS";  // PASS, FAIL or ERROR
    Json body = Json::object();
    double seconds = 0;
    bool inconsistency = false;
};

namespace detail {

inline std::vector<std::string> lift_names(const Problem& p, const Json& params) {
    std::vector<std::string> out;
    if (params.contains("lifts"))
        for (const auto& n : params["lifts"]) out.push_back(n.get<std::string>());
    else
        for (const auto& l : p.lifts) out.push_back(l.name);
    return out;
}

/// Resolved windings; hat-images are taken formally.
inline WindingSet winding_set(const Problem& p) {
    WindingSet w;
    for (const auto& d : p.windings) w.add(d.name, d.value, *p.action, p.window);
    return w;
}

inline ConvolutionMap<UEA> resolve_twist(const Problem& p, const TwistDecl& t) {
    const UEAAction& action = *p.action;
    switch (t.kind) {
        case TwistKind::Unit: return ConvolutionMap<UEA>::unit(action.hopf_ptr(), action.algebra());
        case TwistKind::Cocycle: return extend_cocycle(cochain1(t.cocycle), action, p.window).map;
        case TwistKind::Hat:
            for (const auto& w : p.windings)
                if (w.name == t.winding) return hat(w.value, action);
            break;
        case TwistKind::Values: {
            ConvolutionMap<UEA> m(action.hopf_ptr(), action.algebra());
            for (const auto& [k, v] : t.values) m.set(k, v);
            return m;
        }
    }
    throw InconsistencyError("unresolved twist " + t.name);
}

inline CovariantStructure resolve_lift(const Problem& p, const LiftDecl& l) {
    CovariantStructure S = CovariantStructure::canonical(*p.action);
    if (!l.twist) return S;
    return lift_action(S, resolve_twist(p, *p.twist(*l.twist)));
}

inline void add_report(TaskResult& r, const Report& rep) {
    Json j = rep.to_json();
    if (j.contains("info") && j["info"].is_object()) j["info"].erase("seconds");
    r.body["reports"].push_back(j);
    if (!rep.passed()) r.verdict = "FAIL";
}

inline std::vector<std::vector<long>> flattened(const PicardGroup& G) {
    std::vector<std::vector<long>> out;
    for (const auto& c : G.classes) {
        std::vector<long> m;
        for (const auto& row : c.dims)
            for (const auto& v : row) m.push_back(v.get_si());
        out.push_back(m);
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline void run_task_body(const Problem& p, const TaskDecl& t, TaskResult& r) {
    const Json& params = t.params;
    r.body["reports"] = Json::array();
    const int N = p.truncation, K = p.window;
    if (t.name == "check-action") {
        add_report(r, check_lie_action(p.action->lie(), K));
        add_report(r, star_action_report(*p.action, K));
    } else if (t.name == "hopf-axioms") {
        add_report(r, hopf_axiom_report(p.action->hopf()));
    } else if (t.name == "u-membership") {
        Json members = Json::array();
        for (const auto& d : p.twists) {
            Report m = u_membership(resolve_twist(p, d), *p.action, K);
            Json e;
            e["twist"] = d.name;
            e["member"] = m.passed();
            members.push_back(e);
            Report named("twist " + d.name);
            named.merge(m);
            named.info() = m.info();
            add_report(r, named);
        }
        for (const auto& w : p.windings) {
            Report m = u_membership(hat(w.value, *p.action), *p.action, K);
            Report named("hat of winding " + w.name);
            named.merge(m);
            named.info() = m.info();
            add_report(r, named);
        }
        r.body["members"] = members;
    } else if (t.name == "convolution") {
        std::vector<std::pair<std::string, ConvolutionMap<UEA>>> ms;
        Json skipped = Json::array();
        for (const auto& d : p.twists) {
            auto m = resolve_twist(p, d);
            if (u_membership(m, *p.action, K).passed()) ms.emplace_back(d.name, m);
            else skipped.push_back(d.name);
        }
        for (const auto& w : p.windings) ms.emplace_back("hat(" + w.name + ")", hat(w.value, *p.action));
        const auto e = ConvolutionMap<UEA>::unit(p.action->hopf_ptr(), p.action->algebra());
        Report rep("convolution group");
        auto& unit = rep.check("unit-law");
        auto& inv = rep.check("inverse");
        auto& assoc = rep.check("associativity");
        auto& closed = rep.check("closed-under-product");
        for (const auto& [n, a] : ms) {
            unit.expect(convolve(a, e) == a && convolve(e, a) == a, n);
            const auto ai = convolution_inverse(a, *p.action, K);
            inv.expect(convolve(a, ai) == e && convolve(ai, a) == e, n);
        }
        for (const auto& [na, a] : ms)
            for (const auto& [nb, b] : ms) {
                const auto ab = convolve(a, b);
                closed.expect(u_membership(ab, *p.action, K).passed(), na + " * " + nb);
                for (const auto& [nc, c] : ms)
                    assoc.expect(convolve(ab, c) == convolve(a, convolve(b, c)), "(" + na + ", " + nb + ", " + nc + ")");
            }
        rep.info()["members"] = ms.size();
        rep.info()["skipped_non_members"] = skipped;
        add_report(r, rep);
    } else if (t.name == "ce-cohomology") {
        const CohomologyResult res = h1(p.action->lie(), K);
        r.body["result"] = res.to_json();
        Report rep("Chevalley-Eilenberg H1");
        auto& reps = rep.check("representatives-are-cocycles");
        for (std::size_t k = 0; k < res.h1().size(); ++k) {
            reps.expect(res.is_cocycle(res.h1()[k]) && !res.is_coboundary(res.h1()[k]), "H1 basis " + std::to_string(k));
            reps.expect(cocycle_report(res.cochain(res.h1()[k]), p.action->lie(), K).passed(), "H1 basis " + std::to_string(k));
        }
        auto& pre = rep.check("coboundary-preimages");
        for (std::size_t k = 0; k < res.b1().size(); ++k) {
            CECochain d0 = ce_d0(res.coefficients().element(res.b1_preimages()[k]), p.action->lie());
            pre.expect(res.coords(d0) == std::optional<SparseVec<Rational>>(res.b1()[k]), "B1 basis " + std::to_string(k));
        }
        add_report(r, rep);
    } else if (t.name == "classify-lifts") {
        const WindingSet ws = winding_set(p);
        const U0Presentation u0 = u0_quotient(*p.action, K, ws);
        r.body["result"] = u0.to_json();
        Report rep("classification of lifts");
        auto& roundtrip_z = rep.check("restrict-extend-identity-on-Z1");
        for (std::size_t k = 0; k < u0.cohomology.z1().size(); ++k) {
            const CECochain alpha = u0.cohomology.cochain(u0.cohomology.z1()[k]);
            const LiftTwist a = extend_cocycle(alpha, *p.action, K);
            const CECochain back = restrict_twist(a, *p.action, K);
            roundtrip_z.expect(back.values == alpha.values, "Z1 basis " + std::to_string(k));
        }
        auto& roundtrip_m = rep.check("extend-restrict-identity-on-members");
        Json classes = Json::array();
        for (const auto& d : p.twists) {
            const auto m = resolve_twist(p, d);
            if (!u_membership(m, *p.action, K).passed()) continue;
            const CECochain alpha = restrict_twist(m, *p.action, K);
            roundtrip_m.expect(extend_cocycle(alpha, *p.action, K).map == m, d.name);
            Json e;
            e["twist"] = d.name;
            Json cls = Json::array();
            for (const auto& q : h1_class(u0.cohomology, alpha)) cls.push_back(q.get_str());
            e["class"] = cls;
            classes.push_back(e);
        }
        r.body["twist_classes"] = classes;
        add_report(r, rep);
    } else if (t.name == "lift-equivalence") {
        std::vector<std::pair<std::string, std::string>> pairs;
        if (params.contains("pairs"))
            for (const auto& pr : params["pairs"]) pairs.emplace_back(pr[0].get<std::string>(), pr[1].get<std::string>());
        else
            for (std::size_t k = 1; k < p.lifts.size(); ++k) pairs.emplace_back(p.lifts[0].name, p.lifts[k].name);
        const WindingSet ws = winding_set(p);
        Json verdicts = Json::array();
        Report rep("lift equivalence verdicts");
        auto& decided = rep.check("decided");
        auto& expected = rep.check("expected-verdict");
        for (std::size_t k = 0; k < pairs.size(); ++k) {
            const auto& [a, b] = pairs[k];
            const auto res = lift_equivalence_check(resolve_lift(p, *p.lift(a)), resolve_lift(p, *p.lift(b)), ws, K);
            Json e = res.to_json();
            e["lifts"] = {a, b};
            verdicts.push_back(e);
            decided.expect(res.isomorphic.has_value() && res.report.passed(), a + " vs " + b);
            if (params.contains("expect") && k < params["expect"].size())
                expected.expect(params["expect"][k].get<std::string>() == res.verdict(),
                                a + " vs " + b + ": " + res.verdict());
        }
        r.body["verdicts"] = verdicts;
        add_report(r, rep);
    } else if (t.name == "morita-check") {
        const std::size_t n = params.contains("tuple_size") ? params["tuple_size"].get<std::size_t>() : 3;
        for (const auto& b : p.bimodules) {
            Report rep("bimodule " + b.name);
            rep.merge(bimodule_report(b.module, K), "bimodule ");
            rep.merge(morita_axiom_report(b.products, std::min(K, 2)), "");
            if (b.module.finite()) rep.merge(complete_positivity_report(b.products, n), "");
            else rep.info()["complete_positivity"] = "skipped: infinite module";
            rep.info()["windowed"] = !b.module.finite();
            add_report(r, rep);
        }
    } else if (t.name == "picard") {
        const int bound = params.contains("block_bound") ? params["block_bound"].get<int>() : 2;
        const PicardGroup G = picard_enumerate(p.algebra, bound);
        Json g = G.to_json();
        r.body["result"] = g;
        add_report(r, G.report);
        if (params.value("strong_star", false)) add_report(r, strong_star_report(G));
    } else if (t.name == "covariance") {
        for (const auto& name : lift_names(p, params)) {
            const LiftDecl& l = *p.lift(name);
            const BimoduleDecl& b = *p.bimodule(l.bimodule);
            const int deg = std::min(2, N);
            if (l.twist) {
                add_report(r, lift_report(CovariantStructure::canonical(*p.action), resolve_twist(p, *p.twist(*l.twist)),
                                          b.products, std::min(K, 2), deg));
            } else {
                add_report(r, covariance_report(resolve_lift(p, l), b.products, std::min(K, 2), deg));
            }
        }
    } else if (t.name == "forget-diagram") {
        for (const auto& name : lift_names(p, params)) {
            const LiftDecl& l = *p.lift(name);
            add_report(r, forget_diagram_report(p.bimodule(l.bimodule)->products, resolve_lift(p, l)));
        }
    }
}

/// Reruns oracle-backed computations against the brute-force oracles.
inline void oracle_task_body(const Problem& p, const TaskDecl& t, TaskResult& r) {
    r.body["reports"] = Json::array();
    const int K = p.window;
    Report rep("oracle agreement for " + t.name);
    std::size_t disagreements = 0;
    if (t.name == "ce-cohomology" || t.name == "classify-lifts") {
        const std::size_t sparse = h1(p.action->lie(), K).h1().size();
        const std::size_t dense = oracle::h1_dimension(p.action->lie(), K);
        if (!rep.check("h1-dimension").expect(sparse == dense, "sparse " + std::to_string(sparse) + " vs dense " + std::to_string(dense)))
            ++disagreements;
        r.body["h1_dimension"] = {{"sparse", sparse}, {"dense", dense}};
    } else if (t.name == "picard") {
        const int bound = t.params.contains("block_bound") ? t.params["block_bound"].get<int>() : 2;
        const PicardGroup G = picard_enumerate(p.algebra, bound);
        const std::size_t n = p.algebra->dim();
        const int oracle_bound = n >= 4 ? 1 : bound;
        const auto got = flattened(G);
        if (!rep.check("matches-bimodule-enumeration").expect(got == oracle::invertible_dimension_matrices(n, oracle_bound),
                                                               "order " + std::to_string(got.size())))
            ++disagreements;
        if (!rep.check("matches-permutation-group").expect(got == oracle::permutation_matrices(n), "order " + std::to_string(got.size())))
            ++disagreements;
        rep.info()["oracle_block_bound"] = oracle_bound;
    } else if (t.name == "convolution") {
        std::vector<std::pair<std::string, ConvolutionMap<UEA>>> ms;
        for (const auto& d : p.twists) ms.emplace_back(d.name, resolve_twist(p, d));
        for (const auto& w : p.windings) ms.emplace_back("hat(" + w.name + ")", hat(w.value, *p.action));
        auto& prod = rep.check("product-matches-splittings");
        auto& assoc = rep.check("associativity-matches-splittings");
        for (const auto& [na, a] : ms)
            for (const auto& [nb, b] : ms) {
                const auto fast = convolve(a, b), slow = oracle::convolve_by_splittings(a, b);
                if (!prod.expect(fast == slow, na + " * " + nb)) ++disagreements;
                for (const auto& [nc, c] : ms) {
                    const bool ok = convolve(fast, c) == oracle::convolve_by_splittings(a, oracle::convolve_by_splittings(b, c));
                    if (!assoc.expect(ok, "(" + na + ", " + nb + ", " + nc + ")")) ++disagreements;
                }
            }
    } else {
        r.verdict = "SKIPPED";
        r.body["note"] = "not oracle-backed";
        return;
    }
    r.body["disagreements"] = disagreements;
    add_report(r, rep);
}

}  // namespace detail

inline TaskResult run_task(const Problem& p, const TaskDecl& t, bool oracle) {
    TaskResult r;
    r.task = t.name;
    const auto start = std::chrono::steady_clock::now();
    try {
        if (oracle) detail::oracle_task_body(p, t, r);
        else detail::run_task_body(p, t, r);
    } catch (const InconsistencyError& e) {
        r.verdict = "ERROR";
        r.inconsistency = true;
        r.body["error"] = std::string("inconsistency: ") + e.what();
    } catch (const Error& e) {
        r.verdict = "FAIL";
        r.body["error"] = e.what();
    } catch (const std::exception& e) {
        r.verdict = "ERROR";
        r.inconsistency = true;
        r.body["error"] = std::string("internal: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

struct RunResult {
    Json report;
    int exit_code = kPass;
};

/// Runs every task in input order (concurrently with flags.parallel) and
/// assembles the versioned report. Only the "timing" field varies between runs.
inline RunResult run(const Problem& p, const Flags& flags) {
    const auto start = std::chrono::steady_clock::now();
    std::vector<TaskResult> results(p.tasks.size());
    if (flags.parallel) {
        std::vector<std::future<TaskResult>> futures;
        for (const auto& t : p.tasks) futures.push_back(std::async(std::launch::async, run_task, std::cref(p), std::cref(t), flags.oracle));
        for (std::size_t k = 0; k < futures.size(); ++k) results[k] = futures[k].get();
    } else {
        for (std::size_t k = 0; k < p.tasks.size(); ++k) results[k] = run_task(p, p.tasks[k], flags.oracle);
    }
    RunResult out;
    Json& j = out.report;
    j["report_version"] = kReportVersion;
    j["problem"] = p.name;
    j["mode"] = flags.oracle ? "verify-oracle" : "run";
    j["truncation"] = p.truncation;
    j["window"] = p.window;
    j["algebra"] = p.algebra->name();
    Json tasks = Json::array();
    Json timing;
    timing["tasks"] = Json::array();
    bool failed = false, inconsistent = false;
    std::size_t disagreements = 0;
    for (const auto& r : results) {
        Json e;
        e["task"] = r.task;
        e["verdict"] = r.verdict;
        e["certified_to_order"] = p.truncation;
        e["window"] = p.window;
        for (auto it = r.body.begin(); it != r.body.end(); ++it) e[it.key()] = it.value();
        tasks.push_back(e);
        timing["tasks"].push_back({{"task", r.task}, {"seconds", r.seconds}});
        failed = failed || r.verdict == "FAIL";
        inconsistent = inconsistent || r.inconsistency;
        if (r.body.contains("disagreements")) disagreements += r.body["disagreements"].get<std::size_t>();
    }
    j["tasks"] = tasks;
    if (flags.oracle) j["disagreements"] = disagreements;
    j["verdict"] = inconsistent ? "ERROR" : (failed ? "FAIL" : "PASS");
    timing["total_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    j["timing"] = timing;
    out.exit_code = inconsistent ? kInconsistency : (failed ? kVerdictFailure : kPass);
    return out;
}

/// The report without the timing field, for comparisons.
inline Json without_timing(Json report) {
    report.erase("timing");
    return report;
}

/// Human-readable summary, one line per task.
inline std::string summary(const Json& report) {
    std::ostringstream os;
    os << report["problem"].get<std::string>() << " (" << report["mode"].get<std::string>() << ", N = " << report["truncation"]
       << ", K = " << report["window"] << ")\n";
    for (const auto& t : report["tasks"]) {
        os << "  " << t["task"].get<std::string>() << ": " << t["verdict"].get<std::string>();
        if (t.contains("error")) os << " (" << t["error"].get<std::string>() << ")";
        if (t.contains("reports"))
            for (const auto& r : t["reports"])
                for (const auto& c : r["checks"])
                    if (c["verdict"] == "FAIL") {
                        os << "\n    " << r["subject"].get<std::string>() << " / " << c["check"].get<std::string>();
                        if (c.contains("witnesses")) os << " at " << c["witnesses"][0].get<std::string>();
                    }
        os << "\n";
    }
    os << "verdict: " << report["verdict"].get<std::string>() << "\n";
    return os.str();
}

}  // namespace hopfmorita::cli
