#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include <wtw/pseudoharmonic.hpp>

namespace wtw::cli
{

namespace
{

using Json = nlohmann::ordered_json;

class InputError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string verb;
    std::string spec_path;
    std::string builtin_name;
    std::string signs;
    std::string assign;
    std::string format = "table";
    bool dim4 = false;
    std::vector<std::string> verify;
};

struct Verb {
    const char *name;
    const char *help;
};

const std::vector<Verb> kVerbs{
    {"validate", "check the frame invariants"},
    {"connection", "Levi-Civita and Weyl connection tables"},
    {"curvature", "Levi-Civita and Weyl curvature tables"},
    {"ricci", "Ricci tensor of the Weyl connection"},
    {"star-ricci", "*-Ricci tensor of the Weyl connection"},
    {"lee", "Lee form and Lee vector"},
    {"lck", "integrability and locally conformally Kaehler checks"},
    {"conditions", "pseudo-harmonicity conditions as polynomial systems"},
    {"verify", "substitute an assignment into the conditions"},
    {"suite", "run every exact identity check"},
    {"report", "JSON document with all results"},
};

std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string &s, char sep)
{
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) {
        parts.push_back(trim(cur));
    }
    return parts;
}

Signs parse_signs(const std::string &text)
{
    const auto parts = split(text, ',');
    auto one = [&](const std::string &s) {
        if (s == "+1" || s == "1") {
            return 1;
        }
        if (s == "-1") {
            return -1;
        }
        throw InputError("--signs expects e1,e2 with entries +1 or -1, got '" + text + "'");
    };
    if (parts.size() != 2) {
        throw InputError("--signs expects e1,e2 with entries +1 or -1, got '" + text + "'");
    }
    return {one(parts[0]), one(parts[1])};
}

struct ParsedAssignment {
    Assignment values;
    // "a != c" items; reported, never checked
    std::vector<std::pair<std::string, Rational>> excluded;
};

ParsedAssignment parse_assignment(const std::string &text)
{
    ParsedAssignment r;
    for (const auto &item : split(text, ',')) {
        const bool ne = item.find("!=") != std::string::npos;
        const auto eq = ne ? item.find("!=") : item.find('=');
        if (item.empty() || eq == std::string::npos) {
            throw InputError("malformed assignment item '" + item + "' (expected name=value)");
        }
        const std::string name = trim(item.substr(0, eq));
        const Rational value = parse_rational(item.substr(eq + (ne ? 2 : 1)));
        if (name.empty()) {
            throw InputError("malformed assignment item '" + item + "'");
        }
        if (ne) {
            r.excluded.emplace_back(name, value);
        } else if (!r.values.emplace(name, value).second) {
            throw InputError("symbol '" + name + "' assigned twice");
        }
    }
    return r;
}

FrameSpec load(const Options &o)
{
    if (o.spec_path.empty() == o.builtin_name.empty()) {
        throw InputError("exactly one of --spec and --builtin is required");
    }
    if (!o.spec_path.empty()) {
        if (!o.signs.empty()) {
            throw InputError("--signs applies to builtins only");
        }
        return load_spec_file(o.spec_path);
    }
    std::optional<Signs> signs;
    if (!o.signs.empty()) {
        signs = parse_signs(o.signs);
    }
    return builtin(o.builtin_name, signs);
}

std::string rational_str(const Rational &q) { return q.get_str(); }

std::string assignment_str(const Assignment &a)
{
    std::string r;
    for (const auto &[name, value] : a) {
        r += (r.empty() ? "" : ", ") + name + " = " + rational_str(value);
    }
    return r.empty() ? "(none)" : r;
}

std::string join(const std::vector<std::string> &v)
{
    std::string r;
    for (const auto &s : v) {
        r += (r.empty() ? "" : ", ") + s;
    }
    return r.empty() ? "(none)" : r;
}

// sum_k v[k] names[k], coefficients in canonical rendering
std::string combination(std::span<const Scalar> v, const std::vector<std::string> &names)
{
    std::string r;
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (v[k].is_zero()) {
            continue;
        }
        std::string c = v[k].str();
        bool negative = false;
        std::string term;
        if (c == "1") {
            term = names[k];
        } else if (c == "-1") {
            negative = true;
            term = names[k];
        } else if (v[k].terms().size() == 1) {
            if (c[0] == '-') {
                negative = true;
                c.erase(0, 1);
            }
            term = c + "*" + names[k];
        } else {
            term = "(" + c + ")*" + names[k];
        }
        if (r.empty()) {
            r = negative ? "-" + term : term;
        } else {
            r += (negative ? " - " : " + ") + term;
        }
    }
    return r.empty() ? "0" : r;
}

Json strings(std::span<const Scalar> v)
{
    Json a = Json::array();
    for (const auto &s : v) {
        a.push_back(s.str());
    }
    return a;
}

template <typename Tag>
Json matrix(const Square<Tag> &m)
{
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.dim(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.dim(); ++j) {
            row.push_back(m(i, j).str());
        }
        rows.push_back(row);
    }
    return rows;
}

Json assignment_json(const Assignment &a)
{
    Json o = Json::object();
    for (const auto &[name, value] : a) {
        o[name] = rational_str(value);
    }
    return o;
}

Json check_json(const Check &c)
{
    return Json{{"name", c.name},
                {"passed", c.passed()},
                {"entries", c.entries},
                {"nonzero_count", c.nonzero_count},
                {"nonzero", c.nonzero}};
}

Json checks_json(const CheckReport &r)
{
    Json a = Json::array();
    for (const auto &c : r.checks) {
        a.push_back(check_json(c));
    }
    return a;
}

Json system_json(const ConditionSystem &s)
{
    return Json{{"polynomials", s.rendered()}, {"dropped_zero", s.dropped_zero}, {"dropped_duplicate", s.dropped_duplicate}};
}

Json gate_json(const GateVerdict &g)
{
    return Json{{"integrable", g.integrable}, {"lee_identity", g.lee_identity}, {"lee_closed", g.lee_closed}};
}

std::string gate_assumption(const GateVerdict &g) { return g.integrable ? kAssumptionLee : kAssumptionIntegrable; }

struct Output {
    Json doc = Json::object();
    std::ostringstream text;
    int status = kOk;
    bool color = false;

    std::string mark(bool ok) const
    {
        if (!color) {
            return ok ? "ok  " : "FAIL";
        }
        return ok ? "\033[32mok\033[0m  " : "\033[31mFAIL\033[0m";
    }
    std::string yes(bool b) const { return b ? "yes" : "no"; }

    void check_lines(const CheckReport &r, const std::string &prefix = "")
    {
        for (const auto &c : r.checks) {
            text << "  " << mark(c.passed()) << "  " << prefix << c.name;
            if (c.passed()) {
                text << " (" << c.entries << " entries)\n";
            } else {
                text << ": " << c.nonzero_count << " of " << c.entries << " entries nonzero, first " << c.nonzero.front()
                     << '\n';
                status = kFailed;
            }
        }
    }
    void system_lines(const ConditionSystem &s)
    {
        if (s.empty()) {
            text << "  (none)\n";
        }
        for (const auto &p : s.rendered()) {
            text << "  " << p << '\n';
        }
    }
};

CheckReport prefixed(CheckReport r, const std::string &prefix)
{
    for (auto &c : r.checks) {
        c.name = prefix + c.name;
    }
    return r;
}

// --- verbs -----------------------------------------------------------------

void do_validate(const FrameSpec &spec, const Options &, Output &o)
{
    const FrameResiduals fr = frame_residuals(spec);
    CheckReport r;
    r.checks = {make_check("jacobi", fr.jacobi), make_check("j-squared", fr.j_squared_plus_id),
                make_check("j-orthogonal", fr.orthogonality)};
    o.check_lines(r);
    const bool integrable = nijenhuis(spec).integrable();
    o.text << "integrable: " << o.yes(integrable) << '\n';
    o.text << (r.passed() ? "valid" : "invalid") << '\n';
    o.doc["checks"] = checks_json(r);
    o.doc["integrable"] = integrable;
}

void do_connection(const FrameSpec &spec, const Options &, Output &o)
{
    const std::size_t n = spec.dimension;
    struct Item {
        const char *title, *key, *symbol;
        Connection conn;
    };
    CheckReport checks;
    for (const Item &it : {Item{"Levi-Civita", "levi_civita", "nabla", levi_civita(spec)},
                           Item{"Weyl", "weyl", "D", weyl(spec)}}) {
        o.text << it.title << '\n';
        Json table = Json::object();
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                Vector v(n);
                for (std::size_t k = 0; k < n; ++k) {
                    v[k] = it.conn.gamma(i, j, k);
                }
                const std::string key = std::string(it.symbol) + "[" + spec.basis[i] + "]" + spec.basis[j];
                const std::string value = combination(v, spec.basis);
                o.text << "  " << key << " = " << value << '\n';
                table[key] = value;
            }
        }
        o.doc[it.key] = table;
        const ConnectionResiduals res = connection_residuals(spec, it.conn);
        checks.checks.push_back(make_check(std::string(it.key) + "/torsion", res.torsion));
        checks.checks.push_back(make_check(std::string(it.key) + "/metricity", res.metricity));
    }
    o.text << "checks\n";
    o.check_lines(checks);
    o.doc["checks"] = checks_json(checks);
}

void do_curvature(const FrameSpec &spec, const Options &, Output &o)
{
    const std::size_t n = spec.dimension;
    struct Item {
        const char *title, *key;
        Connection conn;
    };
    for (const Item &it : {Item{"Levi-Civita", "levi_civita", levi_civita(spec)}, Item{"Weyl", "weyl", weyl(spec)}}) {
        o.text << it.title << '\n';
        const Curvature curv = curvature(it.conn, spec);
        Json table = Json::object();
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const Endo r = curv.endo(i, j);
                for (std::size_t k = 0; k < n; ++k) {
                    Vector v(n);
                    for (std::size_t l = 0; l < n; ++l) {
                        v[l] = r(l, k);
                    }
                    const std::string key = "R(" + spec.basis[i] + "," + spec.basis[j] + ")" + spec.basis[k];
                    const std::string value = combination(v, spec.basis);
                    o.text << "  " << key << " = " << value << '\n';
                    table[key] = value;
                }
            }
        }
        o.doc[it.key] = table;
    }
}

void matrix_lines(Output &o, const std::string &symbol, const BilinearForm &m)
{
    for (std::size_t i = 0; i < m.dim(); ++i) {
        for (std::size_t j = 0; j < m.dim(); ++j) {
            o.text << "  " << symbol << "[" << i + 1 << "][" << j + 1 << "] = " << m(i, j).str() << '\n';
        }
    }
}

void do_ricci(const FrameSpec &spec, const Options &, Output &o)
{
    const BilinearForm rho = ricci(curvature(weyl(spec), spec));
    matrix_lines(o, "rho", rho);
    o.doc["rho"] = matrix(rho);
}

void do_star_ricci(const FrameSpec &spec, const Options &, Output &o)
{
    const BilinearForm rho = star_ricci(curvature(weyl(spec), spec), spec.J);
    matrix_lines(o, "rho*", rho);
    o.doc["rho_star"] = matrix(rho);
}

void do_lee(const FrameSpec &spec, const Options &, Output &o)
{
    const LeeForm lee = lee_form(spec);
    for (std::size_t k = 0; k < spec.dimension; ++k) {
        o.text << "  theta[" << k + 1 << "] = " << lee.theta[k].str() << '\n';
    }
    o.text << "  B = " << combination(lee.B, spec.basis) << '\n';
    CheckReport r;
    r.checks.push_back(make_check("lee-vector", lee.B - lee.B_alt));
    o.check_lines(r);
    o.doc["theta"] = strings(lee.theta);
    o.doc["B"] = strings(lee.B);
    o.doc["checks"] = checks_json(r);
}

void do_lck(const FrameSpec &spec, const Options &, Output &o)
{
    CheckReport r;
    r.checks.push_back(make_check("nijenhuis", nijenhuis(spec).n));
    r.append(lck_check(spec));
    o.check_lines(r);
    o.text << "lcK: " << o.yes(r.passed()) << '\n';
    o.doc["checks"] = checks_json(r);
    o.doc["lck"] = r.passed();
}

ConditionReport conditions_of(const FrameSpec &spec, const Options &opt)
{
    return opt.dim4 ? dim4(spec) : condition_report(spec);
}

std::string verdict(const ConditionReport &r)
{
    return r.pseudo_harmonic_identically() ? "pseudo-harmonic for all parameters"
                                           : "pseudo-harmonic exactly where every listed polynomial vanishes";
}

void do_conditions(const FrameSpec &spec, const Options &opt, Output &o)
{
    const ConditionReport r = conditions_of(spec, opt);
    o.text << "gate: integrable " << o.yes(r.gate.integrable) << ", dOmega = theta ^ Omega "
           << o.yes(r.gate.lee_identity) << ", dtheta = 0 " << o.yes(r.gate.lee_closed) << '\n';
    o.text << "form: " << (r.dim4_mode ? "four-dimensional" : "general") << '\n';
    o.text << "condition (i): d(theta - phi) of type (1,1); " << r.condition_i.dropped_zero << " zero, "
           << r.condition_i.dropped_duplicate << " duplicate residuals dropped\n";
    o.system_lines(r.condition_i);
    o.text << "forced by condition (i): " << assignment_str(r.reduction) << '\n';
    o.text << "condition (ii):\n";
    o.system_lines(r.condition_ii);
    o.text << "condition (ii) before substituting forced values:\n";
    o.system_lines(r.condition_ii_raw);
    o.text << "verdict: " << verdict(r) << '\n';
    o.doc["gate"] = gate_json(r.gate);
    o.doc["dim4"] = r.dim4_mode;
    o.doc["condition_i"] = system_json(r.condition_i);
    o.doc["forced"] = assignment_json(r.reduction);
    o.doc["condition_ii"] = system_json(r.condition_ii);
    o.doc["condition_ii_raw"] = system_json(r.condition_ii_raw);
    o.doc["verdict"] = verdict(r);
}

Json verdict_json(const AssignmentVerdict &v, const std::vector<std::pair<std::string, Rational>> &excluded)
{
    Json ex = Json::array();
    for (const auto &[name, value] : excluded) {
        ex.push_back(name + " != " + rational_str(value));
    }
    return Json{{"assignment", assignment_json(v.assignment)},
                {"forced", assignment_json(v.forced)},
                {"condition_i", strings(v.condition_i)},
                {"condition_ii", strings(v.condition_ii)},
                {"free_symbols", v.free_symbols},
                {"not_checked", ex},
                {"holds", v.holds}};
}

void substituted_lines(Output &o, const std::vector<Scalar> &before, const std::vector<Scalar> &after)
{
    if (before.empty()) {
        o.text << "  (none)\n";
    }
    for (std::size_t k = 0; k < before.size(); ++k) {
        o.text << "  " << o.mark(after[k].is_zero()) << "  " << before[k].str() << "  ->  " << after[k].str() << '\n';
    }
}

void do_verify(const FrameSpec &spec, const Options &opt, Output &o)
{
    if (opt.assign.empty()) {
        throw InputError("verify requires --assign");
    }
    const ParsedAssignment pa = parse_assignment(opt.assign);
    ConditionReport r = conditions_of(spec, opt);
    const AssignmentVerdict v = verify_assignment(r, pa.values);
    o.text << "assignment: " << assignment_str(v.assignment) << '\n';
    o.text << "forced by condition (i): " << assignment_str(v.forced) << '\n';
    o.text << "free symbols: " << join(v.free_symbols) << '\n';
    o.text << "condition (i):\n";
    substituted_lines(o, r.condition_i.polynomials, v.condition_i);
    o.text << "condition (ii):\n";
    substituted_lines(o, r.condition_ii_raw.polynomials, v.condition_ii);
    for (const auto &[name, value] : pa.excluded) {
        o.text << "not checked: " << name << " != " << rational_str(value) << '\n';
    }
    if (v.holds) {
        o.text << "all conditions hold";
        if (!v.free_symbols.empty()) {
            o.text << " identically in " << join(v.free_symbols);
        }
        o.text << '\n';
    } else {
        o.text << "conditions fail\n";
        o.status = kFailed;
    }
    o.doc["dim4"] = r.dim4_mode;
    o.doc["verdict"] = verdict_json(v, pa.excluded);
}

// Checks that need no hypothesis on J beyond the frame being valid.
CheckReport plain_checks(const FrameSpec &spec)
{
    CheckReport r;
    const FrameResiduals fr = frame_residuals(spec);
    r.checks = {make_check("frame/jacobi", fr.jacobi), make_check("frame/j-squared", fr.j_squared_plus_id),
                make_check("frame/j-orthogonal", fr.orthogonality)};
    const Connection lc = levi_civita(spec);
    const Connection d = weyl(spec);
    for (const auto &[key, conn] : {std::pair{"lc", lc}, std::pair{"weyl", d}}) {
        const ConnectionResiduals res = connection_residuals(spec, conn);
        r.checks.push_back(make_check(std::string(key) + "/torsion", res.torsion));
        r.checks.push_back(make_check(std::string(key) + "/metricity", res.metricity));
    }
    const Curvature curv = curvature(d, spec);
    r.append(prefixed(identity_suite(curv, spec), "weyl/"));
    const FrameSpec flat_phi = with_phi(spec, zero_vector(spec.dimension, spec.symbols));
    r.append(prefixed(identity_suite(curvature(lc, flat_phi), flat_phi), "lc/"));
    r.append(prefixed(ricci_formula_check(spec), "ricci/"));
    r.append(prefixed(endo_curvature_check(d, curv, spec, spec.J), "twistor/J/"));

    const VerticalBasis vb = vertical_basis(spec.J);
    for (std::size_t a = 0; a < vb.size(); ++a) {
        const std::string label = vb.labels[a];
        r.append(prefixed(endo_curvature_check(d, curv, spec, vb.elements[a]), "twistor/" + label + "/"));
        r.append(prefixed(lemma_rab_check(spec, spec.J, vb.elements[a]), "twistor/J," + label + "/"));
        r.append(prefixed(lemma_jv_check(spec, vb.elements[a]), "twistor/" + label + "/"));
    }
    if (vb.size() >= 2) {
        r.append(prefixed(lemma_rab_check(spec, vb.elements[0], vb.elements[1]),
                          "twistor/" + vb.labels[0] + "," + vb.labels[1] + "/"));
    }
    r.append(prefixed(lemma_rjdj_check(spec), "twistor/"));
    r.append(prefixed(dprime_eval(spec).checks, "twistor/"));
    return r;
}

// Checks resting on integrability and dOmega = theta ^ Omega.
CheckReport gated_checks(const FrameSpec &spec)
{
    CheckReport r;
    r.append(prefixed(nabla_j_checks(spec), "hermitian/"));
    r.append(prefixed(trace_checks(spec), "trace/"));
    r.append(prefixed(equivalence_check(spec), "conditions/"));
    return r;
}

void do_suite(const FrameSpec &spec, const Options &, Output &o)
{
    CheckReport all = plain_checks(spec);
    const GateVerdict gate = gate_verdict(spec);
    Json doc_gate = gate_json(gate);
    o.text << "gate: integrable " << o.yes(gate.integrable) << ", dOmega = theta ^ Omega " << o.yes(gate.lee_identity)
           << '\n';
    if (gate.passed()) {
        all.append(gated_checks(spec));
    }
    o.check_lines(all);
    std::size_t failed = 0;
    for (const auto &c : all.checks) {
        failed += c.passed() ? 0 : 1;
    }
    if (!gate.passed()) {
        o.text << "skipped: hermitian, trace and condition checks (assumption violated: " << gate_assumption(gate) << ")\n";
        doc_gate["skipped"] = gate_assumption(gate);
        o.status = kFailed;
    }
    if (failed == 0) {
        o.text << all.checks.size() << " checks, all residuals zero\n";
    } else {
        o.text << failed << " of " << all.checks.size() << " checks failed\n";
    }
    o.doc["gate"] = doc_gate;
    o.doc["checks"] = checks_json(all);
    o.doc["failed"] = failed;
}

void do_report(const FrameSpec &spec, const Options &opt, Output &o)
{
    const FrameResiduals fr = frame_residuals(spec);
    CheckReport validation;
    validation.checks = {make_check("jacobi", fr.jacobi), make_check("j-squared", fr.j_squared_plus_id),
                         make_check("j-orthogonal", fr.orthogonality), make_check("nijenhuis", nijenhuis(spec).n)};
    o.doc["validation"] = checks_json(validation);

    const LeeForm lee = lee_form(spec);
    o.doc["lee"] = Json{{"theta", strings(lee.theta)}, {"B", strings(lee.B)}, {"consistent", lee.consistent()}};
    const CheckReport lck = lck_check(spec);
    o.doc["lck"] = Json{{"checks", checks_json(lck)}, {"lck", lck.passed() && validation.checks.back().passed()}};

    const Curvature curv = curvature(weyl(spec), spec);
    o.doc["ricci"] = Json{{"rho", matrix(ricci(curv))}, {"rho_star", matrix(star_ricci(curv, spec.J))}};

    const GateVerdict gate = gate_verdict(spec);
    o.doc["gate"] = gate_json(gate);
    if (!gate.passed()) {
        const std::string skipped = "assumption violated: " + gate_assumption(gate);
        o.doc["conditions"] = Json{{"skipped", skipped}};
        o.doc["equivalence"] = Json{{"skipped", skipped}};
        o.doc["assignments"] = Json::array();
        o.doc["verdict"] = "gate failure: " + gate_assumption(gate);
        o.status = kFailed;
        return;
    }
    ConditionReport r = conditions_of(spec, opt);
    o.doc["conditions"] = Json{{"dim4", r.dim4_mode},
                               {"condition_i", system_json(r.condition_i)},
                               {"forced", assignment_json(r.reduction)},
                               {"condition_ii", system_json(r.condition_ii)},
                               {"condition_ii_raw", system_json(r.condition_ii_raw)}};
    const CheckReport eq = equivalence_check(spec);
    o.doc["equivalence"] = Json{{"checks", checks_json(eq)}, {"passed", eq.passed()}};
    if (!eq.passed()) {
        o.status = kFailed;
    }
    Json assignments = Json::array();
    for (const auto &text : opt.verify) {
        const ParsedAssignment pa = parse_assignment(text);
        const AssignmentVerdict v = verify_assignment(r, pa.values);
        assignments.push_back(verdict_json(v, pa.excluded));
        if (!v.holds) {
            o.status = kFailed;
        }
    }
    o.doc["assignments"] = assignments;
    o.doc["verdict"] = verdict(r);
}

using Handler = void (*)(const FrameSpec &, const Options &, Output &);

Handler handler(const std::string &verb)
{
    static const std::map<std::string, Handler> table{
        {"validate", do_validate}, {"connection", do_connection}, {"curvature", do_curvature},
        {"ricci", do_ricci},       {"star-ricci", do_star_ricci}, {"lee", do_lee},
        {"lck", do_lck},           {"conditions", do_conditions}, {"verify", do_verify},
        {"suite", do_suite},       {"report", do_report},
    };
    return table.at(verb);
}

bool color_enabled()
{
    const char *v = std::getenv("WTW_COLOR");
    return v != nullptr && std::string(v) == "1";
}

Json spec_json(const FrameSpec &spec)
{
    return Json{{"name", spec.name},
                {"dimension", spec.dimension},
                {"symbols", spec.symbols ? spec.symbols->names() : std::vector<std::string>{}},
                {"basis", spec.basis}};
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Exact Weyl connection and twistor computations on left-invariant frames", "wtw"};
    app.require_subcommand(1);
    Options opt;
    for (const Verb &v : kVerbs) {
        CLI::App *sub = app.add_subcommand(v.name, v.help);
        CLI::Option *spec = sub->add_option("--spec", opt.spec_path, "spec file");
        CLI::Option *b = sub->add_option("--builtin", opt.builtin_name, "builtin geometry: inoue-s0 or kodaira");
        spec->excludes(b);
        sub->add_option("--signs", opt.signs, "signs e1,e2 for kodaira, e.g. +1,-1");
        const bool is_verify = std::string(v.name) == "verify";
        sub->add_option("--assign", opt.assign,
                        is_verify ? "assignment to verify, e.g. a1=0,a2=1 (name!=value is reported, not checked)"
                                  : "substitute values into the Weyl form first, e.g. a3=0,a4=0");
        sub->add_option("--format", opt.format, "table or json")->check(CLI::IsMember({"table", "json"}));
        const std::string name = v.name;
        if (name == "conditions" || name == "verify" || name == "report") {
            sub->add_flag("--dim4", opt.dim4, "use the four-dimensional form of condition (ii)");
        }
        if (name == "report") {
            sub->add_option("--verify", opt.verify, "assignment to verify; repeatable");
        }
        sub->callback([&opt, name] { opt.verb = name; });
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInputError;
    }

    const bool json = opt.format == "json" || opt.verb == "report";
    try {
        FrameSpec spec = load(opt);
        Output o;
        o.color = !json && color_enabled();
        o.doc["command"] = opt.verb;
        o.doc["spec"] = spec_json(spec);
        o.text << "spec: " << spec.name << " (dimension " << spec.dimension << ", symbols "
               << join(spec.symbols ? spec.symbols->names() : std::vector<std::string>{}) << ")\n";
        if (opt.verb != "verify" && !opt.assign.empty()) {
            const ParsedAssignment pa = parse_assignment(opt.assign);
            if (!pa.excluded.empty()) {
                throw InputError("'!=' items are only meaningful for verify");
            }
            spec = substitute(spec, pa.values);
            o.doc["substituted"] = assignment_json(pa.values);
            o.text << "substituted: " << assignment_str(pa.values) << '\n';
        }
        handler(opt.verb)(spec, opt, o);
        o.doc["status"] = o.status == kOk ? "ok" : "failed";
        if (json) {
            out << o.doc.dump(2) << '\n';
        } else {
            out << o.text.str();
        }
        return o.status;
    } catch (const GateError &e) {
        err << "wtw: " << e.what() << '\n';
        if (json) {
            out << Json{{"command", opt.verb}, {"status", "gate-failure"}, {"assumption", e.assumption()}}.dump(2)
                << '\n';
        }
        return kFailed;
    } catch (const ParseError &e) {
        err << "wtw: " << e.what() << '\n';
    } catch (const ValidationError &e) {
        err << "wtw: invalid spec: " << e.what() << '\n';
    } catch (const InputError &e) {
        err << "wtw: " << e.what() << '\n';
    } catch (const std::invalid_argument &e) {
        err << "wtw: " << e.what() << '\n';
    }
    return kInputError;
}

} // namespace wtw::cli
