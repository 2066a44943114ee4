#include <wtw/pseudoharmonic.hpp>

#include <algorithm>
#include <stdexcept>

namespace wtw
{

std::vector<std::string> ConditionSystem::rendered() const
{
    std::vector<std::string> r;
    r.reserve(polynomials.size());
    for (const auto &p : polynomials) {
        r.push_back(p.str());
    }
    return r;
}

ConditionSystem normalize_system(std::span<const Scalar> raw)
{
    ConditionSystem sys;
    for (const auto &p : raw) {
        if (p.is_zero()) {
            ++sys.dropped_zero;
            continue;
        }
        Scalar q = p.normalize_up_to_unit();
        if (std::find(sys.polynomials.begin(), sys.polynomials.end(), q) != sys.polynomials.end()) {
            ++sys.dropped_duplicate;
            continue;
        }
        sys.polynomials.push_back(std::move(q));
    }
    return sys;
}

bool same_system(const ConditionSystem &a, const ConditionSystem &b)
{
    if (a.polynomials.size() != b.polynomials.size()) {
        return false;
    }
    for (const auto &p : a.polynomials) {
        if (std::find(b.polynomials.begin(), b.polynomials.end(), p) == b.polynomials.end()) {
            return false;
        }
    }
    return true;
}

bool same_system(const ConditionSystem &a, std::span<const Scalar> raw) { return same_system(a, normalize_system(raw)); }

BilinearForm condition_i_matrix(const FrameSpec &spec)
{
    require_gate(spec);
    const std::size_t n = spec.dimension;
    const Vector theta = lee_form(spec).theta;
    const TwoForm F = d_oneform(spec, theta - spec.phi);
    BilinearForm m(n, spec.symbols);
    for (std::size_t k = 0; k < n; ++k) {
        const Vector ek = spec.e(k);
        const Vector jk = spec.Jv(ek);
        for (std::size_t l = 0; l < n; ++l) {
            const Vector el = spec.e(l);
            m(k, l) = eval(F, jk, el) + eval(F, ek, spec.Jv(el));
        }
    }
    return m;
}

std::vector<Scalar> condition_i_residuals(const FrameSpec &spec)
{
    const BilinearForm m = condition_i_matrix(spec);
    std::vector<Scalar> r;
    for (std::size_t k = 0; k < m.dim(); ++k) {
        for (std::size_t l = k + 1; l < m.dim(); ++l) {
            r.push_back(m(k, l));
        }
    }
    return r;
}

namespace
{

struct ConditionInputs {
    Vector psi;
    Vector jpsi;
    TwoForm dphi;
    Scalar dphi_j;
    BilinearForm rho;
    BilinearForm rho_star;
};

ConditionInputs condition_inputs(const FrameSpec &spec)
{
    require_gate(spec);
    ConditionInputs in;
    in.psi = lee_form(spec).theta - spec.phi;
    in.jpsi = spec.Jv(in.psi);
    in.dphi = d_oneform(spec, spec.phi);
    in.dphi_j = eval_on_bivector(in.dphi, wedge_iso(spec.J));
    const Curvature curv = curvature(weyl(spec), spec);
    in.rho = ricci(curv);
    in.rho_star = star_ricci(curv, spec.J);
    return in;
}

Vector substitute_all(const Vector &v, const Assignment &a) { return substitute(v, a); }

bool all_zero(const std::vector<Scalar> &v)
{
    return std::all_of(v.begin(), v.end(), [](const Scalar &s) { return s.is_zero(); });
}

ConditionReport build_report(const FrameSpec &spec, bool four)
{
    ConditionReport r;
    r.name = spec.name;
    r.dimension = spec.dimension;
    r.symbols = spec.symbols;
    r.gate = gate_verdict(spec);
    require_gate(spec);
    r.dim4_mode = four;
    r.condition_i = normalize_system(condition_i_residuals(spec));
    r.reduction = forced_values(r.condition_i);
    const Vector expr = four ? condition_ii_dim4_expression(spec) : condition_ii_expression(spec);
    r.condition_ii_raw = normalize_system(expr);
    r.condition_ii = normalize_system(substitute_all(expr, r.reduction));
    return r;
}

} // namespace

Vector condition_ii_expression(const FrameSpec &spec)
{
    const ConditionInputs in = condition_inputs(spec);
    const std::size_t n = spec.dimension;
    const Scalar lead(Rational(static_cast<long>(n) - 2, 2));
    Vector v(n);
    for (std::size_t k = 0; k < n; ++k) {
        const Vector ek = spec.e(k);
        const Vector jk = spec.Jv(ek);
        v[k] = lead * eval(in.dphi, in.psi, ek) - eval(in.dphi, in.jpsi, jk) - dot(in.psi, jk) * in.dphi_j
            - eval(in.rho, in.psi, ek) + eval(in.rho_star, in.jpsi, jk);
    }
    return v;
}

Vector condition_ii_dim4_expression(const FrameSpec &spec)
{
    const ConditionInputs in = condition_inputs(spec);
    const std::size_t n = spec.dimension;
    Vector v(n);
    for (std::size_t k = 0; k < n; ++k) {
        const Vector ek = spec.e(k);
        const Vector jk = spec.Jv(ek);
        v[k] = dot(in.psi, jk) * in.dphi_j + eval(in.rho, in.psi, ek) - eval(in.rho_star, in.jpsi, jk);
    }
    return v;
}

GateVerdict gate_verdict(const FrameSpec &spec)
{
    GateVerdict g;
    g.integrable = nijenhuis(spec).integrable();
    const CheckReport lck = lck_check(spec);
    g.lee_identity = lck.find("lee-identity")->passed();
    g.lee_closed = lck.find("lee-closed")->passed();
    return g;
}

Assignment forced_values(const ConditionSystem &system)
{
    Assignment forced;
    for (const auto &p : system.polynomials) {
        const auto used = p.used_symbols();
        if (used.size() == 1 && p == Scalar::variable(p.symbols(), used.front())) {
            forced[used.front()] = 0;
        }
    }
    return forced;
}

ConditionReport condition_report(const FrameSpec &spec) { return build_report(spec, false); }

ConditionReport dim4(const FrameSpec &spec)
{
    if (spec.dimension != 4) {
        throw std::invalid_argument("dim4: the frame has dimension " + std::to_string(spec.dimension) + ", not 4");
    }
    return build_report(spec, true);
}

ConditionSystem condition_i(const FrameSpec &spec) { return normalize_system(condition_i_residuals(spec)); }

ConditionSystem condition_ii(const FrameSpec &spec) { return condition_report(spec).condition_ii; }

AssignmentVerdict verify_assignment(ConditionReport &report, const Assignment &assignment)
{
    for (const auto &[name, value] : assignment) {
        if (!report.symbols || !report.symbols->contains(name)) {
            throw std::invalid_argument("unknown symbol '" + name + "'");
        }
    }
    AssignmentVerdict v;
    v.assignment = assignment;
    Assignment full = assignment;
    for (const auto &[name, value] : report.reduction) {
        if (!full.count(name)) {
            v.forced[name] = value;
            full[name] = value;
        }
    }
    for (const auto &p : report.condition_i.polynomials) {
        v.condition_i.push_back(p.substitute(full));
    }
    for (const auto &p : report.condition_ii_raw.polynomials) {
        v.condition_ii.push_back(p.substitute(full));
    }
    for (const auto &s : report.symbols->names()) {
        if (!full.count(s)) {
            v.free_symbols.push_back(s);
        }
    }
    v.holds = all_zero(v.condition_i) && all_zero(v.condition_ii);
    report.assignments_checked.push_back(v);
    return v;
}

CheckReport equivalence_check(const FrameSpec &spec)
{
    const HorizontalTrace h = h_trace(spec);
    const VerticalTrace vt = v_trace(spec);
    CheckReport report;
    report.checks.push_back(make_check("h-trace-condition-ii", h.direct - condition_ii_expression(spec)));
    report.checks.push_back(make_check("v-trace-condition-i", vt.direct + condition_i_matrix(spec)));
    return report;
}

} // namespace wtw
