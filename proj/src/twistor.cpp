#include <wtw/twistor.hpp>

#include <stdexcept>

namespace wtw
{

namespace
{

Scalar delta(std::size_t i, std::size_t j) { return Scalar(i == j ? 1 : 0); }

// S(u, v) X = g(u, X) v - g(v, X) u
Endo s_endo(const Vector &u, const Vector &v)
{
    const std::size_t n = u.size();
    Endo s(n, nullptr);
    for (std::size_t q = 0; q < n; ++q) {
        for (std::size_t l = 0; l < n; ++l) {
            s(q, l) = v[q] * u[l] - u[q] * v[l];
        }
    }
    return s;
}

bool constant_entries(const Endo &a)
{
    for (const auto &x : a.flat()) {
        if (!x.is_constant()) {
            return false;
        }
    }
    return true;
}

// The index and sign of J E_i if J maps E_i to a signed frame vector.
bool signed_image(const Endo &J, std::size_t i, std::size_t &p, int &sign)
{
    std::size_t hits = 0;
    for (std::size_t q = 0; q < J.dim(); ++q) {
        if (J(q, i).is_zero()) {
            continue;
        }
        const Rational c = J(q, i).constant_value();
        if (c != 1 && c != -1) {
            return false;
        }
        p = q;
        sign = c > 0 ? 1 : -1;
        ++hits;
    }
    return hits == 1;
}

bool adapted_pairs(const Endo &J, std::vector<std::pair<Vector, Vector>> &pairs)
{
    const std::size_t n = J.dim();
    std::vector<bool> used(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        if (used[i]) {
            continue;
        }
        std::size_t p = 0;
        int sign = 0;
        if (!signed_image(J, i, p, sign) || p == i || used[p]) {
            return false;
        }
        used[i] = used[p] = true;
        Vector u(n), v(n);
        u[i] = Scalar(1);
        v[p] = Scalar(sign);
        pairs.emplace_back(u, v);
    }
    return true;
}

Endo scaled(const Endo &a, const Scalar &s) { return s * a; }

} // namespace

Scalar g_fiber(const Endo &a, const Endo &b)
{
    Scalar s;
    const std::size_t n = a.dim();
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            if (!a(k, i).is_zero() && !b(k, i).is_zero()) {
                s += a(k, i) * b(k, i);
            }
        }
    }
    return s * Rational(1, 2);
}

bool is_skew(const Endo &a) { return a.is_antisymmetric(); }

bool is_vertical(const Endo &J, const Endo &a) { return is_skew(a) && (a * J + J * a).is_zero(); }

Endo vertical_projection(const Endo &J, const Endo &a) { return Scalar(Rational(1, 2)) * (a + J * a * J); }

Vector VerticalBasis::coordinates(const Endo &w) const
{
    Vector c(size());
    for (std::size_t k = 0; k < size(); ++k) {
        c[k] = g_fiber(w, elements[k]) / norms[k];
    }
    return c;
}

Endo VerticalBasis::combine(std::span<const Scalar> coefficients) const
{
    const std::size_t n = elements.empty() ? 0 : elements.front().dim();
    Endo r(n, nullptr);
    for (std::size_t k = 0; k < size(); ++k) {
        if (!coefficients[k].is_zero()) {
            r = r + coefficients[k] * elements[k];
        }
    }
    return r;
}

VerticalBasis vertical_basis(const Endo &J)
{
    if (!constant_entries(J)) {
        throw std::invalid_argument("vertical_basis: J must have constant entries");
    }
    const std::size_t n = J.dim();
    const std::size_t m = n / 2;
    VerticalBasis basis;

    std::vector<std::pair<Vector, Vector>> pairs;
    if (adapted_pairs(J, pairs)) {
        for (std::size_t r = 0; r + 1 < m; ++r) {
            for (std::size_t s = r + 1; s < m; ++s) {
                const auto &[ur, vr] = pairs[r];
                const auto &[us, vs] = pairs[s];
                const std::string rs = std::to_string(r + 1) + "," + std::to_string(s + 1);
                basis.elements.push_back(s_endo(ur, us) - s_endo(vr, vs));
                basis.labels.push_back("A(" + rs + ")");
                basis.elements.push_back(s_endo(ur, vs) + s_endo(vr, us));
                basis.labels.push_back("B(" + rs + ")");
            }
        }
        for (const auto &v : basis.elements) {
            basis.norms.push_back(g_fiber(v, v).constant_value());
        }
        return basis;
    }

    // exact Gram-Schmidt on the projections of the S_ij
    const std::size_t target = m * m - m;
    for (std::size_t i = 0; i < n && basis.size() < target; ++i) {
        for (std::size_t j = i + 1; j < n && basis.size() < target; ++j) {
            Vector u(n), v(n);
            u[i] = Scalar(1);
            v[j] = Scalar(1);
            Endo w = vertical_projection(J, s_endo(u, v));
            for (std::size_t k = 0; k < basis.size(); ++k) {
                const Scalar c = g_fiber(w, basis.elements[k]) / basis.norms[k];
                if (!c.is_zero()) {
                    w = w - scaled(basis.elements[k], c);
                }
            }
            if (w.is_zero()) {
                continue;
            }
            basis.norms.push_back(g_fiber(w, w).constant_value());
            basis.elements.push_back(w);
            basis.labels.push_back("V" + std::to_string(basis.size()));
        }
    }
    return basis;
}

Endo curvature_on_endo(const Curvature &curv, std::size_t i, std::size_t j, const Endo &a)
{
    return commutator(curv.endo(i, j), a);
}

CheckReport endo_curvature_check(const Connection &conn, const Curvature &curv, const FrameSpec &spec,
                                 const Endo &a)
{
    const std::size_t n = spec.dimension;
    const EndoDerivative da = cov_deriv_endo(conn, a);
    std::vector<EndoDerivative> dda;
    dda.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        dda.push_back(cov_deriv_endo(conn, da[j]));
    }
    Tensor<4> res(n, spec.symbols);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            Endo lhs = cov_deriv_endo_along(conn, spec.bracket(spec.e(i), spec.e(j)), a) - dda[j][i] + dda[i][j];
            const Endo diff = lhs - curvature_on_endo(curv, i, j, a);
            for (std::size_t p = 0; p < n; ++p) {
                for (std::size_t q = 0; q < n; ++q) {
                    res(i, j, p, q) = diff(p, q);
                }
            }
        }
    }
    CheckReport report;
    report.checks.push_back(make_check("endo-curvature", res));
    return report;
}

CheckReport lemma_rab_check(const FrameSpec &spec, const Endo &a, const Endo &b)
{
    const std::size_t n = spec.dimension;
    const Curvature curv = curvature(weyl(spec), spec);
    const TwoForm dphi = d_oneform(spec, spec.phi);
    const Endo c = commutator(a, b);
    const Bivector cw = wedge_iso(c);
    const Endo rc = curv.endo(cw);
    const Scalar dphi_c = eval_on_bivector(dphi, cw);
    BilinearForm res(n, spec.symbols);
    for (std::size_t i = 0; i < n; ++i) {
        const Vector ei = spec.e(i);
        for (std::size_t j = 0; j < n; ++j) {
            const Vector ej = spec.e(j);
            const Scalar lhs = g_fiber(curvature_on_endo(curv, i, j, a), b);
            const Scalar corr = dphi_c * delta(i, j) + eval(dphi, wtw::apply(c, ei), ej) + eval(dphi, ei, wtw::apply(c, ej));
            res(i, j) = lhs - rc(j, i) + Scalar(Rational(1, 2)) * corr;
        }
    }
    CheckReport report;
    report.checks.push_back(make_check("rab", res));
    return report;
}

CheckReport lemma_jv_check(const FrameSpec &spec, const Endo &V)
{
    if (!is_vertical(spec.J, V)) {
        throw std::invalid_argument("lemma_jv_check: V is not vertical at J");
    }
    const std::size_t n = spec.dimension;
    const Curvature curv = curvature(weyl(spec), spec);
    BilinearForm res(n, spec.symbols);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            res(i, j) = g_fiber(curvature_on_endo(curv, i, j, spec.J), V)
                + g_fiber(curvature_on_endo(curv, i, j, V), spec.J);
        }
    }
    CheckReport report;
    report.checks.push_back(make_check("jv", res));
    return report;
}

CheckReport lemma_rjdj_check(const FrameSpec &spec)
{
    const std::size_t n = spec.dimension;
    const Endo &J = spec.J;
    const Connection D = weyl(spec);
    const Connection lc = levi_civita(spec);
    const Curvature curv = curvature(D, spec);
    const EndoDerivative dj = cov_deriv_endo(D, J);
    const EndoDerivative nj = cov_deriv_endo(lc, J);
    const TwoForm dphi = d_oneform(spec, spec.phi);
    const Vector &phi = spec.phi;
    const Vector jphi = spec.Jv(phi);
    const Scalar half(Rational(1, 2));

    Tensor<3> weyl_form(n, spec.symbols);
    Tensor<3> expanded(n, spec.symbols);
    Tensor<3> bivectors(n, spec.symbols);
    for (std::size_t y = 0; y < n; ++y) {
        const Vector ey = spec.e(y);
        const Vector jy = spec.Jv(ey);
        const Endo jdj = J * dj[y];
        const Endo jnj = J * nj[y];
        const Bivector b1 = wedge_iso(jdj);
        const Bivector b2 = wedge_iso(jnj);
        const Bivector bphi = wedge(phi, ey) - wedge(jphi, jy);
        const Bivector b_expected = b2 - half * bphi;
        const Endo r1 = curv.endo(b1);
        const Endo r2 = curv.endo(b2);
        const Endo rphi = curv.endo(bphi);
        const Scalar dphi_b1 = eval_on_bivector(dphi, b1);
        const Scalar dphi_b2 = eval_on_bivector(dphi, b2);
        const Scalar dphi_bphi = eval_on_bivector(dphi, bphi);
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = 0; q < n; ++q) {
                bivectors(y, p, q) = b1(p, q) - b_expected(p, q);
            }
        }
        for (std::size_t x = 0; x < n; ++x) {
            const Vector ex = spec.e(x);
            const Vector jx = spec.Jv(ex);
            for (std::size_t z = 0; z < n; ++z) {
                const Vector ez = spec.e(z);
                const Vector jz = spec.Jv(ez);
                const Scalar lhs = g_fiber(curvature_on_endo(curv, x, z, J), dj[y]);

                const Scalar rhs1 = Scalar(2) * r1(z, x) - dphi_b1 * delta(x, z)
                    - eval(dphi, wtw::apply(jdj, ex), ez) - eval(dphi, ex, wtw::apply(jdj, ez));
                weyl_form(x, y, z) = lhs - rhs1;

                Scalar rhs2 = Scalar(2) * r2(z, x) - rphi(z, x) - dphi_b2 * delta(x, z)
                    - eval(dphi, wtw::apply(jnj, ex), ez) - eval(dphi, ex, wtw::apply(jnj, ez))
                    + half * dphi_bphi * delta(x, z);
                rhs2 += half
                    * (dot(phi, jx) * eval(dphi, jy, ez) + phi[x] * eval(dphi, ey, ez)
                       - dot(ey, jx) * eval(dphi, jphi, ez) - delta(y, x) * eval(dphi, phi, ez));
                rhs2 += half
                    * (dot(phi, jz) * eval(dphi, ex, jy) + phi[z] * eval(dphi, ex, ey)
                       - dot(ey, jz) * eval(dphi, ex, jphi) - delta(y, z) * eval(dphi, ex, phi));
                expanded(x, y, z) = lhs - rhs2;
            }
        }
    }
    CheckReport report;
    report.checks.push_back(make_check("jdj-bivector", bivectors));
    report.checks.push_back(make_check("r-j-dj-weyl", weyl_form));
    report.checks.push_back(make_check("r-j-dj", expanded));
    return report;
}

DPrimeData dprime_eval(const FrameSpec &spec, const std::string &t_name)
{
    const std::size_t n = spec.dimension;
    std::vector<std::string> names = spec.symbols ? spec.symbols->names() : std::vector<std::string>{};
    for (const auto &s : names) {
        if (s == t_name) {
            throw std::invalid_argument("dprime_eval: symbol '" + t_name + "' already declared");
        }
    }
    names.push_back(t_name);
    DPrimeData data;
    data.symbols = make_symbols(names);
    const SymbolSetPtr &ts = data.symbols;
    const Scalar t = Scalar::variable(ts, t_name);
    data.basis = vertical_basis(spec.J);
    const VerticalBasis &basis = data.basis;
    const std::size_t nv = basis.size();

    data.gram.assign(n + nv, Vector(n + nv, Scalar::constant(ts, 0)));
    for (std::size_t i = 0; i < n; ++i) {
        data.gram[i][i] = Scalar::constant(ts, 1);
    }
    for (std::size_t a = 0; a < nv; ++a) {
        for (std::size_t b = 0; b < nv; ++b) {
            const Scalar G = g_fiber(basis.elements[a], basis.elements[b]);
            data.gram[n + a][n + b] = a == b ? t * (G / basis.norms[a]) : t * G;
        }
    }

    const Connection D = weyl(spec);
    const Curvature curv = curvature(D, spec);
    data.hh_horizontal = Tensor<3>(n, ts);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                data.hh_horizontal(i, j, k) = D.gamma(i, j, k).embed(ts);
            }
        }
    }

    data.hh_vertical.assign(n, std::vector<Vector>(n));
    data.vh_pairing.assign(n, std::vector<Vector>(n));
    Tensor<4> span_res(n, spec.symbols);
    Tensor<4> proj_res(n, spec.symbols);
    const Scalar half(Rational(1, 2));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const Endo rj = curvature_on_endo(curv, i, j, spec.J);
            const Endo w = half * rj;
            const Vector c = basis.coordinates(w);
            const Endo back = basis.combine(c);
            const Endo proj = vertical_projection(spec.J, w);
            Vector cv(nv), pv(nv);
            for (std::size_t a = 0; a < nv; ++a) {
                cv[a] = c[a].embed(ts);
                pv[a] = -half * t * g_fiber(rj, basis.elements[a]).embed(ts);
            }
            data.hh_vertical[i][j] = cv;
            data.vh_pairing[i][j] = pv;
            for (std::size_t p = 0; p < n; ++p) {
                for (std::size_t q = 0; q < n; ++q) {
                    span_res(i, j, p, q) = w(p, q) - back(p, q);
                    proj_res(i, j, p, q) = w(p, q) - proj(p, q);
                }
            }
        }
    }
    data.checks.checks.push_back(make_check("hh-vertical-span", span_res));
    data.checks.checks.push_back(make_check("hh-vertical-projection", proj_res));
    return data;
}

HorizontalTrace h_trace(const FrameSpec &spec)
{
    require_gate(spec);
    const std::size_t n = spec.dimension;
    const Endo &J = spec.J;
    const Connection D = weyl(spec);
    const Connection lc = levi_civita(spec);
    const Curvature curv = curvature(D, spec);
    const EndoDerivative dj = cov_deriv_endo(D, J);
    const EndoDerivative nj = cov_deriv_endo(lc, J);
    const BilinearForm rho = ricci(curv);
    const BilinearForm rho_star = star_ricci(curv, J);
    const TwoForm dphi = d_oneform(spec, spec.phi);
    const Vector &phi = spec.phi;
    const Vector jphi = spec.Jv(phi);
    const Vector j_delta_j = spec.Jv(codifferential(lc, J));
    const Scalar dphi_j = eval_on_bivector(dphi, wedge_iso(J));

    std::vector<Endo> jnj;
    std::vector<Endo> r_jnj;
    for (std::size_t i = 0; i < n; ++i) {
        jnj.push_back(J * nj[i]);
        r_jnj.push_back(curv.endo(wedge_iso(jnj.back())));
    }

    HorizontalTrace tr;
    tr.direct.assign(n, Scalar());
    tr.expansion.assign(n, Scalar());
    for (std::size_t k = 0; k < n; ++k) {
        const Vector ek = spec.e(k);
        const Vector jk = spec.Jv(ek);
        Scalar direct;
        Scalar curv_trace;
        Scalar dphi_trace;
        for (std::size_t i = 0; i < n; ++i) {
            direct += g_fiber(curvature_on_endo(curv, i, k, J), dj[i]);
            curv_trace += r_jnj[i](k, i);
            dphi_trace += eval(dphi, spec.e(i), wtw::apply(jnj[i], ek));
        }
        tr.direct[k] = direct;
        tr.expansion[k] = Scalar(2) * curv_trace + eval(rho, phi, ek) - eval(rho_star, jphi, jk)
            - eval_on_bivector(dphi, wedge_iso(jnj[k])) + eval(dphi, j_delta_j, ek) - dphi_trace
            + dot(phi, jk) * dphi_j - Scalar(Rational(static_cast<long>(n) - 2, 2)) * eval(dphi, phi, ek)
            + eval(dphi, jphi, jk);
    }
    return tr;
}

VerticalTrace v_trace(const FrameSpec &spec)
{
    require_gate(spec);
    const std::size_t n = spec.dimension;
    const Endo &J = spec.J;
    const Endo T = second_cov_deriv_endo(weyl(spec), J).trace();
    const Vector theta = lee_form(spec).theta;
    const long nn = static_cast<long>(n);
    const Scalar c(Rational(nn * (nn - 4), 2 * (nn - 2)));
    const TwoForm F = d_oneform(spec, spec.phi - theta);
    const TwoForm Fw = F + c * wedge_forms(spec.phi, theta);

    VerticalTrace tr{BilinearForm(n, spec.symbols), BilinearForm(n, spec.symbols), BilinearForm(n, spec.symbols)};
    for (std::size_t k = 0; k < n; ++k) {
        const Vector ek = spec.e(k);
        const Vector jk = spec.Jv(ek);
        const Vector tjk = wtw::apply(T, jk);
        for (std::size_t l = 0; l < n; ++l) {
            const Vector el = spec.e(l);
            const Vector jl = spec.Jv(el);
            tr.direct(k, l) = T(l, k) - dot(tjk, jl);
            tr.closed_form(k, l) = eval(F, jk, el) + eval(F, ek, jl);
            tr.closed_form_with_wedge(k, l) = eval(Fw, jk, el) + eval(Fw, ek, jl);
        }
    }
    return tr;
}

namespace
{

Endo along(const EndoDerivative &d, std::span<const Scalar> x)
{
    Endo r(d.front().dim(), nullptr);
    for (std::size_t a = 0; a < x.size(); ++a) {
        if (!x[a].is_zero()) {
            r = r + x[a] * d[a];
        }
    }
    return r;
}

} // namespace

CheckReport trace_checks(const FrameSpec &spec)
{
    const HorizontalTrace h = h_trace(spec);
    const VerticalTrace v = v_trace(spec);

    const std::size_t n = spec.dimension;
    const long nn = static_cast<long>(n);
    const Endo &J = spec.J;
    const Connection lc = levi_civita(spec);
    const EndoDerivative nj = cov_deriv_endo(lc, J);
    const Endo Tlc = second_cov_deriv_endo(lc, J).trace();
    const Vector &phi = spec.phi;
    const Vector delta_j = codifferential(lc, J);
    const TwoForm dphi = d_oneform(spec, phi);
    const LeeForm lee = lee_form(spec);
    const Vector &B = lee.B;
    const Vector JB = spec.Jv(B);
    const TwoForm dtheta = d_oneform(spec, lee.theta);
    const Endo nj_phi = along(nj, phi);

    BilinearForm expansion(n, spec.symbols);
    BilinearForm lc_closed(n, spec.symbols);
    for (std::size_t k = 0; k < n; ++k) {
        const Vector z = spec.e(k);
        const Vector jz = spec.Jv(z);
        const Endo nj_jz = along(nj, jz);
        for (std::size_t l = 0; l < n; ++l) {
            const Vector u = spec.e(l);
            const Vector ju = spec.Jv(u);
            const Endo nj_ju = along(nj, ju);
            Scalar rhs = dot(wtw::apply(Tlc, z), u) - dot(wtw::apply(Tlc, jz), ju);
            rhs += Scalar(2 - nn) * dot(wtw::apply(nj_phi, z), u);
            rhs += -dot(phi, z) * dot(delta_j, u) + dot(phi, jz) * dot(delta_j, ju) + dot(phi, u) * dot(delta_j, z)
                - dot(phi, ju) * dot(delta_j, jz);
            rhs += -dot(wtw::apply(nj[k], phi), u) + dot(wtw::apply(nj[l], phi), z)
                + dot(wtw::apply(nj_jz, phi), ju) - dot(wtw::apply(nj_ju, phi), jz);
            rhs += eval(dphi, jz, u) + eval(dphi, z, ju);
            expansion(k, l) = v.direct(k, l) - rhs;

            const Scalar closed = Scalar(Rational(nn - 4, 2)) * (dot(JB, z) * dot(B, u) - dot(JB, u) * dot(B, z))
                + eval(dtheta, u, jz) + eval(dtheta, ju, z) - dot(B, B) * dot(jz, u);
            lc_closed(k, l) = Scalar(2) * dot(wtw::apply(Tlc, z), u) - closed;
        }
    }

    CheckReport report;
    report.checks.push_back(make_check("h-trace-expansion", h.direct - h.expansion));
    report.checks.push_back(make_check("v-trace-expansion", expansion));
    report.checks.push_back(make_check("lc-trace-closed-form", lc_closed));
    report.checks.push_back(make_check("v-trace-closed-form", v.direct - v.closed_form));
    return report;
}

} // namespace wtw
