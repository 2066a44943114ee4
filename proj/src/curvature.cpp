#include <wtw/curvature.hpp>

namespace wtw
{

Endo Curvature::endo(std::size_t i, std::size_t j) const
{
    const std::size_t n = dim();
    Endo m(n, nullptr);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) {
            m(l, k) = r(i, j, k, l);
        }
    }
    return m;
}

Endo Curvature::endo(std::span<const Scalar> x, std::span<const Scalar> y) const
{
    const std::size_t n = dim();
    Endo m(n, nullptr);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j && !x[i].is_zero() && !y[j].is_zero()) {
                m = m + (x[i] * y[j]) * endo(i, j);
            }
        }
    }
    return m;
}

Endo Curvature::endo(const Bivector &b) const
{
    const std::size_t n = dim();
    Endo m(n, nullptr);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!b(i, j).is_zero()) {
                m = m + b(i, j) * endo(i, j);
            }
        }
    }
    return m;
}

Curvature curvature(const Connection &conn, const FrameSpec &spec)
{
    const std::size_t n = conn.dim();
    const auto &c = spec.brackets;
    const auto &g = conn.gamma;
    Curvature curv{Tensor<4>(n, spec.symbols)};
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) {
                continue;
            }
            for (std::size_t k = 0; k < n; ++k) {
                for (std::size_t p = 0; p < n; ++p) {
                    Scalar s;
                    for (std::size_t m = 0; m < n; ++m) {
                        if (!c(i, j, m).is_zero()) {
                            s += c(i, j, m) * g(m, k, p);
                        }
                        if (!g(j, k, m).is_zero()) {
                            s -= g(j, k, m) * g(i, m, p);
                        }
                        if (!g(i, k, m).is_zero()) {
                            s += g(i, k, m) * g(j, m, p);
                        }
                    }
                    curv.r(i, j, k, p) = s;
                }
            }
        }
    }
    return curv;
}

BilinearForm phi_tensor(const FrameSpec &spec)
{
    const std::size_t n = spec.dimension;
    const auto &phi = spec.phi;
    BilinearForm b = cov_deriv_oneform(levi_civita(spec), phi);
    const Scalar norm = dot(phi, phi);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            b(i, j) += phi[i] * phi[j] / Rational(2);
            if (i == j) {
                b(i, j) -= norm / Rational(4);
            }
        }
    }
    return b;
}

Curvature weyl_curvature_via_formula(const FrameSpec &spec)
{
    const std::size_t n = spec.dimension;
    Curvature curv = curvature(levi_civita(spec), spec);
    const BilinearForm P = phi_tensor(spec);
    const Rational half(1, 2);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                for (std::size_t l = 0; l < n; ++l) {
                    Scalar s;
                    if (k == l) {
                        s += P(i, j) - P(j, i);
                    }
                    if (j == l) {
                        s += P(i, k);
                    }
                    if (i == l) {
                        s -= P(j, k);
                    }
                    if (i == k) {
                        s += P(j, l);
                    }
                    if (j == k) {
                        s -= P(i, l);
                    }
                    if (!s.is_zero()) {
                        curv.r(i, j, k, l) += half * s;
                    }
                }
            }
        }
    }
    return curv;
}

BilinearForm ricci(const Curvature &curv)
{
    const std::size_t n = curv.dim();
    BilinearForm b(n, nullptr);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            Scalar s;
            for (std::size_t j = 0; j < n; ++j) {
                s += curv.r(i, j, k, j);
            }
            b(i, k) = s;
        }
    }
    return b;
}

BilinearForm star_ricci(const Curvature &curv, const Endo &J)
{
    const std::size_t n = curv.dim();
    BilinearForm b(n, nullptr);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            Scalar s;
            for (std::size_t j = 0; j < n; ++j) {
                for (std::size_t a = 0; a < n; ++a) {
                    if (J(a, j).is_zero()) {
                        continue;
                    }
                    for (std::size_t c = 0; c < n; ++c) {
                        if (!J(c, k).is_zero()) {
                            s += J(a, j) * J(c, k) * curv.r(a, i, c, j);
                        }
                    }
                }
            }
            b(i, k) = s;
        }
    }
    return b;
}

Scalar codifferential(const Connection &lc, std::span<const Scalar> omega)
{
    const BilinearForm d = cov_deriv_oneform(lc, omega);
    Scalar s;
    for (std::size_t i = 0; i < lc.dim(); ++i) {
        s -= d(i, i);
    }
    return s;
}

Vector codifferential(const Connection &lc, const Endo &J)
{
    const std::size_t n = lc.dim();
    const EndoDerivative d = cov_deriv_endo(lc, J);
    Vector v(n);
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t i = 0; i < n; ++i) {
            v[p] -= d[i](p, i);
        }
    }
    return v;
}

CheckReport identity_suite(const Curvature &curv, const FrameSpec &spec)
{
    const std::size_t n = spec.dimension;
    const TwoForm dphi = d_oneform(spec, spec.phi);
    const auto &r = curv.r;
    CheckReport report;

    Tensor<4> bianchi(n, spec.symbols);
    Tensor<4> metric(n, spec.symbols);
    Tensor<4> pairs(n, spec.symbols);
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            for (std::size_t z = 0; z < n; ++z) {
                for (std::size_t t = 0; t < n; ++t) {
                    bianchi(x, y, z, t) = r(x, y, z, t) + r(y, z, x, t) + r(z, x, y, t);

                    Scalar m = r(x, y, z, t) + r(x, y, t, z);
                    if (z == t) {
                        m -= dphi(x, y);
                    }
                    metric(x, y, z, t) = m;

                    Scalar p = Rational(2) * (r(x, y, z, t) - r(z, t, x, y));
                    if (z == t) {
                        p -= dphi(x, y);
                    }
                    if (x == y) {
                        p += dphi(z, t);
                    }
                    if (y == t) {
                        p -= dphi(x, z);
                    }
                    if (x == z) {
                        p -= dphi(y, t);
                    }
                    if (x == t) {
                        p += dphi(y, z);
                    }
                    if (y == z) {
                        p += dphi(x, t);
                    }
                    pairs(x, y, z, t) = p;
                }
            }
        }
    }
    report.checks.push_back(make_check("bianchi", bianchi));
    report.checks.push_back(make_check("metric-defect", metric));
    report.checks.push_back(make_check("pair-symmetry-defect", pairs));
    report.checks.push_back(make_check("formula", r - weyl_curvature_via_formula(spec).r));

    const BilinearForm rho = ricci(curv);
    const BilinearForm rho_star = star_ricci(curv, spec.J);
    BilinearForm anti = rho - rho.transposed();
    BilinearForm twist = rho_star - pullback_by(rho_star, spec.J).transposed();
    const BilinearForm dphi_b = dphi.retag<BilinearTag>();
    const BilinearForm dphi_jj = pullback_by(dphi_b, spec.J);
    const Scalar dphi_j = eval_on_bivector(dphi, wedge_iso(spec.J));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            anti(i, k) -= dphi(i, k) * Rational(static_cast<long>(n), 2);
            twist(i, k) -= dphi_b(i, k) + dphi_jj(i, k) + dphi_j * spec.J(i, k);
        }
    }
    report.checks.push_back(make_check("ricci-antisymmetry", anti));
    report.checks.push_back(make_check("star-ricci-twist", twist));
    return report;
}

CheckReport ricci_formula_check(const FrameSpec &spec)
{
    const std::size_t n = spec.dimension;
    const auto &phi = spec.phi;
    const auto &J = spec.J;
    const Connection lc = levi_civita(spec);
    const Curvature rg = curvature(lc, spec);
    const Curvature rd = curvature(weyl(spec), spec);

    const BilinearForm nphi = cov_deriv_oneform(lc, phi);
    const BilinearForm nphi_jj = pullback_by(nphi, J);
    const Scalar norm = dot(phi, phi);
    const Scalar delta_phi = codifferential(lc, phi);
    Vector jphi(n);
    for (std::size_t k = 0; k < n; ++k) {
        jphi[k] = dot(phi, spec.Jv(spec.e(k)));
    }
    const Scalar delta_jphi = codifferential(lc, jphi);
    const Scalar phi_delta_j = dot(phi, codifferential(lc, J));

    BilinearForm res = ricci(rd) - ricci(rg);
    BilinearForm res_star = star_ricci(rd, J) - star_ricci(rg, J);
    const Rational nn(static_cast<long>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const Scalar g_ik = Scalar(i == k ? 1 : 0);
            Scalar e = Rational((nn - 1) / 2) * nphi(i, k) - nphi(k, i) / Rational(2)
                - Rational((nn - 2) / 4) * (norm * g_ik - phi[i] * phi[k]) - delta_phi * g_ik / Rational(2);
            res(i, k) -= e;

            // g(E_i, J E_k) = J(i, k)
            Scalar es = nphi(i, k) - (nphi(k, i) - nphi_jj(i, k)) / Rational(2)
                + (phi[i] * phi[k] + jphi[i] * jphi[k] - norm * g_ik) / Rational(4)
                - (delta_jphi - phi_delta_j) * J(i, k) / Rational(2);
            res_star(i, k) -= es;
        }
    }
    CheckReport report;
    report.checks.push_back(make_check("ricci-formula", res));
    report.checks.push_back(make_check("star-ricci-formula", res_star));
    return report;
}

} // namespace wtw
