#include <wtw/hermitian.hpp>

namespace wtw
{

namespace
{

Scalar eval3(const ThreeForm &t, std::span<const Scalar> x, std::span<const Scalar> y, std::span<const Scalar> z)
{
    const std::size_t n = t.dim();
    Scalar s;
    for (std::size_t i = 0; i < n; ++i) {
        if (x[i].is_zero()) {
            continue;
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (y[j].is_zero()) {
                continue;
            }
            for (std::size_t k = 0; k < n; ++k) {
                if (!z[k].is_zero() && !t(i, j, k).is_zero()) {
                    s += x[i] * y[j] * z[k] * t(i, j, k);
                }
            }
        }
    }
    return s;
}

Rational lee_factor(std::size_t n) { return Rational(2, static_cast<long>(n) - 2); }

} // namespace

TwoForm fundamental_form(const FrameSpec &spec)
{
    const std::size_t n = spec.dimension;
    TwoForm f(n, spec.symbols);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            f(i, j) = spec.J(j, i);
        }
    }
    return f;
}

Nijenhuis nijenhuis(const FrameSpec &spec)
{
    const std::size_t n = spec.dimension;
    Nijenhuis N{Tensor<3>(n, spec.symbols)};
    for (std::size_t i = 0; i < n; ++i) {
        const Vector y = spec.e(i);
        const Vector jy = spec.Jv(y);
        for (std::size_t j = 0; j < n; ++j) {
            const Vector z = spec.e(j);
            const Vector jz = spec.Jv(z);
            const Vector v = spec.bracket(jy, jz) - spec.bracket(y, z)
                - spec.Jv(spec.bracket(y, jz)) - spec.Jv(spec.bracket(jy, z));
            for (std::size_t k = 0; k < n; ++k) {
                N.n(i, j, k) = v[k];
            }
        }
    }
    return N;
}

Vector codifferential(const Connection &lc, const TwoForm &form)
{
    const std::size_t n = lc.dim();
    const auto &g = lc.gamma;
    Vector v(n);
    for (std::size_t y = 0; y < n; ++y) {
        Scalar s;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t m = 0; m < n; ++m) {
                // (nabla_i F)(E_i, E_y) = -F(nabla_i E_i, E_y) - F(E_i, nabla_i E_y)
                if (!g(i, i, m).is_zero()) {
                    s += g(i, i, m) * form(m, y);
                }
                if (!g(i, y, m).is_zero()) {
                    s += g(i, y, m) * form(i, m);
                }
            }
        }
        v[y] = s;
    }
    return v;
}

LeeForm lee_form(const FrameSpec &spec)
{
    const std::size_t n = spec.dimension;
    const Connection lc = levi_civita(spec);
    const Vector delta_omega = codifferential(lc, fundamental_form(spec));
    LeeForm lee;
    lee.theta.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        Scalar s;
        for (std::size_t a = 0; a < n; ++a) {
            if (!spec.J(a, k).is_zero()) {
                s += spec.J(a, k) * delta_omega[a];
            }
        }
        lee.theta[k] = -lee_factor(n) * s;
    }
    lee.B = sharp(spec, lee.theta);
    lee.B_alt = Scalar(lee_factor(n)) * spec.Jv(codifferential(lc, spec.J));
    return lee;
}

HermitianData hermitian_data(const FrameSpec &spec)
{
    const LeeForm lee = lee_form(spec);
    return {fundamental_form(spec), lee.theta, lee.B, nijenhuis(spec)};
}

CheckReport lck_check(const FrameSpec &spec)
{
    const TwoForm omega = fundamental_form(spec);
    const Vector theta = lee_form(spec).theta;
    CheckReport report;
    report.checks.push_back(make_check("lee-identity", d_twoform(spec, omega) - wedge_forms(theta, omega)));
    report.checks.push_back(make_check("lee-closed", d_oneform(spec, theta)));
    return report;
}

CheckReport nabla_j_checks(const FrameSpec &spec)
{
    const std::size_t n = spec.dimension;
    const auto &J = spec.J;
    const Connection lc = levi_civita(spec);
    const EndoDerivative dj = cov_deriv_endo(lc, J);
    const ThreeForm domega = d_twoform(spec, fundamental_form(spec));
    const Nijenhuis N = nijenhuis(spec);
    const LeeForm lee = lee_form(spec);
    const Vector &B = lee.B;
    const Vector JB = spec.Jv(B);

    Tensor<3> from_omega(n, spec.symbols);
    Tensor<3> closed(n, spec.symbols);
    Tensor<3> bivector(n, spec.symbols);
    Tensor<3> gray(n, spec.symbols);
    for (std::size_t x = 0; x < n; ++x) {
        const Vector ex = spec.e(x);
        const Vector jx = spec.Jv(ex);
        Endo dj_jx(n, spec.symbols);
        for (std::size_t a = 0; a < n; ++a) {
            if (!J(a, x).is_zero()) {
                dj_jx = dj_jx + J(a, x) * dj[a];
            }
        }
        const Endo jdj = J * dj[x];
        const Bivector expected = Scalar(Rational(1, 2)) * (wedge(B, ex) - wedge(JB, jx));
        for (std::size_t y = 0; y < n; ++y) {
            const Vector ey = spec.e(y);
            const Vector jy = spec.Jv(ey);
            const Vector gray_rhs = wtw::apply(dj_jx, jy);
            for (std::size_t z = 0; z < n; ++z) {
                const Vector ez = spec.e(z);
                Scalar nx;
                for (std::size_t p = 0; p < n; ++p) {
                    if (!N.n(y, z, p).is_zero()) {
                        nx += N.n(y, z, p) * J(p, x);
                    }
                }
                from_omega(x, y, z) = Scalar(2) * dj[x](z, y) - domega(x, y, z)
                    + eval3(domega, ex, jy, spec.Jv(ez)) - nx;

                // here z plays the role of the output component
                Scalar c = J(y, x) * B[z] - B[y] * J(z, x) + JB[z] * Scalar(x == y ? 1 : 0)
                    - JB[y] * Scalar(x == z ? 1 : 0);
                closed(x, y, z) = Scalar(2) * dj[x](z, y) - c;

                bivector(x, y, z) = jdj(z, y) - expected(y, z);
                gray(x, y, z) = dj[x](z, y) - gray_rhs[z];
            }
        }
    }

    CheckReport report;
    report.checks.push_back(make_check("nabla-j-from-omega", from_omega));
    report.checks.push_back(make_check("nabla-j-closed-form", closed));
    report.checks.push_back(make_check("j-nabla-j-bivector", bivector));
    report.checks.push_back(make_check("gray-criterion", gray));

    const FrameSpec lee_spec = with_phi(spec, lee.theta);
    const EndoDerivative dlee = cov_deriv_endo(weyl(lee_spec), J);
    Tensor<3> parallel(n, spec.symbols);
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = 0; q < n; ++q) {
                parallel(x, p, q) = dlee[x](p, q);
            }
        }
    }
    report.checks.push_back(make_check("lee-weyl-parallel", parallel));
    return report;
}

void require_gate(const FrameSpec &spec)
{
    const Nijenhuis N = nijenhuis(spec);
    if (!N.integrable()) {
        const Check c = make_check("nijenhuis", N.n);
        throw GateError(kAssumptionIntegrable, std::to_string(c.nonzero_count) + " nonzero Nijenhuis components, first " + c.nonzero.front());
    }
    const CheckReport lck = lck_check(spec);
    const Check *lee = lck.find("lee-identity");
    if (!lee->passed()) {
        throw GateError(kAssumptionLee, std::to_string(lee->nonzero_count) + " nonzero residual components, first " + lee->nonzero.front());
    }
}

} // namespace wtw
