#include <wtw/connection.hpp>

namespace wtw
{

Endo Connection::matrix(std::size_t i) const
{
    const std::size_t n = dim();
    Endo m(n, nullptr);
    for (std::size_t l = 0; l < n; ++l) {
        for (std::size_t p = 0; p < n; ++p) {
            m(p, l) = gamma(i, l, p);
        }
    }
    return m;
}

Vector Connection::along(std::span<const Scalar> x, std::span<const Scalar> y) const
{
    const std::size_t n = dim();
    Vector r(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (x[i].is_zero()) {
            continue;
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (y[j].is_zero()) {
                continue;
            }
            const Scalar xy = x[i] * y[j];
            for (std::size_t k = 0; k < n; ++k) {
                if (!gamma(i, j, k).is_zero()) {
                    r[k] += xy * gamma(i, j, k);
                }
            }
        }
    }
    return r;
}

Connection levi_civita(const FrameSpec &spec)
{
    const std::size_t n = spec.dimension;
    const auto &c = spec.brackets;
    Connection conn;
    conn.kind = ConnectionKind::LeviCivita;
    conn.gamma = Tensor<3>(n, spec.symbols);
    // Koszul formula with constant metric coefficients.
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                conn.gamma(i, j, k) = (c(i, j, k) - c(i, k, j) - c(j, k, i)) / Rational(2);
            }
        }
    }
    return conn;
}

Connection weyl(const FrameSpec &spec)
{
    const std::size_t n = spec.dimension;
    const auto &phi = spec.phi;
    Connection conn = levi_civita(spec);
    conn.kind = ConnectionKind::Weyl;
    const Rational half(1, 2);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                Scalar corr;
                if (j == k) {
                    corr += phi[i];
                }
                if (i == k) {
                    corr += phi[j];
                }
                if (i == j) {
                    corr -= phi[k];
                }
                if (!corr.is_zero()) {
                    conn.gamma(i, j, k) -= half * corr;
                }
            }
        }
    }
    return conn;
}

ConnectionResiduals connection_residuals(const FrameSpec &spec, const Connection &conn)
{
    const std::size_t n = spec.dimension;
    ConnectionResiduals r{Tensor<3>(n, spec.symbols), Tensor<3>(n, spec.symbols)};
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                r.torsion(i, j, k) = conn.gamma(i, j, k) - conn.gamma(j, i, k) - spec.brackets(i, j, k);
                Scalar m = conn.gamma(i, j, k) + conn.gamma(i, k, j);
                if (conn.kind == ConnectionKind::Weyl && j == k) {
                    m += spec.phi[i];
                }
                r.metricity(i, j, k) = m;
            }
        }
    }
    return r;
}

Vector weyl_form_of(const Connection &conn)
{
    const std::size_t n = conn.dim();
    Vector phi(n);
    for (std::size_t i = 0; i < n; ++i) {
        Scalar s;
        for (std::size_t j = 0; j < n; ++j) {
            s += conn.gamma(i, j, j);
        }
        phi[i] = s * Rational(-2, static_cast<long>(n));
    }
    return phi;
}

BilinearForm cov_deriv_oneform(const Connection &conn, std::span<const Scalar> omega)
{
    const std::size_t n = conn.dim();
    BilinearForm b(n, nullptr);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            Scalar s;
            for (std::size_t k = 0; k < n; ++k) {
                if (!conn.gamma(i, j, k).is_zero() && !omega[k].is_zero()) {
                    s -= conn.gamma(i, j, k) * omega[k];
                }
            }
            b(i, j) = s;
        }
    }
    return b;
}

EndoDerivative cov_deriv_endo(const Connection &conn, const Endo &s)
{
    EndoDerivative d;
    d.reserve(conn.dim());
    for (std::size_t i = 0; i < conn.dim(); ++i) {
        d.push_back(commutator(conn.matrix(i), s));
    }
    return d;
}

Endo cov_deriv_endo_along(const Connection &conn, std::span<const Scalar> x, const Endo &s)
{
    const std::size_t n = conn.dim();
    Endo r(n, nullptr);
    for (std::size_t i = 0; i < n; ++i) {
        if (!x[i].is_zero()) {
            r = r + x[i] * commutator(conn.matrix(i), s);
        }
    }
    return r;
}

SecondEndoDerivative second_cov_deriv_endo(const Connection &conn, const Endo &s)
{
    const std::size_t n = conn.dim();
    const EndoDerivative first = cov_deriv_endo(conn, s);
    SecondEndoDerivative r;
    r.n = n;
    r.entries.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        const Endo gi = conn.matrix(i);
        for (std::size_t j = 0; j < n; ++j) {
            // D_{E_i} (D_{E_j} S) - D_{D_{E_i} E_j} S
            Endo e = commutator(gi, first[j]);
            for (std::size_t m = 0; m < n; ++m) {
                if (!conn.gamma(i, j, m).is_zero()) {
                    e = e - conn.gamma(i, j, m) * first[m];
                }
            }
            r.entries.push_back(std::move(e));
        }
    }
    return r;
}

Endo SecondEndoDerivative::trace() const
{
    Endo t = entries.at(0);
    for (std::size_t i = 1; i < n; ++i) {
        t = t + (*this)(i, i);
    }
    return t;
}

} // namespace wtw
