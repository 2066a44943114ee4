#ifndef WTW_CONNECTION_HPP
#define WTW_CONNECTION_HPP

#include <cstddef>
#include <vector>

#include <wtw/frame.hpp>

namespace wtw
{

enum class ConnectionKind { LeviCivita, Weyl };

// Connection coefficients in the frame: D_{E_i} E_j = sum_k gamma(i, j, k) E_k.
struct Connection {
    ConnectionKind kind = ConnectionKind::LeviCivita;
    Tensor<3> gamma;

    std::size_t dim() const { return gamma.dim(); }
    // Matrix of D_{E_i} acting on frame components: (p, l) = gamma(i, l, p).
    Endo matrix(std::size_t i) const;
    // D_X Y for constant-component fields X, Y.
    Vector along(std::span<const Scalar> x, std::span<const Scalar> y) const;
};

Connection levi_civita(const FrameSpec &spec);
// Weyl connection of (g, spec.phi):
// D_X Y = nabla_X Y - 1/2 [phi(X) Y + phi(Y) X - g(X, Y) phi^#].
Connection weyl(const FrameSpec &spec);

// Torsion gamma(i,j,k) - gamma(j,i,k) - c(i,j,k) and metricity
// gamma(i,j,k) + gamma(i,k,j) + phi_i delta_jk (phi = 0 for Levi-Civita).
struct ConnectionResiduals {
    Tensor<3> torsion;
    Tensor<3> metricity;
    bool ok() const { return torsion.is_zero() && metricity.is_zero(); }
};

ConnectionResiduals connection_residuals(const FrameSpec &spec, const Connection &conn);

// The 1-form recovered from the trace of a Weyl connection,
// phi_i = -(2/n) sum_j gamma(i, j, j).
Vector weyl_form_of(const Connection &conn);

// (D_{E_i} omega)(E_j) = -sum_k gamma(i, j, k) omega_k, stored at (i, j).
BilinearForm cov_deriv_oneform(const Connection &conn, std::span<const Scalar> omega);

// First covariant derivative of a constant endomorphism field:
// entry i is D_{E_i} S = [Gamma_i, S].
using EndoDerivative = std::vector<Endo>;
EndoDerivative cov_deriv_endo(const Connection &conn, const Endo &s);

// D_X of a constant endomorphism field.
Endo cov_deriv_endo_along(const Connection &conn, std::span<const Scalar> x, const Endo &s);

// Second covariant derivative D^2_{XY} S = D_X D_Y S - D_{D_X Y} S at
// (X, Y) = (E_i, E_j), stored at i * n + j.
struct SecondEndoDerivative {
    std::size_t n = 0;
    std::vector<Endo> entries;
    const Endo &operator()(std::size_t i, std::size_t j) const { return entries[i * n + j]; }
    // sum_i D^2_{E_i E_i} S
    Endo trace() const;
};

SecondEndoDerivative second_cov_deriv_endo(const Connection &conn, const Endo &s);

} // namespace wtw

#endif
