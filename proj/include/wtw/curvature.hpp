#ifndef WTW_CURVATURE_HPP
#define WTW_CURVATURE_HPP

#include <wtw/checks.hpp>
#include <wtw/connection.hpp>

namespace wtw
{

// Curvature with the convention R(X, Y) = D_[X,Y] - [D_X, D_Y];
// r(i, j, k, l) = g(R(E_i, E_j) E_k, E_l).
struct Curvature {
    Tensor<4> r;

    std::size_t dim() const { return r.dim(); }
    // Matrix of R(E_i, E_j) acting on TM.
    Endo endo(std::size_t i, std::size_t j) const;
    // R(X, Y) for constant-component X, Y.
    Endo endo(std::span<const Scalar> x, std::span<const Scalar> y) const;
    // R(b) = sum_{i<j} b(i, j) R(E_i, E_j) for a 2-vector b.
    Endo endo(const Bivector &b) const;
};

Curvature curvature(const Connection &conn, const FrameSpec &spec);

// Phi(X, Y) = (nabla_X phi)(Y) + 1/2 phi(X) phi(Y) - 1/4 |phi|^2 g(X, Y),
// nabla the Levi-Civita connection.
BilinearForm phi_tensor(const FrameSpec &spec);

// R^D assembled from R^g and Phi instead of from the Weyl coefficients.
Curvature weyl_curvature_via_formula(const FrameSpec &spec);

// rho(X, Z) = sum_j g(R(X, E_j) Z, E_j)
BilinearForm ricci(const Curvature &curv);
// rho*(X, Z) = sum_j g(R(J E_j, X) J Z, E_j)
BilinearForm star_ricci(const Curvature &curv, const Endo &J);

// B'(X, Z) = B(JX, JZ)
template <typename Tag>
Square<Tag> pullback_by(const Square<Tag> &b, const Endo &J)
{
    const std::size_t n = b.dim();
    Square<Tag> r(n, nullptr);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            Scalar s;
            for (std::size_t a = 0; a < n; ++a) {
                if (J(a, i).is_zero()) {
                    continue;
                }
                for (std::size_t c = 0; c < n; ++c) {
                    if (!J(c, k).is_zero() && !b(a, c).is_zero()) {
                        s += J(a, i) * J(c, k) * b(a, c);
                    }
                }
            }
            r(i, k) = s;
        }
    }
    return r;
}

// Codifferentials in the orthonormal frame, nabla the Levi-Civita connection:
// delta omega = -sum_i (nabla_{E_i} omega)(E_i), delta J = -sum_i (nabla_{E_i} J)(E_i).
Scalar codifferential(const Connection &lc, std::span<const Scalar> omega);
Vector codifferential(const Connection &lc, const Endo &J);

// Residual checks of the curvature identities for a Weyl curvature R of spec:
// "bianchi", "metric-defect" (g(RZ,T) + g(RT,Z) = dphi(X,Y) g(Z,T)),
// "pair-symmetry-defect", "formula" (direct vs Phi route),
// "ricci-antisymmetry" (rho(X,Z) - rho(Z,X) = n/2 dphi(X,Z)) and
// "star-ricci-twist":
//   rho*(X,Z) - rho*(JZ,JX) = dphi(X,Z) + dphi(JX,JZ) + dphi(J^) g(X,JZ).
// The last term is the trace of Phi contracted with J; it vanishes when
// dphi(J^) = 0.
CheckReport identity_suite(const Curvature &curv, const FrameSpec &spec);

// Residuals of the expressions of rho_D and rho*_D through the Riemannian
// Ricci tensors, nabla phi, |phi|^2, delta phi, delta(J* phi) and phi(delta J),
// with (J* phi)(X) = phi(JX). With the codifferential sign above the
// J-term of rho*_D reads -1/2 [delta(J* phi) - phi(delta J)] g(X, JZ).
CheckReport ricci_formula_check(const FrameSpec &spec);

} // namespace wtw

#endif
