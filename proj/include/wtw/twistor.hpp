#ifndef WTW_TWISTOR_HPP
#define WTW_TWISTOR_HPP

#include <string>
#include <vector>

#include <wtw/checks.hpp>
#include <wtw/curvature.hpp>
#include <wtw/hermitian.hpp>

namespace wtw
{

// G(a, b) = 1/2 sum_i g(a E_i, b E_i)
Scalar g_fiber(const Endo &a, const Endo &b);

// Skew endomorphisms anti-commuting with J: the tangent space of the fibre
// of the twistor bundle at J. The elements are kept unnormalized so that all
// coefficients stay rational; norms[k] = G(elements[k], elements[k]).
struct VerticalBasis {
    std::vector<Endo> elements;
    std::vector<Rational> norms;
    std::vector<std::string> labels;

    std::size_t size() const { return elements.size(); }
    // Coefficients of a vertical W: G(W, V_k) / G(V_k, V_k).
    Vector coordinates(const Endo &w) const;
    Endo combine(std::span<const Scalar> coefficients) const;
};

// For J mapping frame vectors to signed frame vectors this is the family
// S_{2r-1,2s-1} - S_{2r,2s}, S_{2r-1,2s} + S_{2r,2s-1} in a J-adapted
// reordering of the frame (every norm is 2). Otherwise the projections of the
// S_ij are orthogonalized exactly. Requires J with constant entries.
VerticalBasis vertical_basis(const Endo &J);

bool is_skew(const Endo &a);
bool is_vertical(const Endo &J, const Endo &a);
// 1/2 (a + J a J)
Endo vertical_projection(const Endo &J, const Endo &a);

// R(X, Y) acting on endomorphisms: R(X, Y) a = [R(X, Y), a].
Endo curvature_on_endo(const Curvature &curv, std::size_t i, std::size_t j, const Endo &a);

// "endo-curvature": [R(E_i,E_j), a] against D_[E_i,E_j] a - [D_i, D_j] a
// computed from the connection acting on the constant section a.
CheckReport endo_curvature_check(const Connection &conn, const Curvature &curv, const FrameSpec &spec,
                                 const Endo &a);

// "rab": G(R(X,Y)a, b) - g(R([a,b]^)X, Y)
//        + 1/2 [dphi([a,b]^) g(X,Y) + dphi([a,b]X, Y) + dphi(X, [a,b]Y)].
CheckReport lemma_rab_check(const FrameSpec &spec, const Endo &a, const Endo &b);

// "jv": G(R(X,Y)J, V) + G(R(X,Y)V, J). Throws std::invalid_argument unless
// V is vertical at J.
CheckReport lemma_jv_check(const FrameSpec &spec, const Endo &V);

// "r-j-dj-weyl": G(R(X,Z)J, D_Y J) against the bivector (J D_Y J)^;
// "r-j-dj": the same expanded through nabla J and phi.
CheckReport lemma_rjdj_check(const FrameSpec &spec);

// Pointwise data of the twistor metric g~_t and the connection D' at J.
struct DPrimeData {
    SymbolSetPtr symbols;  // spec symbols followed by t
    VerticalBasis basis;
    // Gram matrix of g~_t on (E_1^h..E_n^h, V_1/|V_1|..), rows of length n + dim V.
    std::vector<Vector> gram;
    // Horizontal part of D'_{E_i^h} E_j^h: components of D_{E_i} E_j.
    Tensor<3> hh_horizontal;
    // [i][j]: basis coordinates of the vertical part 1/2 R(E_i, E_j) J.
    std::vector<std::vector<Vector>> hh_vertical;
    // [i][j][alpha]: g~_t(D~_{V_alpha} E_i^h, E_j^h) = -t/2 G(R(E_i,E_j)J, V_alpha).
    std::vector<std::vector<Vector>> vh_pairing;
    // "hh-vertical-span": 1/2 R(E_i,E_j)J minus its basis expansion;
    // "hh-vertical-projection": the same against its vertical projection.
    CheckReport checks;
};

DPrimeData dprime_eval(const FrameSpec &spec, const std::string &t_name = "t");

// -(1/t) g~_t(H(Trace II), E_k^h), computed directly as
// sum_i G(R(E_i, E_k) J, D_{E_i} J) and through the expansion in curvature
// traces, rho_D, rho*_D and dphi.
struct HorizontalTrace {
    Vector direct;
    Vector expansion;
};

// Both require the gate and throw GateError otherwise.
HorizontalTrace h_trace(const FrameSpec &spec);

// (k, l) entry g((Tr D^2 J)E_k, E_l) - g((Tr D^2 J)JE_k, JE_l), directly from
// the second covariant derivative and from closed 2-forms evaluated on
// JZ ^ U + Z ^ JU with (Z, U) = (E_k, E_l). The phi-terms of the expansion
// cancel, so the closed form is d(phi - theta); the variant with the extra
// n(n-4)/(2(n-2)) phi ^ theta agrees with it only for n = 4 or phi ^ theta of
// type (1,1).
struct VerticalTrace {
    BilinearForm direct;
    BilinearForm closed_form;
    BilinearForm closed_form_with_wedge;
};

VerticalTrace v_trace(const FrameSpec &spec);

// Gated identities behind the traces:
// "h-trace-expansion": direct horizontal trace against its expansion;
// "v-trace-expansion": the vertical combination through nabla^2 J, nabla J,
//   delta J, phi and dphi;
// "lc-trace-closed-form": 2g((Tr nabla^2 J)Z, U) through B and dtheta;
// "v-trace-closed-form": direct vertical trace against d(phi - theta).
CheckReport trace_checks(const FrameSpec &spec);

} // namespace wtw

#endif
