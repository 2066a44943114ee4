#ifndef WTW_FRAME_HPP
#define WTW_FRAME_HPP

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <wtw/polyalg.hpp>
#include <wtw/tensor.hpp>

namespace wtw
{

class ValidationError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// A homogeneous geometry given by left-invariant data in a g-orthonormal
// frame E_1..E_n. Every tensor has constant components in this frame, so
// directional derivatives of components vanish and all calculus below is
// algebraic in the structure constants.
struct FrameSpec {
    std::string name;
    std::size_t dimension = 0;
    SymbolSetPtr symbols;
    std::vector<std::string> basis;
    // [E_i, E_j] = sum_k brackets(i, j, k) E_k
    Tensor<3> brackets;
    // J(E_j) = sum_i J(i, j) E_i
    Endo J;
    // phi = sum_k phi[k] eta_k
    Vector phi;

    std::size_t half_dimension() const { return dimension / 2; }
    Vector bracket(std::span<const Scalar> u, std::span<const Scalar> v) const;
    Vector e(std::size_t k) const { return unit_vector(dimension, k, symbols); }
    Vector Jv(std::span<const Scalar> v) const { return apply(J, v); }
};

using Signs = std::pair<int, int>;

// Spec document parsing; throws ParseError (malformed) or ValidationError.
FrameSpec load_spec(std::string_view source);
FrameSpec load_spec_file(const std::filesystem::path &path);

// Builtin geometries "inoue-s0" and "kodaira"; kodaira requires signs.
FrameSpec builtin(std::string_view name, std::optional<Signs> signs = std::nullopt);
// The document text a builtin is loaded from.
std::string builtin_document(std::string_view name, std::optional<Signs> signs = std::nullopt);
std::vector<std::string> builtin_names();

// Serializes a spec to the document format (load_spec inverts it).
std::string to_document(const FrameSpec &spec);

// Exact residuals of the structural invariants.
struct FrameResiduals {
    Tensor<4> jacobi;        // (i, j, k, l): E_l-component of the cyclic sum of [[E_i, E_j], E_k]
    Endo j_squared_plus_id;  // J^2 + I
    Endo orthogonality;      // J^T J - I
    bool ok() const { return jacobi.is_zero() && j_squared_plus_id.is_zero() && orthogonality.is_zero(); }
};

FrameResiduals frame_residuals(const FrameSpec &spec);
// Throws ValidationError naming the first violated invariant.
void validate(const FrameSpec &spec);

// Same geometry with the Weyl form replaced or partially evaluated.
FrameSpec with_phi(const FrameSpec &spec, Vector phi);
FrameSpec substitute(const FrameSpec &spec, const Assignment &assignment);

// d omega(E_i, E_j) = -omega([E_i, E_j])
TwoForm d_oneform(const FrameSpec &spec, std::span<const Scalar> omega);
// dF(X,Y,Z) = -F([X,Y],Z) + F([X,Z],Y) - F([Y,Z],X)
ThreeForm d_twoform(const FrameSpec &spec, const TwoForm &form);

// sum_{i<j} b(i, j) F(E_i, E_j); the pairing with eta_1 ^ eta_2 (E_1 ^ E_2) = 1.
Scalar eval_on_bivector(const TwoForm &form, const Bivector &b);

// Index raising in the orthonormal frame (identity on components).
Vector sharp(const FrameSpec &spec, std::span<const Scalar> omega);

// u ^ v with components u_i v_j - u_j v_i.
Bivector wedge(std::span<const Scalar> u, std::span<const Scalar> v);
// (alpha ^ beta)(X, Y) = alpha(X) beta(Y) - alpha(Y) beta(X)
TwoForm wedge_forms(std::span<const Scalar> alpha, std::span<const Scalar> beta);
// (alpha ^ F)(X, Y, Z) = alpha(X) F(Y, Z) - alpha(Y) F(X, Z) + alpha(Z) F(X, Y)
ThreeForm wedge_forms(std::span<const Scalar> alpha, const TwoForm &form);

// The 2-vector a^ of a skew endomorphism, 2 g(a^, X ^ Y) = g(aX, Y), so
// a^(i, j) = g(a E_i, E_j). Throws std::invalid_argument unless a is skew.
Bivector wedge_iso(const Endo &a);

// Metric on 2-vectors: g(v1^v2, v3^v4) = 1/2 [g(v1,v3) g(v2,v4) - g(v1,v4) g(v2,v3)].
Scalar bivector_metric(const Bivector &a, const Bivector &b);

} // namespace wtw

#endif
