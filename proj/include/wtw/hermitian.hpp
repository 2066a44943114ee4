#ifndef WTW_HERMITIAN_HPP
#define WTW_HERMITIAN_HPP

#include <stdexcept>
#include <string>

#include <wtw/checks.hpp>
#include <wtw/curvature.hpp>

namespace wtw
{

// Omega(X, Y) = g(JX, Y)
TwoForm fundamental_form(const FrameSpec &spec);

// N(Y,Z) = -[Y,Z] + [JY,JZ] - J[Y,JZ] - J[JY,Z]; n(i, j, k) is the E_k component of N(E_i, E_j).
struct Nijenhuis {
    Tensor<3> n;
    bool integrable() const { return n.is_zero(); }
};

Nijenhuis nijenhuis(const FrameSpec &spec);

struct LeeForm {
    Vector theta;   // -(2/(n-2)) (delta Omega) o J
    Vector B;       // sharp(theta)
    Vector B_alt;   // (2/(n-2)) J delta J
    bool consistent() const { return B == B_alt; }
};

LeeForm lee_form(const FrameSpec &spec);

// delta of a 2-form, (delta F)(Y) = -sum_i (nabla_{E_i} F)(E_i, Y).
Vector codifferential(const Connection &lc, const TwoForm &form);

struct HermitianData {
    TwoForm omega;
    Vector theta;
    Vector B;
    Nijenhuis nijenhuis;
};

HermitianData hermitian_data(const FrameSpec &spec);

// "lee-identity": dOmega - theta ^ Omega; "lee-closed": dtheta.
CheckReport lck_check(const FrameSpec &spec);

// "nabla-j-from-omega": 2g((nabla_X J)Y, Z) - dOmega(X,Y,Z) + dOmega(X,JY,JZ) - g(N(Y,Z), JX);
// "nabla-j-closed-form": 2(nabla_X J)Y - [g(JX,Y)B - g(B,Y)JX + g(X,Y)JB - g(JB,Y)X];
// "j-nabla-j-bivector": (J nabla_X J)^ - 1/2 (B ^ X - JB ^ JX);
// "gray-criterion": (nabla_X J)Y - (nabla_{JX} J)(JY);
// "lee-weyl-parallel": D J for the Weyl connection of theta.
CheckReport nabla_j_checks(const FrameSpec &spec);

// Thrown when a standing hypothesis of the pseudo-harmonicity theory fails.
class GateError : public std::runtime_error
{
public:
    GateError(std::string assumption, const std::string &detail)
        : std::runtime_error("assumption violated: " + assumption + " (" + detail + ")"),
          m_assumption(std::move(assumption))
    {
    }
    const std::string &assumption() const { return m_assumption; }

private:
    std::string m_assumption;
};

inline constexpr const char *kAssumptionIntegrable = "J integrable";
inline constexpr const char *kAssumptionLee = "dOmega = theta ^ Omega";

// Throws GateError unless N = 0 and dOmega = theta ^ Omega.
void require_gate(const FrameSpec &spec);

} // namespace wtw

#endif
