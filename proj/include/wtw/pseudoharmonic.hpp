#ifndef WTW_PSEUDOHARMONIC_HPP
#define WTW_PSEUDOHARMONIC_HPP

#include <string>
#include <vector>

#include <wtw/checks.hpp>
#include <wtw/twistor.hpp>

namespace wtw
{

// A polynomial system in canonical form: every member normalized up to a
// unit, nonzero, and listed once, in order of first appearance.
struct ConditionSystem {
    std::vector<Scalar> polynomials;
    std::size_t dropped_zero = 0;
    std::size_t dropped_duplicate = 0;

    bool empty() const { return polynomials.empty(); }
    std::vector<std::string> rendered() const;
};

ConditionSystem normalize_system(std::span<const Scalar> raw);
// Equality as sets of normalized polynomials.
bool same_system(const ConditionSystem &a, const ConditionSystem &b);
bool same_system(const ConditionSystem &a, std::span<const Scalar> raw);

// F(JE_k, E_l) + F(E_k, JE_l) for F = d(theta - phi): the whole matrix, and
// the entries k < l. Gated.
BilinearForm condition_i_matrix(const FrameSpec &spec);
std::vector<Scalar> condition_i_residuals(const FrameSpec &spec);

// With psi = theta - phi, at Z = E_k:
// (n/2 - 1) dphi(psi, Z) - dphi(J psi, JZ) - psi(JZ) dphi(J^) - rho_D(psi, Z) + rho*_D(J psi, JZ).
Vector condition_ii_expression(const FrameSpec &spec);
// psi(JZ) dphi(J^) + rho_D(psi, Z) - rho*_D(J psi, JZ), the four-dimensional form.
Vector condition_ii_dim4_expression(const FrameSpec &spec);

struct GateVerdict {
    bool integrable = false;
    bool lee_identity = false;
    bool lee_closed = false;
    bool passed() const { return integrable && lee_identity; }
};

GateVerdict gate_verdict(const FrameSpec &spec);

struct AssignmentVerdict {
    Assignment assignment;
    // Values forced by single-symbol members of condition (i) and added to
    // the assignment.
    Assignment forced;
    std::vector<Scalar> condition_i;   // members after substitution
    std::vector<Scalar> condition_ii;
    std::vector<std::string> free_symbols;  // symbols still present in the spec
    bool holds = false;                     // every substituted member is identically zero
};

struct ConditionReport {
    std::string name;
    std::size_t dimension = 0;
    GateVerdict gate;
    bool dim4_mode = false;
    ConditionSystem condition_i;
    // Condition (ii) after substituting the values forced by condition (i).
    ConditionSystem condition_ii;
    ConditionSystem condition_ii_raw;
    Assignment reduction;
    std::vector<AssignmentVerdict> assignments_checked;
    SymbolSetPtr symbols;

    bool pseudo_harmonic_identically() const { return condition_i.empty() && condition_ii.empty(); }
};

// Single-symbol members s of a system, read as s = 0.
Assignment forced_values(const ConditionSystem &system);

// Full report. Throws GateError when the gate fails.
ConditionReport condition_report(const FrameSpec &spec);
// Report with condition (ii) built from the four-dimensional form. Throws
// std::invalid_argument unless n = 4, GateError when the gate fails.
ConditionReport dim4(const FrameSpec &spec);

ConditionSystem condition_i(const FrameSpec &spec);
ConditionSystem condition_ii(const FrameSpec &spec);

// Substitutes a (partial) assignment into both systems; appends the verdict
// to the report. Throws std::invalid_argument for an unknown symbol.
AssignmentVerdict verify_assignment(ConditionReport &report, const Assignment &assignment);

// "h-trace-condition-ii": direct horizontal trace minus the condition (ii)
// expression; "v-trace-condition-i": direct vertical trace plus the
// condition (i) matrix. Gated.
CheckReport equivalence_check(const FrameSpec &spec);

} // namespace wtw

#endif
