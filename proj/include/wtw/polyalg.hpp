#ifndef WTW_POLYALG_HPP
#define WTW_POLYALG_HPP

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <map>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace wtw
{

// Exact rational; mpq_class keeps gcd(|num|, den) = 1 and den > 0 after
// every arithmetic operation.
using Rational = mpq_class;

Rational make_rational(long numerator, long denominator = 1);
std::string to_string(const Rational &q);

class SymbolMismatch : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

class ParseError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Ordered list of parameter names. The order fixes the lexicographic
// monomial order: the first symbol is the most significant.
class SymbolSet
{
public:
    explicit SymbolSet(std::vector<std::string> names);

    const std::vector<std::string> &names() const { return m_names; }
    std::size_t size() const { return m_names.size(); }
    // Index of a symbol, or size() if absent.
    std::size_t index_of(std::string_view name) const;
    bool contains(std::string_view name) const { return index_of(name) != size(); }

    friend bool operator==(const SymbolSet &a, const SymbolSet &b) { return a.m_names == b.m_names; }

private:
    std::vector<std::string> m_names;
};

using SymbolSetPtr = std::shared_ptr<const SymbolSet>;

SymbolSetPtr make_symbols(std::vector<std::string> names);

// Partial assignment symbol -> value.
using Assignment = std::map<std::string, Rational>;

// Multivariate polynomial with rational coefficients over a SymbolSet.
//
// Terms are stored in a map keyed by exponent vectors ordered descending
// lexicographically, so iteration starts at the leading term. Zero
// coefficients are never stored. A Scalar built from a plain number carries
// no symbol set; it adopts the symbol set of whatever it is combined with.
class Scalar
{
public:
    using Exponents = std::vector<unsigned>;
    using TermMap = std::map<Exponents, Rational, std::greater<Exponents>>;

    Scalar() = default;
    Scalar(const Rational &c);
    Scalar(long c) : Scalar(Rational(c)) {}
    Scalar(int c) : Scalar(Rational(c)) {}

    static Scalar variable(const SymbolSetPtr &symbols, std::string_view name);
    static Scalar constant(const SymbolSetPtr &symbols, const Rational &c);

    const SymbolSetPtr &symbols() const { return m_symbols; }
    const TermMap &terms() const { return m_terms; }

    bool is_zero() const { return m_terms.empty(); }
    bool is_constant() const;
    // Value of a constant polynomial; throws std::domain_error otherwise.
    Rational constant_value() const;
    unsigned total_degree() const;

    Scalar &operator+=(const Scalar &other);
    Scalar &operator-=(const Scalar &other);
    Scalar &operator*=(const Scalar &other);
    Scalar &operator*=(const Rational &c);
    Scalar &operator/=(const Rational &c);

    friend Scalar operator+(Scalar a, const Scalar &b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar &b) { return a -= b; }
    friend Scalar operator*(const Scalar &a, const Scalar &b);
    friend Scalar operator*(Scalar a, const Rational &c) { return a *= c; }
    friend Scalar operator*(const Rational &c, Scalar a) { return a *= c; }
    friend Scalar operator/(Scalar a, const Rational &c) { return a /= c; }
    Scalar operator-() const;

    Scalar pow(unsigned k) const;

    // Exact equality of canonical forms. Symbol sets must agree unless one
    // side is a bare constant.
    friend bool operator==(const Scalar &a, const Scalar &b);
    friend bool operator!=(const Scalar &a, const Scalar &b) { return !(a == b); }

    // Substitutes values for some symbols; the symbol set is kept, so the
    // result is a polynomial in the remaining symbols.
    Scalar substitute(const Assignment &assignment) const;

    // Re-expresses the polynomial over a symbol set that contains every
    // symbol actually used.
    Scalar embed(const SymbolSetPtr &target) const;

    // Canonical representative up to a nonzero rational factor: integer
    // coprime coefficients with positive leading coefficient.
    Scalar normalize_up_to_unit() const;

    // Ratio c with a == c * b if the two differ by a nonzero constant factor.
    friend bool proportional(const Scalar &a, const Scalar &b, Rational *ratio);

    // Names of symbols occurring with nonzero exponent.
    std::vector<std::string> used_symbols() const;

    // Canonical rendering, e.g. "-1/2*a2^2 - a2".
    std::string str() const;

    friend std::ostream &operator<<(std::ostream &os, const Scalar &p) { return os << p.str(); }

private:
    void adopt(const SymbolSetPtr &other);
    Exponents zero_exponents() const;

    SymbolSetPtr m_symbols;
    TermMap m_terms;
};

bool normalized_equal(const Scalar &a, const Scalar &b);

// Parses "+ - * / ^", parentheses, integer and rational literals and the
// declared symbols. Division is only allowed by a nonzero constant.
Scalar parse_scalar(std::string_view text, const SymbolSetPtr &symbols);

Rational parse_rational(std::string_view text);

} // namespace wtw

#endif
