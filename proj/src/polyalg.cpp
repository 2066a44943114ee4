#include <wtw/polyalg.hpp>

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>
#include <utility>

namespace wtw
{

Rational make_rational(long numerator, long denominator)
{
    if (denominator == 0) {
        throw std::domain_error("zero denominator");
    }
    Rational q(numerator, denominator);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational &q)
{
    return q.get_str();
}

SymbolSet::SymbolSet(std::vector<std::string> names) : m_names(std::move(names))
{
    for (std::size_t i = 0; i < m_names.size(); ++i) {
        if (m_names[i].empty()) {
            throw std::invalid_argument("empty symbol name");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (m_names[i] == m_names[j]) {
                throw std::invalid_argument("duplicate symbol '" + m_names[i] + "'");
            }
        }
    }
}

std::size_t SymbolSet::index_of(std::string_view name) const
{
    auto it = std::find(m_names.begin(), m_names.end(), name);
    return static_cast<std::size_t>(it - m_names.begin());
}

SymbolSetPtr make_symbols(std::vector<std::string> names)
{
    return std::make_shared<const SymbolSet>(std::move(names));
}

namespace
{

bool same_symbols(const SymbolSetPtr &a, const SymbolSetPtr &b)
{
    return a == b || (a && b && *a == *b);
}

// mpq_class(num, den) does not reduce; every coefficient entering a Scalar does.
Rational canonical(const Rational &c)
{
    Rational r = c;
    r.canonicalize();
    return r;
}

} // namespace

Scalar::Scalar(const Rational &c)
{
    if (c != 0) {
        m_terms.emplace(Exponents{}, canonical(c));
    }
}

Scalar Scalar::variable(const SymbolSetPtr &symbols, std::string_view name)
{
    if (!symbols) {
        throw SymbolMismatch("variable requires a symbol set");
    }
    const auto idx = symbols->index_of(name);
    if (idx == symbols->size()) {
        throw SymbolMismatch("undeclared symbol '" + std::string(name) + "'");
    }
    Scalar s;
    s.m_symbols = symbols;
    Exponents e(symbols->size(), 0u);
    e[idx] = 1;
    s.m_terms.emplace(std::move(e), Rational(1));
    return s;
}

Scalar Scalar::constant(const SymbolSetPtr &symbols, const Rational &c)
{
    Scalar s(c);
    s.adopt(symbols);
    return s;
}

Scalar::Exponents Scalar::zero_exponents() const
{
    return Exponents(m_symbols ? m_symbols->size() : 0u, 0u);
}

void Scalar::adopt(const SymbolSetPtr &other)
{
    if (!other || same_symbols(m_symbols, other)) {
        return;
    }
    if (m_symbols) {
        throw SymbolMismatch("symbol-set mismatch");
    }
    // Only a bare constant has no symbol set.
    m_symbols = other;
    if (!m_terms.empty()) {
        Rational c = m_terms.begin()->second;
        m_terms.clear();
        m_terms.emplace(zero_exponents(), c);
    }
}

bool Scalar::is_constant() const
{
    if (m_terms.empty()) {
        return true;
    }
    if (m_terms.size() > 1) {
        return false;
    }
    const auto &e = m_terms.begin()->first;
    return std::all_of(e.begin(), e.end(), [](unsigned k) { return k == 0; });
}

Rational Scalar::constant_value() const
{
    if (!is_constant()) {
        throw std::domain_error("polynomial '" + str() + "' is not constant");
    }
    return m_terms.empty() ? Rational(0) : m_terms.begin()->second;
}

unsigned Scalar::total_degree() const
{
    unsigned d = 0;
    for (const auto &[e, c] : m_terms) {
        unsigned s = 0;
        for (auto k : e) {
            s += k;
        }
        d = std::max(d, s);
    }
    return d;
}

Scalar &Scalar::operator+=(const Scalar &other)
{
    adopt(other.m_symbols);
    Scalar rhs = other;
    rhs.adopt(m_symbols);
    for (auto &[e, c] : rhs.m_terms) {
        auto it = m_terms.find(e);
        if (it == m_terms.end()) {
            m_terms.emplace(e, c);
        } else {
            it->second += c;
            if (it->second == 0) {
                m_terms.erase(it);
            }
        }
    }
    return *this;
}

Scalar &Scalar::operator-=(const Scalar &other)
{
    return *this += -other;
}

Scalar Scalar::operator-() const
{
    Scalar r = *this;
    for (auto &[e, c] : r.m_terms) {
        c = -c;
    }
    return r;
}

Scalar operator*(const Scalar &a, const Scalar &b)
{
    Scalar x = a;
    Scalar y = b;
    x.adopt(y.m_symbols);
    y.adopt(x.m_symbols);
    Scalar r;
    r.m_symbols = x.m_symbols;
    if (x.is_zero() || y.is_zero()) {
        return r;
    }
    const std::size_t n = x.m_symbols ? x.m_symbols->size() : 0u;
    Scalar::Exponents e(n);
    for (const auto &[ex, cx] : x.m_terms) {
        for (const auto &[ey, cy] : y.m_terms) {
            for (std::size_t i = 0; i < n; ++i) {
                e[i] = ex[i] + ey[i];
            }
            Rational c = cx * cy;
            auto it = r.m_terms.find(e);
            if (it == r.m_terms.end()) {
                r.m_terms.emplace(e, std::move(c));
            } else {
                it->second += c;
                if (it->second == 0) {
                    r.m_terms.erase(it);
                }
            }
        }
    }
    return r;
}

Scalar &Scalar::operator*=(const Scalar &other)
{
    *this = *this * other;
    return *this;
}

Scalar &Scalar::operator*=(const Rational &c)
{
    const Rational k = canonical(c);
    if (k == 0) {
        m_terms.clear();
        return *this;
    }
    for (auto &[e, v] : m_terms) {
        v *= k;
    }
    return *this;
}

Scalar &Scalar::operator/=(const Rational &c)
{
    const Rational k = canonical(c);
    if (k == 0) {
        throw std::domain_error("division by zero");
    }
    for (auto &[e, v] : m_terms) {
        v /= k;
    }
    return *this;
}

Scalar Scalar::pow(unsigned k) const
{
    Scalar r = Scalar::constant(m_symbols, 1);
    Scalar base = *this;
    while (k) {
        if (k & 1u) {
            r *= base;
        }
        k >>= 1u;
        if (k) {
            base *= base;
        }
    }
    return r;
}

bool operator==(const Scalar &a, const Scalar &b)
{
    if (a.m_symbols && b.m_symbols && !same_symbols(a.m_symbols, b.m_symbols)) {
        throw SymbolMismatch("symbol-set mismatch");
    }
    if (a.m_symbols == nullptr || b.m_symbols == nullptr) {
        if (a.m_terms.size() != b.m_terms.size()) {
            return false;
        }
        if (a.m_terms.empty()) {
            return true;
        }
        if (!a.is_constant() || !b.is_constant()) {
            return false;
        }
        return a.constant_value() == b.constant_value();
    }
    return a.m_terms == b.m_terms;
}

Scalar Scalar::substitute(const Assignment &assignment) const
{
    if (assignment.empty() || !m_symbols) {
        return *this;
    }
    const std::size_t n = m_symbols->size();
    std::vector<std::optional<Rational>> value(n);
    for (const auto &[name, v] : assignment) {
        const auto idx = m_symbols->index_of(name);
        if (idx < n) {
            value[idx] = canonical(v);
        }
    }
    Scalar r;
    r.m_symbols = m_symbols;
    for (const auto &[e, c] : m_terms) {
        Exponents ne = e;
        Rational coeff = c;
        for (std::size_t i = 0; i < n; ++i) {
            if (value[i] && ne[i]) {
                Rational p(1);
                for (unsigned k = 0; k < ne[i]; ++k) {
                    p *= *value[i];
                }
                coeff *= p;
                ne[i] = 0;
            }
        }
        if (coeff == 0) {
            continue;
        }
        auto it = r.m_terms.find(ne);
        if (it == r.m_terms.end()) {
            r.m_terms.emplace(std::move(ne), std::move(coeff));
        } else {
            it->second += coeff;
            if (it->second == 0) {
                r.m_terms.erase(it);
            }
        }
    }
    return r;
}

Scalar Scalar::embed(const SymbolSetPtr &target) const
{
    if (same_symbols(m_symbols, target)) {
        return *this;
    }
    Scalar r;
    r.m_symbols = target;
    if (!m_symbols) {
        r = *this;
        r.adopt(target);
        return r;
    }
    std::vector<std::size_t> where(m_symbols->size());
    for (std::size_t i = 0; i < m_symbols->size(); ++i) {
        where[i] = target ? target->index_of(m_symbols->names()[i]) : 0u;
    }
    for (const auto &[e, c] : m_terms) {
        Exponents ne(target ? target->size() : 0u, 0u);
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) {
                continue;
            }
            if (!target || where[i] == target->size()) {
                throw SymbolMismatch("cannot embed: symbol '" + m_symbols->names()[i] + "' missing from target");
            }
            ne[where[i]] = e[i];
        }
        r.m_terms.emplace(std::move(ne), c);
    }
    return r;
}

Scalar Scalar::normalize_up_to_unit() const
{
    if (m_terms.empty()) {
        return *this;
    }
    mpz_class num_gcd = 0;
    mpz_class den_lcm = 1;
    for (const auto &[e, c] : m_terms) {
        num_gcd = gcd(num_gcd, mpz_class(c.get_num()));
        den_lcm = lcm(den_lcm, mpz_class(c.get_den()));
    }
    Rational content(num_gcd, den_lcm);
    content.canonicalize();
    if (m_terms.begin()->second < 0) {
        content = -content;
    }
    Scalar r = *this;
    r /= content;
    return r;
}

bool proportional(const Scalar &a, const Scalar &b, Rational *ratio)
{
    if (a.is_zero() || b.is_zero()) {
        if (ratio) {
            *ratio = 0;
        }
        return a.is_zero() && b.is_zero();
    }
    Scalar x = a;
    x.adopt(b.m_symbols);
    Scalar y = b;
    y.adopt(x.m_symbols);
    if (x.m_terms.size() != y.m_terms.size()) {
        return false;
    }
    const Rational c = x.m_terms.begin()->second / y.m_terms.begin()->second;
    auto ix = x.m_terms.begin();
    for (auto iy = y.m_terms.begin(); iy != y.m_terms.end(); ++iy, ++ix) {
        if (ix->first != iy->first || ix->second != c * iy->second) {
            return false;
        }
    }
    if (ratio) {
        *ratio = c;
    }
    return true;
}

bool normalized_equal(const Scalar &a, const Scalar &b)
{
    return a.normalize_up_to_unit() == b.normalize_up_to_unit();
}

std::vector<std::string> Scalar::used_symbols() const
{
    std::vector<std::string> out;
    if (!m_symbols) {
        return out;
    }
    for (std::size_t i = 0; i < m_symbols->size(); ++i) {
        for (const auto &[e, c] : m_terms) {
            if (e[i]) {
                out.push_back(m_symbols->names()[i]);
                break;
            }
        }
    }
    return out;
}

std::string Scalar::str() const
{
    if (m_terms.empty()) {
        return "0";
    }
    std::ostringstream os;
    bool first = true;
    for (const auto &[e, c] : m_terms) {
        Rational mag = abs(c);
        if (first) {
            if (c < 0) {
                os << '-';
            }
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;

        std::string mono;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (!e[i]) {
                continue;
            }
            if (!mono.empty()) {
                mono += '*';
            }
            mono += m_symbols->names()[i];
            if (e[i] > 1) {
                mono += '^' + std::to_string(e[i]);
            }
        }
        if (mono.empty()) {
            os << to_string(mag);
        } else if (mag == 1) {
            os << mono;
        } else {
            os << to_string(mag) << '*' << mono;
        }
    }
    return os.str();
}

// --- parsing ---------------------------------------------------------------

Rational parse_rational(std::string_view text)
{
    std::string s(text);
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char ch) { return std::isspace(ch); }), s.end());
    if (s.empty()) {
        throw ParseError("empty rational literal");
    }
    const auto slash = s.find('/');
    auto is_int = [](const std::string &t) {
        std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1u : 0u;
        if (i >= t.size()) {
            return false;
        }
        return std::all_of(t.begin() + static_cast<std::ptrdiff_t>(i), t.end(),
                           [](unsigned char ch) { return std::isdigit(ch); });
    };
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!is_int(num) || !is_int(den) || den[0] == '-' || den[0] == '+') {
        throw ParseError("malformed rational literal '" + std::string(text) + "'");
    }
    if (num[0] == '+') {
        num.erase(0, 1);
    }
    mpz_class d(den);
    if (d == 0) {
        throw ParseError("zero denominator in '" + std::string(text) + "'");
    }
    Rational q(mpz_class(num), d);
    q.canonicalize();
    return q;
}

namespace
{

class ScalarParser
{
public:
    ScalarParser(std::string_view text, const SymbolSetPtr &symbols) : m_text(text), m_symbols(symbols) {}

    Scalar parse()
    {
        Scalar r = expr();
        skip_ws();
        if (m_pos != m_text.size()) {
            fail("unexpected character");
        }
        return r;
    }

private:
    [[noreturn]] void fail(const std::string &what) const
    {
        throw ParseError(what + " at offset " + std::to_string(m_pos) + " in '" + std::string(m_text) + "'");
    }

    void skip_ws()
    {
        while (m_pos < m_text.size() && std::isspace(static_cast<unsigned char>(m_text[m_pos]))) {
            ++m_pos;
        }
    }

    bool accept(char ch)
    {
        skip_ws();
        if (m_pos < m_text.size() && m_text[m_pos] == ch) {
            ++m_pos;
            return true;
        }
        return false;
    }

    Scalar expr()
    {
        Scalar r = term();
        for (;;) {
            if (accept('+')) {
                r += term();
            } else if (accept('-')) {
                r -= term();
            } else {
                return r;
            }
        }
    }

    Scalar term()
    {
        Scalar r = unary();
        for (;;) {
            if (accept('*')) {
                r *= unary();
            } else if (accept('/')) {
                const auto at = m_pos;
                Scalar d = unary();
                if (!d.is_constant() || d.is_zero()) {
                    m_pos = at;
                    fail("division by a non-constant or zero");
                }
                r /= d.constant_value();
            } else {
                return r;
            }
        }
    }

    Scalar unary()
    {
        if (accept('-')) {
            return -unary();
        }
        if (accept('+')) {
            return unary();
        }
        return power();
    }

    Scalar power()
    {
        Scalar base = primary();
        if (accept('^')) {
            skip_ws();
            const auto start = m_pos;
            while (m_pos < m_text.size() && std::isdigit(static_cast<unsigned char>(m_text[m_pos]))) {
                ++m_pos;
            }
            if (start == m_pos) {
                fail("expected exponent");
            }
            const unsigned k = static_cast<unsigned>(std::stoul(std::string(m_text.substr(start, m_pos - start))));
            return base.pow(k);
        }
        return base;
    }

    Scalar primary()
    {
        skip_ws();
        if (m_pos >= m_text.size()) {
            fail("unexpected end of input");
        }
        const char ch = m_text[m_pos];
        if (ch == '(') {
            ++m_pos;
            Scalar r = expr();
            if (!accept(')')) {
                fail("expected ')'");
            }
            return r;
        }
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            const auto start = m_pos;
            while (m_pos < m_text.size() && std::isdigit(static_cast<unsigned char>(m_text[m_pos]))) {
                ++m_pos;
            }
            return Scalar::constant(m_symbols, Rational(mpz_class(std::string(m_text.substr(start, m_pos - start)))));
        }
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            const auto start = m_pos;
            while (m_pos < m_text.size() &&
                   (std::isalnum(static_cast<unsigned char>(m_text[m_pos])) || m_text[m_pos] == '_')) {
                ++m_pos;
            }
            const auto name = m_text.substr(start, m_pos - start);
            if (!m_symbols || !m_symbols->contains(name)) {
                m_pos = start;
                fail("undeclared symbol '" + std::string(name) + "'");
            }
            return Scalar::variable(m_symbols, name);
        }
        fail("unexpected character");
    }

    std::string_view m_text;
    SymbolSetPtr m_symbols;
    std::size_t m_pos = 0;
};

} // namespace

Scalar parse_scalar(std::string_view text, const SymbolSetPtr &symbols)
{
    return ScalarParser(text, symbols).parse();
}

} // namespace wtw
