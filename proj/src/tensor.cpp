#include <wtw/tensor.hpp>

#include <stdexcept>

namespace wtw
{

Vector zero_vector(std::size_t n, const SymbolSetPtr &symbols)
{
    return Vector(n, Scalar::constant(symbols, 0));
}

Vector unit_vector(std::size_t n, std::size_t k, const SymbolSetPtr &symbols)
{
    Vector v = zero_vector(n, symbols);
    v.at(k) = Scalar::constant(symbols, 1);
    return v;
}

Vector operator+(const Vector &a, const Vector &b)
{
    Vector r = a;
    for (std::size_t i = 0; i < r.size(); ++i) {
        r[i] += b.at(i);
    }
    return r;
}

Vector operator-(const Vector &a, const Vector &b)
{
    Vector r = a;
    for (std::size_t i = 0; i < r.size(); ++i) {
        r[i] -= b.at(i);
    }
    return r;
}

Vector operator*(const Scalar &s, const Vector &v)
{
    Vector r = v;
    for (auto &x : r) {
        x = s * x;
    }
    return r;
}

Scalar dot(std::span<const Scalar> a, std::span<const Scalar> b)
{
    if (a.size() != b.size()) {
        throw std::invalid_argument("dot: length mismatch");
    }
    Scalar s;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i].is_zero() && !b[i].is_zero()) {
            s += a[i] * b[i];
        }
    }
    return s;
}

bool is_zero(std::span<const Scalar> v)
{
    for (const auto &x : v) {
        if (!x.is_zero()) {
            return false;
        }
    }
    return true;
}

Vector substitute(const Vector &v, const Assignment &a)
{
    Vector r;
    r.reserve(v.size());
    for (const auto &x : v) {
        r.push_back(x.substitute(a));
    }
    return r;
}

Endo identity_endo(std::size_t n, const SymbolSetPtr &symbols)
{
    Endo r(n, symbols);
    for (std::size_t i = 0; i < n; ++i) {
        r(i, i) = Scalar::constant(symbols, 1);
    }
    return r;
}

Endo operator*(const Endo &a, const Endo &b)
{
    const std::size_t n = a.dim();
    Endo r(n, nullptr);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            Scalar s;
            for (std::size_t k = 0; k < n; ++k) {
                if (!a(i, k).is_zero() && !b(k, j).is_zero()) {
                    s += a(i, k) * b(k, j);
                }
            }
            r(i, j) = s;
        }
    }
    return r;
}

Vector apply(const Endo &a, std::span<const Scalar> v)
{
    const std::size_t n = a.dim();
    Vector r(n);
    for (std::size_t i = 0; i < n; ++i) {
        Scalar s;
        for (std::size_t j = 0; j < n; ++j) {
            if (!a(i, j).is_zero() && !v[j].is_zero()) {
                s += a(i, j) * v[j];
            }
        }
        r[i] = s;
    }
    return r;
}

Endo commutator(const Endo &a, const Endo &b)
{
    return a * b - b * a;
}

Scalar trace(const Endo &a)
{
    Scalar s;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        s += a(i, i);
    }
    return s;
}

namespace
{

template <typename Tag>
Scalar eval_square(const Square<Tag> &m, std::span<const Scalar> u, std::span<const Scalar> v)
{
    Scalar s;
    for (std::size_t i = 0; i < m.dim(); ++i) {
        if (u[i].is_zero()) {
            continue;
        }
        for (std::size_t j = 0; j < m.dim(); ++j) {
            if (!v[j].is_zero() && !m(i, j).is_zero()) {
                s += u[i] * v[j] * m(i, j);
            }
        }
    }
    return s;
}

} // namespace

Scalar eval(const BilinearForm &b, std::span<const Scalar> u, std::span<const Scalar> v)
{
    return eval_square(b, u, v);
}

Scalar eval(const TwoForm &f, std::span<const Scalar> u, std::span<const Scalar> v)
{
    return eval_square(f, u, v);
}

} // namespace wtw
