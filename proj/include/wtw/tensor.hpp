#ifndef WTW_TENSOR_HPP
#define WTW_TENSOR_HPP

#include <array>
#include <cstddef>
#include <numeric>
#include <span>
#include <vector>

#include <wtw/polyalg.hpp>

namespace wtw
{

// Frame components of a vector or covector: v[k] multiplies E_k (or eta_k).
using Vector = std::vector<Scalar>;

Vector zero_vector(std::size_t n, const SymbolSetPtr &symbols);
Vector unit_vector(std::size_t n, std::size_t k, const SymbolSetPtr &symbols);
Vector operator+(const Vector &a, const Vector &b);
Vector operator-(const Vector &a, const Vector &b);
Vector operator*(const Scalar &s, const Vector &v);
// Orthonormal frame pairing sum_k a[k] b[k].
Scalar dot(std::span<const Scalar> a, std::span<const Scalar> b);
bool is_zero(std::span<const Scalar> v);
Vector substitute(const Vector &v, const Assignment &a);

// Dense rank-R array of Scalars with every slot running over 0..n-1.
template <std::size_t Rank>
class Tensor
{
public:
    Tensor() = default;
    Tensor(std::size_t n, const SymbolSetPtr &symbols)
        : m_n(n), m_data(ipow(n), Scalar::constant(symbols, 0))
    {
    }

    std::size_t dim() const { return m_n; }

    template <typename... I>
    Scalar &operator()(I... idx)
    {
        static_assert(sizeof...(I) == Rank);
        return m_data[offset({static_cast<std::size_t>(idx)...})];
    }
    template <typename... I>
    const Scalar &operator()(I... idx) const
    {
        static_assert(sizeof...(I) == Rank);
        return m_data[offset({static_cast<std::size_t>(idx)...})];
    }

    std::span<const Scalar> flat() const { return m_data; }
    std::span<Scalar> flat() { return m_data; }

    bool is_zero() const
    {
        for (const auto &s : m_data) {
            if (!s.is_zero()) {
                return false;
            }
        }
        return true;
    }

    friend bool operator==(const Tensor &a, const Tensor &b) { return a.m_n == b.m_n && a.m_data == b.m_data; }

    friend Tensor operator-(const Tensor &a, const Tensor &b)
    {
        Tensor r = a;
        for (std::size_t i = 0; i < r.m_data.size(); ++i) {
            r.m_data[i] -= b.m_data[i];
        }
        return r;
    }

    friend Tensor operator+(const Tensor &a, const Tensor &b)
    {
        Tensor r = a;
        for (std::size_t i = 0; i < r.m_data.size(); ++i) {
            r.m_data[i] += b.m_data[i];
        }
        return r;
    }

    // Multi-index of the flat position p.
    std::array<std::size_t, Rank> index_of(std::size_t p) const
    {
        std::array<std::size_t, Rank> idx{};
        for (std::size_t r = Rank; r-- > 0;) {
            idx[r] = p % m_n;
            p /= m_n;
        }
        return idx;
    }

private:
    std::size_t ipow(std::size_t n) const
    {
        std::size_t r = 1;
        for (std::size_t i = 0; i < Rank; ++i) {
            r *= n;
        }
        return r;
    }

    std::size_t offset(std::array<std::size_t, Rank> idx) const
    {
        std::size_t p = 0;
        for (auto i : idx) {
            p = p * m_n + i;
        }
        return p;
    }

    std::size_t m_n = 0;
    std::vector<Scalar> m_data;
};

// n x n array of Scalars. The tag fixes the meaning of the entries so the
// different square objects cannot be mixed up silently:
//  - EndoTag:      m(i, j) = component along E_i of a(E_j)
//  - BilinearTag:  m(i, j) = b(E_i, E_j)
//  - TwoFormTag:   m(i, j) = F(E_i, E_j), antisymmetric
//  - BivectorTag:  the 2-vector sum_{i<j} m(i, j) E_i ^ E_j, antisymmetric
template <typename Tag>
class Square
{
public:
    Square() = default;
    Square(std::size_t n, const SymbolSetPtr &symbols) : m_t(n, symbols) {}

    std::size_t dim() const { return m_t.dim(); }
    Scalar &operator()(std::size_t i, std::size_t j) { return m_t(i, j); }
    const Scalar &operator()(std::size_t i, std::size_t j) const { return m_t(i, j); }
    bool is_zero() const { return m_t.is_zero(); }
    std::span<const Scalar> flat() const { return m_t.flat(); }

    friend bool operator==(const Square &a, const Square &b) { return a.m_t == b.m_t; }
    friend Square operator+(const Square &a, const Square &b)
    {
        Square r;
        r.m_t = a.m_t + b.m_t;
        return r;
    }
    friend Square operator-(const Square &a, const Square &b)
    {
        Square r;
        r.m_t = a.m_t - b.m_t;
        return r;
    }
    friend Square operator*(const Scalar &s, const Square &a)
    {
        Square r = a;
        for (auto &x : r.m_t.flat()) {
            x = s * x;
        }
        return r;
    }

    Square transposed() const
    {
        Square r = *this;
        for (std::size_t i = 0; i < dim(); ++i) {
            for (std::size_t j = 0; j < dim(); ++j) {
                r(i, j) = (*this)(j, i);
            }
        }
        return r;
    }

    bool is_antisymmetric() const
    {
        for (std::size_t i = 0; i < dim(); ++i) {
            for (std::size_t j = i; j < dim(); ++j) {
                if ((*this)(i, j) != -(*this)(j, i)) {
                    return false;
                }
            }
        }
        return true;
    }

    template <typename OtherTag>
    Square<OtherTag> retag() const
    {
        Square<OtherTag> r(dim(), nullptr);
        for (std::size_t i = 0; i < dim(); ++i) {
            for (std::size_t j = 0; j < dim(); ++j) {
                r(i, j) = (*this)(i, j);
            }
        }
        return r;
    }

private:
    Tensor<2> m_t;
};

struct EndoTag {};
struct BilinearTag {};
struct TwoFormTag {};
struct BivectorTag {};

using Endo = Square<EndoTag>;
using BilinearForm = Square<BilinearTag>;
using TwoForm = Square<TwoFormTag>;
using Bivector = Square<BivectorTag>;
using ThreeForm = Tensor<3>;

Endo identity_endo(std::size_t n, const SymbolSetPtr &symbols);
Endo operator*(const Endo &a, const Endo &b);
Vector apply(const Endo &a, std::span<const Scalar> v);
Endo commutator(const Endo &a, const Endo &b);
Scalar trace(const Endo &a);

template <typename Tag>
Square<Tag> substitute(const Square<Tag> &m, const Assignment &a)
{
    Square<Tag> r = m;
    for (std::size_t i = 0; i < m.dim(); ++i) {
        for (std::size_t j = 0; j < m.dim(); ++j) {
            r(i, j) = m(i, j).substitute(a);
        }
    }
    return r;
}

// b(u, v) = sum_ij u_i v_j m(i, j)
Scalar eval(const BilinearForm &b, std::span<const Scalar> u, std::span<const Scalar> v);
Scalar eval(const TwoForm &f, std::span<const Scalar> u, std::span<const Scalar> v);

} // namespace wtw

#endif
