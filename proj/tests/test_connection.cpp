#include <doctest.h>

#include <wtw/connection.hpp>

#include "support.hpp"

using namespace wtw;
using namespace wtw::test;

namespace
{

// Nonzero (i, j, k, value) entries of gamma, 1-based as in the tables.
struct Entry {
    int i, j, k;
    Rational v;
};

void check_table(const Connection &c, const std::vector<Entry> &table)
{
    Tensor<3> expected(c.dim(), nullptr);
    for (const auto &e : table) {
        expected(e.i - 1, e.j - 1, e.k - 1) = Scalar(e.v);
    }
    for (std::size_t p = 0; p < expected.flat().size(); ++p) {
        CAPTURE(p);
        CHECK(c.gamma.flat()[p] == expected.flat()[p]);
    }
}

} // namespace

TEST_CASE("levi-civita table of the inoue frame")
{
    check_table(levi_civita(inoue()), {
                                          {1, 1, 2, 1},
                                          {1, 2, 1, -1},
                                          {3, 2, 3, Rational(1, 2)},
                                          {3, 3, 2, Rational(-1, 2)},
                                          {4, 2, 4, Rational(1, 2)},
                                          {4, 4, 2, Rational(-1, 2)},
                                      });
}

TEST_CASE("levi-civita table of the kodaira frame")
{
    for (auto [e1, e2] : all_signs()) {
        check_table(levi_civita(kodaira(e1, e2)), {
                                                      {1, 2, 4, -1},
                                                      {2, 1, 4, 1},
                                                      {1, 4, 2, 1},
                                                      {4, 1, 2, 1},
                                                      {2, 4, 1, -1},
                                                      {4, 2, 1, -1},
                                                  });
    }
}

TEST_CASE("abelian frame is flat")
{
    CHECK(levi_civita(abelian4()).gamma.is_zero());
}

TEST_CASE("torsion and metricity of both connections")
{
    for (const auto &f : {inoue(), kodaira(1, 1), kodaira(-1, 1), hyperbolic6(), abelian4()}) {
        CHECK(connection_residuals(f, levi_civita(f)).ok());
        CHECK(connection_residuals(f, weyl(f)).ok());
        CHECK(weyl_form_of(weyl(f)) == f.phi);
    }
}

TEST_CASE("weyl connection with vanishing form is levi-civita")
{
    const auto f = substitute(kodaira(1, -1), {{"a1", 0}, {"a2", 0}, {"a3", 0}, {"a4", 0}});
    CHECK(weyl(f).gamma == levi_civita(f).gamma);
}

TEST_CASE("weyl coefficient along A3")
{
    auto f = substitute(kodaira(1, 1), {{"a1", 0}, {"a2", 0}, {"a4", 0}});
    // -(1/2) a3 (1 + 1 - 1)
    CHECK(weyl(f).gamma(2, 2, 2) == poly(f, "-a3/2"));
}

TEST_CASE("covariant derivative of the weyl form on kodaira")
{
    const auto f = kodaira(1, 1);
    const auto d = cov_deriv_oneform(levi_civita(f), f.phi);
    CHECK(d(0, 1) == poly(f, "a4"));
    CHECK(d(1, 0) == poly(f, "-a4"));
    CHECK(d(0, 3) == poly(f, "-a2"));
    CHECK(d(3, 0) == poly(f, "-a2"));
    CHECK(d(1, 3) == poly(f, "a1"));
    CHECK(d(3, 1) == poly(f, "a1"));
    int nonzero = 0;
    for (const auto &s : d.flat()) {
        nonzero += !s.is_zero();
    }
    CHECK(nonzero == 6);
}

TEST_CASE("covariant derivative of the lee form on inoue")
{
    const auto f = inoue();
    const auto d = cov_deriv_oneform(levi_civita(f), f.e(1));
    CHECK(d(0, 0) == Scalar(-1));
}

TEST_CASE("derivatives of endomorphism fields")
{
    const auto k = kodaira(-1, 1);
    for (const auto &f : {inoue(), k}) {
        for (const auto &d : cov_deriv_endo(weyl(f), identity_endo(f.dimension, f.symbols))) {
            CHECK(d.is_zero());
        }
    }
    // (nabla_{A1} J)(A1) = -e1 A4
    const auto dj = cov_deriv_endo(levi_civita(k), k.J);
    CHECK(dj[0](3, 0) == Scalar(1));
    CHECK(dj[0](0, 0).is_zero());
    CHECK(dj[0](1, 0).is_zero());
    CHECK(dj[0](2, 0).is_zero());

    // J is parallel for the Weyl connection of the Lee form
    const auto lck = with_phi(inoue(), inoue().e(1));
    for (const auto &d : cov_deriv_endo(weyl(lck), lck.J)) {
        CHECK(d.is_zero());
    }
    const auto second = second_cov_deriv_endo(weyl(lck), lck.J);
    for (const auto &e : second.entries) {
        CHECK(e.is_zero());
    }
}

TEST_CASE("weyl derivatives preserve skew endomorphisms and the fiber metric")
{
    std::mt19937 rng(3);
    for (const auto &f : {inoue(), kodaira(1, -1), hyperbolic6()}) {
        const auto D = weyl(f);
        const std::size_t n = f.dimension;
        for (int trial = 0; trial < 3; ++trial) {
            Endo a(n, f.symbols), b(n, f.symbols);
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = i + 1; j < n; ++j) {
                    a(i, j) = Scalar(random_rational(rng));
                    a(j, i) = -a(i, j);
                    b(i, j) = Scalar(random_rational(rng));
                    b(j, i) = -b(i, j);
                }
            }
            const auto da = cov_deriv_endo(D, a);
            const auto db = cov_deriv_endo(D, b);
            for (std::size_t i = 0; i < n; ++i) {
                CHECK(da[i].is_antisymmetric());
                // X.G(a, b) = 0 for constant components
                CHECK(trace(da[i].transposed() * b + a.transposed() * db[i]).is_zero());
            }
        }
    }
}

TEST_CASE("second derivative of J on kodaira matches the closed form")
{
    for (auto [e1, e2] : all_signs()) {
        const auto f = kodaira(e1, e2);
        const auto t = second_cov_deriv_endo(levi_civita(f), f.J).trace();
        // 2 g((Tr D^2 J)(Z), U) = (n-4)/2 [g(JB,Z) g(B,U) - g(JB,U) g(B,Z)]
        //   + dtheta(U, JZ) + dtheta(JU, Z) - |B|^2 g(JZ, U),  with n = 4, B = -2 e1 A3, dtheta = 0
        const Vector B = Scalar(-2 * e1) * f.e(2);
        for (std::size_t z = 0; z < 4; ++z) {
            for (std::size_t u = 0; u < 4; ++u) {
                const Scalar lhs = Scalar(2) * t(u, z);
                const Scalar rhs = -dot(B, B) * f.J(u, z);
                CAPTURE(z);
                CAPTURE(u);
                CHECK(lhs == rhs);
            }
        }
    }
}
