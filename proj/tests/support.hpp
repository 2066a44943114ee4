#ifndef WTW_TESTS_SUPPORT_HPP
#define WTW_TESTS_SUPPORT_HPP

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include <wtw/frame.hpp>

namespace wtw::test
{

inline Scalar poly(const FrameSpec &spec, const std::string &text)
{
    return parse_scalar(text, spec.symbols);
}

inline FrameSpec inoue() { return builtin("inoue-s0"); }

// Inoue with phi = a1 eta1 + a2 eta2.
inline FrameSpec inoue_reduced()
{
    return substitute(inoue(), {{"a3", 0}, {"a4", 0}});
}

inline FrameSpec kodaira(int e1, int e2) { return builtin("kodaira", Signs{e1, e2}); }

inline std::vector<Signs> all_signs() { return {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}; }

inline FrameSpec abelian4()
{
    return load_spec(R"(
[frame]
name = "abelian"
dimension = 4
symbols = ["a1", "a2", "a3", "a4"]

[complex_structure]
matrix = [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]]

[weyl_form]
E1 = "a1"
E2 = "a2"
E3 = "a3"
E4 = "a4"
)");
}

inline std::filesystem::path data_path(const std::string &name)
{
    return std::filesystem::path(WTW_TEST_DATA_DIR) / name;
}

// Six-dimensional lcK solvable example with Lee form eta2.
inline FrameSpec hyperbolic6() { return load_spec_file(data_path("h-c2.spec")); }

inline FrameSpec nonintegrable() { return load_spec_file(data_path("nonintegrable.spec")); }

// Integrable J with dOmega != theta ^ Omega.
inline FrameSpec non_lee() { return load_spec_file(data_path("kodaira-torus.spec")); }

inline std::vector<FrameSpec> gated_specs()
{
    return {inoue(), kodaira(1, 1), kodaira(1, -1), kodaira(-1, 1), kodaira(-1, -1), hyperbolic6(), abelian4()};
}

inline Rational random_rational(std::mt19937 &rng, int range = 5)
{
    std::uniform_int_distribution<int> num(-range, range);
    std::uniform_int_distribution<int> den(1, range);
    return Rational(num(rng), den(rng));
}

// A skew matrix with random rational entries.
inline Endo random_skew(std::mt19937 &rng, std::size_t n)
{
    Endo a(n, nullptr);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            a(i, j) = Scalar(random_rational(rng));
            a(j, i) = -a(i, j);
        }
    }
    return a;
}

} // namespace wtw::test

#endif
