#include <wtw/checks.hpp>

namespace wtw
{

namespace
{

constexpr std::size_t kMaxListed = 8;

} // namespace

Check make_check(std::string name, std::span<const Scalar> residuals, std::size_t n, std::size_t rank)
{
    Check c;
    c.name = std::move(name);
    c.entries = residuals.size();
    for (std::size_t p = 0; p < residuals.size(); ++p) {
        if (residuals[p].is_zero()) {
            continue;
        }
        ++c.nonzero_count;
        if (c.nonzero.size() >= kMaxListed) {
            continue;
        }
        std::string idx;
        std::size_t q = p;
        std::vector<std::size_t> digits(rank);
        for (std::size_t r = rank; r-- > 0;) {
            digits[r] = n ? q % n : 0;
            q = n ? q / n : 0;
        }
        for (auto d : digits) {
            idx += "[" + std::to_string(d + 1) + "]";
        }
        c.nonzero.push_back(idx + ": " + residuals[p].str());
    }
    return c;
}

} // namespace wtw
