#ifndef WTW_CHECKS_HPP
#define WTW_CHECKS_HPP

#include <cstddef>
#include <string>
#include <vector>

#include <wtw/tensor.hpp>

namespace wtw
{

// Outcome of one exact identity: every residual entry must vanish.
struct Check {
    std::string name;
    std::size_t entries = 0;           // number of residual entries examined
    std::vector<std::string> nonzero;  // "[i][j]..: residual" for offending entries (1-based)
    std::size_t nonzero_count = 0;
    bool passed() const { return nonzero_count == 0; }
};

struct CheckReport {
    std::vector<Check> checks;

    bool passed() const
    {
        for (const auto &c : checks) {
            if (!c.passed()) {
                return false;
            }
        }
        return true;
    }
    const Check *find(const std::string &name) const
    {
        for (const auto &c : checks) {
            if (c.name == name) {
                return &c;
            }
        }
        return nullptr;
    }
    void append(const CheckReport &other) { checks.insert(checks.end(), other.checks.begin(), other.checks.end()); }
};

// Builds a check from a flat residual array of rank `rank` over dimension n.
Check make_check(std::string name, std::span<const Scalar> residuals, std::size_t n, std::size_t rank);

template <std::size_t Rank>
Check make_check(std::string name, const Tensor<Rank> &t)
{
    return make_check(std::move(name), t.flat(), t.dim(), Rank);
}

template <typename Tag>
Check make_check(std::string name, const Square<Tag> &m)
{
    return make_check(std::move(name), m.flat(), m.dim(), 2);
}

inline Check make_check(std::string name, const Vector &v)
{
    return make_check(std::move(name), v, v.size(), 1);
}

} // namespace wtw

#endif
