#include "tatecoh/enumeration.hpp"

#include <stdexcept>

#include "tatecoh/errors.hpp"

namespace tatecoh {

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<std::int64_t> orders)
    : orders_(std::move(orders))
{
    for (auto o : orders_) {
        if (o < 1)
            throw std::invalid_argument("FiniteAbelianGroup: orders must be positive");
        if (order_ > max_order / static_cast<std::size_t>(o))
            throw ResourceError("FiniteAbelianGroup: more than " + std::to_string(max_order) + " elements");
        order_ *= static_cast<std::size_t>(o);
    }
}

std::size_t FiniteAbelianGroup::encode(std::span<std::int64_t const> coords) const
{
    if (coords.size() != orders_.size())
        throw std::invalid_argument("FiniteAbelianGroup::encode: wrong length");
    std::size_t idx = 0;
    for (std::size_t i = 0; i < orders_.size(); ++i) {
        std::int64_t c = coords[i] % orders_[i];
        if (c < 0)
            c += orders_[i];
        idx = idx * static_cast<std::size_t>(orders_[i]) + static_cast<std::size_t>(c);
    }
    return idx;
}

std::vector<std::int64_t> FiniteAbelianGroup::decode(std::size_t index) const
{
    std::vector<std::int64_t> c(orders_.size());
    for (std::size_t i = orders_.size(); i-- > 0;) {
        c[i] = static_cast<std::int64_t>(index % static_cast<std::size_t>(orders_[i]));
        index /= static_cast<std::size_t>(orders_[i]);
    }
    return c;
}

std::size_t FiniteAbelianGroup::add(std::size_t a, std::size_t b) const
{
    auto x = decode(a);
    auto y = decode(b);
    for (std::size_t i = 0; i < x.size(); ++i)
        x[i] += y[i];
    return encode(x);
}

std::size_t FiniteAbelianGroup::scale(std::size_t a, std::int64_t m) const
{
    auto x = decode(a);
    for (std::size_t i = 0; i < x.size(); ++i)
        x[i] = (x[i] * (m % orders_[i])) % orders_[i];
    return encode(x);
}

std::vector<bool> FiniteAbelianGroup::closure(std::span<std::size_t const> gens) const
{
    std::vector<bool> in(order_, false);
    std::vector<std::size_t> distinct;
    {
        std::vector<bool> seen(order_, false);
        for (auto g : gens)
            if (!seen[g]) {
                seen[g] = true;
                distinct.push_back(g);
            }
    }
    std::vector<std::size_t> frontier{0};
    in[0] = true;
    while (!frontier.empty()) {
        std::size_t x = frontier.back();
        frontier.pop_back();
        for (auto g : distinct) {
            std::size_t y = add(x, g);
            if (!in[y]) {
                in[y] = true;
                frontier.push_back(y);
            }
        }
    }
    return in;
}

GroupStructure FiniteAbelianGroup::classify_quotient(std::vector<bool> const& k, std::vector<bool> const& sub) const
{
    std::size_t nk = 0, ni = 0;
    for (std::size_t x = 0; x < order_; ++x) {
        nk += k[x];
        ni += sub[x];
        if (sub[x] && !k[x])
            throw std::invalid_argument("classify_quotient: I is not contained in K");
    }
    std::size_t h = nk / ni;
    // |H[m]| = #{x in K : m x in I} / |I|
    auto killed = [&](std::int64_t m) {
        std::size_t c = 0;
        for (std::size_t x = 0; x < order_; ++x)
            if (k[x] && sub[scale(x, m)])
                ++c;
        return c / ni;
    };
    IntVector prime_powers;
    std::size_t rest = h;
    for (std::int64_t p = 2; rest > 1; ++p) {
        if (rest % static_cast<std::size_t>(p))
            continue;
        while (rest % static_cast<std::size_t>(p) == 0)
            rest /= static_cast<std::size_t>(p);
        // log_p |H[p^e]| for e = 0, 1, ...
        std::vector<unsigned> logs{0};
        std::int64_t pe = 1;
        for (;;) {
            pe *= p;
            std::size_t c = killed(pe);
            unsigned l = 0;
            while (c > 1) {
                c /= static_cast<std::size_t>(p);
                ++l;
            }
            if (l == logs.back())
                break;
            logs.push_back(l);
        }
        // factors of exponent >= e: logs[e] - logs[e-1]
        for (std::size_t e = 1; e < logs.size(); ++e) {
            unsigned at_least = logs[e] - logs[e - 1];
            unsigned above = e + 1 < logs.size() ? logs[e + 1] - logs[e] : 0;
            Integer q;
            mpz_ui_pow_ui(q.get_mpz_t(), static_cast<unsigned long>(p), e);
            for (unsigned c = 0; c < at_least - above; ++c)
                prime_powers.push_back(q);
        }
    }
    return GroupStructure::from_cyclic_orders(prime_powers);
}

} // namespace tatecoh
