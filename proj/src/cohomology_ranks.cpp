#include "tatecoh/cohomology_ranks.hpp"

#include <array>
#include <stdexcept>
#include <string>

#include "tatecoh/errors.hpp"

namespace tatecoh {

Integer mod_p_cohomology_rank(std::size_t d, std::size_t q)
{
    if (d < 1)
        throw std::invalid_argument("mod_p_cohomology_rank: d must be >= 1");
    Integer b;
    mpz_bin_uiui(b.get_mpz_t(), q + d - 1, d - 1);
    return b;
}

IntegralRanks integral_ranks_from_mod_p(Integer const& h1, Integer const& h2, Integer const& h3)
{
    // H^1(G, Z) = 0, and for a finite abelian p-group A both A[p] and A/pA
    // have p^{d_p A} elements. The sequence splits into
    //   0 -> H^1(Z/p)   -> H^2(Z)[p] -> 0
    //   0 -> H^2(Z)/p   -> H^2(Z/p)  -> H^3(Z)[p] -> 0
    //   0 -> H^3(Z)/p   -> H^3(Z/p)  -> H^4(Z)[p] -> 0
    IntegralRanks r;
    r.h2_z = h1;
    r.h3_z = h2 - r.h2_z;
    r.h4_z = h3 - r.h3_z;
    if (r.h3_z < 0 || r.h4_z < 0)
        throw std::logic_error("integral_ranks_from_mod_p: negative rank");

    // The eight-term sequence
    //   0 -> H^1(Z/p) -> H^2(Z) -p-> H^2(Z) -> H^2(Z/p) -> H^3(Z) -p-> H^3(Z) -> H^3(Z/p) -> H^4(Z)[p] -> 0
    // has alternating log-order sum 0 whatever #H^2(Z), #H^3(Z) are.
    for (long log_h2z : {0L, 1L, 7L})
        for (long log_h3z : {0L, 3L}) {
            std::array<Integer, 8> logs{h1, Integer(log_h2z), Integer(log_h2z), h2,
                                        Integer(log_h3z), Integer(log_h3z), h3, r.h4_z};
            Integer alt = 0;
            for (std::size_t i = 0; i < logs.size(); ++i)
                alt += (i % 2 == 0) ? logs[i] : Integer(-logs[i]);
            if (alt != 0)
                throw std::logic_error("integral_ranks_from_mod_p: exact sequence bookkeeping failed");
        }
    return r;
}

Integer h4_z_rank(std::size_t d)
{
    if (d < 1)
        throw std::invalid_argument("h4_z_rank: d must be >= 1");
    Integer dd = static_cast<unsigned long>(d);
    Integer num = dd * (dd * dd + 5);
    if (!mpz_divisible_ui_p(num.get_mpz_t(), 6))
        throw std::logic_error("h4_z_rank: d(d^2+5) not divisible by 6");
    Integer closed = num / 6;

    Integer h1 = mod_p_cohomology_rank(d, 1);
    Integer h2 = mod_p_cohomology_rank(d, 2);
    Integer h3 = mod_p_cohomology_rank(d, 3);
    if (h3 - h2 + h1 != closed)
        throw std::logic_error("h4_z_rank: alternating sum disagrees with d(d^2+5)/6 at d = " + std::to_string(d));
    if (integral_ranks_from_mod_p(h1, h2, h3).h4_z != closed)
        throw std::logic_error("h4_z_rank: exact-sequence rank disagrees with d(d^2+5)/6 at d = " + std::to_string(d));
    return closed;
}

// ---------------------------------------------------------- bar resolution

namespace {

/* Row space of a matrix over F_p kept in reduced row echelon form: every
 * stored row has a leading 1 in its pivot column and zeros in all other
 * pivot columns, so reducing an incoming sparse row costs one dense update
 * per nonzero that lands on a pivot.
 */
template <int P>
class RowEchelon {
public:
    explicit RowEchelon(std::size_t ncols)
        : ncols_(ncols), pivot_row_(ncols, npos) {}

    std::size_t rank() const { return rows_.size(); }

    void insert(std::vector<std::uint8_t>& v)
    {
        for (std::size_t c = 0; c < ncols_; ++c) {
            if (v[c] == 0 || pivot_row_[c] == npos)
                continue;
            axpy(v, rows_[pivot_row_[c]], static_cast<std::uint8_t>(P - v[c]));
        }
        std::size_t lead = 0;
        while (lead < ncols_ && v[lead] == 0)
            ++lead;
        if (lead == ncols_)
            return;
        scale(v, inverse(v[lead]));
        for (auto& r : rows_)
            if (r[lead] != 0)
                axpy(r, v, static_cast<std::uint8_t>(P - r[lead]));
        pivot_row_[lead] = rows_.size();
        rows_.push_back(v);
    }

private:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    static void axpy(std::vector<std::uint8_t>& y, std::vector<std::uint8_t> const& x, std::uint8_t c)
    {
        std::uint8_t* __restrict yp = y.data();
        std::uint8_t const* __restrict xp = x.data();
        std::size_t const n = y.size();
        for (std::size_t i = 0; i < n; ++i)
            yp[i] = static_cast<std::uint8_t>((yp[i] + static_cast<unsigned>(c) * xp[i]) % P);
    }

    static void scale(std::vector<std::uint8_t>& v, std::uint8_t c)
    {
        for (auto& e : v)
            e = static_cast<std::uint8_t>((static_cast<unsigned>(e) * c) % P);
    }

    static std::uint8_t inverse(std::uint8_t a)
    {
        for (unsigned b = 1; b < P; ++b)
            if ((a * b) % P == 1)
                return static_cast<std::uint8_t>(b);
        throw std::logic_error("RowEchelon: zero has no inverse");
    }

    std::size_t ncols_;
    std::vector<std::size_t> pivot_row_;
    std::vector<std::vector<std::uint8_t>> rows_;
};

struct FiniteAbelian {
    std::vector<std::int64_t> inv;
    std::size_t order = 1;
    std::vector<std::size_t> mul;  // order x order table

    explicit FiniteAbelian(std::vector<std::int64_t> invariants)
        : inv(std::move(invariants))
    {
        for (auto n : inv)
            order *= static_cast<std::size_t>(n);
        if (order > 1000)
            return;  // only degree 0 fits the size bound, and it needs no products
        mul.resize(order * order);
        for (std::size_t a = 0; a < order; ++a)
            for (std::size_t b = 0; b < order; ++b) {
                std::size_t ra = a, rb = b, idx = 0, place = 1;
                for (std::size_t i = inv.size(); i-- > 0;) {
                    auto n = static_cast<std::size_t>(inv[i]);
                    idx += ((ra % n + rb % n) % n) * place;
                    place *= n;
                    ra /= n;
                    rb /= n;
                }
                mul[a * order + b] = idx;
            }
    }
};

/* rank over F_P of delta^q : C^q -> C^{q+1} */
template <int P>
std::size_t coboundary_rank(FiniteAbelian const& g, std::size_t q)
{
    std::size_t const n = g.order;
    std::size_t ncols = 1;
    for (std::size_t i = 0; i < q; ++i)
        ncols *= n;
    std::size_t const nrows = ncols * n;

    RowEchelon<P> ech(ncols);
    std::vector<std::size_t> digits(q + 1);
    std::vector<std::uint8_t> row(ncols);
    std::vector<std::size_t> touched;
    auto add = [&](std::size_t col, int sign) {
        int v = (row[col] + (sign > 0 ? 1 : P - 1)) % P;
        row[col] = static_cast<std::uint8_t>(v);
        touched.push_back(col);
    };
    for (std::size_t r = 0; r < nrows; ++r) {
        // digits[0] is g_1, most significant
        std::size_t rest = r;
        for (std::size_t i = q + 1; i-- > 0;) {
            digits[i] = rest % n;
            rest /= n;
        }
        // (df)(g_1..g_{q+1}) = f(g_2..g_{q+1})
        //   + sum_{i=1}^{q} (-1)^i f(g_1..g_i g_{i+1}..g_{q+1}) + (-1)^{q+1} f(g_1..g_q)
        std::size_t c = 0;
        for (std::size_t i = 1; i <= q; ++i)
            c = c * n + digits[i];
        add(c, +1);
        for (std::size_t i = 1; i <= q; ++i) {
            c = 0;
            for (std::size_t k = 0; k <= q; ++k) {
                if (k == i)
                    continue;
                std::size_t v = (k == i - 1) ? g.mul[digits[k] * n + digits[k + 1]] : digits[k];
                c = c * n + v;
            }
            add(c, (i % 2 == 0) ? +1 : -1);
        }
        c = 0;
        for (std::size_t i = 0; i < q; ++i)
            c = c * n + digits[i];
        add(c, ((q + 1) % 2 == 0) ? +1 : -1);

        bool nonzero = false;
        for (auto t : touched)
            nonzero = nonzero || row[t] != 0;
        if (nonzero && ech.rank() < ncols)
            ech.insert(row);
        std::fill(row.begin(), row.end(), 0);
        touched.clear();
    }
    return ech.rank();
}

std::size_t coboundary_rank(FiniteAbelian const& g, std::int64_t p, std::size_t q)
{
    switch (p) {
    case 2: return coboundary_rank<2>(g, q);
    case 3: return coboundary_rank<3>(g, q);
    case 5: return coboundary_rank<5>(g, q);
    case 7: return coboundary_rank<7>(g, q);
    case 11: return coboundary_rank<11>(g, q);
    case 13: return coboundary_rank<13>(g, q);
    default: throw std::invalid_argument("bar_resolution_mod_p_rank: p must be a prime <= 13");
    }
}

} // namespace

std::size_t bar_resolution_mod_p_rank(std::vector<std::int64_t> const& invariants, std::int64_t p, std::size_t q)
{
    constexpr std::size_t bound = 1000000;
    if (invariants.empty())
        throw std::invalid_argument("bar_resolution_mod_p_rank: at least one invariant expected");
    std::size_t order = 1;
    for (auto n : invariants) {
        std::int64_t m = n;
        while (m > 1 && m % p == 0)
            m /= p;
        if (n < 2 || m != 1)
            throw std::invalid_argument("bar_resolution_mod_p_rank: invariant " + std::to_string(n)
                                        + " is not a nontrivial power of p = " + std::to_string(p));
        if (order > bound / static_cast<std::size_t>(n))
            throw ResourceError("bar_resolution_mod_p_rank: |G| too large");
        order *= static_cast<std::size_t>(n);
    }
    std::size_t cells = 1;
    for (std::size_t i = 0; i <= q; ++i) {
        if (cells > bound / order)
            throw ResourceError("bar_resolution_mod_p_rank: |G|^(q+1) exceeds 10^6");
        cells *= order;
    }
    FiniteAbelian g(invariants);
    std::size_t dim = cells / order;  // |G|^q
    std::size_t r_out = coboundary_rank(g, p, q);
    std::size_t r_in = q == 0 ? 0 : coboundary_rank(g, p, q - 1);
    return dim - r_out - r_in;
}

bool serre_bound_check(std::size_t d, SignatureData const& sig)
{
    if (d < 1)
        throw std::invalid_argument("serre_bound_check: d must be >= 1");
    Integer lhs = mod_p_cohomology_rank(d, 2) - mod_p_cohomology_rank(d, 1);
    return lhs <= sig.places();
}

bool gs_tower_criterion(std::size_t d, SignatureData const& sig)
{
    Integer dd = static_cast<unsigned long>(d);
    return dd * dd - dd > sig.places() - 1;
}

} // namespace tatecoh
