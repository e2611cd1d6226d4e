#include "tatecoh/gmodule.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

#include "tatecoh/enumeration.hpp"
#include "tatecoh/errors.hpp"

namespace tatecoh {

std::size_t GroupSpec::order() const
{
    std::size_t n = 1;
    for (auto k : invariants) {
        if (k < 1)
            return 0;
        if (n > max_order / static_cast<std::size_t>(k))
            return max_order + 1;
        n *= static_cast<std::size_t>(k);
    }
    return n;
}

GModule GModule::unit_group(Integer const& w, std::size_t free_rank,
                            std::vector<IntMatrix> action, GroupSpec group)
{
    GModule m;
    if (w < 1)
        throw std::invalid_argument("GModule::unit_group: torsion order must be >= 1");
    if (w > 1)
        m.torsion_orders.push_back(w);
    m.free_rank = free_rank;
    m.action = std::move(action);
    m.group = std::move(group);
    return m;
}

IntVector GModule::row_moduli() const
{
    IntVector mod(rank());
    std::copy(torsion_orders.begin(), torsion_orders.end(), mod.begin());
    return mod;
}

FgAbPresentation GModule::presentation() const
{
    return FgAbPresentation::from_orders(torsion_orders, free_rank);
}

IntVector GModule::canonical(IntVector x) const
{
    if (x.size() != rank())
        throw std::invalid_argument("module element has length " + std::to_string(x.size())
                                    + ", expected " + std::to_string(rank()));
    for (std::size_t i = 0; i < torsion_orders.size(); ++i)
        x[i] = mod_floor(x[i], torsion_orders[i]);
    return x;
}

// ----------------------------------------------------------------- validation

char const* to_string(Violation::Kind k)
{
    switch (k) {
    case Violation::Kind::group_invariant: return "group_invariant";
    case Violation::Kind::group_order: return "group_order";
    case Violation::Kind::shape: return "shape";
    case Violation::Kind::torsion_column: return "torsion_column";
    case Violation::Kind::ill_defined: return "ill_defined";
    case Violation::Kind::torsion_not_invertible: return "torsion_not_invertible";
    case Violation::Kind::non_unimodular: return "non_unimodular";
    case Violation::Kind::non_commuting: return "non_commuting";
    case Violation::Kind::generator_order: return "generator_order";
    }
    return "unknown";
}

bool ValidationResult::has(Violation::Kind k) const
{
    for (auto const& v : violations)
        if (v.kind == k)
            return true;
    return false;
}

std::string ValidationResult::summary() const
{
    std::string s;
    for (auto const& v : violations) {
        if (!s.empty())
            s += "; ";
        s += std::string(to_string(v.kind)) + ": " + v.message;
    }
    return s;
}

namespace {

bool is_prime(std::int64_t p)
{
    if (p < 2)
        return false;
    for (std::int64_t q = 2; q * q <= p; ++q)
        if (p % q == 0)
            return false;
    return true;
}

bool is_power_of(std::int64_t n, std::int64_t p)
{
    if (n < 1)
        return false;
    while (n % p == 0)
        n /= p;
    return n == 1;
}

IntMatrix reduced(IntMatrix a, IntVector const& moduli)
{
    a.reduce_rows(moduli);
    return a;
}

IntMatrix power(IntMatrix const& a, std::int64_t e, IntVector const& moduli)
{
    IntMatrix result = IntMatrix::identity(a.rows());
    IntMatrix base = reduced(a, moduli);
    while (e > 0) {
        if (e & 1)
            result = reduced(result * base, moduli);
        e >>= 1;
        if (e)
            base = reduced(base * base, moduli);
    }
    return reduced(result, moduli);
}

/* is the torsion block an automorphism of Z/t_1 + ... + Z/t_k? */
bool torsion_block_invertible(GModule const& m, IntMatrix const& a)
{
    std::size_t const t = m.torsion_count();
    if (t == 0)
        return true;
    if (t == 1) {
        Integer g;
        mpz_gcd(g.get_mpz_t(), a(0, 0).get_mpz_t(), m.torsion_orders[0].get_mpz_t());
        return g == 1;
    }
    // injective endomorphism of a finite group
    FgAbPresentation tors = FgAbPresentation::from_orders(m.torsion_orders);
    Hom h(tors, tors, a.block(0, 0, t, t));
    Lattice rel(t, tors.relations);
    for (auto const& v : hom_kernel_generators(h))
        if (!rel.contains(v))
            return false;
    return true;
}

void require_valid(GModule const& m)
{
    ValidationResult r = validate_gmodule(m);
    if (!r.valid())
        throw DataError("invalid G-module: " + r.summary());
}

} // namespace

ValidationResult validate_gmodule(GModule const& m)
{
    using K = Violation::Kind;
    ValidationResult res;
    auto report = [&](K k, std::string msg) { res.violations.push_back({k, std::move(msg)}); };

    GroupSpec const& g = m.group;
    for (std::size_t j = 0; j < g.invariants.size(); ++j)
        if (g.invariants[j] < 2)
            report(K::group_invariant, "n_" + std::to_string(j + 1) + " = " + std::to_string(g.invariants[j]) + " < 2");
    if (g.p) {
        if (!is_prime(*g.p))
            report(K::group_invariant, "p = " + std::to_string(*g.p) + " is not prime");
        else
            for (std::size_t j = 0; j < g.invariants.size(); ++j)
                if (!is_power_of(g.invariants[j], *g.p))
                    report(K::group_invariant, "n_" + std::to_string(j + 1) + " = " + std::to_string(g.invariants[j])
                                                   + " is not a power of p = " + std::to_string(*g.p));
    }
    if (g.order() > GroupSpec::max_order)
        report(K::group_order, "|G| exceeds " + std::to_string(GroupSpec::max_order));
    for (std::size_t i = 0; i < m.torsion_orders.size(); ++i)
        if (m.torsion_orders[i] < 2)
            report(K::shape, "torsion order " + m.torsion_orders[i].get_str() + " < 2");

    std::size_t const n = m.rank();
    std::size_t const t = m.torsion_count();
    if (m.action.size() != g.invariants.size())
        report(K::shape, std::to_string(m.action.size()) + " action matrices for "
                             + std::to_string(g.invariants.size()) + " group generators");
    bool shapes_ok = res.valid();
    for (std::size_t j = 0; j < m.action.size(); ++j)
        if (m.action[j].rows() != n || m.action[j].cols() != n) {
            report(K::shape, "action matrix " + std::to_string(j) + " is " + std::to_string(m.action[j].rows()) + "x"
                                 + std::to_string(m.action[j].cols()) + ", expected " + std::to_string(n) + "x" + std::to_string(n));
            shapes_ok = false;
        }
    if (!shapes_ok)
        return res;

    IntVector const moduli = m.row_moduli();
    bool per_matrix_ok = true;
    for (std::size_t j = 0; j < m.action.size(); ++j) {
        IntMatrix const& a = m.action[j];
        std::size_t before = res.violations.size();
        for (std::size_t i = 0; i < t; ++i)
            for (std::size_t k = t; k < n; ++k)
                if (sgn(a(k, i)) != 0)
                    report(K::torsion_column, "matrix " + std::to_string(j) + ": torsion generator " + std::to_string(i)
                                                  + " has free component " + a(k, i).get_str() + " in row " + std::to_string(k));
        for (std::size_t i = 0; i < t; ++i)
            for (std::size_t k = 0; k < t; ++k)
                if (!mpz_divisible_p(Integer(a(k, i) * m.torsion_orders[i]).get_mpz_t(), m.torsion_orders[k].get_mpz_t()))
                    report(K::ill_defined, "matrix " + std::to_string(j) + ": entry (" + std::to_string(k) + ","
                                               + std::to_string(i) + ") does not respect torsion orders");
        if (res.violations.size() == before && !torsion_block_invertible(m, a))
            report(K::torsion_not_invertible, "matrix " + std::to_string(j) + ": torsion block is not an automorphism");
        if (m.free_rank) {
            Integer det = determinant(a.block(t, t, m.free_rank, m.free_rank));
            if (abs(det) != 1)
                report(K::non_unimodular, "matrix " + std::to_string(j) + ": free block has determinant " + det.get_str());
        }
        per_matrix_ok = per_matrix_ok && res.violations.size() == before;
    }
    if (!per_matrix_ok || g.order() > GroupSpec::max_order)
        return res;

    for (std::size_t i = 0; i < m.action.size(); ++i)
        for (std::size_t j = i + 1; j < m.action.size(); ++j)
            if (reduced(m.action[i] * m.action[j], moduli) != reduced(m.action[j] * m.action[i], moduli))
                report(K::non_commuting, "action matrices (" + std::to_string(i) + "," + std::to_string(j) + ") do not commute");
    for (std::size_t j = 0; j < m.action.size(); ++j)
        if (g.invariants[j] >= 2 && !power(m.action[j], g.invariants[j], moduli).is_identity())
            report(K::generator_order, "A_" + std::to_string(j) + "^" + std::to_string(g.invariants[j]) + " is not the identity");
    return res;
}

// ------------------------------------------------------------------ the norm

IntMatrix element_action_matrix(GModule const& m, std::span<std::int64_t const> exponents)
{
    require_valid(m);
    if (exponents.size() != m.group.rank())
        throw std::invalid_argument("element_action_matrix: expected " + std::to_string(m.group.rank()) + " exponents");
    IntVector const moduli = m.row_moduli();
    IntMatrix result = IntMatrix::identity(m.rank());
    for (std::size_t j = 0; j < exponents.size(); ++j) {
        std::int64_t e = exponents[j] % m.group.invariants[j];
        if (e < 0)
            e += m.group.invariants[j];
        result = reduced(result * power(m.action[j], e, moduli), moduli);
    }
    return result;
}

namespace {

void require_enumerable(GModule const& m)
{
    if (m.group.order() > GroupSpec::max_order)
        throw ResourceError("|G| exceeds the enumeration bound " + std::to_string(GroupSpec::max_order));
}

/* adds A_1^{e_1}...A_d^{e_d} over all exponent tuples with e_1..e_{j-1} fixed by `prefix` */
void accumulate_norm(GModule const& m, IntVector const& moduli, std::size_t j,
                     IntMatrix const& prefix, IntMatrix& sum)
{
    if (j == m.action.size()) {
        sum = sum + prefix;
        return;
    }
    IntMatrix cur = prefix;
    IntMatrix const step = reduced(m.action[j], moduli);
    for (std::int64_t e = 0; e < m.group.invariants[j]; ++e) {
        accumulate_norm(m, moduli, j + 1, cur, sum);
        cur = reduced(cur * step, moduli);
    }
}

} // namespace

IntMatrix norm_matrix(GModule const& m)
{
    require_valid(m);
    require_enumerable(m);
    IntVector const moduli = m.row_moduli();
    IntMatrix sum(m.rank(), m.rank());
    accumulate_norm(m, moduli, 0, IntMatrix::identity(m.rank()), sum);
    return reduced(sum, moduli);
}

IntMatrix norm_matrix_factored(GModule const& m)
{
    require_valid(m);
    IntVector const moduli = m.row_moduli();
    IntMatrix result = IntMatrix::identity(m.rank());
    for (std::size_t j = 0; j < m.action.size(); ++j) {
        IntMatrix partial(m.rank(), m.rank());
        IntMatrix p = IntMatrix::identity(m.rank());
        IntMatrix const step = reduced(m.action[j], moduli);
        for (std::int64_t e = 0; e < m.group.invariants[j]; ++e) {
            partial = partial + p;
            p = reduced(p * step, moduli);
        }
        result = reduced(result * partial, moduli);
    }
    return result;
}

// ------------------------------------------------------------- Tate groups

namespace {

IntMatrix checked_norm(GModule const& m)
{
    IntMatrix n = norm_matrix(m);
    if (n != norm_matrix_factored(m))
        throw DataError("norm matrix: enumerated and factored forms disagree");
    return n;
}

std::vector<IntVector> augmentation_generators(GModule const& m, AugmentationGenerators aug)
{
    std::vector<IntMatrix> elems;
    if (aug == AugmentationGenerators::group_generators) {
        elems = m.action;
    } else {
        require_enumerable(m);
        std::vector<std::int64_t> e(m.group.rank(), 0);
        for (std::size_t count = 0; count < m.group.order(); ++count) {
            elems.push_back(element_action_matrix(m, e));
            for (std::size_t j = e.size(); j-- > 0;) {
                if (++e[j] < m.group.invariants[j])
                    break;
                e[j] = 0;
            }
        }
    }
    IntMatrix const id = IntMatrix::identity(m.rank());
    std::vector<IntVector> gens;
    for (auto const& a : elems)
        for (auto& c : (a - id).columns())
            gens.push_back(std::move(c));
    return gens;
}

Subquotient build_h_minus_one(GModule const& m, IntMatrix const& norm, AugmentationGenerators aug)
{
    FgAbPresentation const pres = m.presentation();
    auto kernel = hom_kernel_generators(Hom(pres, pres, norm));
    try {
        Subquotient q(pres, kernel, augmentation_generators(m, aug));
        if (!q.structure().is_finite())
            throw DataError("H^-1 has free rank " + std::to_string(q.structure().free_rank)
                            + "; module data is inconsistent");
        return q;
    } catch (ContainmentError const& e) {
        throw DataError(std::string("augmentation submodule is not inside ker(N_G): ") + e.what());
    }
}

} // namespace

TateCohomology::TateCohomology(GModule m, AugmentationGenerators aug)
    : module_(std::move(m)), norm_(checked_norm(module_)), quotient_(build_h_minus_one(module_, norm_, aug))
{
}

HMinusOneClass TateCohomology::class_of(IntVector const& x) const
{
    HMinusOneClass c;
    IntVector const xc = module_.canonical(x);
    c.norm_image = module_.canonical(norm_ * xc);
    c.in_kernel = is_zero(c.norm_image);
    if (c.in_kernel) {
        auto coords = quotient_.class_of(xc);
        if (!coords)
            throw DataError("element in ker(N_G) but outside the computed kernel lattice");
        c.coordinates = std::move(*coords);
    }
    return c;
}

GroupStructure h_minus_one(GModule const& m)
{
    return TateCohomology(m).structure();
}

HMinusOneClass class_in_h_minus_one(GModule const& m, IntVector const& x)
{
    return TateCohomology(m).class_of(x);
}

GroupStructure h_hat_zero(GModule const& m)
{
    IntMatrix const norm = checked_norm(m);
    FgAbPresentation const pres = m.presentation();
    std::size_t const n = m.rank();
    IntMatrix const id = IntMatrix::identity(n);
    IntMatrix stacked(0, n);
    for (auto const& a : m.action)
        stacked = stacked.vconcat(a - id);
    std::vector<IntVector> fixed;
    if (m.action.empty())
        fixed = IntMatrix::identity(n).columns();
    else
        fixed = hom_kernel_generators(Hom(pres, pres.power(m.action.size()), stacked));
    try {
        Subquotient q(pres, fixed, norm.columns());
        if (!q.structure().is_finite())
            throw DataError("H^0 has free rank " + std::to_string(q.structure().free_rank)
                            + "; module data is inconsistent");
        return q.structure();
    } catch (ContainmentError const& e) {
        throw DataError(std::string("norms are not G-invariant: ") + e.what());
    }
}

// ------------------------------------------------------------------- oracle

namespace {

/* the finite module with each action matrix as machine-integer maps */
struct EnumeratedModule {
    FiniteAbelianGroup group;
    std::vector<std::vector<std::size_t>> act;  // act[j][x] = g_j x

    explicit EnumeratedModule(GModule const& m)
        : group(orders_of(m))
    {
        require_valid(m);
        require_enumerable(m);
        std::size_t const t = m.torsion_count();
        for (auto const& a : m.action) {
            std::vector<std::vector<std::int64_t>> e(t, std::vector<std::int64_t>(t));
            for (std::size_t k = 0; k < t; ++k)
                for (std::size_t i = 0; i < t; ++i)
                    e[k][i] = mod_floor(a(k, i), m.torsion_orders[k]).get_si();
            std::vector<std::size_t> images(group.order());
            std::vector<std::int64_t> y(t);
            for (std::size_t x = 0; x < group.order(); ++x) {
                auto xs = group.decode(x);
                for (std::size_t k = 0; k < t; ++k) {
                    std::int64_t acc = 0;
                    for (std::size_t i = 0; i < t; ++i)
                        acc = (acc + e[k][i] * xs[i]) % group.orders()[k];
                    y[k] = acc;
                }
                images[x] = group.encode(y);
            }
            act.push_back(std::move(images));
        }
    }

    static std::vector<std::int64_t> orders_of(GModule const& m)
    {
        if (m.free_rank != 0)
            throw ResourceError("oracle: module has free rank " + std::to_string(m.free_rank) + " (infinite)");
        std::vector<std::int64_t> o;
        for (auto const& t : m.torsion_orders) {
            if (!t.fits_slong_p() || t > static_cast<long>(FiniteAbelianGroup::max_order))
                throw ResourceError("oracle: torsion order " + t.get_str() + " too large");
            o.push_back(t.get_si());
        }
        return o;
    }

    /* all g x for g in G, by walking the generator orbits */
    std::vector<std::size_t> orbit_terms(std::size_t x, GroupSpec const& g) const
    {
        std::vector<std::size_t> cur{x};
        for (std::size_t j = 0; j < act.size(); ++j) {
            std::vector<std::size_t> next;
            next.reserve(cur.size() * static_cast<std::size_t>(g.invariants[j]));
            for (auto y : cur)
                for (std::int64_t e = 0; e < g.invariants[j]; ++e) {
                    next.push_back(y);
                    y = act[j][y];
                }
            cur = std::move(next);
        }
        return cur;
    }

    std::size_t norm_of(std::size_t x, GroupSpec const& g) const
    {
        std::size_t s = 0;
        for (auto y : orbit_terms(x, g))
            s = group.add(s, y);
        return s;
    }
};

} // namespace

GroupStructure enumerate_h_minus_one_oracle(GModule const& m)
{
    EnumeratedModule em(m);
    std::size_t const size = em.group.order();
    std::vector<bool> kernel(size);
    for (std::size_t x = 0; x < size; ++x)
        kernel[x] = em.norm_of(x, m.group) == 0;
    std::vector<std::size_t> gens;
    for (auto const& a : em.act)
        for (std::size_t y = 0; y < size; ++y)
            gens.push_back(em.group.add(a[y], em.group.scale(y, -1)));
    std::vector<bool> aug = em.group.closure(gens);
    for (std::size_t x = 0; x < size; ++x)
        if (aug[x] && !kernel[x])
            throw DataError("oracle: augmentation element outside ker(N_G)");
    return em.group.classify_quotient(kernel, aug);
}

GroupStructure enumerate_h_hat_zero_oracle(GModule const& m)
{
    EnumeratedModule em(m);
    std::size_t const size = em.group.order();
    std::vector<bool> fixed(size, true), norms(size, false);
    for (std::size_t x = 0; x < size; ++x) {
        for (auto const& a : em.act)
            if (a[x] != x)
                fixed[x] = false;
        norms[em.norm_of(x, m.group)] = true;
    }
    return em.group.classify_quotient(fixed, norms);
}

} // namespace tatecoh
