#include "tatecoh/abelian.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <stdexcept>

#include "tatecoh/errors.hpp"

namespace tatecoh {

// ---------------------------------------------------------------- structures

GroupStructure GroupStructure::from_cyclic_orders(IntVector const& orders, std::size_t extra_free_rank)
{
    IntVector abs_orders;
    abs_orders.reserve(orders.size());
    for (auto const& o : orders)
        abs_orders.push_back(abs(o));
    GroupStructure g = cokernel_structure(IntMatrix::diagonal(abs_orders));
    g.free_rank += extra_free_rank;
    return g;
}

Integer GroupStructure::torsion_order() const
{
    Integer n = 1;
    for (auto const& d : invariant_factors)
        n *= d;
    return n;
}

std::size_t GroupStructure::p_rank(Integer const& p) const
{
    return static_cast<std::size_t>(std::count_if(invariant_factors.begin(), invariant_factors.end(),
        [&](Integer const& d) { return mpz_divisible_p(d.get_mpz_t(), p.get_mpz_t()) != 0; }));
}

GroupStructure GroupStructure::p_primary_part(Integer const& p) const
{
    IntVector parts;
    for (auto const& d : invariant_factors) {
        Integer q = 1;
        Integer rest = d;
        while (mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t())) {
            rest /= p;
            q *= p;
        }
        parts.push_back(q);
    }
    return from_cyclic_orders(parts);
}

std::string format_group(GroupStructure const& g)
{
    std::string s;
    for (std::size_t i = 0; i < g.invariant_factors.size(); ++i) {
        if (i)
            s += "x";
        s += g.invariant_factors[i].get_str();
    }
    if (g.free_rank) {
        std::string z = "Z^" + std::to_string(g.free_rank);
        s = s.empty() ? z : s + " + " + z;
    }
    return s.empty() ? "1" : s;
}

namespace {

std::string replace_all(std::string s, std::string_view from, std::string_view to)
{
    std::size_t pos = 0;
    while ((pos = s.find(from, pos)) != std::string::npos) {
        s.replace(pos, from.size(), to);
        pos += to.size();
    }
    return s;
}

std::string trim(std::string_view s)
{
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
        ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
        --e;
    return std::string(s.substr(b, e - b));
}

Integer parse_positive(std::string const& tok, std::string_view context)
{
    if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw std::invalid_argument("parse_group: bad token '" + tok + "' in '" + std::string(context) + "'");
    Integer v(tok);
    if (sgn(v) <= 0)
        throw std::invalid_argument("parse_group: cyclic orders must be positive in '" + std::string(context) + "'");
    return v;
}

} // namespace

GroupStructure parse_group(std::string_view text)
{
    std::string s = replace_all(std::string(text), "\xC2\xB7", "x");  // middle dot
    s = replace_all(s, "\xC3\x97", "x");                               // multiplication sign
    std::replace(s.begin(), s.end(), '*', 'x');
    std::replace(s.begin(), s.end(), 'X', 'x');

    IntVector orders;
    std::size_t free_rank = 0;
    std::size_t start = 0;
    bool any = false;
    while (start <= s.size()) {
        std::size_t plus = s.find('+', start);
        std::string part = trim(s.substr(start, plus == std::string::npos ? std::string::npos : plus - start));
        start = plus == std::string::npos ? s.size() + 1 : plus + 1;
        if (part.empty())
            throw std::invalid_argument("parse_group: empty term in '" + std::string(text) + "'");
        any = true;
        if (part[0] == 'Z') {
            std::string r = trim(part.substr(1));
            if (r.empty())
                free_rank += 1;
            else if (r[0] == '^')
                free_rank += std::stoul(parse_positive(trim(r.substr(1)), text).get_str());
            else
                throw std::invalid_argument("parse_group: bad free term '" + part + "'");
            continue;
        }
        std::size_t b = 0;
        while (b <= part.size()) {
            std::size_t x = part.find('x', b);
            std::string tok = trim(part.substr(b, x == std::string::npos ? std::string::npos : x - b));
            orders.push_back(parse_positive(tok, text));
            if (x == std::string::npos)
                break;
            b = x + 1;
        }
    }
    if (!any)
        throw std::invalid_argument("parse_group: empty input");
    return GroupStructure::from_cyclic_orders(orders, free_rank);
}

namespace {

int cmpabs(Integer const& a, Integer const& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

/* prime -> exponents of the p-parts of the factors, descending */
std::map<Integer, std::vector<unsigned>> primary_decomposition(IntVector const& factors)
{
    std::map<Integer, std::vector<unsigned>> out;
    for (Integer f : factors) {
        for (Integer p = 2; p * p <= f; ++p) {
            unsigned e = 0;
            while (mpz_divisible_p(f.get_mpz_t(), p.get_mpz_t())) {
                f /= p;
                ++e;
            }
            if (e)
                out[p].push_back(e);
        }
        if (f > 1)
            out[f].push_back(1);
    }
    for (auto& [p, es] : out)
        std::sort(es.rbegin(), es.rend());
    return out;
}

} // namespace

bool is_quotient_shape(GroupStructure const& a, GroupStructure const& b)
{
    if (!a.is_finite() || !b.is_finite())
        throw std::invalid_argument("is_quotient_shape: finite groups only");
    auto pa = primary_decomposition(a.invariant_factors);
    auto pb = primary_decomposition(b.invariant_factors);
    for (auto const& [p, eb] : pb) {
        auto it = pa.find(p);
        if (it == pa.end() || it->second.size() < eb.size())
            return false;
        for (std::size_t i = 0; i < eb.size(); ++i)
            if (eb[i] > it->second[i])
                return false;
    }
    return true;
}

// -------------------------------------------------------------- presentation

FgAbPresentation::FgAbPresentation(std::size_t n, IntMatrix rels)
    : ngens(n), relations(std::move(rels))
{
    if (relations.rows() != ngens)
        throw std::invalid_argument("FgAbPresentation: relations must have ngens rows");
}

FgAbPresentation FgAbPresentation::from_orders(IntVector const& orders, std::size_t free_rank)
{
    std::size_t const n = orders.size() + free_rank;
    IntMatrix rels(n, orders.size());
    for (std::size_t i = 0; i < orders.size(); ++i)
        rels(i, i) = orders[i];
    return FgAbPresentation(n, std::move(rels));
}

FgAbPresentation FgAbPresentation::power(std::size_t copies) const
{
    IntMatrix rels(ngens * copies, relations.cols() * copies);
    for (std::size_t c = 0; c < copies; ++c)
        for (std::size_t i = 0; i < ngens; ++i)
            for (std::size_t j = 0; j < relations.cols(); ++j)
                rels(c * ngens + i, c * relations.cols() + j) = relations(i, j);
    return FgAbPresentation(ngens * copies, std::move(rels));
}

// ------------------------------------------------------------------------ SNF

IntVector SmithForm::diagonal() const
{
    IntVector d(std::min(D.rows(), D.cols()));
    for (std::size_t i = 0; i < d.size(); ++i)
        d[i] = D(i, i);
    return d;
}

namespace {

/* D = U A V with U_inv, V_inv kept in sync */
struct SmithState {
    SmithForm& s;

    void row_add(std::size_t dst, std::size_t src, Integer const& c)
    {
        s.D.add_row_multiple(dst, src, c);
        s.U.add_row_multiple(dst, src, c);
        s.U_inv.add_col_multiple(src, dst, -c);
    }
    void col_add(std::size_t dst, std::size_t src, Integer const& c)
    {
        s.D.add_col_multiple(dst, src, c);
        s.V.add_col_multiple(dst, src, c);
        s.V_inv.add_row_multiple(src, dst, -c);
    }
    void row_swap(std::size_t a, std::size_t b)
    {
        s.D.swap_rows(a, b);
        s.U.swap_rows(a, b);
        s.U_inv.swap_cols(a, b);
    }
    void col_swap(std::size_t a, std::size_t b)
    {
        s.D.swap_cols(a, b);
        s.V.swap_cols(a, b);
        s.V_inv.swap_rows(a, b);
    }
    void row_negate(std::size_t r)
    {
        s.D.negate_row(r);
        s.U.negate_row(r);
        s.U_inv.negate_col(r);
    }
};

} // namespace

SmithForm smith_normal_form(IntMatrix const& a)
{
    std::size_t const m = a.rows(), n = a.cols();
    SmithForm s{a, IntMatrix::identity(m), IntMatrix::identity(n),
                IntMatrix::identity(m), IntMatrix::identity(n), 0};
    SmithState st{s};
    IntMatrix& D = s.D;

    std::size_t t = 0;
    for (; t < std::min(m, n); ++t) {
        // smallest nonzero entry of the trailing block
        std::size_t pi = m, pj = n;
        for (std::size_t i = t; i < m; ++i)
            for (std::size_t j = t; j < n; ++j)
                if (sgn(D(i, j)) != 0 && (pi == m || cmpabs(D(i, j), D(pi, pj)) < 0)) {
                    pi = i;
                    pj = j;
                }
        if (pi == m)
            break;
        st.row_swap(t, pi);
        st.col_swap(t, pj);

        for (;;) {
            bool clean = true;
            Integer q;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (sgn(D(i, t)) == 0)
                    continue;
                mpz_tdiv_q(q.get_mpz_t(), D(i, t).get_mpz_t(), D(t, t).get_mpz_t());
                st.row_add(i, t, -q);
                if (sgn(D(i, t)) != 0)
                    clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (sgn(D(t, j)) == 0)
                    continue;
                mpz_tdiv_q(q.get_mpz_t(), D(t, j).get_mpz_t(), D(t, t).get_mpz_t());
                st.col_add(j, t, -q);
                if (sgn(D(t, j)) != 0)
                    clean = false;
            }
            if (!clean) {
                // a remainder is now smaller than the pivot: move the smallest one in
                std::size_t bi = t, bj = t;
                for (std::size_t i = t + 1; i < m; ++i)
                    if (sgn(D(i, t)) != 0 && cmpabs(D(i, t), D(bi, bj)) < 0) {
                        bi = i;
                        bj = t;
                    }
                for (std::size_t j = t + 1; j < n; ++j)
                    if (sgn(D(t, j)) != 0 && cmpabs(D(t, j), D(bi, bj)) < 0) {
                        bi = t;
                        bj = j;
                    }
                st.row_swap(t, bi);
                st.col_swap(t, bj);
                continue;
            }
            // pivot must divide the whole trailing block
            std::size_t bad_row = m;
            for (std::size_t i = t + 1; i < m && bad_row == m; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (!mpz_divisible_p(D(i, j).get_mpz_t(), D(t, t).get_mpz_t())) {
                        bad_row = i;
                        break;
                    }
            if (bad_row == m)
                break;
            st.row_add(t, bad_row, 1);
        }
        if (sgn(D(t, t)) < 0)
            st.row_negate(t);
    }
    s.rank = t;
    return s;
}

GroupStructure cokernel_structure(IntMatrix const& relations)
{
    std::size_t const n = relations.rows();
    GroupStructure g;
    if (relations.cols() == 0) {
        g.free_rank = n;
        return g;
    }
    SmithForm s = smith_normal_form(relations);
    for (std::size_t i = 0; i < s.rank; ++i)
        if (s.D(i, i) != 1)
            g.invariant_factors.push_back(s.D(i, i));
    g.free_rank = n - s.rank;
    return g;
}

GroupStructure structure(FgAbPresentation const& p)
{
    return cokernel_structure(p.relations);
}

// -------------------------------------------------------------------- Lattice

Lattice::Lattice(std::size_t n, IntMatrix const& generators)
    : n_(n)
{
    if (generators.rows() != n)
        throw std::invalid_argument("Lattice: generator vectors must have length n");
    if (generators.cols() == 0) {
        U_ = IntMatrix::identity(n);
        U_inv_ = IntMatrix::identity(n);
        return;
    }
    SmithForm s = smith_normal_form(generators);
    rank_ = s.rank;
    U_ = std::move(s.U);
    U_inv_ = std::move(s.U_inv);
    for (std::size_t i = 0; i < rank_; ++i)
        diag_.push_back(s.D(i, i));
}

IntMatrix Lattice::basis() const
{
    IntMatrix b(n_, rank_);
    for (std::size_t j = 0; j < rank_; ++j)
        for (std::size_t i = 0; i < n_; ++i)
            b(i, j) = U_inv_(i, j) * diag_[j];
    return b;
}

std::optional<IntVector> Lattice::coordinates(IntVector const& x) const
{
    if (x.size() != n_)
        throw std::invalid_argument("Lattice::coordinates: dimension mismatch");
    IntVector y = U_ * x;
    IntVector c(rank_);
    for (std::size_t i = 0; i < n_; ++i) {
        if (i < rank_) {
            if (!mpz_divisible_p(y[i].get_mpz_t(), diag_[i].get_mpz_t()))
                return std::nullopt;
            mpz_divexact(c[i].get_mpz_t(), y[i].get_mpz_t(), diag_[i].get_mpz_t());
        } else if (sgn(y[i]) != 0) {
            return std::nullopt;
        }
    }
    return c;
}

bool Lattice::contains(IntVector const& x) const
{
    return coordinates(x).has_value();
}

// ------------------------------------------------------------------------ Hom

Hom::Hom(FgAbPresentation source, FgAbPresentation target, IntMatrix matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix))
{
    if (matrix_.rows() != target_.ngens || matrix_.cols() != source_.ngens)
        throw std::invalid_argument("Hom: matrix must be ngens(target) x ngens(source)");
    if (source_.relations.cols() == 0)
        return;
    Lattice target_lattice(target_.ngens, target_.relations);
    IntMatrix images = matrix_ * source_.relations;
    for (std::size_t j = 0; j < images.cols(); ++j)
        if (!target_lattice.contains(images.column(j)))
            throw IllDefinedHomError("Hom: image of source relation " + std::to_string(j) + " "
                                     + to_string(images.column(j)) + " is not a target relation");
}

std::vector<IntVector> hom_kernel_generators(Hom const& f)
{
    std::size_t const ns = f.source().ngens;
    std::size_t const nt = f.target().ngens;
    IntMatrix stacked = f.matrix().hconcat(f.target().relations);

    IntMatrix gens(ns, 0);
    if (nt == 0 || stacked.cols() == 0) {
        gens = IntMatrix::identity(ns);
    } else {
        SmithForm s = smith_normal_form(stacked);
        std::vector<IntVector> cols;
        for (std::size_t j = s.rank; j < stacked.cols(); ++j) {
            IntVector v(ns);
            for (std::size_t i = 0; i < ns; ++i)
                v[i] = s.V(i, j);
            cols.push_back(std::move(v));
        }
        gens = IntMatrix::from_columns(ns, cols);
    }
    gens = gens.hconcat(f.source().relations);
    return Lattice(ns, gens).basis().columns();
}

// ---------------------------------------------------------------- Subquotient

namespace {

IntMatrix columns_or_empty(std::size_t n, std::vector<IntVector> const& v)
{
    return v.empty() ? IntMatrix(n, 0) : IntMatrix::from_columns(n, v);
}

} // namespace

Subquotient::Subquotient(FgAbPresentation const& ambient,
                         std::vector<IntVector> const& gens_a,
                         std::vector<IntVector> const& gens_b)
    : lattice_a_(ambient.ngens, columns_or_empty(ambient.ngens, gens_a).hconcat(ambient.relations))
{
    std::size_t const s = lattice_a_.rank();
    std::vector<IntVector> coords;
    for (std::size_t k = 0; k < gens_b.size(); ++k) {
        auto c = lattice_a_.coordinates(gens_b[k]);
        if (!c)
            throw ContainmentError("subquotient: generator " + std::to_string(k) + " of B "
                                   + to_string(gens_b[k]) + " is not in <A>", k);
        coords.push_back(std::move(*c));
    }
    for (std::size_t j = 0; j < ambient.relations.cols(); ++j)
        coords.push_back(*lattice_a_.coordinates(ambient.relations.column(j)));

    IntMatrix c = columns_or_empty(s, coords);
    quotient_snf_ = smith_normal_form(c);
    IntVector orders;
    for (std::size_t i = 0; i < s; ++i) {
        Integer d = i < quotient_snf_.rank ? quotient_snf_.D(i, i) : Integer(0);
        if (d == 1)
            continue;
        kept_.push_back(i);
        if (sgn(d) == 0)
            ++structure_.free_rank;
        else
            structure_.invariant_factors.push_back(d);
    }
}

std::optional<IntVector> Subquotient::class_of(IntVector const& x) const
{
    auto c = lattice_a_.coordinates(x);
    if (!c)
        return std::nullopt;
    IntVector z = quotient_snf_.U * *c;
    IntVector out;
    out.reserve(kept_.size());
    for (std::size_t i : kept_) {
        Integer d = i < quotient_snf_.rank ? quotient_snf_.D(i, i) : Integer(0);
        out.push_back(sgn(d) == 0 ? z[i] : mod_floor(z[i], d));
    }
    return out;
}

std::vector<IntVector> Subquotient::generators() const
{
    IntMatrix basis = lattice_a_.basis();
    std::vector<IntVector> out;
    for (std::size_t i : kept_)
        out.push_back(basis * quotient_snf_.U_inv.column(i));
    return out;
}

GroupStructure subquotient_structure(FgAbPresentation const& ambient,
                                     std::vector<IntVector> const& gens_a,
                                     std::vector<IntVector> const& gens_b)
{
    return Subquotient(ambient, gens_a, gens_b).structure();
}

} // namespace tatecoh
