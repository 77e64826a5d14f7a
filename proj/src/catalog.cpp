#include "slowent/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "slowent/filtration.hpp"

namespace slowent {

namespace {

struct FamilyRow {
    Family family;
    const char* name;
    const char* parameters;
    const char* range;
};

constexpr FamilyRow kFamilies[] = {
    {Family::sl_horocyclic_block, "sl_horocyclic_block", "d,i", "d >= 2, 1 <= i <= d-1"},
    {Family::sl_first_row_restriction, "sl_first_row_restriction", "d,l", "d >= 2, 1 <= l <= d-1"},
    {Family::sl_jordan_powers, "sl_jordan_powers", "d", "d >= 3"},
    {Family::strictly_upper_first_row, "strictly_upper_first_row", "d,l", "d >= 2, 1 <= l <= d-1"},
    {Family::rank_one_jordan, "rank_one_jordan", "m_1,...,m_n", "n >= 1, every m_i >= 1"},
    {Family::sl_passive, "sl_passive", "d", "d >= 2, direct_sum factor only"},
    {Family::direct_sum, "direct_sum", "spec,spec,...", "at least one factor with nonempty u"},
};

void require(bool cond, const std::string& what) {
    if (!cond) throw ParameterRange(what);
}

std::string unit_name(const char* prefix, std::size_t d, std::size_t i, std::size_t j) {
    std::string s = prefix;
    if (d < 10) return s + std::to_string(i) + std::to_string(j);
    return s + std::to_string(i) + "_" + std::to_string(j);
}

struct SlBasis {
    std::vector<std::string> names;
    std::vector<RationalMatrix> mats;
    /// index of E_{i,j} (1-based, i != j)
    std::size_t index(std::size_t d, std::size_t i, std::size_t j) const {
        std::size_t pos = (i - 1) * (d - 1) + (j - 1);
        if (j > i) --pos;
        return pos;
    }
};

SlBasis sl_basis(std::size_t d) {
    SlBasis b;
    for (std::size_t i = 1; i <= d; ++i) {
        for (std::size_t j = 1; j <= d; ++j) {
            if (i == j) continue;
            b.names.push_back(unit_name("E", d, i, j));
            b.mats.push_back(matrix_unit(d, i, j));
        }
    }
    for (std::size_t i = 1; i < d; ++i) {
        b.names.push_back("H" + std::to_string(i));
        b.mats.push_back(matrix_unit(d, i, i) - matrix_unit(d, i + 1, i + 1));
    }
    return b;
}

Example build_sl(std::size_t d, const std::vector<std::pair<std::size_t, std::size_t>>& u_units) {
    const SlBasis b = sl_basis(d);
    Example ex;
    ex.algebra = matrix_lie_algebra(b.names, b.mats);
    for (const auto& [i, j] : u_units) ex.u.generators.push_back(unit_vector(ex.algebra.dim(), b.index(d, i, j)));
    ex.blocks = {{0, ex.algebra.dim()}};
    return ex;
}

Example build_single(const ExampleSpec& spec) {
    const auto& p = spec.params;
    auto nparams = [&](std::size_t n) {
        require(p.size() == n, family_name(spec.family) + " expects " + std::to_string(n) + " parameter(s)");
    };
    Example ex;
    switch (spec.family) {
        case Family::sl_horocyclic_block: {
            nparams(2);
            const int d = p[0], i = p[1];
            require(d >= 2 && i >= 1 && i <= d - 1, "sl_horocyclic_block requires d >= 2 and 1 <= i <= d-1");
            std::vector<std::pair<std::size_t, std::size_t>> units;
            for (int a = 1; a <= i; ++a)
                for (int c = i + 1; c <= d; ++c) units.emplace_back(a, c);
            ex = build_sl(static_cast<std::size_t>(d), units);
            break;
        }
        case Family::sl_first_row_restriction: {
            nparams(2);
            const int d = p[0], l = p[1];
            require(d >= 2 && l >= 1 && l <= d - 1, "sl_first_row_restriction requires d >= 2 and 1 <= l <= d-1");
            std::vector<std::pair<std::size_t, std::size_t>> units;
            for (int j = 2; j <= l + 1; ++j) units.emplace_back(1, j);
            ex = build_sl(static_cast<std::size_t>(d), units);
            break;
        }
        case Family::sl_jordan_powers: {
            nparams(1);
            const int d = p[0];
            require(d >= 3, "sl_jordan_powers requires d >= 3");
            const auto du = static_cast<std::size_t>(d);
            ex = build_sl(du, {});
            const SlBasis b = sl_basis(du);
            for (std::size_t k = 1; k < du; ++k) {
                Vector a = zero_vector(ex.algebra.dim());
                for (std::size_t t = 1; t + k <= du; ++t) a[b.index(du, t, t + k)] = 1;
                ex.u.generators.push_back(std::move(a));
            }
            break;
        }
        case Family::strictly_upper_first_row: {
            nparams(2);
            const int d = p[0], l = p[1];
            require(d >= 2 && l >= 1 && l <= d - 1, "strictly_upper_first_row requires d >= 2 and 1 <= l <= d-1");
            const auto du = static_cast<std::size_t>(d);
            std::vector<std::string> names;
            std::vector<RationalMatrix> mats;
            for (std::size_t i = 1; i <= du; ++i) {
                for (std::size_t j = i + 1; j <= du; ++j) {
                    names.push_back(unit_name("E", du, i, j));
                    mats.push_back(matrix_unit(du, i, j));
                }
            }
            ex.algebra = matrix_lie_algebra(names, mats);
            // E_{1,j} sits at index j-2.
            for (int j = 2; j <= l + 1; ++j) ex.u.generators.push_back(unit_vector(ex.algebra.dim(), j - 2));
            ex.blocks = {{0, ex.algebra.dim()}};
            break;
        }
        case Family::rank_one_jordan: {
            require(!p.empty(), "rank_one_jordan needs at least one block size");
            for (int m : p) require(m >= 1, "rank_one_jordan block sizes must be >= 1");
            std::vector<std::string> names{"U"};
            std::vector<BracketEntry> brackets;
            std::size_t next = 1;
            for (std::size_t c = 0; c < p.size(); ++c) {
                const std::size_t first = next;
                for (int j = 0; j < p[c]; ++j) {
                    names.push_back("X" + std::to_string(c + 1) + "_" + std::to_string(j));
                    // [U, X^c_j] = X^c_{j-1}
                    if (j > 0) brackets.push_back({0, next, {{next - 1, Rational(1)}}});
                    ++next;
                }
                (void)first;
            }
            ex.algebra = LieAlgebra::from_brackets(std::move(names), brackets);
            ex.u.generators.push_back(unit_vector(ex.algebra.dim(), 0));
            ex.blocks = {{0, ex.algebra.dim()}};
            break;
        }
        case Family::sl_passive: {
            nparams(1);
            require(p[0] >= 2, "sl_passive requires d >= 2");
            ex = build_sl(static_cast<std::size_t>(p[0]), {});
            break;
        }
        case Family::direct_sum:
            throw ParameterRange("direct_sum handled separately");
    }
    ex.spec = spec;
    return ex;
}

Example build_direct_sum(const ExampleSpec& spec) {
    require(!spec.factors.empty(), "direct_sum needs at least one factor");
    std::vector<Example> parts;
    for (const ExampleSpec& f : spec.factors) {
        require(f.family != Family::direct_sum, "nested direct_sum is not supported");
        parts.push_back(build_single(f));
    }
    std::size_t n = 0;
    for (const Example& e : parts) n += e.algebra.dim();
    std::vector<std::string> names;
    std::vector<BracketEntry> brackets;
    Example ex;
    ex.spec = spec;
    std::size_t offset = 0;
    for (std::size_t f = 0; f < parts.size(); ++f) {
        const Example& e = parts[f];
        for (const std::string& nm : e.algebra.basis_names()) names.push_back(std::to_string(f + 1) + "." + nm);
        for (const BracketEntry& b : e.algebra.sparse_brackets()) {
            BracketEntry s{b.i + offset, b.j + offset, {}};
            for (const auto& [k, c] : b.terms) s.terms.emplace_back(k + offset, c);
            brackets.push_back(std::move(s));
        }
        for (const Vector& g : e.u.generators) {
            Vector v = zero_vector(n);
            std::copy(g.begin(), g.end(), v.begin() + static_cast<std::ptrdiff_t>(offset));
            ex.u.generators.push_back(std::move(v));
        }
        ex.blocks.emplace_back(offset, offset + e.algebra.dim());
        offset += e.algebra.dim();
    }
    require(!ex.u.generators.empty(), "direct_sum needs at least one factor with nonempty u");
    ex.algebra = LieAlgebra::from_brackets(std::move(names), brackets);
    return ex;
}

Rational binom2(std::size_t m) { return Rational(static_cast<unsigned long>(m * (m - 1) / 2)); }

void split_args(const std::string& s, std::vector<std::string>& out) {
    int depth = 0;
    std::string cur;
    for (char ch : s) {
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if ((ch == ',' || ch == ';') && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    if (!cur.empty()) out.push_back(cur);
}

int parse_int(const std::string& s) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(s, &used);
        if (used != s.size()) throw ParseError("bad integer '" + s + "'");
        return v;
    } catch (const std::logic_error&) {
        throw ParseError("bad integer '" + s + "'");
    }
}

}  // namespace

RationalMatrix matrix_unit(std::size_t d, std::size_t i, std::size_t j) {
    RationalMatrix m(d, d);
    m(i - 1, j - 1) = 1;
    return m;
}

LieAlgebra matrix_lie_algebra(std::vector<std::string> names, const std::vector<RationalMatrix>& basis) {
    const std::size_t n = basis.size();
    if (names.size() != n) throw DimensionMismatch("matrix_lie_algebra: names and basis differ in length");
    std::vector<Vector> flat;
    for (const RationalMatrix& m : basis) flat.push_back(m.entries());
    const std::size_t len = n ? flat.front().size() : 0;
    const RationalMatrix columns = RationalMatrix::from_columns(flat, len);
    // Coordinates are read off at n independent entry positions.
    const RrefResult red = rref(columns.transpose());
    if (red.rank != n) throw DimensionMismatch("matrix_lie_algebra: basis matrices are dependent");
    RationalMatrix square(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) square(r, c) = columns(red.pivots[r], c);
    const RationalMatrix reader = inverse(square);

    std::vector<BracketEntry> brackets;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const RationalMatrix comm = basis[i] * basis[j] - basis[j] * basis[i];
            if (comm.is_zero()) continue;
            Vector picked(n);
            for (std::size_t r = 0; r < n; ++r) picked[r] = comm.entries()[red.pivots[r]];
            const Vector coords = reader * picked;
            if (columns * coords != comm.entries()) {
                throw DimensionMismatch("matrix_lie_algebra: span is not closed under the commutator");
            }
            BracketEntry e{i, j, {}};
            for (std::size_t k = 0; k < n; ++k) {
                if (sgn(coords[k]) != 0) e.terms.emplace_back(k, coords[k]);
            }
            brackets.push_back(std::move(e));
        }
    }
    return LieAlgebra::from_brackets(std::move(names), brackets);
}

std::string family_name(Family f) {
    for (const FamilyRow& r : kFamilies) {
        if (r.family == f) return r.name;
    }
    return "unknown";
}

std::optional<Family> family_from_name(const std::string& name) {
    for (const FamilyRow& r : kFamilies) {
        if (name == r.name) return r.family;
    }
    return std::nullopt;
}

std::string ExampleSpec::to_string() const {
    std::string s = family_name(family) + "(";
    if (family == Family::direct_sum) {
        for (std::size_t i = 0; i < factors.size(); ++i) s += (i ? "," : "") + factors[i].to_string();
    } else {
        for (std::size_t i = 0; i < params.size(); ++i) s += (i ? "," : "") + std::to_string(params[i]);
    }
    return s + ")";
}

ExampleSpec parse_example_spec(const std::string& raw) {
    std::string text;
    for (char ch : raw) {
        if (!std::isspace(static_cast<unsigned char>(ch))) text.push_back(ch);
    }
    const auto open = text.find('(');
    if (open == std::string::npos || text.back() != ')') {
        throw ParseError("example spec must look like name(args): '" + raw + "'");
    }
    const std::string name = text.substr(0, open);
    const auto fam = family_from_name(name);
    if (!fam) throw ParseError("unknown family '" + name + "'");
    std::vector<std::string> args;
    split_args(text.substr(open + 1, text.size() - open - 2), args);
    ExampleSpec spec;
    spec.family = *fam;
    if (*fam == Family::direct_sum) {
        for (const std::string& a : args) spec.factors.push_back(parse_example_spec(a));
    } else {
        for (const std::string& a : args) spec.params.push_back(parse_int(a));
    }
    return spec;
}

ExampleSpec make_spec(const std::string& family, const std::vector<int>& params) {
    const auto fam = family_from_name(family);
    if (!fam) throw ParseError("unknown family '" + family + "'");
    if (*fam == Family::direct_sum) throw ParseError("direct_sum must be given in name(spec,...) form");
    return {*fam, params, {}};
}

Example build_example(const ExampleSpec& spec) {
    if (spec.family == Family::direct_sum) return build_direct_sum(spec);
    require(spec.family != Family::sl_passive, "sl_passive is only valid as a direct_sum factor");
    return build_single(spec);
}

namespace {

Rational ratio(long num, long den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

}  // namespace

Rational oracle_entropy(const ExampleSpec& spec) {
    const auto& p = spec.params;
    auto r = [](long v) { return Rational(v); };
    switch (spec.family) {
        case Family::sl_horocyclic_block: {
            const long d = p.at(0), i = p.at(1);
            return ratio(d * d - 1, i * (d - i));
        }
        case Family::sl_first_row_restriction: {
            const long d = p.at(0), l = p.at(1);
            return ratio((l + 1) * d - 1, l);
        }
        case Family::sl_jordan_powers: {
            const long d = p.at(0);
            return ratio(d * (4 * d + 1), 6);
        }
        case Family::strictly_upper_first_row: {
            const long d = p.at(0), l = p.at(1);
            return ratio(2 * d - l - 3, 2);
        }
        case Family::rank_one_jordan: {
            Rational s = 0;
            for (int m : p) s += binom2(static_cast<std::size_t>(m));
            return s;
        }
        case Family::sl_passive:
            return r(0);
        case Family::direct_sum: {
            std::vector<ProductComponent> comps;
            for (const ExampleSpec& f : spec.factors) {
                if (f.family == Family::sl_passive) continue;
                comps.push_back({build_single(f).u.k(), oracle_entropy(f)});
            }
            return product_entropy(comps);
        }
    }
    return r(0);
}

std::string oracle_formula(Family f) {
    switch (f) {
        case Family::sl_horocyclic_block: return "(d²−1)/(i(d−i))";
        case Family::sl_first_row_restriction: return "((ℓ+1)d−1)/ℓ";
        case Family::sl_jordan_powers: return "d(4d+1)/6";
        case Family::strictly_upper_first_row: return "(2d−ℓ−3)/2";
        case Family::rank_one_jordan: return "Σ binom(mᵢ,2)";
        case Family::sl_passive: return "0";
        case Family::direct_sum: return "(1/N)Σ kᵢhᵢ, N = Σ kᵢ";
    }
    return "";
}

std::vector<FamilyInfo> family_catalog() {
    std::vector<FamilyInfo> out;
    for (const FamilyRow& r : kFamilies) out.push_back({r.family, r.name, r.parameters, r.range, oracle_formula(r.family)});
    return out;
}

std::vector<ExampleSpec> catalog_registry(int max_d) {
    std::vector<ExampleSpec> out;
    for (int d = 2; d <= max_d; ++d)
        for (int i = 1; i <= d - 1; ++i) out.push_back({Family::sl_horocyclic_block, {d, i}, {}});
    for (int d = 2; d <= max_d; ++d)
        for (int l = 1; l <= d - 1; ++l) out.push_back({Family::sl_first_row_restriction, {d, l}, {}});
    for (int d = 3; d <= max_d; ++d) out.push_back({Family::sl_jordan_powers, {d}, {}});
    for (int d = 2; d <= max_d; ++d)
        for (int l = 1; l <= d - 1; ++l) out.push_back({Family::strictly_upper_first_row, {d, l}, {}});
    for (const std::vector<int>& blocks : std::vector<std::vector<int>>{{1}, {2}, {3}, {5, 4, 2, 1}, {3, 3}, {4, 1, 1}}) {
        out.push_back({Family::rank_one_jordan, blocks, {}});
    }
    out.push_back(parse_example_spec("direct_sum(sl_horocyclic_block(2,1),strictly_upper_first_row(3,1))"));
    out.push_back(parse_example_spec("direct_sum(sl_first_row_restriction(3,1),rank_one_jordan(3,2))"));
    out.push_back(parse_example_spec("direct_sum(sl_horocyclic_block(3,1),sl_passive(2))"));
    return out;
}

std::vector<std::size_t> jordan_block_sizes(const RationalMatrix& m) {
    if (!m.is_square()) throw DimensionMismatch("jordan_block_sizes: matrix not square");
    const std::size_t n = m.rows();
    std::vector<std::size_t> ranks{n};
    RationalMatrix p = RationalMatrix::identity(n);
    while (ranks.back() > 0) {
        if (ranks.size() > n + 1) throw NotNilpotent("jordan_block_sizes: matrix is not nilpotent");
        p = p * m;
        const std::size_t r = rank(p);
        if (r == ranks.back()) throw NotNilpotent("jordan_block_sizes: matrix is not nilpotent");
        ranks.push_back(r);
    }
    // blocks of size >= q: ranks[q-1] - ranks[q]
    std::vector<std::size_t> sizes;
    for (std::size_t q = ranks.size() - 1; q >= 1; --q) {
        const std::size_t at_least_q = ranks[q - 1] - ranks[q];
        const std::size_t at_least_next = q + 1 < ranks.size() ? ranks[q] - ranks[q + 1] : 0;
        for (std::size_t c = 0; c < at_least_q - at_least_next; ++c) sizes.push_back(q);
    }
    return sizes;
}

std::string to_string(HorocyclicResult::Status s) {
    switch (s) {
        case HorocyclicResult::Status::found: return "found";
        case HorocyclicResult::Status::not_found: return "not_found";
        case HorocyclicResult::Status::non_integer_spectrum: return "non_integer_spectrum";
    }
    return "unknown";
}

namespace {

Subspace generalized_eigenspace(const RationalMatrix& a, const Rational& lambda) {
    const std::size_t n = a.rows();
    const RationalMatrix shifted = a - lambda * RationalMatrix::identity(n);
    Subspace k = kernel(shifted);
    if (k.dim() == 0) return k;
    RationalMatrix p = shifted;
    while (true) {
        p = p * shifted;
        Subspace next = kernel(p);
        if (next == k) return k;
        k = std::move(next);
    }
}

}  // namespace

HorocyclicResult detect_horocyclic(const LieAlgebra& algebra, const SubalgebraSpec& u) {
    const std::size_t n = algebra.dim();
    HorocyclicResult result;
    // [X, U_j] = U_j  <=>  -ad(U_j) X = U_j
    RationalMatrix system(0, n + 1);
    for (const Vector& g : u.generators) {
        const RationalMatrix adu = algebra.ad(g);
        RationalMatrix block(n, n + 1);
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < n; ++c) block(r, c) = -adu(r, c);
            block(r, n) = g[r];
        }
        system = system.stacked(block);
    }
    const RrefResult red = rref(system);
    if (!red.pivots.empty() && red.pivots.back() == n) {
        result.detail = "no X satisfies [X, U] = U on u";
        return result;
    }
    Vector x = zero_vector(n);
    for (std::size_t r = 0; r < red.rank; ++r) x[red.pivots[r]] = red.reduced(r, n);

    const RationalMatrix adx = algebra.ad(x);
    // Rational eigenvalues of ad(X) are mu / D with mu an integer eigenvalue
    // of D ad(X), D the common denominator; |mu| is at most the max row sum.
    mpz_class denom = 1;
    for (const Rational& q : adx.entries()) mpz_lcm(denom.get_mpz_t(), denom.get_mpz_t(), q.get_den_mpz_t());
    Rational bound = 0;
    for (std::size_t r = 0; r < n; ++r) {
        Rational s = 0;
        for (std::size_t c = 0; c < n; ++c) s += abs(adx(r, c));
        bound = std::max(bound, s);
    }
    const Rational scaled = bound * Rational(denom);
    const long lim = mpz_class(scaled.get_num() / scaled.get_den()).get_si();

    HorocyclicWitness w{x, Subspace::zero(n), Subspace::zero(n), Subspace::zero(n)};
    for (long mu = -lim; mu <= lim; ++mu) {
        const Rational lambda = Rational(mu) / Rational(denom);
        Subspace g = generalized_eigenspace(adx, lambda);
        if (g.dim() == 0) continue;
        Subspace& target = mu < 0 ? w.negative : (mu == 0 ? w.zero : w.positive);
        target = sum(target, g);
    }
    const Subspace u_space = Subspace::span(u.generators, n);
    const std::size_t total = w.dim_negative() + w.dim_zero() + w.dim_positive();
    if (w.positive == u_space && total == n) {
        result.status = HorocyclicResult::Status::found;
        result.witness = std::move(w);
        return result;
    }
    if (total < n && w.dim_positive() <= u_space.dim()) {
        result.status = HorocyclicResult::Status::non_integer_spectrum;
        result.detail = "ad(X) has eigenvalues outside the rationals";
        return result;
    }
    result.detail = "positive part of ad(X) has dimension " + std::to_string(w.dim_positive()) +
                    ", u has dimension " + std::to_string(u_space.dim());
    return result;
}

Rational semisimple_sum_entropy(const std::vector<SimpleFactor>& factors, std::size_t dim_u) {
    if (dim_u == 0) throw ParameterRange("semisimple_sum_entropy: dim u must be >= 1");
    Rational s = 0;
    for (const SimpleFactor& f : factors) {
        if (f.detected) s += Rational(static_cast<unsigned long>(f.dim));
    }
    return s / Rational(static_cast<unsigned long>(dim_u));
}

std::vector<SimpleFactor> detected_factors(const Example& ex) {
    std::vector<SimpleFactor> out;
    for (const auto& [lo, hi] : ex.blocks) {
        SimpleFactor f{hi - lo, false};
        for (const Vector& g : ex.u.generators) {
            for (std::size_t t = lo; t < hi; ++t) {
                if (sgn(g[t]) != 0) f.detected = true;
            }
        }
        out.push_back(f);
    }
    return out;
}

Rational product_entropy(const std::vector<ProductComponent>& components) {
    if (components.empty()) throw ParameterRange("product_entropy: no components");
    Rational num = 0;
    unsigned long total = 0;
    for (const ProductComponent& c : components) {
        if (c.k == 0) throw ParameterRange("product_entropy: every k_i must be >= 1");
        num += Rational(static_cast<unsigned long>(c.k)) * c.h;
        total += c.k;
    }
    return num / Rational(total);
}

CoherenceResult coherence_check_rank_one(const LieAlgebra& algebra, const Vector& generator) {
    const RationalMatrix adu = algebra.ad(generator);
    CoherenceResult r;
    r.blocks = jordan_block_sizes(adu);
    r.jordan_value = 0;
    for (std::size_t m : r.blocks) r.jordan_value += binom2(m);
    const Filtration f = compute_filtration(std::vector<RationalMatrix>{adu}, algebra.dim());
    r.filtration_value = slow_entropy(f).unnormalized;
    r.equal = r.jordan_value == r.filtration_value;
    return r;
}

}  // namespace slowent
