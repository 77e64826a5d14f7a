#include "slowent/chain_basis.hpp"

#include <map>
#include <set>

namespace slowent {

Vector GradedFrame::project(const Vector& graded, std::size_t level) const {
    const auto first = graded.begin() + static_cast<std::ptrdiff_t>(offsets.at(level));
    return Vector(first, first + static_cast<std::ptrdiff_t>(dims.at(level)));
}

GradedFrame make_graded_frame(const Filtration& f) {
    GradedFrame frame;
    std::vector<Vector> columns;
    std::size_t offset = 0;
    for (const Subspace& g : f.graded) {
        frame.offsets.push_back(offset);
        frame.dims.push_back(g.dim());
        offset += g.dim();
        for (Vector& v : g.basis_vectors()) columns.push_back(std::move(v));
    }
    const std::size_t n = f.ambient_dim();
    if (columns.size() != n) throw DimensionMismatch("graded pieces do not span the algebra");
    frame.basis = RationalMatrix::from_columns(columns, n);
    frame.to_graded = inverse(frame.basis);
    return frame;
}

ChainContext make_chain_context(const LieAlgebra& algebra, const SubalgebraSpec& u, const Filtration& f) {
    ChainContext ctx;
    ctx.algebra = &algebra;
    ctx.u = u;
    ctx.filtration = f;
    ctx.frame = make_graded_frame(f);
    ctx.ad_ambient = ad_operators(algebra, u);
    for (std::size_t a = 0; a < ctx.ad_ambient.size(); ++a) {
        for (std::size_t b = a + 1; b < ctx.ad_ambient.size(); ++b) {
            if (ctx.ad_ambient[a] * ctx.ad_ambient[b] != ctx.ad_ambient[b] * ctx.ad_ambient[a]) {
                throw Error("ad operators of u do not commute; symmetric power is ill-defined");
            }
        }
    }
    for (const RationalMatrix& a : ctx.ad_ambient) {
        ctx.ad_graded.push_back(ctx.frame.to_graded * a * ctx.frame.basis);
    }
    return ctx;
}

Vector apply_word(const std::vector<RationalMatrix>& ops, const Monomial& multidegree, const Vector& v) {
    if (multidegree.size() != ops.size()) throw DimensionMismatch("apply_word: multidegree arity");
    Vector out = v;
    for (std::size_t j = ops.size(); j-- > 0;) {
        for (unsigned e = 0; e < multidegree[j]; ++e) {
            if (is_zero(out)) return out;
            out = ops[j] * out;
        }
    }
    return out;
}

Vector apply_in_order(const std::vector<RationalMatrix>& ops, const std::vector<std::size_t>& order,
                      const Vector& v) {
    Vector out = v;
    for (std::size_t j : order) out = ops.at(j) * out;
    return out;
}

namespace {

Vector level_unit(const GradedFrame& frame, std::size_t level, std::size_t t) {
    return unit_vector(frame.basis.rows(), frame.offsets[level] + t);
}

/// Images ad^mu b_t of the g_i basis, in graded coordinates.
std::vector<Vector> word_images(const ChainContext& ctx, const Monomial& multidegree) {
    const std::size_t level = total_degree(multidegree);
    if (level >= ctx.frame.dims.size()) return {};
    std::vector<Vector> out;
    for (std::size_t t = 0; t < ctx.frame.dims[level]; ++t) {
        out.push_back(apply_word(ctx.ad_graded, multidegree, level_unit(ctx.frame, level, t)));
    }
    return out;
}

}  // namespace

Vector phi_apply(const ChainContext& ctx, const Monomial& multidegree, const Vector& psi) {
    const std::size_t n0 = ctx.frame.dims.at(0);
    if (psi.size() != n0) throw DimensionMismatch("phi_apply: psi must be a functional on g_0");
    const std::size_t level = total_degree(multidegree);
    if (level == 0) throw DimensionMismatch("phi_apply: word degree must be at least 1");
    std::vector<Vector> images = word_images(ctx, multidegree);
    Vector row(images.size(), Rational(0));
    for (std::size_t t = 0; t < images.size(); ++t) {
        for (std::size_t a = 0; a < n0; ++a) {
            if (sgn(psi[a]) != 0) row[t] += psi[a] * images[t][a];
        }
    }
    return row;
}

Vector phi_apply(const ChainContext& ctx, const TensorWord& word) {
    return phi_apply(ctx, word.multidegree, unit_vector(ctx.frame.dims.at(0), word.alpha));
}

std::size_t ChainBasis::size() const {
    std::size_t s = 0;
    for (const auto& l : levels) s += l.size();
    return s;
}

std::vector<const ChainElement*> ChainBasis::elements() const {
    std::vector<const ChainElement*> out;
    for (const auto& l : levels)
        for (const auto& e : l) out.push_back(&e);
    return out;
}

ChainBasis build_chain_basis(const ChainContext& ctx) {
    const GradedFrame& frame = ctx.frame;
    const std::size_t k = ctx.u.k();
    const std::size_t n0 = frame.dims.at(0);
    ChainBasis cb;
    cb.k = k;
    cb.n0 = n0;
    cb.levels.resize(frame.dims.size());

    for (std::size_t a = 0; a < n0; ++a) {
        ChainElement e;
        e.level = 0;
        e.y = frame.basis.column(a);
        e.word = {Monomial(k, 0), a};
        cb.levels[0].push_back(std::move(e));
    }

    for (std::size_t level = 1; level < frame.dims.size(); ++level) {
        const std::size_t ni = frame.dims[level];
        std::vector<Vector> raw;       // selected functionals
        std::vector<TensorWord> words;
        std::vector<std::pair<Vector, std::size_t>> echelon;
        for (const Monomial& mu : monomials_of_degree(k, static_cast<unsigned>(level))) {
            if (raw.size() == ni) break;
            const std::vector<Vector> images = word_images(ctx, mu);
            for (std::size_t a = 0; a < n0 && raw.size() < ni; ++a) {
                Vector row(ni);
                for (std::size_t t = 0; t < ni; ++t) row[t] = images[t][a];
                Vector reduced = row;
                for (const auto& [r, p] : echelon) {
                    if (sgn(reduced[p]) == 0) continue;
                    reduced = sub(reduced, scale(reduced[p], r));
                }
                std::size_t p = 0;
                while (p < ni && sgn(reduced[p]) == 0) ++p;
                if (p == ni) continue;
                reduced = scale(1 / reduced[p], reduced);
                echelon.emplace_back(std::move(reduced), p);
                raw.push_back(std::move(row));
                words.push_back({mu, a});
            }
        }
        if (raw.size() < ni) {
            throw SurjectivityFailure(level, "Phi_" + std::to_string(level) + " is not surjective: rank " +
                                                 std::to_string(raw.size()) + " < " + std::to_string(ni));
        }
        const RationalMatrix dual = inverse(RationalMatrix::from_rows(raw, ni));
        for (std::size_t j = 0; j < ni; ++j) {
            Vector graded = zero_vector(frame.basis.rows());
            for (std::size_t t = 0; t < ni; ++t) graded[frame.offsets[level] + t] = dual(t, j);
            ChainElement e;
            e.level = level;
            e.y = frame.basis * graded;
            e.word = words[j];
            cb.levels[level].push_back(std::move(e));
        }
    }
    return cb;
}

VectorPoly orbit_polynomial(const std::vector<RationalMatrix>& ops, const Vector& y) {
    const std::size_t k = ops.size();
    const std::size_t n = y.size();
    VectorPoly poly(k);
    std::map<Monomial, Vector> layer;
    if (!is_zero(y)) layer.emplace(Monomial(k, 0), y);
    for (unsigned degree = 0; !layer.empty(); ++degree) {
        if (degree > n) throw NotNilpotent("orbit series does not terminate; ad operators are not nilpotent");
        for (const auto& [m, c] : layer) poly.add_term(m, c);
        std::map<Monomial, Vector> next;
        for (const Monomial& mu : monomials_of_degree(k, degree + 1)) {
            std::size_t j = 0;
            while (mu[j] == 0) ++j;
            Monomial prev = mu;
            --prev[j];
            auto it = layer.find(prev);
            if (it == layer.end()) continue;
            Vector c = scale(Rational(1, mu[j]), ops[j] * it->second);
            if (!is_zero(c)) next.emplace(mu, std::move(c));
        }
        layer = std::move(next);
    }
    return poly;
}

void associated_polynomials(const ChainContext& ctx, ChainBasis& cb) {
    for (auto& level : cb.levels) {
        for (ChainElement& e : level) {
            const VectorPoly orbit = orbit_polynomial(ctx.ad_graded, ctx.frame.graded_coordinates(e.y));
            const std::size_t alpha = e.word.alpha;
            e.poly = orbit.map<Rational>([alpha](const Vector& v) { return v[alpha]; });
        }
    }
    cb.polynomials_ready = true;
}

std::vector<IndependenceEntry> verify_homogeneous_independence(const ChainBasis& cb) {
    if (!cb.polynomials_ready) throw ChainBasisMissing("associated polynomials have not been computed");
    std::vector<IndependenceEntry> out;
    for (std::size_t level = 0; level < cb.levels.size(); ++level) {
        std::map<std::size_t, std::vector<ScalarPoly>> groups;
        for (const ChainElement& e : cb.levels[level]) {
            groups[e.word.alpha].push_back(e.poly.homogeneous_part(static_cast<unsigned>(level)));
        }
        for (const auto& [alpha, polys] : groups) {
            std::set<Monomial> support;
            for (const ScalarPoly& p : polys)
                for (const auto& [m, c] : p.terms()) support.insert(m);
            RationalMatrix coeffs(polys.size(), support.size());
            for (std::size_t r = 0; r < polys.size(); ++r) {
                std::size_t c = 0;
                for (const Monomial& m : support) {
                    auto it = polys[r].terms().find(m);
                    if (it != polys[r].terms().end()) coeffs(r, c) = it->second;
                    ++c;
                }
            }
            out.push_back({level, alpha, polys.size(), support.empty() ? 0 : rank(coeffs)});
        }
    }
    return out;
}

std::vector<ProjectionDegree> projection_degree_table(const ChainContext& ctx, const ChainBasis& cb) {
    std::vector<ProjectionDegree> out;
    const std::size_t levels = ctx.frame.dims.size();
    for (std::size_t level = 0; level < cb.levels.size(); ++level) {
        for (std::size_t j = 0; j < cb.levels[level].size(); ++j) {
            const VectorPoly orbit =
                orbit_polynomial(ctx.ad_graded, ctx.frame.graded_coordinates(cb.levels[level][j].y));
            for (std::size_t i = 0; i < levels; ++i) {
                const VectorPoly proj =
                    orbit.map<Vector>([&](const Vector& v) { return ctx.frame.project(v, i); });
                const int bound = level >= i ? static_cast<int>(level - i) : 0;
                out.push_back({level, j, i, proj.degree(), bound});
            }
        }
    }
    return out;
}

}  // namespace slowent
