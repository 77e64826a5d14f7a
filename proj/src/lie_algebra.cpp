#include "slowent/lie_algebra.hpp"

#include <sstream>

namespace slowent {

LieAlgebra LieAlgebra::from_brackets(std::vector<std::string> basis_names,
                                     const std::vector<BracketEntry>& brackets) {
    const std::size_t n = basis_names.size();
    std::vector<std::vector<Vector>> table(n, std::vector<Vector>(n, zero_vector(n)));
    for (const BracketEntry& e : brackets) {
        if (e.i >= e.j) throw ParseError("bracket entries must satisfy i < j");
        if (e.j >= n) throw ParseError("bracket index out of range");
        Vector& v = table[e.i][e.j];
        for (const auto& [k, c] : e.terms) {
            if (k >= n) throw ParseError("bracket result index out of range");
            v[k] += c;
        }
        table[e.j][e.i] = scale(Rational(-1), v);
    }
    LieAlgebra a;
    a.names_ = std::move(basis_names);
    a.table_ = std::move(table);
    return a;
}

LieAlgebra LieAlgebra::from_dense(std::vector<std::string> basis_names,
                                  std::vector<std::vector<Vector>> table) {
    const std::size_t n = basis_names.size();
    if (table.size() != n) throw DimensionMismatch("structure table has wrong row count");
    for (const auto& row : table) {
        if (row.size() != n) throw DimensionMismatch("structure table has wrong column count");
        for (const auto& v : row) {
            if (v.size() != n) throw DimensionMismatch("structure vector has wrong length");
        }
    }
    LieAlgebra a;
    a.names_ = std::move(basis_names);
    a.table_ = std::move(table);
    return a;
}

LieAlgebra LieAlgebra::abelian(std::size_t dim) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < dim; ++i) names.push_back("e" + std::to_string(i + 1));
    return from_brackets(std::move(names), {});
}

std::optional<std::size_t> LieAlgebra::basis_index(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (names_[i] == name) return i;
    }
    return std::nullopt;
}

Vector LieAlgebra::bracket(const Vector& a, const Vector& b) const {
    const std::size_t n = dim();
    if (a.size() != n || b.size() != n) throw DimensionMismatch("bracket: vector length mismatch");
    Vector out = zero_vector(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (sgn(a[i]) == 0) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (sgn(b[j]) == 0) continue;
            const Rational w = a[i] * b[j];
            const Vector& c = table_[i][j];
            for (std::size_t k = 0; k < n; ++k) {
                if (sgn(c[k]) != 0) out[k] += w * c[k];
            }
        }
    }
    return out;
}

RationalMatrix LieAlgebra::ad(const Vector& x) const {
    const std::size_t n = dim();
    if (x.size() != n) throw DimensionMismatch("ad: vector length mismatch");
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (sgn(x[i]) == 0) continue;
        for (std::size_t j = 0; j < n; ++j) {
            const Vector& c = table_[i][j];
            for (std::size_t k = 0; k < n; ++k) {
                if (sgn(c[k]) != 0) m(k, j) += x[i] * c[k];
            }
        }
    }
    return m;
}

std::vector<BracketEntry> LieAlgebra::sparse_brackets() const {
    std::vector<BracketEntry> out;
    for (std::size_t i = 0; i < dim(); ++i) {
        for (std::size_t j = i + 1; j < dim(); ++j) {
            BracketEntry e{i, j, {}};
            for (std::size_t k = 0; k < dim(); ++k) {
                if (sgn(table_[i][j][k]) != 0) e.terms.emplace_back(k, table_[i][j][k]);
            }
            if (!e.terms.empty()) out.push_back(std::move(e));
        }
    }
    return out;
}

std::string to_string(Violation::Kind kind) {
    switch (kind) {
        case Violation::Kind::antisymmetry: return "antisymmetry";
        case Violation::Kind::jacobi: return "jacobi";
        case Violation::Kind::shape: return "shape";
    }
    return "unknown";
}

std::vector<Violation> validate(const LieAlgebra& algebra) {
    std::vector<Violation> out;
    const std::size_t n = algebra.dim();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            const Vector& a = algebra.structure(i, j);
            const Vector& b = algebra.structure(j, i);
            for (std::size_t k = 0; k < n; ++k) {
                if (a[k] + b[k] != 0) {
                    out.push_back({Violation::Kind::antisymmetry, i, j, k,
                                   "c[" + std::to_string(i) + "][" + std::to_string(j) + "][" +
                                       std::to_string(k) + "] != -c[" + std::to_string(j) + "][" +
                                       std::to_string(i) + "][" + std::to_string(k) + "]"});
                    break;
                }
            }
        }
    }
    // Jacobi: [e_i,[e_j,e_k]] + [e_j,[e_k,e_i]] + [e_k,[e_i,e_j]] = 0.
    std::vector<RationalMatrix> ads;
    ads.reserve(n);
    for (std::size_t i = 0; i < n; ++i) ads.push_back(algebra.ad(algebra.basis_vector(i)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            for (std::size_t k = j + 1; k < n; ++k) {
                Vector s = ads[i] * algebra.structure(j, k);
                s = add(s, ads[j] * algebra.structure(k, i));
                s = add(s, ads[k] * algebra.structure(i, j));
                if (!is_zero(s)) {
                    out.push_back({Violation::Kind::jacobi, i, j, k,
                                   "Jacobi identity fails on (" + algebra.basis_names()[i] + ", " +
                                       algebra.basis_names()[j] + ", " + algebra.basis_names()[k] + ")"});
                }
            }
        }
    }
    return out;
}

std::optional<std::size_t> nilpotency_index(const RationalMatrix& m) {
    if (!m.is_square()) throw DimensionMismatch("nilpotency_index: matrix not square");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    RationalMatrix p = m;
    for (std::size_t e = 1; e <= n; ++e) {
        if (p.is_zero()) return e;
        p = p * m;
    }
    return std::nullopt;
}

std::string to_string(UnipotencyIssue::Kind kind) {
    switch (kind) {
        case UnipotencyIssue::Kind::empty: return "empty";
        case UnipotencyIssue::Kind::wrong_length: return "wrong_length";
        case UnipotencyIssue::Kind::dependent: return "dependent";
        case UnipotencyIssue::Kind::non_abelian: return "non_abelian";
        case UnipotencyIssue::Kind::not_nilpotent: return "not_nilpotent";
    }
    return "unknown";
}

UnipotencyReport check_abelian_unipotent(const LieAlgebra& algebra, const SubalgebraSpec& u) {
    UnipotencyReport report;
    const std::size_t n = algebra.dim();
    if (u.generators.empty()) {
        report.issues.push_back({UnipotencyIssue::Kind::empty, 0, 0, {}, "subalgebra has no generators"});
        return report;
    }
    for (std::size_t a = 0; a < u.k(); ++a) {
        if (u.generators[a].size() != n) {
            report.issues.push_back({UnipotencyIssue::Kind::wrong_length, a, 0, {},
                                     "generator " + std::to_string(a) + " has wrong length"});
        }
    }
    if (!report.ok()) return report;

    if (rank(RationalMatrix::from_rows(u.generators, n)) < u.k()) {
        report.issues.push_back({UnipotencyIssue::Kind::dependent, 0, 0, {},
                                 "generators are linearly dependent"});
    }
    for (std::size_t a = 0; a < u.k(); ++a) {
        for (std::size_t b = a + 1; b < u.k(); ++b) {
            Vector br = algebra.bracket(u.generators[a], u.generators[b]);
            if (!is_zero(br)) {
                report.issues.push_back({UnipotencyIssue::Kind::non_abelian, a, b, std::move(br),
                                         "generators " + std::to_string(a) + " and " +
                                             std::to_string(b) + " do not commute"});
            }
        }
    }
    for (std::size_t a = 0; a < u.k(); ++a) {
        if (!nilpotency_index(algebra.ad(u.generators[a]))) {
            report.issues.push_back({UnipotencyIssue::Kind::not_nilpotent, a, 0, u.generators[a],
                                     "not ad-unipotent: ad of generator " + std::to_string(a) +
                                         " is not nilpotent"});
        }
    }
    return report;
}

std::vector<RationalMatrix> ad_operators(const LieAlgebra& algebra, const SubalgebraSpec& u) {
    std::vector<RationalMatrix> out;
    out.reserve(u.k());
    for (const Vector& g : u.generators) out.push_back(algebra.ad(g));
    return out;
}

}  // namespace slowent
