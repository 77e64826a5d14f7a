#include "slowent/exact_linalg.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

namespace slowent {

Rational parse_rational(std::string_view text) {
    std::string s;
    for (char ch : text) {
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    }
    if (s.empty()) throw ParseError("empty rational literal");
    const auto slash = s.find('/');
    auto valid_int = [](std::string_view t) {
        std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
        }
        return true;
    };
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+') {
        throw ParseError("malformed rational literal '" + s + "'");
    }
    if (num[0] == '+') num.erase(0, 1);
    mpz_class n(num, 10);
    mpz_class d(den, 10);
    if (d == 0) throw ParseError("zero denominator in '" + s + "'");
    Rational q(n, d);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Vector zero_vector(std::size_t n) { return Vector(n, Rational(0)); }

Vector unit_vector(std::size_t n, std::size_t i) {
    Vector v(n, Rational(0));
    v.at(i) = 1;
    return v;
}

bool is_zero(const Vector& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) == 0; });
}

Vector add(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw DimensionMismatch("vector add: length mismatch");
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Vector sub(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw DimensionMismatch("vector sub: length mismatch");
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Vector scale(const Rational& s, const Vector& v) {
    Vector r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = s * v[i];
    return r;
}

Rational dot(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw DimensionMismatch("dot: length mismatch");
    Rational acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (sgn(a[i]) != 0 && sgn(b[i]) != 0) acc += a[i] * b[i];
    }
    return acc;
}

// ---------------------------------------------------------------------------
// RationalMatrix

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, Rational(0)) {}

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_) {
        throw DimensionMismatch("matrix entry count does not match shape");
    }
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

RationalMatrix RationalMatrix::zero(std::size_t rows, std::size_t cols) { return {rows, cols}; }

RationalMatrix RationalMatrix::from_rows(std::span<const Vector> rows, std::size_t cols) {
    RationalMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw DimensionMismatch("from_rows: ragged input");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    }
    return m;
}

RationalMatrix RationalMatrix::from_columns(std::span<const Vector> columns, std::size_t rows) {
    RationalMatrix m(rows, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (columns[c].size() != rows) throw DimensionMismatch("from_columns: ragged input");
        for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
    }
    return m;
}

Vector RationalMatrix::row(std::size_t r) const {
    return Vector(entries_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                  entries_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

Vector RationalMatrix::column(std::size_t c) const {
    Vector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
}

std::vector<Vector> RationalMatrix::row_vectors() const {
    std::vector<Vector> out;
    out.reserve(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out.push_back(row(r));
    return out;
}

RationalMatrix RationalMatrix::transpose() const {
    RationalMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

bool RationalMatrix::is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(),
                       [](const Rational& x) { return sgn(x) == 0; });
}

RationalMatrix RationalMatrix::pow(std::size_t exponent) const {
    if (!is_square()) throw DimensionMismatch("pow: matrix not square");
    RationalMatrix result = identity(rows_);
    RationalMatrix base = *this;
    while (exponent > 0) {
        if (exponent & 1U) result = result * base;
        exponent >>= 1U;
        if (exponent > 0) base = base * base;
    }
    return result;
}

RationalMatrix RationalMatrix::stacked(const RationalMatrix& below) const {
    if (rows_ == 0) return below;
    if (below.rows_ == 0) return *this;
    if (below.cols_ != cols_) throw DimensionMismatch("stacked: column mismatch");
    std::vector<Rational> e = entries_;
    e.insert(e.end(), below.entries_.begin(), below.entries_.end());
    return {rows_ + below.rows_, cols_, std::move(e)};
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionMismatch("matrix product: inner dimension mismatch");
    RationalMatrix p(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t t = 0; t < a.cols(); ++t) {
            const Rational& x = a(i, t);
            if (sgn(x) == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) {
                if (sgn(b(t, j)) != 0) p(i, j) += x * b(t, j);
            }
        }
    }
    return p;
}

Vector operator*(const RationalMatrix& m, const Vector& v) {
    if (m.cols() != v.size()) throw DimensionMismatch("matrix-vector product: length mismatch");
    Vector out(m.rows(), Rational(0));
    for (std::size_t c = 0; c < m.cols(); ++c) {
        if (sgn(v[c]) == 0) continue;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (sgn(m(r, c)) != 0) out[r] += m(r, c) * v[c];
        }
    }
    return out;
}

RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("matrix add");
    std::vector<Rational> e(a.entries().size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = a.entries()[i] + b.entries()[i];
    return {a.rows(), a.cols(), std::move(e)};
}

RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("matrix sub");
    std::vector<Rational> e(a.entries().size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = a.entries()[i] - b.entries()[i];
    return {a.rows(), a.cols(), std::move(e)};
}

RationalMatrix operator*(const Rational& s, const RationalMatrix& m) {
    std::vector<Rational> e(m.entries().size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = s * m.entries()[i];
    return {m.rows(), m.cols(), std::move(e)};
}

std::ostream& operator<<(std::ostream& os, const RationalMatrix& m) {
    os << '[';
    for (std::size_t r = 0; r < m.rows(); ++r) {
        os << (r ? ", [" : "[");
        for (std::size_t c = 0; c < m.cols(); ++c) os << (c ? ", " : "") << m(r, c);
        os << ']';
    }
    return os << ']';
}

// ---------------------------------------------------------------------------
// Elimination

RrefResult rref(const RationalMatrix& m) {
    RrefResult out{m, 0, {}};
    RationalMatrix& a = out.reduced;
    const std::size_t rows = a.rows();
    const std::size_t cols = a.cols();
    std::size_t pivot_row = 0;
    for (std::size_t c = 0; c < cols && pivot_row < rows; ++c) {
        std::size_t sel = pivot_row;
        while (sel < rows && sgn(a(sel, c)) == 0) ++sel;
        if (sel == rows) continue;
        if (sel != pivot_row) {
            for (std::size_t j = 0; j < cols; ++j) swap(a(sel, j), a(pivot_row, j));
        }
        const Rational inv = 1 / a(pivot_row, c);
        for (std::size_t j = c; j < cols; ++j) a(pivot_row, j) *= inv;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == pivot_row || sgn(a(r, c)) == 0) continue;
            const Rational factor = a(r, c);
            for (std::size_t j = c; j < cols; ++j) {
                if (sgn(a(pivot_row, j)) != 0) a(r, j) -= factor * a(pivot_row, j);
            }
        }
        out.pivots.push_back(c);
        ++pivot_row;
    }
    out.rank = pivot_row;
    return out;
}

std::size_t rank(const RationalMatrix& m) { return rref(m).rank; }

RationalMatrix inverse(const RationalMatrix& m) {
    if (!m.is_square()) throw DimensionMismatch("inverse: matrix not square");
    const std::size_t n = m.rows();
    RationalMatrix aug(n, 2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
        aug(r, n + r) = 1;
    }
    const RrefResult red = rref(aug);
    if (red.rank < n || (n > 0 && red.pivots[n - 1] != n - 1)) {
        throw DimensionMismatch("inverse: matrix is singular");
    }
    RationalMatrix inv(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) inv(r, c) = red.reduced(r, n + c);
    return inv;
}

// ---------------------------------------------------------------------------
// Subspace

Subspace::Subspace(std::size_t ambient_dim, RationalMatrix basis, std::vector<std::size_t> pivots)
    : ambient_dim_(ambient_dim), basis_(std::move(basis)), pivots_(std::move(pivots)) {}

Subspace Subspace::zero(std::size_t ambient_dim) {
    return {ambient_dim, RationalMatrix(0, ambient_dim), {}};
}

Subspace Subspace::full(std::size_t ambient_dim) {
    std::vector<std::size_t> piv(ambient_dim);
    for (std::size_t i = 0; i < ambient_dim; ++i) piv[i] = i;
    return {ambient_dim, RationalMatrix::identity(ambient_dim), std::move(piv)};
}

Subspace Subspace::row_space(const RationalMatrix& m) {
    RrefResult red = rref(m);
    RationalMatrix basis(red.rank, m.cols());
    for (std::size_t r = 0; r < red.rank; ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) basis(r, c) = red.reduced(r, c);
    return {m.cols(), std::move(basis), std::move(red.pivots)};
}

Subspace Subspace::span(std::span<const Vector> vectors, std::size_t ambient_dim) {
    return row_space(RationalMatrix::from_rows(vectors, ambient_dim));
}

bool Subspace::contains(const Vector& v) const {
    if (v.size() != ambient_dim_) throw DimensionMismatch("contains: vector length mismatch");
    // Subtract the unique combination matching v on the pivot columns.
    Vector residual = v;
    for (std::size_t r = 0; r < dim(); ++r) {
        const Rational coeff = residual[pivots_[r]];
        if (sgn(coeff) == 0) continue;
        for (std::size_t c = 0; c < ambient_dim_; ++c) {
            if (sgn(basis_(r, c)) != 0) residual[c] -= coeff * basis_(r, c);
        }
    }
    return slowent::is_zero(residual);
}

bool Subspace::contains(const Subspace& other) const {
    if (other.ambient_dim_ != ambient_dim_) throw DimensionMismatch("contains: ambient mismatch");
    for (std::size_t r = 0; r < other.dim(); ++r) {
        if (!contains(other.basis_.row(r))) return false;
    }
    return true;
}

Vector Subspace::coordinates(const Vector& v) const {
    if (v.size() != ambient_dim_) throw DimensionMismatch("coordinates: vector length mismatch");
    Vector c(dim());
    for (std::size_t r = 0; r < dim(); ++r) c[r] = v[pivots_[r]];
    return c;
}

RationalMatrix Subspace::annihilator() const {
    const Subspace k = kernel(basis_);
    return k.basis();
}

Subspace kernel(const RationalMatrix& m) {
    const std::size_t n = m.cols();
    const RrefResult red = rref(m);
    std::vector<bool> is_pivot(n, false);
    for (std::size_t p : red.pivots) is_pivot[p] = true;
    std::vector<Vector> basis;
    for (std::size_t free = 0; free < n; ++free) {
        if (is_pivot[free]) continue;
        Vector v = zero_vector(n);
        v[free] = 1;
        for (std::size_t r = 0; r < red.rank; ++r) v[red.pivots[r]] = -red.reduced(r, free);
        basis.push_back(std::move(v));
    }
    return Subspace::span(basis, n);
}

Subspace image(const RationalMatrix& m) { return Subspace::row_space(m.transpose()); }

Subspace sum(const Subspace& a, const Subspace& b) {
    if (a.ambient_dim() != b.ambient_dim()) throw DimensionMismatch("sum: ambient mismatch");
    RationalMatrix stacked = a.basis().stacked(b.basis());
    if (stacked.rows() == 0) return Subspace::zero(a.ambient_dim());
    return Subspace::row_space(stacked);
}

Subspace intersect(const Subspace& a, const Subspace& b) {
    if (a.ambient_dim() != b.ambient_dim()) throw DimensionMismatch("intersect: ambient mismatch");
    const std::size_t n = a.ambient_dim();
    if (a.is_full()) return b;
    if (b.is_full()) return a;
    RationalMatrix equations = a.annihilator().stacked(b.annihilator());
    if (equations.rows() == 0) return Subspace::full(n);
    return kernel(equations);
}

Subspace preimage(const RationalMatrix& m, const Subspace& target) {
    if (m.rows() != target.ambient_dim()) throw DimensionMismatch("preimage: target ambient mismatch");
    if (target.is_full()) return Subspace::full(m.cols());
    const RationalMatrix equations = target.annihilator() * m;
    return kernel(equations);
}

Subspace complement_in(const Subspace& sub, const Subspace& sup, ComplementRule rule) {
    if (sub.ambient_dim() != sup.ambient_dim()) throw DimensionMismatch("complement_in: ambient mismatch");
    if (!sup.contains(sub)) throw ContainmentViolation("complement_in: sub is not contained in sup");
    const std::size_t n = sup.ambient_dim();
    const std::vector<Vector> sup_rows = sup.basis_vectors();
    std::vector<Vector> chosen;
    if (rule == ComplementRule::non_pivot) {
        std::vector<Vector> coords;
        for (const Vector& v : sub.basis_vectors()) coords.push_back(sup.coordinates(v));
        std::vector<bool> taken(sup.dim(), false);
        if (!coords.empty()) {
            for (std::size_t p : rref(RationalMatrix::from_rows(coords, sup.dim())).pivots) taken[p] = true;
        }
        for (std::size_t t = 0; t < sup.dim(); ++t) {
            if (!taken[t]) chosen.push_back(sup_rows[t]);
        }
    } else {
        Subspace running = sub;
        for (std::size_t t = sup.dim(); t-- > 0;) {
            if (running.contains(sup_rows[t])) continue;
            chosen.push_back(sup_rows[t]);
            running = sum(running, Subspace::span(std::span(&sup_rows[t], 1), n));
        }
    }
    return Subspace::span(chosen, n);
}

}  // namespace slowent
