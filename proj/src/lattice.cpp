#include "bpr/lattice.hpp"

#include <cstdlib>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace bpr {

IntMatrix IntMatrix::identity(std::size_t n)
{
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<i64>>& rows, std::size_t cols)
{
    IntMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw std::invalid_argument("from_rows: ragged input");
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

std::vector<i64> IntMatrix::row(std::size_t i) const
{
    return {data_.begin() + static_cast<std::ptrdiff_t>(i * cols_), data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
}

void IntMatrix::append_row(const std::vector<i64>& r)
{
    if (r.size() != cols_) throw std::invalid_argument("append_row: width mismatch");
    data_.insert(data_.end(), r.begin(), r.end());
    ++rows_;
}

void IntMatrix::swap_rows(std::size_t i, std::size_t j)
{
    if (i == j) return;
    for (std::size_t k = 0; k < cols_; ++k) std::swap((*this)(i, k), (*this)(j, k));
}

void IntMatrix::swap_cols(std::size_t i, std::size_t j)
{
    if (i == j) return;
    for (std::size_t k = 0; k < rows_; ++k) std::swap((*this)(k, i), (*this)(k, j));
}

void IntMatrix::add_row(std::size_t i, std::size_t j, i64 f)
{
    if (f == 0) return;
    for (std::size_t k = 0; k < cols_; ++k) (*this)(i, k) = checked_add((*this)(i, k), checked_mul(f, (*this)(j, k)));
}

void IntMatrix::add_col(std::size_t i, std::size_t j, i64 f)
{
    if (f == 0) return;
    for (std::size_t k = 0; k < rows_; ++k) (*this)(k, i) = checked_add((*this)(k, i), checked_mul(f, (*this)(k, j)));
}

void IntMatrix::negate_row(std::size_t i)
{
    for (std::size_t k = 0; k < cols_; ++k) (*this)(i, k) = -(*this)(i, k);
}

void IntMatrix::negate_col(std::size_t i)
{
    for (std::size_t k = 0; k < rows_; ++k) (*this)(k, i) = -(*this)(k, i);
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const
{
    if (cols_ != o.rows_) throw std::invalid_argument("matrix product: shape mismatch");
    IntMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            i64 x = (*this)(i, k);
            if (x == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) = checked_add(r(i, j), checked_mul(x, o(k, j)));
        }
    return r;
}

bool IntMatrix::is_zero() const
{
    for (i64 x : data_)
        if (x != 0) return false;
    return true;
}

std::string to_string(const IntMatrix& m)
{
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << (i ? "; " : "");
        for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j);
    }
    os << "]";
    return os.str();
}

namespace {

// echelon form on the first `ncols` columns; returns the number of pivot rows
std::size_t echelon(IntMatrix& m, std::size_t ncols, bool reduce_above)
{
    std::size_t row = 0;
    for (std::size_t col = 0; col < ncols && row < m.rows(); ++col) {
        for (;;) {
            std::size_t best = m.rows();
            for (std::size_t i = row; i < m.rows(); ++i)
                if (m(i, col) != 0 && (best == m.rows() || std::llabs(m(i, col)) < std::llabs(m(best, col)))) best = i;
            if (best == m.rows()) break;
            m.swap_rows(row, best);
            bool clean = true;
            for (std::size_t i = row + 1; i < m.rows(); ++i) {
                if (m(i, col) == 0) continue;
                m.add_row(i, row, -(m(i, col) / m(row, col)));
                if (m(i, col) != 0) clean = false;
            }
            if (clean) break;
        }
        if (m(row, col) == 0) continue;
        if (m(row, col) < 0) m.negate_row(row);
        if (reduce_above)
            for (std::size_t r = 0; r < row; ++r) m.add_row(r, row, -floor_div(m(r, col), m(row, col)));
        ++row;
    }
    return row;
}

} // namespace

IntMatrix hnf(IntMatrix m)
{
    std::size_t r = echelon(m, m.cols(), true);
    IntMatrix out(0, m.cols());
    for (std::size_t i = 0; i < r; ++i) out.append_row(m.row(i));
    return out;
}

IntMatrix left_kernel(const IntMatrix& a)
{
    const std::size_t m = a.rows(), n = a.cols();
    IntMatrix aug(m, n + m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n + i) = 1;
    }
    std::size_t r = echelon(aug, n, false);
    IntMatrix k(0, m);
    for (std::size_t i = r; i < m; ++i) {
        std::vector<i64> v(m);
        for (std::size_t j = 0; j < m; ++j) v[j] = aug(i, n + j);
        k.append_row(v);
    }
    return hnf(k);
}

SmithForm smith(const IntMatrix& input)
{
    IntMatrix a = input;
    const std::size_t m = a.rows(), n = a.cols();
    SmithForm s{{}, IntMatrix::identity(m), IntMatrix::identity(n), IntMatrix::identity(n)};
    auto col_add = [&](std::size_t j, std::size_t t, i64 f) { // col j += f col t
        a.add_col(j, t, f);
        s.V.add_col(j, t, f);
        s.Vinv.add_row(t, j, -f);
    };
    auto col_swap = [&](std::size_t i, std::size_t j) {
        a.swap_cols(i, j);
        s.V.swap_cols(i, j);
        s.Vinv.swap_rows(i, j);
    };
    auto row_add = [&](std::size_t i, std::size_t t, i64 f) {
        a.add_row(i, t, f);
        s.U.add_row(i, t, f);
    };
    auto row_swap = [&](std::size_t i, std::size_t j) {
        a.swap_rows(i, j);
        s.U.swap_rows(i, j);
    };

    for (std::size_t t = 0; t < std::min(m, n); ++t) {
        std::size_t bi = m, bj = n;
        for (std::size_t i = t; i < m; ++i)
            for (std::size_t j = t; j < n; ++j)
                if (a(i, j) != 0 && (bi == m || std::llabs(a(i, j)) < std::llabs(a(bi, bj)))) bi = i, bj = j;
        if (bi == m) break;
        row_swap(t, bi);
        col_swap(t, bj);
        for (;;) {
            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i)
                if (a(i, t) != 0) {
                    row_add(i, t, -(a(i, t) / a(t, t)));
                    if (a(i, t) != 0) clean = false;
                }
            for (std::size_t j = t + 1; j < n; ++j)
                if (a(t, j) != 0) {
                    col_add(j, t, -(a(t, j) / a(t, t)));
                    if (a(t, j) != 0) clean = false;
                }
            if (!clean) {
                // bring the smallest remainder in row/column t to the pivot
                std::size_t bi2 = t, bj2 = t;
                for (std::size_t i = t + 1; i < m; ++i)
                    if (a(i, t) != 0 && std::llabs(a(i, t)) < std::llabs(a(bi2, bj2))) bi2 = i, bj2 = t;
                for (std::size_t j = t + 1; j < n; ++j)
                    if (a(t, j) != 0 && std::llabs(a(t, j)) < std::llabs(a(bi2, bj2))) bi2 = t, bj2 = j;
                row_swap(t, bi2);
                col_swap(t, bj2);
                continue;
            }
            // divisibility of the remaining block
            std::size_t bad = m;
            for (std::size_t i = t + 1; i < m && bad == m; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (a(i, j) % a(t, t) != 0) {
                        bad = i;
                        break;
                    }
            if (bad == m) break;
            row_add(t, bad, 1);
        }
        if (a(t, t) < 0) {
            a.negate_row(t);
            s.U.negate_row(t);
        }
        s.diagonal.push_back(a(t, t));
    }
    return s;
}

Lattice::Lattice(std::size_t n, i64 modulus) : n_(n), modulus_(modulus), basis_(0, n) { normalize(); }

Lattice Lattice::full(std::size_t n, i64 modulus)
{
    Lattice l(n, modulus);
    l.basis_ = IntMatrix::identity(n);
    return l;
}

Lattice Lattice::from_generators(const IntMatrix& gens, i64 modulus)
{
    Lattice l;
    l.n_ = gens.cols();
    l.modulus_ = modulus;
    l.basis_ = gens;
    l.normalize();
    return l;
}

void Lattice::normalize()
{
    if (modulus_ > 0) {
        IntMatrix m = basis_;
        for (std::size_t i = 0; i < n_; ++i) {
            std::vector<i64> e(n_, 0);
            e[i] = modulus_;
            m.append_row(e);
        }
        basis_ = hnf(std::move(m));
    } else {
        basis_ = hnf(std::move(basis_));
    }
}

bool Lattice::contains(const std::vector<i64>& v0) const
{
    if (v0.size() != n_) throw std::invalid_argument("contains: dimension mismatch");
    std::vector<i64> v = v0;
    std::size_t col = 0;
    for (std::size_t r = 0; r < basis_.rows(); ++r) {
        while (basis_(r, col) == 0) {
            if (v[col] != 0) return false;
            ++col;
        }
        i64 piv = basis_(r, col);
        if (v[col] % piv != 0) return false;
        i64 q = v[col] / piv;
        for (std::size_t j = col; j < n_; ++j) v[j] = checked_add(v[j], -checked_mul(q, basis_(r, j)));
        ++col;
    }
    for (i64 x : v)
        if (x != 0) return false;
    return true;
}

bool Lattice::contains(const Lattice& other) const
{
    for (std::size_t i = 0; i < other.basis_.rows(); ++i)
        if (!contains(other.basis_.row(i))) return false;
    return true;
}

Lattice Lattice::operator+(const Lattice& other) const
{
    if (other.n_ != n_) throw std::invalid_argument("lattice sum: dimension mismatch");
    IntMatrix m = basis_;
    for (std::size_t i = 0; i < other.basis_.rows(); ++i) m.append_row(other.basis_.row(i));
    i64 mod = modulus_ == 0 ? other.modulus_ : (other.modulus_ == 0 ? modulus_ : std::gcd(modulus_, other.modulus_));
    return from_generators(m, mod);
}

Lattice Lattice::intersect(const Lattice& other) const
{
    if (other.n_ != n_) throw std::invalid_argument("lattice intersection: dimension mismatch");
    IntMatrix stacked = basis_;
    for (std::size_t i = 0; i < other.basis_.rows(); ++i) stacked.append_row(other.basis_.row(i));
    IntMatrix k = left_kernel(stacked);
    IntMatrix alpha(k.rows(), basis_.rows());
    for (std::size_t i = 0; i < k.rows(); ++i)
        for (std::size_t j = 0; j < basis_.rows(); ++j) alpha(i, j) = k(i, j);
    i64 mod = (modulus_ > 0 && other.modulus_ > 0 && modulus_ == other.modulus_) ? modulus_ : 0;
    return from_generators(alpha * basis_, mod);
}

IntMatrix Lattice::image(const IntMatrix& d) const
{
    if (d.rows() != n_) throw std::invalid_argument("image: map has wrong source dimension");
    return basis_ * d;
}

Lattice Lattice::preimage(const IntMatrix& d, const Lattice& target) const
{
    if (d.rows() != n_ || d.cols() != target.n_) throw std::invalid_argument("preimage: shape mismatch");
    IntMatrix stacked = basis_ * d;
    const std::size_t g = stacked.rows();
    for (std::size_t i = 0; i < target.basis_.rows(); ++i) stacked.append_row(target.basis_.row(i));
    IntMatrix k = left_kernel(stacked);
    IntMatrix alpha(k.rows(), g);
    for (std::size_t i = 0; i < k.rows(); ++i)
        for (std::size_t j = 0; j < g; ++j) alpha(i, j) = k(i, j);
    i64 mod = 0;
    if (modulus_ > 0 && target.modulus_ > 0 && modulus_ % target.modulus_ == 0) mod = modulus_;
    return from_generators(alpha * basis_, mod);
}

namespace {

int p_part(i64 d, i64 p)
{
    int v = 0;
    while (d % p == 0) {
        d /= p;
        ++v;
    }
    return v;
}

} // namespace

LocalQuotient local_quotient(const Lattice& lattice, const Lattice& sub, i64 p)
{
    if (!lattice.contains(sub)) throw std::logic_error("local_quotient: sublattice not contained");
    const IntMatrix& g = lattice.basis();
    const std::size_t r = g.rows(), n = lattice.ambient();
    // coordinates of sub generators in the echelon basis of lattice
    std::vector<std::size_t> pivots;
    for (std::size_t i = 0, col = 0; i < r; ++i, ++col) {
        while (g(i, col) == 0) ++col;
        pivots.push_back(col);
    }
    IntMatrix t(sub.basis().rows(), r);
    for (std::size_t s = 0; s < sub.basis().rows(); ++s) {
        std::vector<i64> v = sub.basis().row(s);
        for (std::size_t i = 0; i < r; ++i) {
            i64 q = v[pivots[i]] / g(i, pivots[i]);
            t(s, i) = q;
            for (std::size_t j = 0; j < n; ++j) v[j] = checked_add(v[j], -checked_mul(q, g(i, j)));
        }
    }
    SmithForm sf = smith(t);
    IntMatrix newbasis = sf.Vinv * g;
    LocalQuotient out;
    for (std::size_t i = 0; i < r; ++i) {
        if (i < sf.diagonal.size()) {
            int v = p_part(sf.diagonal[i], p);
            if (v == 0) continue;
            if (v > 1) throw std::runtime_error("torsion of order p^" + std::to_string(v) + " in a quotient; only Z/p is expected");
            ++out.modp_rank;
            out.modp_generators.push_back(newbasis.row(i));
        } else {
            ++out.free_rank;
            out.free_generators.push_back(newbasis.row(i));
        }
    }
    return out;
}

LocalQuotient unit_part(const Lattice& lattice, i64 p)
{
    SmithForm sf = smith(lattice.basis());
    LocalQuotient out;
    for (std::size_t i = 0; i < sf.diagonal.size(); ++i) {
        if (p_part(sf.diagonal[i], p) != 0) continue;
        ++out.free_rank;
        out.free_generators.push_back(sf.Vinv.row(i));
    }
    return out;
}

} // namespace bpr
