#pragma once

#include "bpr/grading.hpp"

#include <string>
#include <vector>

namespace bpr {

// dense int64 matrix, row-major; all arithmetic is overflow-checked
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

    static IntMatrix identity(std::size_t n);
    static IntMatrix from_rows(const std::vector<std::vector<i64>>& rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    i64& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    i64 operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<i64> row(std::size_t i) const;
    void append_row(const std::vector<i64>& r);
    void swap_rows(std::size_t i, std::size_t j);
    void swap_cols(std::size_t i, std::size_t j);
    // row i += f * row j
    void add_row(std::size_t i, std::size_t j, i64 f);
    void add_col(std::size_t i, std::size_t j, i64 f);
    void negate_row(std::size_t i);
    void negate_col(std::size_t i);

    IntMatrix operator*(const IntMatrix& o) const;
    bool is_zero() const;
    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<i64> data_;
};

std::string to_string(const IntMatrix& m);

// row Hermite normal form: echelon, positive pivots, entries above a pivot in [0, pivot); zero rows dropped
IntMatrix hnf(IntMatrix m);

// rows span the left kernel {x : x*A = 0}, in HNF
IntMatrix left_kernel(const IntMatrix& a);

struct SmithForm {
    std::vector<i64> diagonal; // nonzero invariant factors d_1 | d_2 | ...
    IntMatrix U, V, Vinv;      // U*A*V = diag
};

SmithForm smith(const IntMatrix& a);

// sublattice of Z^n given by generator rows kept in HNF; modulus m > 0 records that m*Z^n is contained
class Lattice {
public:
    Lattice() = default;
    explicit Lattice(std::size_t n, i64 modulus = 0);

    static Lattice full(std::size_t n, i64 modulus = 0);
    static Lattice from_generators(const IntMatrix& gens, i64 modulus);

    std::size_t ambient() const { return n_; }
    i64 modulus() const { return modulus_; }
    const IntMatrix& basis() const { return basis_; }
    std::size_t rank() const { return basis_.rows(); }

    bool contains(const std::vector<i64>& v) const;
    bool contains(const Lattice& other) const;
    Lattice operator+(const Lattice& other) const;
    Lattice intersect(const Lattice& other) const;
    friend bool operator==(const Lattice& x, const Lattice& y) { return x.n_ == y.n_ && x.basis_ == y.basis_; }

    // {z in this : z*D in target}; D has ambient() rows
    Lattice preimage(const IntMatrix& d, const Lattice& target) const;
    // rows of basis()*D
    IntMatrix image(const IntMatrix& d) const;

private:
    void normalize();

    std::size_t n_ = 0;
    i64 modulus_ = 0;
    IntMatrix basis_;
};

// invariant factors of this/sub as p-local data
struct LocalQuotient {
    i64 free_rank = 0;
    i64 modp_rank = 0;
    std::vector<std::vector<i64>> free_generators; // ambient coordinates
    std::vector<std::vector<i64>> modp_generators;
};

// quotient of lattice by a sublattice, localized at p; throws if Z/p^2 or worse appears
LocalQuotient local_quotient(const Lattice& lattice, const Lattice& sub, i64 p);

// unit invariant factors of the inclusion lattice -> Z^n (p-multiples are dropped as negligible)
LocalQuotient unit_part(const Lattice& lattice, i64 p);

} // namespace bpr
