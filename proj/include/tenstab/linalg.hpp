#pragma once

#include <gmpxx.h>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tenstab {

using Int = mpz_class;
using Rat = mpq_class;
using IntVec = std::vector<Int>;

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};
struct NotWellDefined : Error {
    explicit NotWellDefined(const std::string& msg) : Error(msg) {}
};
struct InfiniteModule : Error {
    explicit InfiniteModule(const std::string& msg) : Error(msg) {}
};
struct NotInImage : Error {
    explicit NotInImage(const std::string& msg) : Error(msg) {}
};
struct NotExact : Error {
    explicit NotExact(const std::string& msg) : Error(msg) {}
};
struct ChaseFailure : Error {
    explicit ChaseFailure(const std::string& msg) : Error(msg) {}
};
struct PreconditionFailure : Error {
    explicit PreconditionFailure(const std::string& msg) : Error(msg) {}
};
struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

// Dense matrix of arbitrary-precision integers.  Empty matrices (0 rows
// and/or 0 columns) are first-class values: a 3x0 matrix is the relation
// matrix of a free module on 3 generators, a 0xN matrix presents the zero
// module, and all operations below accept them without special casing.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(long rows, long cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows * cols)) {}
    IntMatrix(long rows, long cols, std::vector<Int> data) : rows_(rows), cols_(cols), a_(std::move(data)) {
        if (static_cast<long>(a_.size()) != rows_ * cols_) throw Error("IntMatrix: data size mismatch");
    }
    // Row-major initializer helper: rows given as vectors.
    static IntMatrix from_rows(const std::vector<std::vector<long>>& rows);
    static IntMatrix identity(long n);
    static IntMatrix zero(long rows, long cols) { return IntMatrix(rows, cols); }

    long rows() const { return rows_; }
    long cols() const { return cols_; }
    Int& at(long i, long j) { return a_[static_cast<size_t>(i * cols_ + j)]; }
    const Int& at(long i, long j) const { return a_[static_cast<size_t>(i * cols_ + j)]; }

    bool operator==(const IntMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }
    bool is_zero() const;

    IntVec col(long j) const;
    IntVec row(long i) const;
    void set_col(long j, const IntVec& v);
    IntMatrix transpose() const;
    IntMatrix operator*(const IntMatrix& o) const;
    IntVec operator*(const IntVec& v) const;
    IntMatrix operator+(const IntMatrix& o) const;
    IntMatrix operator-(const IntMatrix& o) const;
    IntMatrix operator-() const;
    IntMatrix operator*(const Int& c) const;

    void swap_rows(long i, long j);
    void swap_cols(long i, long j);
    void add_row_multiple(long i, long j, const Int& c);  // row i += c * row j
    void add_col_multiple(long i, long j, const Int& c);  // col i += c * col j
    void negate_row(long i);
    void negate_col(long j);

    std::string to_string() const;

private:
    long rows_ = 0, cols_ = 0;
    std::vector<Int> a_;
};

IntMatrix hstack(const IntMatrix& a, const IntMatrix& b);
IntMatrix vstack(const IntMatrix& a, const IntMatrix& b);
IntMatrix kron(const IntMatrix& a, const IntMatrix& b);
IntMatrix submatrix_cols(const IntMatrix& m, long first, long count);
IntMatrix submatrix_rows(const IntMatrix& m, long first, long count);
IntMatrix from_cols(long rows, const std::vector<IntVec>& cols);

IntVec vec_add(const IntVec& a, const IntVec& b);
IntVec vec_sub(const IntVec& a, const IntVec& b);
IntVec vec_scale(const Int& c, const IntVec& a);
IntVec vec_neg(const IntVec& a);
bool vec_is_zero(const IntVec& a);
IntVec vec_concat(const IntVec& a, const IntVec& b);
IntVec zero_vec(long n);
IntVec unit_vec(long n, long i);

// Smith normal form: U * M * V == S with U, V unimodular, S diagonal with
// nonnegative diagonal entries d_0 | d_1 | ... .  Inverses of U and V are
// tracked during the elimination so callers get exact change-of-basis data
// in both directions.
struct SmithDecomposition {
    IntMatrix U, S, V, Uinv, Vinv;
    std::vector<Int> diag;  // the diagonal entries, length min(rows, cols)
};

SmithDecomposition smith_normal_form(const IntMatrix& m);

// Exact solve of M x = b over the integers, or modulo `modulus` when given
// (the modulus is handled by augmenting M with modulus * I and discarding
// the auxiliary coordinates).  Returns nullopt when no solution exists.
std::optional<IntVec> solve(const IntMatrix& m, const IntVec& b, const std::optional<Int>& modulus = std::nullopt);

// Basis (as columns) of the lattice { x : M x = 0 } over the integers, or
// generators of { x : M x = 0 mod modulus } when a modulus is given.
IntMatrix kernel_basis(const IntMatrix& m, const std::optional<Int>& modulus = std::nullopt);

// Linearly independent columns spanning the same column lattice as M.
// Keeps generating sets from growing when lattices are computed from
// lattices (syzygies of syzygies and the like).
IntMatrix lattice_column_basis(const IntMatrix& m);

}  // namespace tenstab
