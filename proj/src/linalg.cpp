#include "tenstab/linalg.hpp"

#include <sstream>

namespace tenstab {

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long>>& rows) {
    long r = static_cast<long>(rows.size());
    long c = r ? static_cast<long>(rows[0].size()) : 0;
    IntMatrix m(r, c);
    for (long i = 0; i < r; ++i) {
        if (static_cast<long>(rows[i].size()) != c) throw Error("from_rows: ragged rows");
        for (long j = 0; j < c; ++j) m.at(i, j) = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
    }
    return m;
}

IntMatrix IntMatrix::identity(long n) {
    IntMatrix m(n, n);
    for (long i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

bool IntMatrix::is_zero() const {
    for (const auto& x : a_)
        if (x != 0) return false;
    return true;
}

IntVec IntMatrix::col(long j) const {
    IntVec v(static_cast<size_t>(rows_));
    for (long i = 0; i < rows_; ++i) v[static_cast<size_t>(i)] = at(i, j);
    return v;
}

IntVec IntMatrix::row(long i) const {
    IntVec v(static_cast<size_t>(cols_));
    for (long j = 0; j < cols_; ++j) v[static_cast<size_t>(j)] = at(i, j);
    return v;
}

void IntMatrix::set_col(long j, const IntVec& v) {
    for (long i = 0; i < rows_; ++i) at(i, j) = v[static_cast<size_t>(i)];
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix m(cols_, rows_);
    for (long i = 0; i < rows_; ++i)
        for (long j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
    return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    if (cols_ != o.rows_) throw Error("matrix product: shape mismatch");
    IntMatrix m(rows_, o.cols_);
    for (long i = 0; i < rows_; ++i)
        for (long k = 0; k < cols_; ++k) {
            const Int& x = at(i, k);
            if (x == 0) continue;
            for (long j = 0; j < o.cols_; ++j) m.at(i, j) += x * o.at(k, j);
        }
    return m;
}

IntVec IntMatrix::operator*(const IntVec& v) const {
    if (cols_ != static_cast<long>(v.size())) throw Error("matrix-vector product: shape mismatch");
    IntVec r(static_cast<size_t>(rows_));
    for (long i = 0; i < rows_; ++i)
        for (long j = 0; j < cols_; ++j) r[static_cast<size_t>(i)] += at(i, j) * v[static_cast<size_t>(j)];
    return r;
}

IntMatrix IntMatrix::operator+(const IntMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("matrix sum: shape mismatch");
    IntMatrix m(rows_, cols_);
    for (size_t t = 0; t < a_.size(); ++t) m.a_[t] = a_[t] + o.a_[t];
    return m;
}

IntMatrix IntMatrix::operator-(const IntMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("matrix difference: shape mismatch");
    IntMatrix m(rows_, cols_);
    for (size_t t = 0; t < a_.size(); ++t) m.a_[t] = a_[t] - o.a_[t];
    return m;
}

IntMatrix IntMatrix::operator-() const {
    IntMatrix m(rows_, cols_);
    for (size_t t = 0; t < a_.size(); ++t) m.a_[t] = -a_[t];
    return m;
}

IntMatrix IntMatrix::operator*(const Int& c) const {
    IntMatrix m(rows_, cols_);
    for (size_t t = 0; t < a_.size(); ++t) m.a_[t] = c * a_[t];
    return m;
}

void IntMatrix::swap_rows(long i, long j) {
    for (long k = 0; k < cols_; ++k) std::swap(at(i, k), at(j, k));
}

void IntMatrix::swap_cols(long i, long j) {
    for (long k = 0; k < rows_; ++k) std::swap(at(k, i), at(k, j));
}

void IntMatrix::add_row_multiple(long i, long j, const Int& c) {
    for (long k = 0; k < cols_; ++k) at(i, k) += c * at(j, k);
}

void IntMatrix::add_col_multiple(long i, long j, const Int& c) {
    for (long k = 0; k < rows_; ++k) at(k, i) += c * at(k, j);
}

void IntMatrix::negate_row(long i) {
    for (long k = 0; k < cols_; ++k) at(i, k) = -at(i, k);
}

void IntMatrix::negate_col(long j) {
    for (long k = 0; k < rows_; ++k) at(k, j) = -at(k, j);
}

std::string IntMatrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (long i = 0; i < rows_; ++i) {
        os << "[";
        for (long j = 0; j < cols_; ++j) {
            os << at(i, j).get_str();
            if (j + 1 < cols_) os << ",";
        }
        os << "]";
        if (i + 1 < rows_) os << ",";
    }
    os << "]";
    return os.str();
}

IntMatrix hstack(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows()) throw Error("hstack: row mismatch");
    IntMatrix m(a.rows(), a.cols() + b.cols());
    for (long i = 0; i < a.rows(); ++i) {
        for (long j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j);
        for (long j = 0; j < b.cols(); ++j) m.at(i, a.cols() + j) = b.at(i, j);
    }
    return m;
}

IntMatrix vstack(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.cols()) throw Error("vstack: column mismatch");
    IntMatrix m(a.rows() + b.rows(), a.cols());
    for (long i = 0; i < a.rows(); ++i)
        for (long j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j);
    for (long i = 0; i < b.rows(); ++i)
        for (long j = 0; j < b.cols(); ++j) m.at(a.rows() + i, j) = b.at(i, j);
    return m;
}

IntMatrix kron(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix m(a.rows() * b.rows(), a.cols() * b.cols());
    for (long i = 0; i < a.rows(); ++i)
        for (long j = 0; j < a.cols(); ++j) {
            if (a.at(i, j) == 0) continue;
            for (long p = 0; p < b.rows(); ++p)
                for (long q = 0; q < b.cols(); ++q)
                    m.at(i * b.rows() + p, j * b.cols() + q) = a.at(i, j) * b.at(p, q);
        }
    return m;
}

IntMatrix submatrix_cols(const IntMatrix& m, long first, long count) {
    IntMatrix r(m.rows(), count);
    for (long i = 0; i < m.rows(); ++i)
        for (long j = 0; j < count; ++j) r.at(i, j) = m.at(i, first + j);
    return r;
}

IntMatrix submatrix_rows(const IntMatrix& m, long first, long count) {
    IntMatrix r(count, m.cols());
    for (long i = 0; i < count; ++i)
        for (long j = 0; j < m.cols(); ++j) r.at(i, j) = m.at(first + i, j);
    return r;
}

IntMatrix from_cols(long rows, const std::vector<IntVec>& cols) {
    IntMatrix m(rows, static_cast<long>(cols.size()));
    for (long j = 0; j < m.cols(); ++j) m.set_col(j, cols[static_cast<size_t>(j)]);
    return m;
}

IntVec vec_add(const IntVec& a, const IntVec& b) {
    IntVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

IntVec vec_sub(const IntVec& a, const IntVec& b) {
    IntVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

IntVec vec_scale(const Int& c, const IntVec& a) {
    IntVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
    return r;
}

IntVec vec_neg(const IntVec& a) {
    IntVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

bool vec_is_zero(const IntVec& a) {
    for (const auto& x : a)
        if (x != 0) return false;
    return true;
}

IntVec vec_concat(const IntVec& a, const IntVec& b) {
    IntVec r = a;
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

IntVec zero_vec(long n) { return IntVec(static_cast<size_t>(n)); }

IntVec unit_vec(long n, long i) {
    IntVec v(static_cast<size_t>(n));
    v[static_cast<size_t>(i)] = 1;
    return v;
}

namespace {

// Nearest-integer quotient: q minimizing |a - q*b|, ties toward zero
// remainder sign following truncation.  Keeps entries small during
// elimination.
Int round_div(const Int& a, const Int& b) {
    Int q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    Int babs = abs(b);
    if (2 * abs(r) > babs) {
        if ((a < 0) != (b < 0))
            q -= 1;
        else
            q += 1;
    }
    return q;
}

struct SnfWorker {
    IntMatrix S, U, V, Uinv, Vinv;

    explicit SnfWorker(const IntMatrix& m)
        : S(m),
          U(IntMatrix::identity(m.rows())),
          V(IntMatrix::identity(m.cols())),
          Uinv(IntMatrix::identity(m.rows())),
          Vinv(IntMatrix::identity(m.cols())) {}

    void row_swap(long i, long j) {
        S.swap_rows(i, j);
        U.swap_rows(i, j);
        Uinv.swap_cols(i, j);
    }
    void col_swap(long i, long j) {
        S.swap_cols(i, j);
        V.swap_cols(i, j);
        Vinv.swap_rows(i, j);
    }
    // row i += c * row j
    void row_op(long i, long j, const Int& c) {
        S.add_row_multiple(i, j, c);
        U.add_row_multiple(i, j, c);
        Uinv.add_col_multiple(j, i, -c);
    }
    // col i += c * col j
    void col_op(long i, long j, const Int& c) {
        S.add_col_multiple(i, j, c);
        V.add_col_multiple(i, j, c);
        Vinv.add_row_multiple(j, i, -c);
    }
    void row_negate(long i) {
        S.negate_row(i);
        U.negate_row(i);
        Uinv.negate_col(i);
    }

    void run() {
        long n = std::min(S.rows(), S.cols());
        for (long t = 0; t < n; ++t) {
            if (!place_pivot(t)) break;
            for (;;) {
                clear_around(t);
                long bi, bj;
                if (!find_nondivisible(t, bi, bj)) break;
                // Fold the offending row into the pivot row and restart the
                // local elimination; the pivot strictly shrinks, so this
                // terminates.
                row_op(t, bi, 1);
            }
            if (S.at(t, t) < 0) row_negate(t);
        }
    }

    // Move the smallest-magnitude nonzero entry of the trailing submatrix
    // to (t, t); ties broken by lowest (row, col).  Returns false when the
    // trailing submatrix is zero.
    bool place_pivot(long t) {
        long bi = -1, bj = -1;
        Int best = 0;
        for (long i = t; i < S.rows(); ++i)
            for (long j = t; j < S.cols(); ++j) {
                if (S.at(i, j) == 0) continue;
                Int v = abs(S.at(i, j));
                if (bi < 0 || v < best) {
                    best = v;
                    bi = i;
                    bj = j;
                }
            }
        if (bi < 0) return false;
        if (bi != t) row_swap(t, bi);
        if (bj != t) col_swap(t, bj);
        return true;
    }

    // Eliminate column t and row t against the pivot, re-picking a smaller
    // pivot whenever a reduction leaves a smaller nonzero remainder.
    void clear_around(long t) {
        for (;;) {
            bool dirty = false;
            for (long i = t + 1; i < S.rows(); ++i) {
                if (S.at(i, t) == 0) continue;
                Int q = round_div(S.at(i, t), S.at(t, t));
                if (q != 0) row_op(i, t, -q);
                if (S.at(i, t) != 0) {
                    row_swap(t, i);
                    dirty = true;
                }
            }
            for (long j = t + 1; j < S.cols(); ++j) {
                if (S.at(t, j) == 0) continue;
                Int q = round_div(S.at(t, j), S.at(t, t));
                if (q != 0) col_op(j, t, -q);
                if (S.at(t, j) != 0) {
                    col_swap(t, j);
                    dirty = true;
                }
            }
            if (!dirty) {
                bool done = true;
                for (long i = t + 1; i < S.rows(); ++i)
                    if (S.at(i, t) != 0) done = false;
                for (long j = t + 1; j < S.cols(); ++j)
                    if (S.at(t, j) != 0) done = false;
                if (done) return;
            }
        }
    }

    bool find_nondivisible(long t, long& bi, long& bj) {
        const Int& d = S.at(t, t);
        for (long i = t + 1; i < S.rows(); ++i)
            for (long j = t + 1; j < S.cols(); ++j)
                if (S.at(i, j) % d != 0) {
                    bi = i;
                    bj = j;
                    return true;
                }
        return false;
    }
};

}  // namespace

SmithDecomposition smith_normal_form(const IntMatrix& m) {
    SnfWorker w(m);
    w.run();
    SmithDecomposition d;
    d.U = std::move(w.U);
    d.S = std::move(w.S);
    d.V = std::move(w.V);
    d.Uinv = std::move(w.Uinv);
    d.Vinv = std::move(w.Vinv);
    long n = std::min(d.S.rows(), d.S.cols());
    d.diag.resize(static_cast<size_t>(n));
    for (long i = 0; i < n; ++i) d.diag[static_cast<size_t>(i)] = d.S.at(i, i);
    return d;
}

std::optional<IntVec> solve(const IntMatrix& m, const IntVec& b, const std::optional<Int>& modulus) {
    if (static_cast<long>(b.size()) != m.rows()) throw Error("solve: rhs size mismatch");
    if (modulus) {
        IntMatrix aug = hstack(m, IntMatrix::identity(m.rows()) * (*modulus));
        auto z = solve(aug, b);
        if (!z) return std::nullopt;
        z->resize(static_cast<size_t>(m.cols()));
        return z;
    }
    SmithDecomposition d = smith_normal_form(m);
    IntVec c = d.U * b;
    IntVec y(static_cast<size_t>(m.cols()));
    long n = static_cast<long>(d.diag.size());
    for (long i = 0; i < m.rows(); ++i) {
        if (i < n && d.diag[static_cast<size_t>(i)] != 0) {
            Int q, r;
            mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), c[static_cast<size_t>(i)].get_mpz_t(),
                        d.diag[static_cast<size_t>(i)].get_mpz_t());
            if (r != 0) return std::nullopt;
            y[static_cast<size_t>(i)] = q;
        } else if (c[static_cast<size_t>(i)] != 0) {
            return std::nullopt;
        }
    }
    return d.V * y;
}

IntMatrix lattice_column_basis(const IntMatrix& m) {
    SmithDecomposition d = smith_normal_form(m);
    // m = Uinv * S * Vinv with Vinv unimodular, so the column lattice of m
    // equals that of Uinv * S, whose nonzero columns are independent.
    std::vector<IntVec> cols;
    for (size_t i = 0; i < d.diag.size(); ++i)
        if (d.diag[i] != 0) cols.push_back(vec_scale(d.diag[i], d.Uinv.col(static_cast<long>(i))));
    return from_cols(m.rows(), cols);
}

IntMatrix kernel_basis(const IntMatrix& m, const std::optional<Int>& modulus) {
    if (modulus) {
        IntMatrix aug = hstack(m, IntMatrix::identity(m.rows()) * (*modulus));
        IntMatrix k = kernel_basis(aug);
        return submatrix_rows(k, 0, m.cols());
    }
    SmithDecomposition d = smith_normal_form(m);
    long n = static_cast<long>(d.diag.size());
    std::vector<IntVec> cols;
    for (long j = 0; j < m.cols(); ++j)
        if (j >= n || d.diag[static_cast<size_t>(j)] == 0) cols.push_back(d.V.col(j));
    return from_cols(m.cols(), cols);
}

}  // namespace tenstab
