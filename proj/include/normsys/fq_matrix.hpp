#pragma once

#include <cctype>
#include <cstdint>
#include <initializer_list>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "normsys/errors.hpp"
#include "normsys/fq.hpp"

namespace normsys {

// Dense matrix over a prime field.  Rows = equations, columns = variables.
// Zero-row matrices (rows() == 0) are legal and represent "no constraints".
class FqMatrix {
public:
    FqMatrix(Fq field, std::size_t rows, std::size_t cols)
        : field_(field), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

    FqMatrix(Fq field, std::initializer_list<std::initializer_list<long long>> rows)
        : field_(field), rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0),
          a_(rows_ * cols_, 0) {
        std::size_t i = 0;
        for (const auto& row : rows) {
            if (row.size() != cols_) throw DimensionMismatch("ragged initializer");
            std::size_t j = 0;
            for (long long v : row) at(i, j++) = field_.reduce(v);
            ++i;
        }
    }

    const Fq& field() const { return field_; }
    std::uint32_t q() const { return field_.q(); }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    FqScalar& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    FqScalar at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    std::vector<FqScalar> row(std::size_t i) const {
        return {a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_};
    }

    std::vector<FqScalar> col(std::size_t j) const {
        std::vector<FqScalar> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = at(i, j);
        return c;
    }

    bool col_is_zero(std::size_t j) const {
        for (std::size_t i = 0; i < rows_; ++i)
            if (at(i, j) != 0) return false;
        return true;
    }

    // columns picked by `keep`, in the order given
    FqMatrix select_cols(const std::vector<std::size_t>& keep) const {
        FqMatrix r(field_, rows_, keep.size());
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < keep.size(); ++j) r.at(i, j) = at(i, keep[j]);
        return r;
    }

    FqMatrix transpose() const {
        FqMatrix r(field_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    // stack `other` below this matrix
    FqMatrix vstack(const FqMatrix& other) const {
        if (other.cols_ != cols_ || other.field_ != field_)
            throw DimensionMismatch("vstack shape/field mismatch");
        FqMatrix r(field_, rows_ + other.rows_, cols_);
        r.a_ = a_;
        r.a_.insert(r.a_.end(), other.a_.begin(), other.a_.end());
        return r;
    }

    bool operator==(const FqMatrix& o) const {
        return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }
    bool operator!=(const FqMatrix& o) const { return !(*this == o); }

    // row-major entry order; shapes compare before content
    bool lex_less(const FqMatrix& o) const {
        if (rows_ != o.rows_) return rows_ < o.rows_;
        if (cols_ != o.cols_) return cols_ < o.cols_;
        return a_ < o.a_;
    }

private:
    Fq field_;
    std::size_t rows_, cols_;
    std::vector<FqScalar> a_;
};

// Reduced row echelon form with zero rows dropped: pivots are 1, pivot
// columns are cleared elsewhere, pivot positions strictly increase.  The
// result has rank(A) rows and is the canonical basis of the row space.
inline FqMatrix rref(const FqMatrix& A) {
    const Fq& F = A.field();
    FqMatrix R = A;
    std::size_t r = 0;  // next pivot row
    for (std::size_t c = 0; c < R.cols() && r < R.rows(); ++c) {
        std::size_t p = r;
        while (p < R.rows() && R.at(p, c) == 0) ++p;
        if (p == R.rows()) continue;
        if (p != r)
            for (std::size_t j = 0; j < R.cols(); ++j) std::swap(R.at(p, j), R.at(r, j));
        FqScalar s = F.inv(R.at(r, c));
        for (std::size_t j = c; j < R.cols(); ++j) R.at(r, j) = F.mul(R.at(r, j), s);
        for (std::size_t i = 0; i < R.rows(); ++i) {
            if (i == r || R.at(i, c) == 0) continue;
            FqScalar f = R.at(i, c);
            for (std::size_t j = c; j < R.cols(); ++j)
                R.at(i, j) = F.sub(R.at(i, j), F.mul(f, R.at(r, j)));
        }
        ++r;
    }
    FqMatrix out(F, r, R.cols());
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < R.cols(); ++j) out.at(i, j) = R.at(i, j);
    return out;
}

inline std::size_t rank(const FqMatrix& A) { return rref(A).rows(); }

// Basis of {x : Ax = 0} as the columns of a cols x (cols - rank) matrix, in
// column echelon form: one column per free variable (ascending), carrying 1
// at its free position and -R[i][free] at the i-th pivot position.
inline FqMatrix kernel_basis(const FqMatrix& A) {
    const Fq& F = A.field();
    FqMatrix R = rref(A);
    std::size_t k = A.cols(), m = R.rows();
    std::vector<std::size_t> pivot_col(m);
    std::vector<bool> is_pivot(k, false);
    for (std::size_t i = 0, c = 0; i < m; ++i) {
        while (R.at(i, c) == 0) ++c;
        pivot_col[i] = c;
        is_pivot[c] = true;
    }
    FqMatrix K(F, k, k - m);
    std::size_t out = 0;
    for (std::size_t c = 0; c < k; ++c) {
        if (is_pivot[c]) continue;
        K.at(c, out) = 1;
        for (std::size_t i = 0; i < m; ++i) K.at(pivot_col[i], out) = F.neg(R.at(i, c));
        ++out;
    }
    return K;
}

// ---------------------------------------------------------------------------
// Text format.  Line 1: "q m k"; then m rows of k integers (any sign; reduced
// mod q on load).  '#' starts a comment line; blank lines are skipped.

namespace detail {

inline bool data_line(const std::string& s) {
    for (char ch : s)
        if (!isspace(static_cast<unsigned char>(ch))) return ch != '#';
    return false;
}

inline std::vector<long long> parse_ints(const std::string& s, std::size_t line_no) {
    std::istringstream is(s);
    std::vector<long long> v;
    long long x;
    while (is >> x) v.push_back(x);
    std::string junk;
    is.clear();
    if (is >> junk) throw ParseError("unexpected token '" + junk + "'", line_no);
    return v;
}

}  // namespace detail

inline FqMatrix parse_matrix(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    auto next_data = [&]() -> std::vector<long long> {
        while (std::getline(in, line)) {
            ++line_no;
            if (detail::data_line(line)) return detail::parse_ints(line, line_no);
        }
        throw ParseError("unexpected end of matrix file", line_no);
    };
    auto header = next_data();
    if (header.size() != 3) throw ParseError("header must be 'q m k'", line_no);
    long long q = header[0], m = header[1], k = header[2];
    if (q < 2 || q > 0x7fffffff) throw ParseError("modulus out of range", line_no);
    if (m < 0 || k < 1 || m > k) throw ParseError("need 0 <= m <= k, k >= 1", line_no);
    Fq F(static_cast<std::uint32_t>(q));
    FqMatrix A(F, static_cast<std::size_t>(m), static_cast<std::size_t>(k));
    for (long long i = 0; i < m; ++i) {
        auto row = next_data();
        if (row.size() != static_cast<std::size_t>(k))
            throw ParseError("expected " + std::to_string(k) + " entries, got " +
                                 std::to_string(row.size()),
                             line_no);
        for (long long j = 0; j < k; ++j)
            A.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = F.reduce(row[j]);
    }
    return A;
}

inline FqMatrix parse_matrix(const std::string& text) {
    std::istringstream is(text);
    return parse_matrix(is);
}

inline void serialize_matrix(const FqMatrix& A, std::ostream& out) {
    out << A.q() << ' ' << A.rows() << ' ' << A.cols() << '\n';
    for (std::size_t i = 0; i < A.rows(); ++i) {
        for (std::size_t j = 0; j < A.cols(); ++j) {
            if (j) out << ' ';
            out << A.at(i, j);
        }
        out << '\n';
    }
}

inline std::string serialize_matrix(const FqMatrix& A) {
    std::ostringstream os;
    serialize_matrix(A, os);
    return os.str();
}

}  // namespace normsys
