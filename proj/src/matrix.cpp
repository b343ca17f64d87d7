#include "qhp/matrix.hpp"

#include <sstream>
#include <stdexcept>

namespace qhp {

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

IntMatrix IntMatrix::mul(const IntMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("IntMatrix::mul: dimension mismatch");
    IntMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Int& a = at(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) r.at(i, j) += a * o.at(k, j);
        }
    return r;
}

void IntMatrix::swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < cols_; ++k) std::swap(at(i, k), at(j, k));
}

void IntMatrix::swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < rows_; ++k) std::swap(at(k, i), at(k, j));
}

void IntMatrix::add_row(std::size_t i, std::size_t j, const Int& c) {
    for (std::size_t k = 0; k < cols_; ++k) at(i, k) += c * at(j, k);
}

void IntMatrix::add_col(std::size_t i, std::size_t j, const Int& c) {
    for (std::size_t k = 0; k < rows_; ++k) at(k, i) += c * at(k, j);
}

void IntMatrix::negate_row(std::size_t i) {
    for (std::size_t k = 0; k < cols_; ++k) at(i, k) = -at(i, k);
}

void IntMatrix::negate_col(std::size_t i) {
    for (std::size_t k = 0; k < rows_; ++k) at(k, i) = -at(k, i);
}

Int IntMatrix::det() const {
    if (rows_ != cols_) throw std::invalid_argument("IntMatrix::det: not square");
    std::size_t n = rows_;
    if (n == 0) return 1;
    IntMatrix a = *this;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a.at(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a.at(p, k) == 0) ++p;
            if (p == n) return 0;
            a.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Int num = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
                a.at(i, j) = num / prev; // exact by Bareiss
            }
        prev = a.at(k, k);
    }
    return sign > 0 ? a.at(n - 1, n - 1) : -a.at(n - 1, n - 1);
}

std::size_t IntMatrix::rank() const {
    IntMatrix a = *this;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
        std::size_t p = r;
        while (p < rows_ && a.at(p, c) == 0) ++p;
        if (p == rows_) continue;
        a.swap_rows(r, p);
        for (std::size_t i = r + 1; i < rows_; ++i) {
            if (a.at(i, c) == 0) continue;
            Int g = int_gcd(int_abs(a.at(r, c)), int_abs(a.at(i, c)));
            Int fr = a.at(i, c) / g, fi = a.at(r, c) / g;
            for (std::size_t j = c; j < cols_; ++j)
                a.at(i, j) = a.at(i, j) * fi - a.at(r, j) * fr;
        }
        ++r;
    }
    return r;
}

std::string IntMatrix::str() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i == 0 ? "[" : " ");
        for (std::size_t j = 0; j < cols_; ++j) os << at(i, j) << (j + 1 < cols_ ? " " : "");
        os << (i + 1 < rows_ ? ";\n" : "]");
    }
    return os.str();
}

namespace {

// Position of a nonzero entry of minimal absolute value in the submatrix
// starting at (t,t); returns false if that submatrix is zero.
bool find_min_pivot(const IntMatrix& s, std::size_t t, std::size_t& pi, std::size_t& pj) {
    bool found = false;
    Int best;
    for (std::size_t i = t; i < s.rows(); ++i)
        for (std::size_t j = t; j < s.cols(); ++j) {
            const Int& v = s.at(i, j);
            if (v == 0) continue;
            Int a = int_abs(v);
            if (!found || a < best) {
                found = true;
                best = a;
                pi = i;
                pj = j;
            }
        }
    return found;
}

} // namespace

namespace {

// Quotient rounded to nearest, so remainders satisfy |r| <= |b|/2.
Int rounded_div(const Int& a, const Int& b) {
    Int q = a / b;
    Int r = a - q * b;
    if (r != 0 && 2 * int_abs(r) > int_abs(b)) q += ((r > 0) == (b > 0)) ? 1 : -1;
    return q;
}

} // namespace

SmithResult smith_normal_form(const IntMatrix& m) {
    SmithResult r{IntMatrix::identity(m.rows()), m, IntMatrix::identity(m.cols())};
    IntMatrix& S = r.S;
    IntMatrix& U = r.U;
    IntMatrix& V = r.V;
    std::size_t t = 0;
    std::size_t bound = std::min(m.rows(), m.cols());
    while (t < bound) {
        std::size_t pi = t, pj = t;
        if (!find_min_pivot(S, t, pi, pj)) break;
        while (true) {
            // re-select a minimal pivot each round; rounded division keeps
            // all remainders at most half the pivot, so rounds shrink fast
            find_min_pivot(S, t, pi, pj);
            S.swap_rows(t, pi);
            U.swap_rows(t, pi);
            S.swap_cols(t, pj);
            V.swap_cols(t, pj);
            bool cleared = true;
            for (std::size_t i = t + 1; i < S.rows(); ++i) {
                if (S.at(i, t) == 0) continue;
                Int q = rounded_div(S.at(i, t), S.at(t, t));
                if (q != 0) {
                    S.add_row(i, t, -q);
                    U.add_row(i, t, -q);
                }
                if (S.at(i, t) != 0) cleared = false;
            }
            if (!cleared) continue;
            // with column t clear below the pivot, column operations no
            // longer disturb it
            for (std::size_t j = t + 1; j < S.cols(); ++j) {
                if (S.at(t, j) == 0) continue;
                Int q = rounded_div(S.at(t, j), S.at(t, t));
                if (q != 0) {
                    S.add_col(j, t, -q);
                    V.add_col(j, t, -q);
                }
                if (S.at(t, j) != 0) cleared = false;
            }
            if (!cleared) continue;
            // divisibility: fold a bad row into row t and keep reducing
            bool divides_all = true;
            for (std::size_t i = t + 1; i < S.rows() && divides_all; ++i)
                for (std::size_t j = t + 1; j < S.cols() && divides_all; ++j)
                    if (S.at(i, j) % S.at(t, t) != 0) {
                        S.add_row(t, i, 1);
                        U.add_row(t, i, 1);
                        divides_all = false;
                    }
            if (divides_all) break;
        }
        if (S.at(t, t) < 0) {
            S.negate_row(t);
            U.negate_row(t);
        }
        ++t;
    }
    return r;
}

std::vector<std::vector<Int>> kernel_basis(const IntMatrix& m) {
    // Columns of V past the rank satisfy m * v = 0; they are columns of a
    // unimodular matrix, hence primitive, and span the saturated kernel.
    SmithResult snf = smith_normal_form(m);
    std::size_t rk = 0;
    std::size_t bound = std::min(m.rows(), m.cols());
    while (rk < bound && snf.S.at(rk, rk) != 0) ++rk;
    std::vector<std::vector<Int>> basis;
    for (std::size_t j = rk; j < m.cols(); ++j) {
        std::vector<Int> v(m.cols());
        for (std::size_t i = 0; i < m.cols(); ++i) v[i] = snf.V.at(i, j);
        Int g = 0;
        for (const Int& x : v) g = int_gcd(g, int_abs(x));
        if (g > 1)
            for (Int& x : v) x /= g;
        // sign convention: first nonzero entry positive
        for (const Int& x : v) {
            if (x == 0) continue;
            if (x < 0)
                for (Int& y : v) y = -y;
            break;
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<Int> cokernel_order(const IntMatrix& m) {
    if (m.rows() == 0) return Int(1);
    SmithResult snf = smith_normal_form(m);
    std::size_t bound = std::min(m.rows(), m.cols());
    Int order = 1;
    std::size_t nonzero = 0;
    for (std::size_t i = 0; i < bound; ++i) {
        if (snf.S.at(i, i) == 0) break;
        order *= snf.S.at(i, i);
        ++nonzero;
    }
    if (nonzero < m.rows()) return std::nullopt;
    return order;
}

} // namespace qhp
