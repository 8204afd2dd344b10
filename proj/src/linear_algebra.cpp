#include "csurg/linear_algebra.hpp"

#include <algorithm>
#include <cassert>

namespace csurg {

IntVector SmithForm::invariant_factors() const
{
    const std::size_t k = std::min(diagonal.rows(), diagonal.cols());
    IntVector out(k);
    for (std::size_t i = 0; i < k; ++i)
        out[i] = diagonal(i, i);
    return out;
}

std::size_t SmithForm::rank() const
{
    std::size_t r = 0;
    for (const Integer& d : invariant_factors())
        if (d != 0)
            ++r;
    return r;
}

namespace {

struct Position {
    std::size_t row;
    std::size_t col;
};

std::optional<Position> smallest_nonzero(const IntMatrix& m, std::size_t from)
{
    std::optional<Position> best;
    Integer best_abs;
    for (std::size_t r = from; r < m.rows(); ++r)
        for (std::size_t c = from; c < m.cols(); ++c) {
            if (m(r, c) == 0)
                continue;
            Integer a = abs(m(r, c));
            if (!best || a < best_abs) {
                best = Position{r, c};
                best_abs = a;
            }
        }
    return best;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& a)
{
    SmithForm s{IntMatrix::identity(a.rows()), a, IntMatrix::identity(a.cols())};
    IntMatrix& d = s.diagonal;
    const std::size_t steps = std::min(a.rows(), a.cols());

    for (std::size_t t = 0; t < steps; ++t) {
        for (;;) {
            auto pivot = smallest_nonzero(d, t);
            if (!pivot)
                break;
            d.swap_rows(t, pivot->row);
            s.left.swap_rows(t, pivot->row);
            d.swap_cols(t, pivot->col);
            s.right.swap_cols(t, pivot->col);

            bool clean = true;
            for (std::size_t r = t + 1; r < d.rows(); ++r) {
                if (d(r, t) == 0)
                    continue;
                Integer q = d(r, t) / d(t, t);
                d.add_row_multiple(r, t, -q);
                s.left.add_row_multiple(r, t, -q);
                if (d(r, t) != 0)
                    clean = false;
            }
            for (std::size_t c = t + 1; c < d.cols(); ++c) {
                if (d(t, c) == 0)
                    continue;
                Integer q = d(t, c) / d(t, t);
                d.add_col_multiple(c, t, -q);
                s.right.add_col_multiple(c, t, -q);
                if (d(t, c) != 0)
                    clean = false;
            }
            if (!clean)
                continue;

            // The pivot must divide the whole remaining block.
            std::optional<std::size_t> offending;
            for (std::size_t r = t + 1; r < d.rows() && !offending; ++r)
                for (std::size_t c = t + 1; c < d.cols(); ++c)
                    if (d(r, c) % d(t, t) != 0) {
                        offending = r;
                        break;
                    }
            if (!offending)
                break;
            d.add_row_multiple(t, *offending, 1);
            s.left.add_row_multiple(t, *offending, 1);
        }
        if (d(t, t) < 0) {
            d.negate_row(t);
            s.left.negate_row(t);
        }
    }
    return s;
}

Integer determinant(const IntMatrix& a)
{
    assert(a.rows() == a.cols());
    const std::size_t n = a.rows();
    if (n == 0)
        return 1;
    IntMatrix m = a;
    Integer previous = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t swap = k + 1;
            while (swap < n && m(swap, k) == 0)
                ++swap;
            if (swap == n)
                return 0;
            m.swap_rows(k, swap);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer num = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                mpz_divexact(m(i, j).get_mpz_t(), num.get_mpz_t(), previous.get_mpz_t());
            }
        previous = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

namespace {

using RationalMatrix = std::vector<std::vector<Rational>>;

RationalMatrix to_rational(const IntMatrix& a)
{
    RationalMatrix m(a.rows(), std::vector<Rational>(a.cols()));
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c)
            m[r][c] = a(r, c);
    return m;
}

void symmetric_swap(RationalMatrix& m, std::size_t a, std::size_t b)
{
    std::swap(m[a], m[b]);
    for (auto& row : m)
        std::swap(row[a], row[b]);
}

// row[dst] += f * row[src] and col[dst] += f * col[src]
void symmetric_add(RationalMatrix& m, std::size_t dst, std::size_t src, const Rational& f)
{
    const std::size_t n = m.size();
    for (std::size_t c = 0; c < n; ++c)
        m[dst][c] += f * m[src][c];
    for (std::size_t r = 0; r < n; ++r)
        m[r][dst] += f * m[r][src];
}

}  // namespace

Inertia inertia(const IntMatrix& symmetric)
{
    assert(symmetric.is_symmetric());
    RationalMatrix m = to_rational(symmetric);
    const std::size_t n = m.size();
    Inertia result;

    for (std::size_t k = 0; k < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t j = k + 1;
            while (j < n && m[j][j] == 0)
                ++j;
            if (j < n) {
                symmetric_swap(m, k, j);
            } else {
                j = k + 1;
                while (j < n && m[k][j] == 0)
                    ++j;
                if (j == n) {
                    ++result.zero;
                    continue;
                }
                // m[k][k] becomes 2 m[k][j] (m[j][j] is zero here).
                symmetric_add(m, k, j, 1);
            }
        }
        const Rational pivot = m[k][k];
        (pivot > 0 ? result.positive : result.negative) += 1;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (m[i][k] == 0)
                continue;
            Rational f = -m[i][k] / pivot;
            symmetric_add(m, i, k, f);
        }
    }
    return result;
}

std::optional<std::vector<Rational>> solve_rational(const IntMatrix& a, const IntVector& b)
{
    assert(a.rows() == a.cols() && a.rows() == b.size());
    const std::size_t n = a.rows();
    RationalMatrix m = to_rational(a);
    std::vector<Rational> rhs(b.begin(), b.end());

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && m[p][k] == 0)
            ++p;
        if (p == n)
            return std::nullopt;
        std::swap(m[k], m[p]);
        std::swap(rhs[k], rhs[p]);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || m[i][k] == 0)
                continue;
            Rational f = m[i][k] / m[k][k];
            for (std::size_t c = k; c < n; ++c)
                m[i][c] -= f * m[k][c];
            rhs[i] -= f * rhs[k];
        }
    }
    std::vector<Rational> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = rhs[i] / m[i][i];
        x[i].canonicalize();
    }
    return x;
}

std::optional<IntVector> solve_integer(const IntMatrix& a, const IntVector& b)
{
    assert(a.rows() == b.size());
    SmithForm s = smith_normal_form(a);
    IntVector ub = s.left * std::span<const Integer>(b);
    IntVector y(a.cols(), Integer(0));
    const std::size_t k = std::min(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const Integer d = i < k ? s.diagonal(i, i) : Integer(0);
        if (d == 0) {
            if (ub[i] != 0)
                return std::nullopt;
            continue;
        }
        if (ub[i] % d != 0)
            return std::nullopt;
        y[i] = ub[i] / d;
    }
    return s.right * std::span<const Integer>(y);
}

namespace {

struct Mod2Echelon {
    std::vector<Bits> rows;  // augmented [a | b]
    std::vector<std::size_t> pivot_cols;
    bool consistent = true;
};

Mod2Echelon reduce_mod2(const IntMatrix& a, const IntVector* b)
{
    const std::size_t cols = a.cols();
    Mod2Echelon e;
    e.rows.assign(a.rows(), Bits(cols + 1, 0));
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < cols; ++c)
            e.rows[r][c] = mpz_odd_p(a(r, c).get_mpz_t()) ? 1 : 0;
        if (b)
            e.rows[r][cols] = mpz_odd_p((*b)[r].get_mpz_t()) ? 1 : 0;
    }
    std::size_t lead = 0;
    for (std::size_t c = 0; c < cols && lead < e.rows.size(); ++c) {
        std::size_t p = lead;
        while (p < e.rows.size() && !e.rows[p][c])
            ++p;
        if (p == e.rows.size())
            continue;
        std::swap(e.rows[lead], e.rows[p]);
        for (std::size_t r = 0; r < e.rows.size(); ++r)
            if (r != lead && e.rows[r][c])
                for (std::size_t k = 0; k <= cols; ++k)
                    e.rows[r][k] ^= e.rows[lead][k];
        e.pivot_cols.push_back(c);
        ++lead;
    }
    for (std::size_t r = lead; r < e.rows.size(); ++r)
        if (e.rows[r][cols])
            e.consistent = false;
    return e;
}

}  // namespace

Mod2Solution solve_mod2(const IntMatrix& a, const IntVector& b)
{
    const std::size_t cols = a.cols();
    Mod2Echelon e = reduce_mod2(a, &b);
    Mod2Solution out;

    std::vector<bool> is_pivot(cols, false);
    for (std::size_t c : e.pivot_cols)
        is_pivot[c] = true;

    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free])
            continue;
        Bits v(cols, 0);
        v[free] = 1;
        for (std::size_t i = 0; i < e.pivot_cols.size(); ++i)
            v[e.pivot_cols[i]] = e.rows[i][free];
        out.kernel_basis.push_back(std::move(v));
    }
    if (e.consistent) {
        Bits x(cols, 0);
        for (std::size_t i = 0; i < e.pivot_cols.size(); ++i)
            x[e.pivot_cols[i]] = e.rows[i][cols];
        out.particular = std::move(x);
    }
    return out;
}

std::size_t rank_mod2(const IntMatrix& a)
{
    return reduce_mod2(a, nullptr).pivot_cols.size();
}

}  // namespace csurg
