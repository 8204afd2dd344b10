#include "csurg/oracles.hpp"

#include <numeric>

namespace csurg::oracle {

namespace {

IntMatrix minor_matrix(const IntMatrix& a, std::size_t skip_row, std::size_t skip_col)
{
    IntMatrix m(a.rows() - 1, a.cols() - 1);
    for (std::size_t r = 0, mr = 0; r < a.rows(); ++r) {
        if (r == skip_row)
            continue;
        for (std::size_t c = 0, mc = 0; c < a.cols(); ++c) {
            if (c == skip_col)
                continue;
            m(mr, mc++) = a(r, c);
        }
        ++mr;
    }
    return m;
}

/// All k-element subsets of {0..n-1}.
void subsets(std::size_t n, std::size_t k, std::size_t from, std::vector<std::size_t>& cur,
             std::vector<std::vector<std::size_t>>& out)
{
    if (cur.size() == k) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = from; i < n; ++i) {
        cur.push_back(i);
        subsets(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}

std::size_t sign_changes(const std::vector<Rational>& coeffs)
{
    std::size_t changes = 0;
    int last = 0;
    for (const Rational& c : coeffs) {
        const int s = sgn(c);
        if (s == 0)
            continue;
        if (last != 0 && s != last)
            ++changes;
        last = s;
    }
    return changes;
}

}  // namespace

Integer determinant(const IntMatrix& a)
{
    const std::size_t n = a.rows();
    if (n == 0)
        return 1;
    if (n == 1)
        return a(0, 0);
    Integer det = 0;
    for (std::size_t c = 0; c < n; ++c) {
        if (a(0, c) == 0)
            continue;
        const Integer term = a(0, c) * determinant(minor_matrix(a, 0, c));
        det += (c % 2 == 0) ? term : Integer(-term);
    }
    return det;
}

IntVector invariant_factors(const IntMatrix& a)
{
    const std::size_t k_max = std::min(a.rows(), a.cols());
    IntVector divisors{Integer(1)};
    for (std::size_t k = 1; k <= k_max; ++k) {
        std::vector<std::vector<std::size_t>> rows, cols;
        std::vector<std::size_t> cur;
        subsets(a.rows(), k, 0, cur, rows);
        subsets(a.cols(), k, 0, cur, cols);
        Integer g = 0;
        for (const auto& rs : rows)
            for (const auto& cs : cols) {
                IntMatrix m(k, k);
                for (std::size_t i = 0; i < k; ++i)
                    for (std::size_t j = 0; j < k; ++j)
                        m(i, j) = a(rs[i], cs[j]);
                g = gcd(g, determinant(m));
            }
        divisors.push_back(g);
    }
    IntVector factors;
    for (std::size_t k = 1; k <= k_max; ++k)
        factors.push_back(divisors[k] == 0 ? Integer(0) : Integer(divisors[k] / divisors[k - 1]));
    return factors;
}

std::vector<Rational> characteristic_polynomial(const IntMatrix& a)
{
    // Faddeev-LeVerrier: M_0 = 0, c_n = 1; M_k = A M_{k-1} + c_{n-k+1} I,
    // c_{n-k} = -tr(A M_k) / k.
    const std::size_t n = a.rows();
    std::vector<Rational> coeffs{Rational(1)};
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t k = 1; k <= n; ++k) {
        std::vector<std::vector<Rational>> next(n, std::vector<Rational>(n, Rational(0)));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                Rational s = 0;
                for (std::size_t t = 0; t < n; ++t)
                    s += Rational(a(i, t)) * m[t][j];
                next[i][j] = s + (i == j ? coeffs.back() : Rational(0));
            }
        Rational trace = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t t = 0; t < n; ++t)
                trace += Rational(a(i, t)) * next[t][i];
        coeffs.push_back(-trace / Rational(static_cast<long>(k)));
        m = std::move(next);
    }
    return coeffs;
}

SignatureCount signature(const IntMatrix& symmetric)
{
    std::vector<Rational> p = characteristic_polynomial(symmetric);
    SignatureCount out;
    while (!p.empty() && p.back() == 0) {
        p.pop_back();
        ++out.zero;
    }
    out.positive = sign_changes(p);
    std::vector<Rational> q = p;
    const std::size_t degree = p.size() - 1;
    for (std::size_t i = 0; i < q.size(); ++i)
        if ((degree - i) % 2 == 1)
            q[i] = -q[i];
    out.negative = sign_changes(q);
    return out;
}

std::vector<std::uint32_t> characteristic_subsets(const IntMatrix& q)
{
    const std::size_t n = q.rows();
    std::vector<std::uint32_t> out;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) {
            Integer s = 0;
            for (std::size_t j = 0; j < n; ++j)
                if (mask >> j & 1)
                    s += q(i, j);
            ok = mpz_even_p(Integer(s - q(i, i)).get_mpz_t());
        }
        if (ok)
            out.push_back(mask);
    }
    return out;
}

std::size_t rank_mod2(const IntMatrix& a)
{
    std::vector<std::uint64_t> rows;
    for (std::size_t r = 0; r < a.rows(); ++r) {
        std::uint64_t bits = 0;
        for (std::size_t c = 0; c < a.cols(); ++c)
            if (mpz_odd_p(a(r, c).get_mpz_t()))
                bits |= std::uint64_t{1} << c;
        rows.push_back(bits);
    }
    std::size_t rank = 0;
    for (std::size_t c = 0; c < a.cols(); ++c) {
        const std::uint64_t bit = std::uint64_t{1} << c;
        std::size_t pivot = rank;
        while (pivot < rows.size() && !(rows[pivot] & bit))
            ++pivot;
        if (pivot == rows.size())
            continue;
        std::swap(rows[rank], rows[pivot]);
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (r != rank && (rows[r] & bit))
                rows[r] ^= rows[rank];
        ++rank;
    }
    return rank;
}

std::optional<Rational> d3(const SurgeryDiagram& d)
{
    // Build Q directly from the raw fields, in canonical order.
    std::vector<std::size_t> order = d.canonical_order();
    const std::size_t n = order.size();
    IntMatrix q(n, n);
    IntVector rot(n);
    long plus = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& c = d.component(order[i]);
        rot[i] = static_cast<long>(c.rot);
        plus += c.sign > 0;
        for (std::size_t j = 0; j < n; ++j)
            q(i, j) = i == j ? Integer(static_cast<long>(c.tb + c.sign))
                             : Integer(static_cast<long>(d.linking(order[i], order[j])));
    }
    const Integer det = determinant(q);
    if (det == 0)
        return std::nullopt;
    // x_i = det(Q with column i replaced by rot) / det(Q)
    Rational c2 = 0;
    for (std::size_t i = 0; i < n; ++i) {
        IntMatrix qi = q;
        for (std::size_t r = 0; r < n; ++r)
            qi(r, i) = rot[r];
        Rational x(determinant(qi), det);
        x.canonicalize();
        c2 += x * Rational(rot[i]);
    }
    const SignatureCount s = signature(q);
    const long sigma = static_cast<long>(s.positive) - static_cast<long>(s.negative);
    Rational v = (c2 - Rational(3 * sigma + 2 * (1 + static_cast<long>(n)))) / 4 + Rational(plus) + Rational(1, 2);
    v.canonicalize();
    return v;
}

std::vector<SurgeryDiagram> search_two_component(const Rational& target)
{
    std::vector<SurgeryDiagram> out;
    for (int tb1 = -6; tb1 <= -1; ++tb1)
        for (int r1 = tb1 + 1; r1 <= -tb1 - 1; ++r1)
            for (int s1 : {1, -1})
                for (int tb2 = -6; tb2 <= -1; ++tb2)
                    for (int r2 = tb2 + 1; r2 <= -tb2 - 1; ++r2)
                        for (int s2 : {1, -1})
                            for (int lk = -3; lk <= 3; ++lk) {
                                if ((tb1 + r1) % 2 == 0 || (tb2 + r2) % 2 == 0)
                                    continue;
                                const long det = static_cast<long>(tb1 + s1) * (tb2 + s2) - lk * lk;
                                if (det != 1 && det != -1)
                                    continue;
                                SurgeryDiagram d({{"a", tb1, r1, s1}, {"b", tb2, r2, s2}}, {{"a", "b", lk}});
                                if (auto v = d3(d); v && *v == target)
                                    out.push_back(d);
                            }
    return out;
}

}  // namespace csurg::oracle
