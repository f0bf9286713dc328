#include "affdecomp/sylvester.hpp"

#include <stdexcept>

namespace affdecomp {

namespace {

Rational det_skipping(const RationalMatrix& m, int n, const std::vector<int>& rows,
                      const std::vector<int>& cols) {
    size_t k = rows.size();
    if (k == 0) return Rational(1);
    if (k == 1) return m[static_cast<size_t>(rows[0]) * n + cols[0]];
    Rational acc(0);
    int sign = 1;
    std::vector<int> sub_rows(rows.begin() + 1, rows.end());
    for (size_t c = 0; c < k; ++c) {
        std::vector<int> sub_cols;
        for (size_t cc = 0; cc < k; ++cc)
            if (cc != c) sub_cols.push_back(cols[cc]);
        const Rational& pivot = m[static_cast<size_t>(rows[0]) * n + cols[c]];
        if (pivot != 0)
            acc += sign * pivot * det_skipping(m, n, sub_rows, sub_cols);
        sign = -sign;
    }
    return acc;
}

Rational bordered_minor(const RationalMatrix& m, int n, int drop_row, int drop_col) {
    std::vector<int> rows, cols;
    for (int i = 0; i < n; ++i) {
        if (i != drop_row) rows.push_back(i);
        if (i != drop_col) cols.push_back(i);
    }
    return det_skipping(m, n, rows, cols);
}

}  // namespace

Rational rational_det(const RationalMatrix& m, int n) {
    if (static_cast<int>(m.size()) != n * n)
        throw std::invalid_argument("matrix size mismatch");
    std::vector<int> all;
    for (int i = 0; i < n; ++i) all.push_back(i);
    return det_skipping(m, n, all, all);
}

bool check_sylvester(const RationalMatrix& a, int n) {
    if (n < 2) throw std::invalid_argument("Sylvester check needs n >= 2");
    if (static_cast<int>(a.size()) != n * n)
        throw std::invalid_argument("matrix size mismatch");

    // 0-based rows/cols: j -> n-2, j+1 -> n-1
    std::vector<int> inner_rows, inner_cols;
    for (int i = 0; i < n - 2; ++i) {
        inner_rows.push_back(i);
        inner_cols.push_back(i);
    }
    Rational corner = det_skipping(a, n, inner_rows, inner_cols);  // [j,j+1; j,j+1]
    Rational det_a = rational_det(a, n);
    Rational m_j1_j1 = bordered_minor(a, n, n - 1, n - 1);  // [j+1; j+1]
    Rational m_j_j = bordered_minor(a, n, n - 2, n - 2);    // [j; j]
    Rational m_j1_j = bordered_minor(a, n, n - 1, n - 2);   // [j+1; j]
    Rational m_j_j1 = bordered_minor(a, n, n - 2, n - 1);   // [j; j+1]

    return corner * det_a == m_j1_j1 * m_j_j - m_j1_j * m_j_j1;
}

RationalMatrix random_rational_matrix(CounterRng& rng, int n, int max_num, int max_den) {
    RationalMatrix m;
    m.reserve(static_cast<size_t>(n) * n);
    for (int i = 0; i < n * n; ++i) {
        long num = rng.integer(-max_num, max_num);
        long den = rng.integer(1, max_den);
        m.emplace_back(Rational(num) / den);
    }
    return m;
}

}  // namespace affdecomp
