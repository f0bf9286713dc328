#include "affdecomp/minors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace affdecomp {

Permutation identity_permutation(int d) {
    Permutation p(static_cast<size_t>(d));
    std::iota(p.begin(), p.end(), 0);
    return p;
}

std::vector<Permutation> all_permutations(int d) {
    Permutation p = identity_permutation(d);
    std::vector<Permutation> out;
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

namespace {

inline double det2(const double* m) { return m[0] * m[3] - m[1] * m[2]; }

inline double det3(const double* m) {
    return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
           m[2] * (m[3] * m[7] - m[4] * m[6]);
}

inline double det4(const double* m) {
    double c0 = m[10] * m[15] - m[11] * m[14];
    double c1 = m[9] * m[15] - m[11] * m[13];
    double c2 = m[9] * m[14] - m[10] * m[13];
    double c3 = m[8] * m[15] - m[11] * m[12];
    double c4 = m[8] * m[14] - m[10] * m[12];
    double c5 = m[8] * m[13] - m[9] * m[12];
    return m[0] * (m[5] * c0 - m[6] * c1 + m[7] * c2) -
           m[1] * (m[4] * c0 - m[6] * c3 + m[7] * c4) +
           m[2] * (m[4] * c1 - m[5] * c3 + m[7] * c5) -
           m[3] * (m[4] * c2 - m[5] * c4 + m[6] * c5);
}

double det_lu(std::vector<double> m, int n) {
    double det = 1.0;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(m[static_cast<size_t>(r) * n + col]) >
                std::abs(m[static_cast<size_t>(piv) * n + col]))
                piv = r;
        if (m[static_cast<size_t>(piv) * n + col] == 0.0) return 0.0;
        if (piv != col) {
            for (int c = 0; c < n; ++c)
                std::swap(m[static_cast<size_t>(piv) * n + c],
                          m[static_cast<size_t>(col) * n + c]);
            det = -det;
        }
        double p = m[static_cast<size_t>(col) * n + col];
        det *= p;
        for (int r = col + 1; r < n; ++r) {
            double f = m[static_cast<size_t>(r) * n + col] / p;
            for (int c = col; c < n; ++c)
                m[static_cast<size_t>(r) * n + c] -= f * m[static_cast<size_t>(col) * n + c];
        }
    }
    return det;
}

}  // namespace

double det_dense(const std::vector<double>& m, int n) {
    switch (n) {
        case 0: return 1.0;
        case 1: return m[0];
        case 2: return det2(m.data());
        case 3: return det3(m.data());
        case 4: return det4(m.data());
        default: return det_lu(m, n);
    }
}

double minor_value(const Curve& curve, const Permutation& sigma, int j, double t) {
    if (j < 1 || j > curve.dim()) throw std::invalid_argument("bad minor order");
    std::vector<double> m(static_cast<size_t>(j) * j);
    for (int r = 0; r < j; ++r)
        for (int c = 0; c < j; ++c)
            m[static_cast<size_t>(r) * j + c] =
                curve.eval_coord(sigma.at(static_cast<size_t>(r)), c + 1, t);
    return det_dense(m, j);
}

double torsion(const Curve& curve, double t) {
    return std::abs(minor_value(curve, identity_permutation(curve.dim()), curve.dim(), t));
}

double weight(const Curve& curve, const WeightParams& params, double t) {
    double tau = torsion(curve, t);
    if (tau == 0.0) return 0.0;
    return std::pow(tau, params.exponent(curve.dim()));
}

double generalized_minor(const Curve& curve, const std::vector<int>& rows, double t) {
    int l = static_cast<int>(rows.size());
    if (l == 0) return 1.0;
    for (size_t a = 0; a < rows.size(); ++a)
        for (size_t b = a + 1; b < rows.size(); ++b)
            if (rows[a] == rows[b])
                throw std::invalid_argument("duplicate rows in generalized minor");
    std::vector<double> m(static_cast<size_t>(l) * l);
    for (int r = 0; r < l; ++r)
        for (int c = 0; c < l; ++c)
            m[static_cast<size_t>(r) * l + c] =
                curve.eval_coord(rows.at(static_cast<size_t>(r)), c + 1, t);
    return det_dense(m, l);
}

int dyadic_index(double v) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw std::invalid_argument("dyadic index needs a positive finite value");
    int e = 0;
    std::frexp(v, &e);  // v = f * 2^e with f in [0.5, 1)
    return -e;
}

PermutationSelection select_permutation(const Curve& curve, double t) {
    int d = curve.dim();
    if (torsion(curve, t) == 0.0)
        throw std::runtime_error("degenerate point: torsion vanishes");

    // remaining coordinates, in original order; positions d, d-1, ..., 2 are
    // filled by removing the winning cofactor row at each step
    std::vector<int> remaining(static_cast<size_t>(d));
    std::iota(remaining.begin(), remaining.end(), 0);
    Permutation sigma(static_cast<size_t>(d), -1);

    for (int size = d; size >= 2; --size) {
        double best = -1.0;
        int best_idx = 0;
        for (size_t i = 0; i < remaining.size(); ++i) {
            std::vector<int> rest;
            for (size_t r = 0; r < remaining.size(); ++r)
                if (r != i) rest.push_back(remaining[r]);
            double cof = std::abs(curve.eval_coord(remaining[i], size, t)) *
                         std::abs(generalized_minor(curve, rest, t));
            if (cof > best) {
                best = cof;
                best_idx = static_cast<int>(i);
            }
        }
        sigma[static_cast<size_t>(size - 1)] = remaining[static_cast<size_t>(best_idx)];
        remaining.erase(remaining.begin() + best_idx);
    }
    sigma[0] = remaining.front();

    PermutationSelection sel;
    sel.sigma = sigma;
    for (int j = 1; j <= d; ++j) {
        double v = minor_value(curve, sigma, j, t);
        sel.minors.push_back(v);
        sel.k.push_back(dyadic_index(std::abs(v)));
    }
    return sel;
}

Polynomial minor_polynomial(const Curve& curve, const Permutation& sigma, int j) {
    if (!curve.polynomial_backed())
        throw std::logic_error("minor_polynomial needs a polynomial-backed curve");
    if (j < 1 || j > curve.dim()) throw std::invalid_argument("bad minor order");

    std::vector<Polynomial> entries(static_cast<size_t>(j) * j);
    for (int r = 0; r < j; ++r) {
        Polynomial p = curve.coordinate_poly(sigma.at(static_cast<size_t>(r)));
        for (int c = 0; c < j; ++c) {
            p = p.derivative();
            entries[static_cast<size_t>(r) * j + c] = p;
        }
    }
    // cofactor expansion over the polynomial ring; j <= 6 keeps this small
    std::function<Polynomial(std::vector<int>, int)> expand =
        [&](std::vector<int> rows, int col) -> Polynomial {
        if (rows.size() == 1)
            return entries[static_cast<size_t>(rows[0]) * j + col];
        Polynomial acc;
        double sign = 1.0;
        for (size_t i = 0; i < rows.size(); ++i) {
            std::vector<int> rest;
            for (size_t r = 0; r < rows.size(); ++r)
                if (r != i) rest.push_back(rows[r]);
            acc += entries[static_cast<size_t>(rows[i]) * j + col] * sign *
                   expand(rest, col + 1);
            sign = -sign;
        }
        return acc;
    };
    std::vector<int> rows(static_cast<size_t>(j));
    std::iota(rows.begin(), rows.end(), 0);
    return expand(rows, 0);
}

}  // namespace affdecomp
