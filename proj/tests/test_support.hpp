// Random instance generators and brute-force oracles shared by the test suites.
// Nothing here calls into the double-description code.

#ifndef GRASSCONE_TEST_SUPPORT_HPP
#define GRASSCONE_TEST_SUPPORT_HPP

#include <algorithm>
#include <cstddef>
#include <random>
#include <vector>

#include "grasscone/curve_bundles.hpp"
#include "grasscone/rational.hpp"

namespace grasscone::testing {

inline RationalVector vec(std::initializer_list<long> xs) {
    RationalVector v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

inline std::vector<RationalVector> vecs(std::initializer_list<std::initializer_list<long>> xs) {
    std::vector<RationalVector> out;
    for (auto x : xs) out.push_back(vec(x));
    return out;
}

inline RationalVector random_vector(std::mt19937& rng, std::size_t dim, int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    RationalVector v(dim);
    for (auto& x : v) x = d(rng);
    return v;
}

inline std::vector<RationalVector> random_vectors(std::mt19937& rng, std::size_t dim, std::size_t count, int lo,
                                                  int hi) {
    std::vector<RationalVector> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back(random_vector(rng, dim, lo, hi));
    return out;
}

/// HN data with at most max_pieces pieces, ranks in [1, max_rank], integer slopes in [lo, hi].
inline HNData random_hn(std::mt19937& rng, int max_pieces, int max_rank, int lo, int hi) {
    std::uniform_int_distribution<int> npieces(1, max_pieces);
    std::uniform_int_distribution<int> rank(1, max_rank);
    std::uniform_int_distribution<int> slope(lo, hi);
    const int want = npieces(rng);
    std::vector<int> slopes;
    while (static_cast<int>(slopes.size()) < want) {
        int s = slope(rng);
        if (std::find(slopes.begin(), slopes.end(), s) == slopes.end()) slopes.push_back(s);
    }
    std::sort(slopes.rbegin(), slopes.rend());
    std::vector<HNPiece> pieces;
    for (int s : slopes) pieces.push_back({rank(rng), Rational(s)});
    return HNData(pieces);
}

/// Slopes of the HN quotients repeated by rank, largest first.
inline std::vector<Rational> expanded_slopes(const HNData& hn) {
    std::vector<Rational> out;
    for (const auto& p : hn.pieces()) out.insert(out.end(), p.rank, p.slope);
    return out;
}

/// theta by enumerating every t in [1, l] and keeping the first that meets the defining condition.
inline Rational theta_by_enumeration(const HNData& hn, int k) {
    const auto& ps = hn.pieces();
    const std::size_t l = ps.size();
    for (std::size_t t = 1; t <= l; ++t) {
        int quotient_rank = 0;
        Rational quotient_degree = 0;
        for (std::size_t i = t; i < l; ++i) {
            quotient_rank += ps[i].rank;
            quotient_degree += ps[i].rank * ps[i].slope;
        }
        if (quotient_rank < k || t == l) return (k - quotient_rank) * ps[t - 1].slope + quotient_degree;
    }
    return 0;  // unreachable: t = l always qualifies
}

/// zeta by enumerating t in [0, l-1] against sum_{i<=t+1} rank_i > k; t = l gives deg(E).
inline Rational zeta_by_enumeration(const HNData& hn, int k) {
    const auto& ps = hn.pieces();
    const std::size_t l = ps.size();
    for (std::size_t t = 0; t < l; ++t) {
        int partial = 0;
        Rational degree = 0;
        for (std::size_t i = 0; i < t; ++i) {
            partial += ps[i].rank;
            degree += ps[i].rank * ps[i].slope;
        }
        if (partial + ps[t].rank > k) return (k - partial) * ps[t].slope + degree;
    }
    Rational total = 0;
    for (const auto& p : ps) total += p.rank * p.slope;
    return total;
}

/// Minimum degree of a rank-k quotient of the split bundle: the k smallest slopes.
inline Rational sum_of_smallest(const HNData& hn, int k) {
    auto s = expanded_slopes(hn);
    Rational total = 0;
    for (int i = 0; i < k; ++i) total += s[s.size() - 1 - i];
    return total;
}

/// Maximum degree of a rank-k subsheaf of the split bundle: the k largest slopes.
inline Rational sum_of_largest(const HNData& hn, int k) {
    auto s = expanded_slopes(hn);
    Rational total = 0;
    for (int i = 0; i < k; ++i) total += s[i];
    return total;
}

/// Rank of a rational matrix by plain Gaussian elimination.
inline std::size_t matrix_rank(std::vector<RationalVector> rows) {
    if (rows.empty()) return 0;
    const std::size_t cols = rows.front().size();
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
        std::size_t p = rank;
        while (p < rows.size() && rows[p][c] == 0) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[p], rows[rank]);
        for (std::size_t r = rank + 1; r < rows.size(); ++r) {
            if (rows[r][c] == 0) continue;
            Rational f = rows[r][c] / rows[rank][c];
            for (std::size_t j = c; j < cols; ++j) rows[r][j] -= f * rows[rank][j];
        }
        ++rank;
    }
    return rank;
}

/// Null vector of a (d-1) x d matrix of rank d-1, via cofactor expansion (generalised cross product).
inline RationalVector null_vector(const std::vector<RationalVector>& rows, std::size_t dim) {
    auto det = [](std::vector<RationalVector> m) {
        const std::size_t n = m.size();
        Rational d = 1;
        for (std::size_t c = 0; c < n; ++c) {
            std::size_t p = c;
            while (p < n && m[p][c] == 0) ++p;
            if (p == n) return Rational(0);
            if (p != c) {
                std::swap(m[p], m[c]);
                d = -d;
            }
            d *= m[c][c];
            for (std::size_t r = c + 1; r < n; ++r) {
                Rational f = m[r][c] / m[c][c];
                for (std::size_t j = c; j < n; ++j) m[r][j] -= f * m[c][j];
            }
        }
        return d;
    };
    RationalVector out(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        std::vector<RationalVector> minor;
        for (const auto& r : rows) {
            RationalVector row;
            for (std::size_t j = 0; j < dim; ++j) {
                if (j != i) row.push_back(r[j]);
            }
            minor.push_back(row);
        }
        out[i] = ((i % 2) ? Rational(-1) : Rational(1)) * det(minor);
    }
    return out;
}

/**
 * Extreme rays of a pointed {x : h.x >= 0} by brute force:
 * every (d-1)-subset of constraints of rank d-1 determines a line; keep the
 * direction that satisfies all constraints. Output primitive and sorted.
 */
inline std::vector<RationalVector> brute_force_extreme_rays(const std::vector<RationalVector>& hs, std::size_t dim) {
    std::vector<RationalVector> out;
    const std::size_t m = hs.size();
    if (dim == 1) {
        for (int s : {1, -1}) {
            RationalVector v{Rational(s)};
            bool ok = std::all_of(hs.begin(), hs.end(), [&](const RationalVector& h) { return h[0] * s >= 0; });
            if (ok) out.push_back(v);
        }
        return out;
    }
    std::vector<bool> pick(m, false);
    std::fill(pick.begin(), pick.begin() + std::min(m, dim - 1), true);
    if (m < dim - 1) return out;
    do {
        std::vector<RationalVector> rows;
        for (std::size_t i = 0; i < m; ++i) {
            if (pick[i]) rows.push_back(hs[i]);
        }
        if (matrix_rank(rows) != dim - 1) continue;
        RationalVector n = null_vector(rows, dim);
        for (int s : {1, -1}) {
            RationalVector v = scaled(n, Rational(s));
            bool ok = std::all_of(hs.begin(), hs.end(), [&](const RationalVector& h) { return dot(h, v) >= 0; });
            if (ok) out.push_back(primitive(v));
        }
    } while (std::prev_permutation(pick.begin(), pick.end()));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace grasscone::testing

#endif  // GRASSCONE_TEST_SUPPORT_HPP
