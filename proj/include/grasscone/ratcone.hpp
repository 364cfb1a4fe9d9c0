/**
 * @file ratcone.hpp
 * @brief Exact rational polyhedral cones: H/V conversion, duality,
 *        membership and canonical forms.
 *
 * A cone is carried as generators (V-rep), half-spaces (H-rep, each h
 * meaning {x : h.x >= 0}) or both. Conversion uses the incremental
 * double-description method with combinatorial adjacency testing.
 *
 * Canonical V-rep: lineality directions as +/- pairs of an echelon basis,
 * remaining rays projected onto the orthogonal complement of the lineality
 * space, every vector scaled to a primitive integer vector (positive
 * scaling only), list sorted lexicographically. Two cones are equal iff
 * their canonical generator lists are identical.
 */

#ifndef GRASSCONE_RATCONE_HPP
#define GRASSCONE_RATCONE_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "grasscone/errors.hpp"
#include "grasscone/rational.hpp"

namespace grasscone {

class Cone {
public:
    static Cone from_generators(std::size_t dim, std::vector<RationalVector> generators) {
        check_vectors(dim, generators, "generator");
        Cone c(dim);
        c.generators_ = std::move(generators);
        return c;
    }

    static Cone from_halfspaces(std::size_t dim, std::vector<RationalVector> halfspaces) {
        check_vectors(dim, halfspaces, "halfspace");
        Cone c(dim);
        c.halfspaces_ = std::move(halfspaces);
        return c;
    }

    /// Both representations; the caller vouches that they describe the same cone.
    static Cone from_both(std::size_t dim, std::vector<RationalVector> generators,
                          std::vector<RationalVector> halfspaces, bool canonical) {
        check_vectors(dim, generators, "generator");
        check_vectors(dim, halfspaces, "halfspace");
        Cone c(dim);
        c.generators_ = std::move(generators);
        c.halfspaces_ = std::move(halfspaces);
        c.canonical_ = canonical;
        return c;
    }

    std::size_t dim() const { return dim_; }
    bool has_generators() const { return generators_.has_value(); }
    bool has_halfspaces() const { return halfspaces_.has_value(); }
    /// True when the generator list is in canonical form.
    bool is_canonical() const { return canonical_; }

    const std::vector<RationalVector>& generators() const {
        if (!generators_) throw ValidationError("cone carries no generators");
        return *generators_;
    }
    const std::vector<RationalVector>& halfspaces() const {
        if (!halfspaces_) throw ValidationError("cone carries no halfspaces");
        return *halfspaces_;
    }

private:
    explicit Cone(std::size_t dim) : dim_(dim) {
        if (dim == 0) throw ValidationError("cone dimension must be positive");
    }

    static void check_vectors(std::size_t dim, const std::vector<RationalVector>& vs, const char* what) {
        for (std::size_t i = 0; i < vs.size(); ++i) {
            if (vs[i].size() != dim) {
                throw DimensionMismatch(std::string(what) + " " + std::to_string(i) + " has length " +
                                        std::to_string(vs[i].size()) + ", expected " + std::to_string(dim));
            }
        }
    }

    std::size_t dim_;
    std::optional<std::vector<RationalVector>> generators_;
    std::optional<std::vector<RationalVector>> halfspaces_;
    bool canonical_ = false;
};

namespace detail {

struct RayLineality {
    std::vector<RationalVector> rays;
    std::vector<RationalVector> lineality;
};

/**
 * @brief Double description: generators of {x in Q^dim : a.x >= 0 for all a}.
 *
 * Lineality is resolved first: while some lineality direction is not
 * orthogonal to the incoming constraint, it is pivoted out and becomes a
 * ray. Otherwise rays are split by sign and adjacent (+,-) pairs are
 * combined; adjacency is the combinatorial zero-set test, valid because
 * the ray list is kept irredundant after every insertion.
 */
inline RayLineality double_description(std::size_t dim, std::span<const RationalVector> constraints) {
    const std::size_t m = constraints.size();
    RayLineality out;
    for (std::size_t i = 0; i < dim; ++i) {
        RationalVector e(dim, Rational(0));
        e[i] = 1;
        out.lineality.push_back(std::move(e));
    }
    std::vector<RationalVector>& rays = out.rays;
    std::vector<boost::dynamic_bitset<>> zeros;

    for (std::size_t j = 0; j < m; ++j) {
        const RationalVector& h = constraints[j];
        if (h.size() != dim) {
            throw DimensionMismatch("constraint " + std::to_string(j) + " has length " + std::to_string(h.size()));
        }

        auto pivot = std::find_if(out.lineality.begin(), out.lineality.end(),
                                  [&](const RationalVector& l) { return dot(h, l) != 0; });
        if (pivot != out.lineality.end()) {
            RationalVector l0 = std::move(*pivot);
            out.lineality.erase(pivot);
            Rational s = dot(h, l0);
            if (s < 0) {
                for (auto& x : l0) x = -x;
                s = -s;
            }
            for (auto& l : out.lineality) {
                Rational c = dot(h, l);
                if (c != 0) l = primitive(axpy(l, -c / s, l0));
            }
            for (std::size_t i = 0; i < rays.size(); ++i) {
                Rational c = dot(h, rays[i]);
                if (c != 0) rays[i] = primitive(axpy(rays[i], -c / s, l0));
                zeros[i].set(j);
            }
            boost::dynamic_bitset<> z(m);
            for (std::size_t i = 0; i < j; ++i) z.set(i);
            rays.push_back(primitive(l0));
            zeros.push_back(std::move(z));
            continue;
        }

        std::vector<Rational> value(rays.size());
        std::vector<std::size_t> pos, neg;
        for (std::size_t i = 0; i < rays.size(); ++i) {
            value[i] = dot(h, rays[i]);
            if (value[i] > 0) pos.push_back(i);
            else if (value[i] < 0) neg.push_back(i);
        }
        if (neg.empty()) {
            for (std::size_t i = 0; i < rays.size(); ++i) {
                if (value[i] == 0) zeros[i].set(j);
            }
            continue;
        }

        const std::size_t pointed_dim = dim - out.lineality.size();
        std::vector<RationalVector> next_rays;
        std::vector<boost::dynamic_bitset<>> next_zeros;
        for (std::size_t i = 0; i < rays.size(); ++i) {
            if (value[i] >= 0) {
                next_rays.push_back(rays[i]);
                next_zeros.push_back(zeros[i]);
                if (value[i] == 0) next_zeros.back().set(j);
            }
        }
        for (std::size_t p : pos) {
            for (std::size_t n : neg) {
                boost::dynamic_bitset<> common = zeros[p] & zeros[n];
                if (pointed_dim >= 2 && common.count() + 2 < pointed_dim) continue;
                bool adjacent = true;
                for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
                    if (r == p || r == n) continue;
                    if (common.is_subset_of(zeros[r])) adjacent = false;
                }
                if (!adjacent) continue;
                RationalVector combo(dim);
                for (std::size_t c = 0; c < dim; ++c) combo[c] = value[p] * rays[n][c] - value[n] * rays[p][c];
                next_rays.push_back(primitive(combo));
                common.set(j);
                next_zeros.push_back(std::move(common));
            }
        }
        rays = std::move(next_rays);
        zeros = std::move(next_zeros);
    }
    return out;
}

/// Reduced row echelon form of the row space, zero rows dropped.
inline std::vector<RationalVector> row_echelon(std::vector<RationalVector> rows, std::size_t dim) {
    std::size_t rank = 0;
    for (std::size_t col = 0; col < dim && rank < rows.size(); ++col) {
        std::size_t piv = rank;
        while (piv < rows.size() && rows[piv][col] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[rank], rows[piv]);
        Rational inv = 1 / rows[rank][col];
        for (auto& x : rows[rank]) x *= inv;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][col] == 0) continue;
            rows[r] = axpy(rows[r], -rows[r][col], rows[rank]);
        }
        ++rank;
    }
    rows.resize(rank);
    return rows;
}

/// Orthogonal projection of v onto the complement of span(basis); basis is in RREF.
inline RationalVector project_out(const RationalVector& v, const std::vector<RationalVector>& basis) {
    const std::size_t k = basis.size();
    if (k == 0) return v;
    // Solve (B B^T) c = B v, then v - B^T c.
    std::vector<RationalVector> gram(k, RationalVector(k + 1));
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = 0; b < k; ++b) gram[a][b] = dot(basis[a], basis[b]);
        gram[a][k] = dot(basis[a], v);
    }
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t piv = col;
        while (gram[piv][col] == 0) ++piv;
        std::swap(gram[col], gram[piv]);
        for (std::size_t r = 0; r < k; ++r) {
            if (r == col || gram[r][col] == 0) continue;
            Rational f = gram[r][col] / gram[col][col];
            for (std::size_t c = col; c <= k; ++c) gram[r][c] -= f * gram[col][c];
        }
    }
    RationalVector out = v;
    for (std::size_t a = 0; a < k; ++a) {
        Rational c = gram[a][k] / gram[a][a];
        out = axpy(out, -c, basis[a]);
    }
    return out;
}

inline std::vector<RationalVector> canonicalize(RayLineality rl, std::size_t dim) {
    std::vector<RationalVector> lin = row_echelon(std::move(rl.lineality), dim);
    std::vector<RationalVector> out;
    for (const auto& l : lin) {
        RationalVector p = primitive(l);
        out.push_back(scaled(p, Rational(-1)));
        out.push_back(std::move(p));
    }
    for (const auto& r : rl.rays) {
        RationalVector p = primitive(project_out(r, lin));
        if (!is_zero(p)) out.push_back(std::move(p));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Canonical generators of {x : a.x >= 0 for all a in constraints}.
inline std::vector<RationalVector> canonical_solution_cone(std::size_t dim,
                                                           std::span<const RationalVector> constraints) {
    return canonicalize(double_description(dim, constraints), dim);
}

}  // namespace detail

/// Canonical V-rep of any cone. Halfspaces are dropped unless already present.
inline Cone canonical(const Cone& c) {
    if (c.is_canonical()) return c;
    std::vector<RationalVector> gens;
    if (c.has_generators()) {
        auto dual_gens = detail::canonical_solution_cone(c.dim(), c.generators());
        gens = detail::canonical_solution_cone(c.dim(), dual_gens);
        return Cone::from_both(c.dim(), std::move(gens), std::move(dual_gens), true);
    }
    gens = detail::canonical_solution_cone(c.dim(), c.halfspaces());
    return Cone::from_both(c.dim(), std::move(gens), c.halfspaces(), true);
}

/// Adds the canonical H-rep of the cone spanned by the generators; generators are kept as given.
inline Cone v_to_h(const Cone& c) {
    if (!c.has_generators()) throw ValidationError("v_to_h: cone has no generators");
    auto hs = detail::canonical_solution_cone(c.dim(), c.generators());
    return Cone::from_both(c.dim(), c.generators(), std::move(hs), c.is_canonical());
}

/// Adds canonical generators for the H-rep; halfspaces are kept as given.
inline Cone h_to_v(const Cone& c) {
    if (!c.has_halfspaces()) throw ValidationError("h_to_v: cone has no halfspaces");
    auto gens = detail::canonical_solution_cone(c.dim(), c.halfspaces());
    return Cone::from_both(c.dim(), std::move(gens), c.halfspaces(), true);
}

/// {y : y.x >= 0 for all x in c}, in canonical V-rep.
inline Cone dual(const Cone& c) {
    if (c.has_generators()) {
        auto gens = detail::canonical_solution_cone(c.dim(), c.generators());
        return Cone::from_both(c.dim(), std::move(gens), c.generators(), true);
    }
    return canonical(Cone::from_generators(c.dim(), c.halfspaces()));
}

/**
 * @brief Whether v is a nonnegative combination of the generators.
 *
 * Phase-one simplex with Bland's rule in exact arithmetic. Independent of
 * the double-description code path.
 */
inline bool in_conic_hull(std::span<const RationalVector> generators, std::span<const Rational> v) {
    const std::size_t m = v.size();
    const std::size_t n = generators.size();
    for (const auto& g : generators) require_same_dim(g, v);
    if (is_zero(v)) return true;
    if (n == 0) return false;

    // Columns: n structural, m artificial, then rhs.
    const std::size_t cols = n + m;
    std::vector<RationalVector> tab(m, RationalVector(cols + 1, Rational(0)));
    for (std::size_t i = 0; i < m; ++i) {
        const Rational sign = v[i] < 0 ? Rational(-1) : Rational(1);
        for (std::size_t j = 0; j < n; ++j) tab[i][j] = sign * generators[j][i];
        tab[i][n + i] = 1;
        tab[i][cols] = sign * v[i];
    }
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

    // Reduced costs of the phase-one objective (sum of artificials).
    RationalVector cost(cols + 1, Rational(0));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j <= cols; ++j) {
            if (j < n || j == cols) cost[j] -= tab[i][j];
        }
    }

    while (true) {
        std::size_t enter = cols;
        for (std::size_t j = 0; j < cols; ++j) {
            if (cost[j] < 0) {
                enter = j;
                break;
            }
        }
        if (enter == cols) break;
        std::size_t leave = m;
        Rational best;
        for (std::size_t i = 0; i < m; ++i) {
            if (tab[i][enter] <= 0) continue;
            Rational ratio = tab[i][cols] / tab[i][enter];
            if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave == m) break;  // unbounded direction cannot occur in phase one
        Rational inv = 1 / tab[leave][enter];
        for (auto& x : tab[leave]) x *= inv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave || tab[i][enter] == 0) continue;
            Rational f = tab[i][enter];
            for (std::size_t j = 0; j <= cols; ++j) tab[i][j] -= f * tab[leave][j];
        }
        Rational f = cost[enter];
        for (std::size_t j = 0; j <= cols; ++j) cost[j] -= f * tab[leave][j];
        basis[leave] = enter;
    }
    return cost[cols] == 0;
}

/// Uses the H-rep when present, otherwise solves the conic feasibility problem.
inline bool contains(const Cone& c, std::span<const Rational> v) {
    if (v.size() != c.dim()) {
        throw DimensionMismatch("vector of length " + std::to_string(v.size()) + " tested against cone of dim " +
                                std::to_string(c.dim()));
    }
    if (c.has_halfspaces()) {
        for (const auto& h : c.halfspaces()) {
            if (dot(h, v) < 0) return false;
        }
        return true;
    }
    return in_conic_hull(c.generators(), v);
}

/// Every generator of @p inner lies in @p outer.
inline bool includes(const Cone& outer, const Cone& inner) {
    if (outer.dim() != inner.dim()) throw DimensionMismatch("cones of different dimension");
    const Cone hull = outer.has_halfspaces() ? outer : v_to_h(outer);
    const Cone gens = inner.has_generators() ? inner : h_to_v(inner);
    for (const auto& g : gens.generators()) {
        if (!contains(hull, g)) return false;
    }
    return true;
}

inline bool equals(const Cone& a, const Cone& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("cones of different dimension");
    return canonical(a).generators() == canonical(b).generators();
}

}  // namespace grasscone

#endif  // GRASSCONE_RATCONE_HPP
