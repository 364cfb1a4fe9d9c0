/**
 * @file curve_bundles.hpp
 * @brief Harder-Narasimhan data of bundles on a smooth curve and the nef /
 *        pseudoeffective cones of their Grassmann bundles.
 *
 * Cones of Gr_C(k,E) live in the basis (xi, f): xi is the tautological
 * class of O(1), f the fibre class. Fibre products Gr(k,E) x_C Gr(k',E')
 * use (xi, eta, F).
 */

#ifndef GRASSCONE_CURVE_BUNDLES_HPP
#define GRASSCONE_CURVE_BUNDLES_HPP

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "grasscone/errors.hpp"
#include "grasscone/ratcone.hpp"
#include "grasscone/rational.hpp"

namespace grasscone {

/// One HN quotient E_i/E_{i-1}.
struct HNPiece {
    int rank = 0;
    Rational slope;

    friend bool operator==(const HNPiece&, const HNPiece&) = default;
};

/**
 * Numerical HN filtration: (rank, slope) of each quotient, slopes strictly
 * decreasing. Slopes may be rational so that restrictions mu(E|_C) of
 * surface bundles can be fed back in.
 */
class HNData {
public:
    explicit HNData(std::vector<HNPiece> pieces) : pieces_(std::move(pieces)) {
        if (pieces_.empty()) throw ValidationError("HN data needs at least one piece");
        for (std::size_t i = 0; i < pieces_.size(); ++i) {
            if (pieces_[i].rank < 1) {
                throw ValidationError("HN piece " + std::to_string(i) + " has non-positive rank");
            }
            if (i > 0 && !(pieces_[i].slope < pieces_[i - 1].slope)) {
                throw ValidationError("HN slopes must be strictly decreasing (piece " + std::to_string(i) + ")");
            }
            rank_ += pieces_[i].rank;
        }
    }

    /// Single-piece data of a semistable bundle.
    static HNData semistable(int rank, Rational slope) { return HNData({{rank, std::move(slope)}}); }

    const std::vector<HNPiece>& pieces() const { return pieces_; }
    std::size_t length() const { return pieces_.size(); }
    int rank() const { return rank_; }
    bool is_semistable() const { return pieces_.size() == 1; }

    /// rk(E_t), the rank of the t-th filtration step; rk(E_0) = 0.
    int rank_of_step(std::size_t t) const {
        int r = 0;
        for (std::size_t i = 0; i < t; ++i) r += pieces_[i].rank;
        return r;
    }

    /// deg(E_t) = sum_{i<=t} rank_i * mu_i; deg(E_0) = 0.
    Rational degree_of_step(std::size_t t) const {
        Rational d = 0;
        for (std::size_t i = 0; i < t; ++i) d += pieces_[i].rank * pieces_[i].slope;
        return d;
    }

    Rational degree() const { return degree_of_step(pieces_.size()); }
    const Rational& mu_max() const { return pieces_.front().slope; }
    const Rational& mu_min() const { return pieces_.back().slope; }

    friend bool operator==(const HNData&, const HNData&) = default;

private:
    std::vector<HNPiece> pieces_;
    int rank_ = 0;
};

/// HN data of a direct sum of line bundles with the given degrees.
inline HNData hn_of_line_bundle_sum(std::vector<Rational> degrees) {
    if (degrees.empty()) throw ValidationError("line-bundle sum needs at least one summand");
    std::sort(degrees.begin(), degrees.end(), [](const Rational& a, const Rational& b) { return a > b; });
    std::vector<HNPiece> pieces;
    for (auto& d : degrees) {
        if (!pieces.empty() && pieces.back().slope == d) {
            ++pieces.back().rank;
        } else {
            pieces.push_back({1, std::move(d)});
        }
    }
    return HNData(std::move(pieces));
}

namespace detail {
inline void check_k(const HNData& hn, int k) {
    if (k < 1 || k > hn.rank()) {
        throw ValidationError("k = " + std::to_string(k) + " outside [1, " + std::to_string(hn.rank()) + "]");
    }
}
}  // namespace detail

/**
 * @brief Nef threshold theta_{E,k}.
 *
 * t is the smallest index with rk(E/E_t) < k (t = l always qualifies), and
 * theta = (k - rk(E/E_t)) * mu(E_t/E_{t-1}) + deg(E/E_t).
 */
inline Rational theta(const HNData& hn, int k) {
    detail::check_k(hn, k);
    const int r = hn.rank();
    std::size_t t = 0;
    while (r - hn.rank_of_step(t) >= k) ++t;
    // t >= 1 here since rk(E/E_0) = r >= k.
    const int quotient_rank = r - hn.rank_of_step(t);
    const Rational quotient_degree = hn.degree() - hn.degree_of_step(t);
    return (k - quotient_rank) * hn.pieces()[t - 1].slope + quotient_degree;
}

/**
 * @brief Pseudoeffective threshold zeta_{E,k}.
 *
 * t is the smallest index with rk(E_{t+1}) > k, and
 * zeta = (k - rk(E_t)) * mu(E_{t+1}/E_t) + deg(E_t). For k = r no such t
 * exists; then t = l and the slope term carries coefficient 0, so zeta = deg(E).
 */
inline Rational zeta(const HNData& hn, int k) {
    detail::check_k(hn, k);
    const std::size_t l = hn.length();
    std::size_t t = 0;
    while (t < l && hn.rank_of_step(t + 1) <= k) ++t;
    if (t == l) return hn.degree();
    return (k - hn.rank_of_step(t)) * hn.pieces()[t].slope + hn.degree_of_step(t);
}

struct CurveGrassmannCones {
    int k = 0;
    Rational theta;
    Rational zeta;
    Cone nef;
    Cone eff;
    std::vector<std::string> basis{"xi", "f"};
};

/// Nef = cone{xi - theta f, f}, Eff = cone{xi - zeta f, f}, both canonical.
inline CurveGrassmannCones curve_cones(const HNData& hn, int k) {
    Rational th = theta(hn, k);
    Rational ze = zeta(hn, k);
    Cone nef = canonical(Cone::from_generators(2, {{Rational(1), -th}, {Rational(0), Rational(1)}}));
    Cone eff = canonical(Cone::from_generators(2, {{Rational(1), -ze}, {Rational(0), Rational(1)}}));
    return {k, std::move(th), std::move(ze), std::move(nef), std::move(eff)};
}

struct FiberProductCones {
    Cone nef;
    Cone eff;
    std::vector<std::string> basis{"xi", "eta", "F"};
};

/**
 * @brief Cones of Gr(k,E) x_C Gr(k2,E2) in the basis (xi, eta, F).
 *
 * Nef is generated by xi - theta_{E,k} F, eta - theta_{E2,k2} F and F;
 * Eff by the same with zeta in place of theta.
 */
inline FiberProductCones fiber_product_cones(const HNData& hn, int k, const HNData& hn2, int k2) {
    const Rational th = theta(hn, k), th2 = theta(hn2, k2);
    const Rational ze = zeta(hn, k), ze2 = zeta(hn2, k2);
    const Rational one(1), zero(0);
    Cone nef = canonical(Cone::from_generators(3, {{one, zero, -th}, {zero, one, -th2}, {zero, zero, one}}));
    Cone eff = canonical(Cone::from_generators(3, {{one, zero, -ze}, {zero, one, -ze2}, {zero, zero, one}}));
    return {std::move(nef), std::move(eff)};
}

}  // namespace grasscone

#endif  // GRASSCONE_CURVE_BUNDLES_HPP
