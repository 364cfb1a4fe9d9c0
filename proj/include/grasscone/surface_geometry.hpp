/**
 * @file surface_geometry.hpp
 * @brief Numerical intersection theory on the base: N^1 lattices with an
 *        intersection form, effective curve generators, bundle Chern data,
 *        discriminants and semistability of decomposable bundles.
 *
 * Surfaces (dimension 2) pair divisors through the Gram matrix. A curve
 * base (dimension 1) is carried as a rank-1 lattice whose "Gram matrix" is
 * the degree pairing between N^1(C) and the class of C itself; H^4 of a
 * curve vanishes, so its discriminant is identically zero.
 */

#ifndef GRASSCONE_SURFACE_GEOMETRY_HPP
#define GRASSCONE_SURFACE_GEOMETRY_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "grasscone/errors.hpp"
#include "grasscone/ratcone.hpp"
#include "grasscone/rational.hpp"

namespace grasscone {

using RationalMatrix = std::vector<RationalVector>;

class SurfaceLattice {
public:
    /**
     * @param curve_generators classes declared to generate NE-bar; may be
     *        empty, but nef-cone computations then fail.
     * @param dimension 2 for surfaces, 1 for curve bases.
     */
    SurfaceLattice(std::vector<std::string> basis_labels, RationalMatrix gram,
                   std::vector<RationalVector> curve_generators, std::optional<RationalVector> ample_class = {},
                   int dimension = 2)
        : labels_(std::move(basis_labels)),
          gram_(std::move(gram)),
          curves_(std::move(curve_generators)),
          ample_(std::move(ample_class)),
          dimension_(dimension) {
        const std::size_t rho = labels_.size();
        if (rho == 0) throw ValidationError("lattice needs a non-empty basis");
        if (dimension_ != 1 && dimension_ != 2) throw ValidationError("base dimension must be 1 or 2");
        if (gram_.size() != rho) throw DimensionMismatch("gram has " + std::to_string(gram_.size()) + " rows");
        for (std::size_t i = 0; i < rho; ++i) {
            if (gram_[i].size() != rho) throw DimensionMismatch("gram row " + std::to_string(i));
        }
        for (std::size_t i = 0; i < rho; ++i) {
            for (std::size_t j = 0; j < i; ++j) {
                if (gram_[i][j] != gram_[j][i]) throw ValidationError("gram matrix is not symmetric");
            }
        }
        for (std::size_t i = 0; i < curves_.size(); ++i) {
            if (curves_[i].size() != rho) throw DimensionMismatch("curve generator " + std::to_string(i));
        }
        if (ample_) {
            if (ample_->size() != rho) throw DimensionMismatch("ample class");
            for (const auto& c : curves_) {
                if (!(intersect(*ample_, c) > 0)) {
                    throw ValidationError("ample class is not positive on curve generator " + to_string(c));
                }
            }
        }
    }

    std::size_t rho() const { return labels_.size(); }
    int dimension() const { return dimension_; }
    bool is_curve() const { return dimension_ == 1; }
    const std::vector<std::string>& basis_labels() const { return labels_; }
    const RationalMatrix& gram() const { return gram_; }
    const std::vector<RationalVector>& curve_generators() const { return curves_; }
    const std::optional<RationalVector>& ample_class() const { return ample_; }

    /// a^T * gram * b
    Rational intersect(std::span<const Rational> a, std::span<const Rational> b) const {
        check(a);
        check(b);
        Rational s = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) continue;
            for (std::size_t j = 0; j < b.size(); ++j) s += a[i] * gram_[i][j] * b[j];
        }
        return s;
    }

    /// gram * c: the linear form gamma -> gamma . c.
    RationalVector pairing_form(std::span<const Rational> c) const {
        check(c);
        RationalVector out(rho(), Rational(0));
        for (std::size_t i = 0; i < rho(); ++i) {
            for (std::size_t j = 0; j < rho(); ++j) out[i] += gram_[i][j] * c[j];
        }
        return out;
    }

    /// Nef^1 of the base, dual to the supplied curve generators.
    Cone nef_cone() const {
        if (curves_.empty()) throw ValidationError("lattice has no curve generators");
        std::vector<RationalVector> hs;
        for (const auto& c : curves_) hs.push_back(pairing_form(c));
        return h_to_v(Cone::from_halfspaces(rho(), std::move(hs)));
    }

    void check(std::span<const Rational> v) const {
        if (v.size() != rho()) {
            throw DimensionMismatch("class of length " + std::to_string(v.size()) + " on a lattice of rank " +
                                    std::to_string(rho()));
        }
    }

private:
    std::vector<std::string> labels_;
    RationalMatrix gram_;
    std::vector<RationalVector> curves_;
    std::optional<RationalVector> ample_;
    int dimension_;
};

/// P^2: N^1 = Z.H, H^2 = 1, NE-bar spanned by a line.
inline SurfaceLattice projective_plane() {
    return SurfaceLattice({"H"}, {{Rational(1)}}, {{Rational(1)}}, RationalVector{Rational(1)});
}

/// A smooth curve: N^1 = Z.pt, paired with [C] by degree.
inline SurfaceLattice curve_base(std::string label = "pt") {
    return SurfaceLattice({std::move(label)}, {{Rational(1)}}, {{Rational(1)}}, RationalVector{Rational(1)}, 1);
}

/**
 * @brief Blow-up of P(O+O) over an elliptic curve at a point of a section.
 *
 * Basis (C1, C2, C3) = (f - E_x, s - E_x, E_x) where s is the section
 * class. All pairwise products are listed below; C1, C2, C3 generate NE-bar.
 */
inline SurfaceLattice blowup_ruled_elliptic(int deg_w = 0) {
    if (deg_w != 0) {
        throw ValidationError("blowup_ruled_elliptic: only deg(W) = 0 is supported, got " + std::to_string(deg_w));
    }
    const Rational m1(-1), z(0), p1(1);
    RationalMatrix gram{{m1, z, p1}, {z, m1, p1}, {p1, p1, m1}};
    std::vector<RationalVector> curves{{p1, z, z}, {z, p1, z}, {z, z, p1}};
    // 2C1 + 2C2 + 3C3 pairs to 1 with each generator and has square 7.
    RationalVector ample{Rational(2), Rational(2), Rational(3)};
    return SurfaceLattice({"C1", "C2", "C3"}, std::move(gram), std::move(curves), std::move(ample));
}

/**
 * Chern data of a bundle on the base. When summands are present the bundle
 * is the direct sum of those line bundles and c1, c2 are derived from them.
 */
class SurfaceBundle {
public:
    /// Bundle known only through (r, c1, c2); semistability must be vouched for separately.
    static SurfaceBundle from_chern(const SurfaceLattice& lattice, int rank, RationalVector c1, Rational c2,
                                    bool asserted_semistable) {
        if (rank < 1) throw ValidationError("bundle rank must be positive");
        lattice.check(c1);
        SurfaceBundle b;
        b.rank_ = rank;
        b.c1_ = std::move(c1);
        b.c2_ = lattice.is_curve() ? Rational(0) : std::move(c2);
        b.asserted_ = asserted_semistable;
        return b;
    }

    static SurfaceBundle decomposable(const SurfaceLattice& lattice, std::vector<RationalVector> summands) {
        if (summands.empty()) throw ValidationError("decomposable bundle needs at least one summand");
        SurfaceBundle b;
        b.rank_ = static_cast<int>(summands.size());
        b.c1_.assign(lattice.rho(), Rational(0));
        for (const auto& m : summands) {
            lattice.check(m);
            for (std::size_t i = 0; i < m.size(); ++i) b.c1_[i] += m[i];
        }
        b.c2_ = 0;
        if (!lattice.is_curve()) {
            for (std::size_t i = 0; i < summands.size(); ++i) {
                for (std::size_t j = i + 1; j < summands.size(); ++j) b.c2_ += lattice.intersect(summands[i], summands[j]);
            }
        }
        b.summands_ = std::move(summands);
        return b;
    }

    int rank() const { return rank_; }
    const RationalVector& c1() const { return c1_; }
    /// Degree of c2 as a 0-cycle.
    const Rational& c2() const { return c2_; }
    const std::optional<std::vector<RationalVector>>& summands() const { return summands_; }
    bool asserted_semistable() const { return asserted_; }

private:
    SurfaceBundle() = default;

    int rank_ = 0;
    RationalVector c1_;
    Rational c2_;
    std::optional<std::vector<RationalVector>> summands_;
    bool asserted_ = false;
};

/**
 * Pullback to the blown-up ruled surface of a semistable bundle V of rank r
 * and degree d on the elliptic curve. c1 = d (C1 + C3), c2 = 0; the bundle
 * is semistable whenever V is, which the caller asserts.
 */
inline SurfaceBundle ruled_elliptic_pullback(const SurfaceLattice& lattice, int rank, const Rational& degree) {
    return SurfaceBundle::from_chern(lattice, rank, {degree, Rational(0), degree}, Rational(0), true);
}

inline Rational intersect(const SurfaceLattice& lattice, std::span<const Rational> a, std::span<const Rational> b) {
    return lattice.intersect(a, b);
}

/// deg(E|_C) = c1(E) . C; the restricted slope is this divided by the rank.
inline Rational restricted_degree(const SurfaceLattice& lattice, const SurfaceBundle& bundle,
                                  std::span<const Rational> curve) {
    return lattice.intersect(bundle.c1(), curve);
}

inline Rational restricted_slope(const SurfaceLattice& lattice, const SurfaceBundle& bundle,
                                 std::span<const Rational> curve) {
    return restricted_degree(lattice, bundle, curve) / bundle.rank();
}

/// 2r c2 - (r-1) c1^2 on a surface; zero on a curve.
inline Rational discriminant(const SurfaceLattice& lattice, const SurfaceBundle& bundle) {
    if (lattice.is_curve()) return 0;
    const int r = bundle.rank();
    return 2 * r * bundle.c2() - (r - 1) * lattice.intersect(bundle.c1(), bundle.c1());
}

/**
 * Ampleness is validated only against the supplied curve generators plus
 * positive self-intersection on surfaces; full Nakai is out of reach.
 */
inline void check_polarization(const SurfaceLattice& lattice, std::span<const Rational> polarization) {
    lattice.check(polarization);
    if (!lattice.is_curve() && !(lattice.intersect(polarization, polarization) > 0)) {
        throw ValidationError("polarization has non-positive self-intersection");
    }
    for (const auto& c : lattice.curve_generators()) {
        if (!(lattice.intersect(polarization, c) > 0)) {
            throw ValidationError("polarization is not positive on curve generator " + to_string(c));
        }
    }
}

/**
 * @brief Slope semistability of a direct sum of line bundles: all summands
 *        have the same degree against the polarization.
 *
 * Without summand data the answer is the caller's assertion; if there is
 * none either, SemistabilityUnknown is thrown.
 */
inline bool is_semistable_decomposable(const SurfaceLattice& lattice, const SurfaceBundle& bundle,
                                       std::span<const Rational> polarization) {
    check_polarization(lattice, polarization);
    if (!bundle.summands()) {
        if (bundle.asserted_semistable()) return true;
        throw SemistabilityUnknown("semistability must be asserted by the caller: bundle has no summand data");
    }
    const auto& ms = *bundle.summands();
    const Rational first = lattice.intersect(ms.front(), polarization);
    for (std::size_t i = 1; i < ms.size(); ++i) {
        if (lattice.intersect(ms[i], polarization) != first) return false;
    }
    return true;
}

/**
 * @brief Enforces "semistable with vanishing discriminant".
 *
 * Decomposable bundles are checked against @p polarization (or the
 * lattice's ample class); other bundles must carry the asserted flag. An
 * asserted but false claim is not detected.
 */
inline void require_semistable_zero_discriminant(const SurfaceLattice& lattice, const SurfaceBundle& bundle,
                                                 std::optional<RationalVector> polarization = {}) {
    if (bundle.summands()) {
        if (!polarization) polarization = lattice.ample_class();
        if (!polarization) throw ValidationError("no polarization given and lattice has no ample class");
        if (!is_semistable_decomposable(lattice, bundle, *polarization)) {
            throw PreconditionError("bundle is not semistable: summand degrees against the polarization differ");
        }
    } else if (!bundle.asserted_semistable()) {
        throw SemistabilityUnknown(
            "semistability must be asserted by the caller: bundle has no summand data and is not flagged semistable");
    }
    const Rational disc = discriminant(lattice, bundle);
    if (disc != 0) {
        throw PreconditionError("discriminant 2r c2 - (r-1) c1^2 = " + to_string(disc) +
                                " != 0; vanishing-discriminant hypothesis violated");
    }
}

}  // namespace grasscone

#endif  // GRASSCONE_SURFACE_GEOMETRY_HPP
