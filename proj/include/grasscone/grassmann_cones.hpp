/**
 * @file grassmann_cones.hpp
 * @brief Nef and pseudoeffective cones of Grassmann bundles Gr(k,E) -> X
 *        for semistable E with vanishing discriminant.
 *
 * Divisor coordinates on Gr(k,E) are (xi, pi^*b_1, ..., pi^*b_rho) where
 * xi = c1(O(1)) and b_i is the basis of N^1(X).
 */

#ifndef GRASSCONE_GRASSMANN_CONES_HPP
#define GRASSCONE_GRASSMANN_CONES_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "grasscone/curve_bundles.hpp"
#include "grasscone/errors.hpp"
#include "grasscone/ratcone.hpp"
#include "grasscone/rational.hpp"
#include "grasscone/surface_geometry.hpp"

namespace grasscone {

/// Labels of N^1(Gr(k,E)): "xi" followed by "pi*<base label>".
inline std::vector<std::string> grassmann_basis(const SurfaceLattice& lattice) {
    std::vector<std::string> labels{"xi"};
    for (const auto& l : lattice.basis_labels()) labels.push_back("pi*" + l);
    return labels;
}

/// Basis of the l-stage tower: xi_l, ..., xi_1, then the pulled-back base classes.
inline std::vector<std::string> tower_basis(const SurfaceLattice& lattice, std::size_t stages) {
    std::vector<std::string> labels;
    for (std::size_t i = stages; i >= 1; --i) labels.push_back("xi_" + std::to_string(i));
    for (const auto& l : lattice.basis_labels()) labels.push_back("pi*" + l);
    return labels;
}

struct LambdaClass {
    RationalVector coefficients;
};

/**
 * @brief lambda_{E,k} = xi - c1(wedge^k E) / rk(wedge^k E).
 *
 * With rk = C(r,k) and c1(wedge^k E) = C(r-1,k-1) c1(E) the coefficient is
 * k/r; the binomial ratio is recomputed and checked against k/r.
 */
inline LambdaClass lambda_class(int r, int k, std::span<const Rational> c1) {
    if (r < 1 || k < 1 || k > r) {
        throw ValidationError("k = " + std::to_string(k) + " outside [1, " + std::to_string(r) + "]");
    }
    const Rational ratio(binomial(static_cast<unsigned>(r - 1), static_cast<unsigned>(k - 1)),
                        binomial(static_cast<unsigned>(r), static_cast<unsigned>(k)));
    if (ratio != Rational(k, r)) throw std::logic_error("binomial identity C(r-1,k-1)/C(r,k) = k/r failed");
    LambdaClass out;
    out.coefficients.reserve(c1.size() + 1);
    out.coefficients.emplace_back(1);
    for (const auto& x : c1) out.coefficients.push_back(-ratio * x);
    return out;
}

namespace detail {
inline RationalVector pad_front(std::span<const Rational> v, std::size_t zeros) {
    RationalVector out(zeros, Rational(0));
    out.insert(out.end(), v.begin(), v.end());
    return out;
}

inline void check_bundle_k(const SurfaceBundle& bundle, int k) {
    if (k < 1 || k > bundle.rank()) {
        throw ValidationError("k = " + std::to_string(k) + " outside [1, " + std::to_string(bundle.rank()) + "]");
    }
}
}  // namespace detail

/**
 * @brief Eff^1(Gr(k,E)) = cone{lambda_{E,k}, pi^*E_1, ..., pi^*E_n}.
 *
 * @p base_eff_generators generate Eff^1(X). Preconditions (semistable,
 * discriminant 0) are enforced; failures throw PreconditionError.
 */
inline Cone eff_cone(const SurfaceLattice& lattice, const SurfaceBundle& bundle, int k,
                     const std::vector<RationalVector>& base_eff_generators,
                     std::optional<RationalVector> polarization = {}) {
    detail::check_bundle_k(bundle, k);
    if (base_eff_generators.empty()) throw ValidationError("empty list of base effective generators");
    require_semistable_zero_discriminant(lattice, bundle, std::move(polarization));
    std::vector<RationalVector> gens{lambda_class(bundle.rank(), k, bundle.c1()).coefficients};
    for (const auto& g : base_eff_generators) {
        lattice.check(g);
        gens.push_back(detail::pad_front(g, 1));
    }
    return canonical(Cone::from_generators(lattice.rho() + 1, std::move(gens)));
}

/**
 * @brief Nef^1(Gr(k,E)) over a base with polyhedral NE-bar.
 *
 * y_0 xi + pi^*gamma is nef iff y_0 >= 0 and
 * k y_0 mu(E|_{C_j}) + gamma.C_j >= 0 for every curve generator C_j.
 * The returned cone keeps this inequality system verbatim as its H-rep
 * (y_0 >= 0 first, then one row per generator) next to canonical generators.
 */
inline Cone nef_cone_surface(const SurfaceLattice& lattice, const SurfaceBundle& bundle, int k,
                             std::optional<RationalVector> polarization = {}) {
    detail::check_bundle_k(bundle, k);
    if (lattice.curve_generators().empty()) throw ValidationError("lattice has no curve generators");
    require_semistable_zero_discriminant(lattice, bundle, std::move(polarization));
    const std::size_t dim = lattice.rho() + 1;
    std::vector<RationalVector> hs;
    RationalVector y0(dim, Rational(0));
    y0[0] = 1;
    hs.push_back(std::move(y0));
    for (const auto& c : lattice.curve_generators()) {
        RationalVector row{k * restricted_slope(lattice, bundle, c)};
        for (auto& x : lattice.pairing_form(c)) row.push_back(std::move(x));
        hs.push_back(std::move(row));
    }
    return h_to_v(Cone::from_halfspaces(dim, std::move(hs)));
}

/**
 * theta^L_{E,k} of a direct sum of line bundles: theta of the HN data of
 * the summand degrees against @p polarization.
 */
inline Rational decomposable_theta(const SurfaceLattice& lattice, const SurfaceBundle& bundle,
                                   std::span<const Rational> polarization, int k) {
    if (!bundle.summands()) throw ValidationError("theta^L needs summand data");
    std::vector<Rational> degrees;
    for (const auto& m : *bundle.summands()) degrees.push_back(lattice.intersect(m, polarization));
    return theta(hn_of_line_bundle_sum(std::move(degrees)), k);
}

/**
 * @brief Nef cone over a Picard-rank-1 surface for a direct sum of line
 *        bundles: {y_0 >= 0, y_0 theta^L_{E,k} + y_1 L^2 >= 0}.
 *
 * L is the lattice's single basis class, assumed to be the ample generator.
 * No semistability is required.
 */
inline Cone nef_cone_picard_one(const SurfaceLattice& lattice, const SurfaceBundle& bundle, int k) {
    if (lattice.rho() != 1) throw ValidationError("Picard-rank-1 lattice required");
    detail::check_bundle_k(bundle, k);
    const RationalVector generator{Rational(1)};
    check_polarization(lattice, generator);
    const Rational th = decomposable_theta(lattice, bundle, generator, k);
    const Rational self = lattice.intersect(generator, generator);
    return h_to_v(Cone::from_halfspaces(2, {{Rational(1), Rational(0)}, {th, self}}));
}

struct EqualityReport {
    bool base_equal = false;
    bool gr_equal = false;
    Cone base_nef;
    Cone base_eff;
    Cone nef;
    Cone eff;

    /// Eff = Nef on the base iff Eff = Nef on Gr(k,E); false flags a consistency failure.
    bool coherent() const { return base_equal == gr_equal; }
};

/**
 * Compares Nef^1 and Eff^1 on the base and on Gr(k,E). When
 * @p base_eff_generators is empty the curve generators are used, since on
 * a surface (or curve) effective curves and effective divisors span the
 * same cone in N^1.
 */
inline EqualityReport nef_eff_equality_report(const SurfaceLattice& lattice, const SurfaceBundle& bundle, int k,
                                              std::vector<RationalVector> base_eff_generators = {},
                                              std::optional<RationalVector> polarization = {}) {
    if (base_eff_generators.empty()) base_eff_generators = lattice.curve_generators();
    Cone base_nef = lattice.nef_cone();
    Cone base_eff = canonical(Cone::from_generators(lattice.rho(), base_eff_generators));
    Cone nef = nef_cone_surface(lattice, bundle, k, polarization);
    Cone eff = eff_cone(lattice, bundle, k, base_eff_generators, polarization);
    const bool base_equal = equals(base_nef, base_eff);
    const bool gr_equal = equals(nef, eff);
    return {base_equal, gr_equal, std::move(base_nef), std::move(base_eff), std::move(nef), std::move(eff)};
}

struct TowerStage {
    SurfaceBundle bundle;
    int k = 1;
};

/**
 * @brief Cones of the fibre-product tower X_i = Gr(k_1,E_1) x_X ... x_X Gr(k_i,E_i).
 *
 * Requires Nef^1(X) = Eff^1(X). Stage i lives in the basis
 * (xi_i, ..., xi_1, pi^*b) and is generated by lambda of the pulled-back
 * E_i (its c1 padded with zeros in the xi slots) together with the
 * generators of stage i-1. Nef and Eff coincide at every stage.
 */
inline std::vector<Cone> tower_cones(const SurfaceLattice& lattice, const std::vector<TowerStage>& stages,
                                     std::vector<RationalVector> base_eff_generators = {},
                                     std::optional<RationalVector> polarization = {}) {
    if (stages.empty()) throw ValidationError("tower needs at least one stage");
    if (base_eff_generators.empty()) base_eff_generators = lattice.curve_generators();
    if (base_eff_generators.empty()) throw ValidationError("empty list of base effective generators");
    Cone previous = canonical(Cone::from_generators(lattice.rho(), base_eff_generators));
    if (!equals(previous, lattice.nef_cone())) {
        throw PreconditionError("base nef cone differs from base effective cone; tower requires Nef = Eff on X");
    }

    std::vector<Cone> out;
    for (std::size_t i = 0; i < stages.size(); ++i) {
        const auto& stage = stages[i];
        detail::check_bundle_k(stage.bundle, stage.k);
        require_semistable_zero_discriminant(lattice, stage.bundle, polarization);
        const std::size_t dim = previous.dim() + 1;
        RationalVector lambda = lambda_class(stage.bundle.rank(), stage.k, stage.bundle.c1()).coefficients;
        // (1, -(k/r) c1) -> (1, 0 x i, -(k/r) c1)
        RationalVector padded{Rational(1)};
        padded.insert(padded.end(), i, Rational(0));
        padded.insert(padded.end(), lambda.begin() + 1, lambda.end());
        std::vector<RationalVector> gens{std::move(padded)};
        for (const auto& g : previous.generators()) gens.push_back(detail::pad_front(g, 1));
        previous = canonical(Cone::from_generators(dim, std::move(gens)));
        out.push_back(previous);
    }
    return out;
}

}  // namespace grasscone

#endif  // GRASSCONE_GRASSMANN_CONES_HPP
