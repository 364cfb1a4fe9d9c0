/**
 * @file io.hpp
 * @brief JSON input documents and report rendering.
 *
 * Rationals are encoded as "p/q" strings; plain JSON integers are accepted
 * on input. Every parse error names the JSON path of the offending value.
 */

#ifndef GRASSCONE_IO_HPP
#define GRASSCONE_IO_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "grasscone/curve_bundles.hpp"
#include "grasscone/errors.hpp"
#include "grasscone/grassmann_cones.hpp"
#include "grasscone/ratcone.hpp"
#include "grasscone/rational.hpp"
#include "grasscone/surface_geometry.hpp"

namespace grasscone::io {

using json = nlohmann::json;

inline constexpr const char* kFormatVersion = "1";

/// Validation error that carries the JSON path of the bad value.
class DocumentError : public ValidationError {
public:
    DocumentError(const std::string& path, const std::string& what)
        : ValidationError(path + ": " + what), path_(path) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

// ---------------------------------------------------------------------------
// Scalar and vector readers
// ---------------------------------------------------------------------------

inline Rational read_rational(const json& j, const std::string& path) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_string()) {
        try {
            return parse_rational(j.get<std::string>());
        } catch (const ValidationError& e) {
            throw DocumentError(path, e.what());
        }
    }
    throw DocumentError(path, "expected a rational (\"p/q\" string or integer)");
}

inline int read_int(const json& j, const std::string& path) {
    if (!j.is_number_integer()) throw DocumentError(path, "expected an integer");
    return j.get<int>();
}

inline RationalVector read_vector(const json& j, const std::string& path) {
    if (!j.is_array()) throw DocumentError(path, "expected an array of rationals");
    RationalVector v;
    for (std::size_t i = 0; i < j.size(); ++i) v.push_back(read_rational(j[i], path + "/" + std::to_string(i)));
    return v;
}

inline std::vector<RationalVector> read_vectors(const json& j, const std::string& path) {
    if (!j.is_array()) throw DocumentError(path, "expected an array of vectors");
    std::vector<RationalVector> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(read_vector(j[i], path + "/" + std::to_string(i)));
    return out;
}

inline json write_vector(std::span<const Rational> v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(to_string(x));
    return a;
}

inline json write_vectors(const std::vector<RationalVector>& vs) {
    json a = json::array();
    for (const auto& v : vs) a.push_back(write_vector(v));
    return a;
}

// ---------------------------------------------------------------------------
// Input document
// ---------------------------------------------------------------------------

struct BaseSpec {
    std::string name;
    SurfaceLattice lattice;
    std::vector<RationalVector> eff_generators;  ///< empty: use the curve generators
};

struct BundleSpec {
    std::optional<HNData> hn;
    std::optional<SurfaceBundle> surface;
};

struct StageSpec {
    BundleSpec bundle;
    int k = 1;
};

struct InputDocument {
    std::string version = kFormatVersion;
    std::string command;
    std::optional<BaseSpec> base;
    std::optional<BundleSpec> bundle;
    std::optional<BundleSpec> bundle2;
    std::optional<int> k;
    std::optional<int> k2;
    std::vector<StageSpec> tower;
    std::optional<RationalVector> vector;
    std::optional<RationalVector> polarization;
    std::optional<std::vector<RationalVector>> gens;
    std::optional<std::vector<RationalVector>> halfspaces;
    std::optional<std::size_t> dim;
};

inline const json& require_key(const json& obj, const char* key, const std::string& path) {
    if (!obj.is_object() || !obj.contains(key)) throw DocumentError(path + "/" + key, "missing");
    return obj.at(key);
}

inline BaseSpec read_base(const json& j, const std::string& path) {
    if (!j.is_object() || j.size() != 1) {
        throw DocumentError(path, "expected exactly one of builtin, curve, surface-lattice");
    }
    if (j.contains("builtin")) {
        const json& b = j.at("builtin");
        if (b == "p2") return {"p2", projective_plane(), {}};
        if (b == "blowup-ruled-elliptic") return {"blowup-ruled-elliptic", blowup_ruled_elliptic(0), {}};
        throw DocumentError(path + "/builtin", "unknown builtin base " + b.dump());
    }
    if (j.contains("curve")) {
        const json& c = j.at("curve");
        std::string label = "pt";
        if (c.is_object() && c.contains("label")) {
            if (!c.at("label").is_string()) throw DocumentError(path + "/curve/label", "expected a string");
            label = c.at("label").get<std::string>();
        }
        return {"curve", curve_base(label), {}};
    }
    if (j.contains("surface-lattice")) {
        const std::string p = path + "/surface-lattice";
        const json& s = j.at("surface-lattice");
        const json& labels_json = require_key(s, "labels", p);
        if (!labels_json.is_array()) throw DocumentError(p + "/labels", "expected an array of strings");
        std::vector<std::string> labels;
        for (std::size_t i = 0; i < labels_json.size(); ++i) {
            if (!labels_json[i].is_string()) throw DocumentError(p + "/labels/" + std::to_string(i), "expected a string");
            labels.push_back(labels_json[i].get<std::string>());
        }
        auto gram = read_vectors(require_key(s, "gram", p), p + "/gram");
        auto curves = read_vectors(require_key(s, "curve_generators", p), p + "/curve_generators");
        std::optional<RationalVector> ample;
        if (s.contains("ample")) ample = read_vector(s.at("ample"), p + "/ample");
        std::vector<RationalVector> eff;
        if (s.contains("eff_generators")) eff = read_vectors(s.at("eff_generators"), p + "/eff_generators");
        try {
            return {"surface-lattice", SurfaceLattice(labels, gram, curves, ample), std::move(eff)};
        } catch (const ValidationError& e) {
            throw DocumentError(p, e.what());
        }
    }
    throw DocumentError(path, "expected exactly one of builtin, curve, surface-lattice");
}

inline HNData read_hn(const json& j, const std::string& path) {
    if (!j.is_array()) throw DocumentError(path, "expected an array of [rank, slope] pairs");
    std::vector<HNPiece> pieces;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string p = path + "/" + std::to_string(i);
        if (!j[i].is_array() || j[i].size() != 2) throw DocumentError(p, "expected [rank, slope]");
        pieces.push_back({read_int(j[i][0], p + "/0"), read_rational(j[i][1], p + "/1")});
    }
    try {
        return HNData(std::move(pieces));
    } catch (const ValidationError& e) {
        throw DocumentError(path, e.what());
    }
}

inline BundleSpec read_bundle(const json& j, const std::string& path, const std::optional<BaseSpec>& base) {
    if (!j.is_object()) throw DocumentError(path, "expected an object");
    static const char* forms[] = {"hn", "line-sum", "surface-bundle"};
    int present = 0;
    for (const char* f : forms) present += j.contains(f) ? 1 : 0;
    if (present != 1) throw DocumentError(path, "expected exactly one of hn, line-sum, surface-bundle");
    for (const auto& [key, _] : j.items()) {
        if (key != "hn" && key != "line-sum" && key != "surface-bundle" && key != "asserted-semistable") {
            throw DocumentError(path + "/" + key, "unknown key");
        }
    }
    bool asserted = false;
    if (j.contains("asserted-semistable")) {
        if (!j.at("asserted-semistable").is_boolean()) {
            throw DocumentError(path + "/asserted-semistable", "expected a boolean");
        }
        asserted = j.at("asserted-semistable").get<bool>();
    }

    BundleSpec out;
    if (j.contains("hn")) {
        out.hn = read_hn(j.at("hn"), path + "/hn");
        return out;
    }
    if (j.contains("line-sum")) {
        auto degrees = read_vector(j.at("line-sum"), path + "/line-sum");
        if (degrees.empty()) throw DocumentError(path + "/line-sum", "needs at least one degree");
        out.hn = hn_of_line_bundle_sum(std::move(degrees));
        return out;
    }

    const std::string p = path + "/surface-bundle";
    const json& s = j.at("surface-bundle");
    if (!base) throw DocumentError("/base", "missing (required by surface-bundle)");
    const SurfaceLattice& lattice = base->lattice;
    try {
        if (s.contains("summands")) {
            auto summands = read_vectors(s.at("summands"), p + "/summands");
            for (std::size_t i = 0; i < summands.size(); ++i) {
                if (summands[i].size() != lattice.rho()) {
                    throw DocumentError(p + "/summands/" + std::to_string(i), "length differs from Picard number");
                }
            }
            out.surface = SurfaceBundle::decomposable(lattice, std::move(summands));
            return out;
        }
        const int r = read_int(require_key(s, "r", p), p + "/r");
        if (s.contains("d")) {
            const Rational d = read_rational(s.at("d"), p + "/d");
            if (base->name == "blowup-ruled-elliptic") {
                if (!asserted) throw DocumentError(p, "pullback bundle needs asserted-semistable: true");
                out.surface = ruled_elliptic_pullback(lattice, r, d);
            } else if (lattice.is_curve()) {
                out.surface = SurfaceBundle::from_chern(lattice, r, {d}, Rational(0), asserted);
            } else {
                throw DocumentError(p + "/d", "degree shorthand only applies to curve and blowup-ruled-elliptic bases");
            }
            return out;
        }
        auto c1 = read_vector(require_key(s, "c1", p), p + "/c1");
        if (c1.size() != lattice.rho()) throw DocumentError(p + "/c1", "length differs from Picard number");
        Rational c2 = s.contains("c2") ? read_rational(s.at("c2"), p + "/c2") : Rational(0);
        out.surface = SurfaceBundle::from_chern(lattice, r, std::move(c1), std::move(c2), asserted);
        return out;
    } catch (const DocumentError&) {
        throw;
    } catch (const ValidationError& e) {
        throw DocumentError(p, e.what());
    }
}

inline InputDocument read_document(const json& doc) {
    if (!doc.is_object()) throw DocumentError("", "document must be a JSON object");
    InputDocument out;
    const json& version = require_key(doc, "version", "");
    if (!version.is_string() || version.get<std::string>() != kFormatVersion) {
        throw DocumentError("/version", "unsupported version " + version.dump() + " (expected \"" + kFormatVersion + "\")");
    }
    if (doc.contains("base")) out.base = read_base(doc.at("base"), "/base");
    if (doc.contains("bundle")) out.bundle = read_bundle(doc.at("bundle"), "/bundle", out.base);

    const json& q = require_key(doc, "query", "");
    if (!q.is_object()) throw DocumentError("/query", "expected an object");
    const json& cmd = require_key(q, "command", "/query");
    if (!cmd.is_string()) throw DocumentError("/query/command", "expected a string");
    out.command = cmd.get<std::string>();
    if (q.contains("k")) out.k = read_int(q.at("k"), "/query/k");
    if (q.contains("k2")) out.k2 = read_int(q.at("k2"), "/query/k2");
    if (q.contains("bundle2")) out.bundle2 = read_bundle(q.at("bundle2"), "/query/bundle2", out.base);
    if (q.contains("tower")) {
        const json& t = q.at("tower");
        if (!t.is_array()) throw DocumentError("/query/tower", "expected an array of stages");
        for (std::size_t i = 0; i < t.size(); ++i) {
            const std::string p = "/query/tower/" + std::to_string(i);
            StageSpec st{read_bundle(require_key(t[i], "bundle", p), p + "/bundle", out.base),
                         read_int(require_key(t[i], "k", p), p + "/k")};
            out.tower.push_back(std::move(st));
        }
    }
    if (q.contains("vector")) out.vector = read_vector(q.at("vector"), "/query/vector");
    if (q.contains("polarization")) out.polarization = read_vector(q.at("polarization"), "/query/polarization");
    if (q.contains("gens")) out.gens = read_vectors(q.at("gens"), "/query/gens");
    if (q.contains("halfspaces")) out.halfspaces = read_vectors(q.at("halfspaces"), "/query/halfspaces");
    if (q.contains("dim")) {
        const int d = read_int(q.at("dim"), "/query/dim");
        if (d < 1) throw DocumentError("/query/dim", "must be positive");
        out.dim = static_cast<std::size_t>(d);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

struct NamedCone {
    std::string name;
    std::vector<std::string> basis;
    Cone cone;
};

struct Report {
    std::string command;
    std::vector<std::pair<std::string, std::string>> values;  ///< ordered "name = value" scalars
    std::vector<NamedCone> cones;                             ///< first entry is the primary cone
    json flags = json::object();
};

/// "a*y0 - y2 + y3 >= 0" with coefficients as exact rationals.
inline std::string inequality_string(std::span<const Rational> h) {
    std::string out;
    for (std::size_t i = 0; i < h.size(); ++i) {
        if (h[i] == 0) continue;
        const bool negative = h[i] < 0;
        const Rational mag = negative ? Rational(-h[i]) : h[i];
        if (out.empty()) {
            if (negative) out += "-";
        } else {
            out += negative ? " - " : " + ";
        }
        if (mag != 1) out += to_string(mag) + "*";
        out += "y" + std::to_string(i);
    }
    if (out.empty()) out = "0";
    return out + " >= 0";
}

inline std::string render_text(const Report& report) {
    std::string out;
    for (const auto& [name, value] : report.values) out += name + " = " + value + "\n";
    for (const auto& nc : report.cones) {
        out += "cone " + nc.name + " in basis (";
        for (std::size_t i = 0; i < nc.basis.size(); ++i) out += (i ? ", " : "") + nc.basis[i];
        out += ")\n";
        if (nc.cone.has_halfspaces()) {
            out += "halfspaces: " + to_string(nc.cone.halfspaces()) + "\n";
            for (const auto& h : nc.cone.halfspaces()) out += "  " + inequality_string(h) + "\n";
        }
        if (nc.cone.has_generators()) {
            out += "generators: " + to_string(nc.cone.generators()) + "\n";
            for (const auto& g : nc.cone.generators()) out += "  " + to_string(g) + "\n";
        }
    }
    return out;
}

inline json cone_json(const NamedCone& nc) {
    json j;
    j["name"] = nc.name;
    j["basis"] = nc.basis;
    j["generators"] = nc.cone.has_generators() ? write_vectors(nc.cone.generators()) : json::array();
    j["halfspaces"] = nc.cone.has_halfspaces() ? write_vectors(nc.cone.halfspaces()) : json::array();
    return j;
}

/**
 * Machine-readable report: {version, command, basis, generators,
 * halfspaces, flags, values, cones}. The top-level basis / generators /
 * halfspaces describe the primary cone; "cones" lists every cone.
 */
inline json render_json(const Report& report) {
    json j;
    j["version"] = kFormatVersion;
    j["command"] = report.command;
    j["values"] = json::object();
    for (const auto& [name, value] : report.values) j["values"][name] = value;
    j["flags"] = report.flags;
    j["cones"] = json::array();
    for (const auto& nc : report.cones) j["cones"].push_back(cone_json(nc));
    if (!report.cones.empty()) {
        json primary = cone_json(report.cones.front());
        j["basis"] = primary["basis"];
        j["generators"] = primary["generators"];
        j["halfspaces"] = primary["halfspaces"];
    } else {
        j["basis"] = json::array();
        j["generators"] = json::array();
        j["halfspaces"] = json::array();
    }
    return j;
}

}  // namespace grasscone::io

#endif  // GRASSCONE_IO_HPP
