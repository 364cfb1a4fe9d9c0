/**
 * @file cli.hpp
 * @brief The grasscone command-line driver.
 *
 * Flags are first translated into an input document, so flag invocations
 * and --input documents share one execution path. Exit codes: 0 success,
 * 1 internal/consistency failure, 2 validation error, 3 failed hypothesis
 * (semistability or discriminant).
 */

#ifndef GRASSCONE_CLI_HPP
#define GRASSCONE_CLI_HPP

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <ostream>
#include <regex>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "grasscone/curve_bundles.hpp"
#include "grasscone/errors.hpp"
#include "grasscone/grassmann_cones.hpp"
#include "grasscone/io.hpp"
#include "grasscone/ratcone.hpp"
#include "grasscone/surface_geometry.hpp"

namespace grasscone::cli {

using json = nlohmann::json;

enum ExitCode : int { kOk = 0, kInternal = 1, kValidation = 2, kPrecondition = 3 };

inline const std::vector<std::string>& commands() {
    static const std::vector<std::string> names{"hn",      "theta",       "zeta",         "curve-cones", "eff",
                                                "nef",     "equality",    "fiber-product", "tower",      "discriminant",
                                                "semistable", "dualize",  "contains"};
    return names;
}

/// Cap on cone dimension, from GRASSCONE_MAX_DIM (default 12).
inline std::size_t max_dim() {
    if (const char* env = std::getenv("GRASSCONE_MAX_DIM")) {
        try {
            const long v = std::stol(env);
            if (v > 0) return static_cast<std::size_t>(v);
        } catch (const std::exception&) {
        }
        throw ValidationError("GRASSCONE_MAX_DIM must be a positive integer, got '" + std::string(env) + "'");
    }
    return 12;
}

inline void check_dim(std::size_t dim) {
    const std::size_t cap = max_dim();
    if (dim > cap) {
        throw ValidationError("cone dimension " + std::to_string(dim) + " exceeds GRASSCONE_MAX_DIM = " +
                              std::to_string(cap));
    }
}

// ---------------------------------------------------------------------------
// Execution
// ---------------------------------------------------------------------------

namespace detail {

inline const io::BaseSpec& need_base(const io::InputDocument& doc) {
    if (!doc.base) throw io::DocumentError("/base", "missing (required by '" + doc.command + "')");
    return *doc.base;
}

inline int need_k(const std::optional<int>& k, const char* path) {
    if (!k) throw io::DocumentError(path, "missing");
    return *k;
}

inline const HNData& need_hn(const std::optional<io::BundleSpec>& b, const char* path) {
    if (!b) throw io::DocumentError(path, "missing");
    if (!b->hn) throw io::DocumentError(path, "expected hn or line-sum data");
    return *b->hn;
}

/// Bundle on the base; single-piece HN data over a curve base is semistable by definition.
inline SurfaceBundle surface_bundle(const io::BundleSpec& b, const io::BaseSpec& base, const std::string& path) {
    if (b.surface) return *b.surface;
    if (!base.lattice.is_curve()) throw io::DocumentError(path, "hn data requires a curve base");
    const HNData& hn = *b.hn;
    if (!hn.is_semistable()) {
        throw PreconditionError("bundle is not semistable: HN filtration has " + std::to_string(hn.length()) +
                                " pieces; semistable-with-vanishing-discriminant hypothesis violated");
    }
    return SurfaceBundle::from_chern(base.lattice, hn.rank(), {hn.degree()}, Rational(0), true);
}

inline SurfaceBundle need_surface_bundle(const io::InputDocument& doc) {
    if (!doc.bundle) throw io::DocumentError("/bundle", "missing");
    return surface_bundle(*doc.bundle, need_base(doc), "/bundle");
}

inline std::vector<RationalVector> base_eff(const io::BaseSpec& base) {
    return base.eff_generators.empty() ? base.lattice.curve_generators() : base.eff_generators;
}

inline Cone input_cone(const io::InputDocument& doc) {
    if (doc.gens && doc.halfspaces) throw io::DocumentError("/query", "give gens or halfspaces, not both");
    const auto* vs = doc.gens ? &*doc.gens : doc.halfspaces ? &*doc.halfspaces : nullptr;
    if (!vs) throw io::DocumentError("/query/gens", "missing");
    std::size_t dim = doc.dim.value_or(0);
    if (dim == 0) {
        if (vs->empty()) throw io::DocumentError("/query/dim", "required when the vector list is empty");
        dim = vs->front().size();
    }
    check_dim(dim);
    for (std::size_t i = 0; i < vs->size(); ++i) {
        if ((*vs)[i].size() != dim) {
            throw io::DocumentError(std::string(doc.gens ? "/query/gens/" : "/query/halfspaces/") + std::to_string(i),
                                    "length " + std::to_string((*vs)[i].size()) + " differs from dimension " +
                                        std::to_string(dim));
        }
    }
    return doc.gens ? Cone::from_generators(dim, *doc.gens) : Cone::from_halfspaces(dim, *doc.halfspaces);
}

inline std::vector<std::string> plain_basis(std::size_t dim) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < dim; ++i) labels.push_back("x" + std::to_string(i));
    return labels;
}

inline std::string hn_string(const HNData& hn) {
    std::string out = "[";
    for (std::size_t i = 0; i < hn.pieces().size(); ++i) {
        if (i) out += ",";
        out += "[" + std::to_string(hn.pieces()[i].rank) + "," + to_string(hn.pieces()[i].slope) + "]";
    }
    return out + "]";
}

}  // namespace detail

inline io::Report execute(const io::InputDocument& doc) {
    using namespace detail;
    io::Report rep;
    rep.command = doc.command;
    const std::string& c = doc.command;

    if (c == "hn") {
        const HNData& hn = need_hn(doc.bundle, "/bundle");
        rep.values.emplace_back("hn", hn_string(hn));
        rep.values.emplace_back("rank", std::to_string(hn.rank()));
        rep.values.emplace_back("degree", to_string(hn.degree()));
        rep.flags["semistable"] = hn.is_semistable();
    } else if (c == "theta" || c == "zeta") {
        const HNData& hn = need_hn(doc.bundle, "/bundle");
        const int k = need_k(doc.k, "/query/k");
        rep.values.emplace_back(c, to_string(c == "theta" ? theta(hn, k) : zeta(hn, k)));
    } else if (c == "curve-cones") {
        const HNData& hn = need_hn(doc.bundle, "/bundle");
        auto cones = curve_cones(hn, need_k(doc.k, "/query/k"));
        rep.values.emplace_back("theta", to_string(cones.theta));
        rep.values.emplace_back("zeta", to_string(cones.zeta));
        rep.flags["nef_equals_eff"] = equals(cones.nef, cones.eff);
        rep.cones.push_back({"nef", cones.basis, std::move(cones.nef)});
        rep.cones.push_back({"eff", cones.basis, std::move(cones.eff)});
    } else if (c == "fiber-product") {
        const HNData& hn = need_hn(doc.bundle, "/bundle");
        const HNData& hn2 = need_hn(doc.bundle2, "/query/bundle2");
        auto cones = fiber_product_cones(hn, need_k(doc.k, "/query/k"), hn2, need_k(doc.k2, "/query/k2"));
        rep.flags["nef_equals_eff"] = equals(cones.nef, cones.eff);
        rep.cones.push_back({"nef", cones.basis, std::move(cones.nef)});
        rep.cones.push_back({"eff", cones.basis, std::move(cones.eff)});
    } else if (c == "eff" || c == "nef") {
        const auto& base = need_base(doc);
        check_dim(base.lattice.rho() + 1);
        const SurfaceBundle bundle = need_surface_bundle(doc);
        const int k = need_k(doc.k, "/query/k");
        Cone cone = c == "eff" ? eff_cone(base.lattice, bundle, k, base_eff(base), doc.polarization)
                               : nef_cone_surface(base.lattice, bundle, k, doc.polarization);
        rep.cones.push_back({c, grassmann_basis(base.lattice), std::move(cone)});
    } else if (c == "equality") {
        const auto& base = need_base(doc);
        check_dim(base.lattice.rho() + 1);
        const SurfaceBundle bundle = need_surface_bundle(doc);
        auto report = nef_eff_equality_report(base.lattice, bundle, need_k(doc.k, "/query/k"), base_eff(base),
                                              doc.polarization);
        rep.values.emplace_back("base_equal", report.base_equal ? "true" : "false");
        rep.values.emplace_back("gr_equal", report.gr_equal ? "true" : "false");
        rep.flags["base_equal"] = report.base_equal;
        rep.flags["gr_equal"] = report.gr_equal;
        rep.flags["coherent"] = report.coherent();
        const auto basis = grassmann_basis(base.lattice);
        rep.cones.push_back({"nef", basis, std::move(report.nef)});
        rep.cones.push_back({"eff", basis, std::move(report.eff)});
        rep.cones.push_back({"base-nef", base.lattice.basis_labels(), std::move(report.base_nef)});
        rep.cones.push_back({"base-eff", base.lattice.basis_labels(), std::move(report.base_eff)});
    } else if (c == "tower") {
        const auto& base = need_base(doc);
        if (doc.tower.empty()) throw io::DocumentError("/query/tower", "missing or empty");
        check_dim(base.lattice.rho() + doc.tower.size());
        std::vector<TowerStage> stages;
        for (std::size_t i = 0; i < doc.tower.size(); ++i) {
            stages.push_back({surface_bundle(doc.tower[i].bundle, base, "/query/tower/" + std::to_string(i)),
                              doc.tower[i].k});
        }
        auto cones = tower_cones(base.lattice, stages, base_eff(base), doc.polarization);
        // Primary cone is the full tower.
        for (std::size_t i = cones.size(); i-- > 0;) {
            rep.cones.push_back({"stage-" + std::to_string(i + 1), tower_basis(base.lattice, i + 1), std::move(cones[i])});
        }
    } else if (c == "discriminant") {
        const auto& base = need_base(doc);
        const SurfaceBundle bundle = need_surface_bundle(doc);
        rep.values.emplace_back("discriminant", to_string(discriminant(base.lattice, bundle)));
    } else if (c == "semistable") {
        const auto& base = need_base(doc);
        const SurfaceBundle bundle = need_surface_bundle(doc);
        std::optional<RationalVector> pol = doc.polarization ? doc.polarization : base.lattice.ample_class();
        if (!pol) throw io::DocumentError("/query/polarization", "missing and the base has no ample class");
        const bool checked = bundle.summands().has_value();
        const bool result = is_semistable_decomposable(base.lattice, bundle, *pol);
        rep.values.emplace_back("semistable", result ? "true" : "false");
        rep.flags["semistable"] = result;
        rep.flags["checked"] = checked;
    } else if (c == "dualize") {
        Cone in = input_cone(doc);
        rep.cones.push_back({"dual", plain_basis(in.dim()), dual(in)});
    } else if (c == "contains") {
        Cone in = input_cone(doc);
        if (!doc.vector) throw io::DocumentError("/query/vector", "missing");
        if (doc.vector->size() != in.dim()) throw io::DocumentError("/query/vector", "length differs from cone dimension");
        const bool result = contains(in, *doc.vector);
        rep.values.emplace_back("contains", result ? "true" : "false");
        rep.flags["contains"] = result;
    } else {
        throw io::DocumentError("/query/command", "unknown command '" + c + "'");
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Flag parsing
// ---------------------------------------------------------------------------

namespace detail {

/// Parses a JSON fragment, quoting bare rationals such as 3/2 first.
inline json parse_fragment(const std::string& text, const std::string& flag) {
    static const std::regex bare_rational(R"((^|[^"\d/])(-?\d+/\d+)(?=$|[^"\d/]))");
    std::string quoted = std::regex_replace(text, bare_rational, "$1\"$2\"");
    try {
        return json::parse(quoted);
    } catch (const json::parse_error& e) {
        throw io::DocumentError(flag, std::string("not valid JSON: ") + e.what());
    }
}

/// Splits "a=1,b=[1,2],c=3" at top-level commas.
inline std::vector<std::pair<std::string, std::string>> split_assignments(const std::string& s, const std::string& flag) {
    std::vector<std::pair<std::string, std::string>> out;
    int depth = 0;
    std::string cur;
    auto flush = [&] {
        if (cur.empty()) return;
        const auto eq = cur.find('=');
        if (eq == std::string::npos) throw io::DocumentError(flag, "expected key=value, got '" + cur + "'");
        out.emplace_back(cur.substr(0, eq), cur.substr(eq + 1));
        cur.clear();
    };
    for (char ch : s) {
        if (ch == '[') ++depth;
        if (ch == ']') --depth;
        if (ch == ',' && depth == 0) {
            flush();
        } else if (ch != ' ') {
            cur += ch;
        }
    }
    flush();
    return out;
}

/**
 * Bundle shorthand:
 *   hn:[[1,3],[2,1]]   line-sum:[3,1,1]   sum:[[1],[1]] (or sum:[1,1] for rho = 1)
 *   asserted:r=2,d=1   asserted:r=2,c1=[1,0,1],c2=0   chern:r=2,c1=[2],c2=1
 */
inline json bundle_from_flag(const std::string& text, const std::string& flag) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw io::DocumentError(flag, "expected <form>:<data>, got '" + text + "'");
    const std::string form = text.substr(0, colon);
    const std::string body = text.substr(colon + 1);
    json b;
    if (form == "hn") {
        b["hn"] = parse_fragment(body, flag);
    } else if (form == "line-sum") {
        b["line-sum"] = parse_fragment(body, flag);
    } else if (form == "sum") {
        json summands = parse_fragment(body, flag);
        if (summands.is_array()) {
            for (auto& m : summands) {
                if (!m.is_array()) m = json::array({m});
            }
        }
        b["surface-bundle"]["summands"] = summands;
    } else if (form == "asserted" || form == "chern") {
        json s = json::object();
        for (const auto& [key, value] : split_assignments(body, flag)) {
            if (key == "r") {
                s["r"] = parse_fragment(value, flag + " r");
            } else if (key == "d" || key == "c2") {
                s[key] = value;
            } else if (key == "c1") {
                s["c1"] = parse_fragment(value, flag + " c1");
            } else {
                throw io::DocumentError(flag, "unknown key '" + key + "'");
            }
        }
        b["surface-bundle"] = s;
        b["asserted-semistable"] = (form == "asserted");
    } else {
        throw io::DocumentError(flag, "unknown bundle form '" + form + "'");
    }
    return b;
}

inline json base_from_flag(const std::string& text) {
    if (text == "curve") return {{"curve", json::object()}};
    if (text.rfind("builtin:", 0) == 0) return {{"builtin", text.substr(8)}};
    if (!text.empty() && text.front() == '{') {
        return {{"surface-lattice", parse_fragment(text, "--base")}};
    }
    throw io::DocumentError("--base", "expected curve, builtin:<name> or a surface-lattice JSON object");
}

struct FlagValues {
    std::string command;
    std::string input;
    std::string base;
    std::string bundle;
    std::string bundle2;
    std::string hn;
    std::string hn2;
    std::string degrees;
    std::string gens;
    std::string halfspaces;
    std::string vector;
    std::string polarization;
    std::string base_eff;
    std::vector<std::string> stages;
    std::optional<int> k;
    std::optional<int> k2;
    std::optional<int> dim;
};

inline json document_from_flags(const FlagValues& f) {
    json doc;
    doc["version"] = io::kFormatVersion;
    if (!f.base.empty()) doc["base"] = base_from_flag(f.base);
    if (!f.base_eff.empty()) {
        if (!doc.contains("base") || !doc["base"].contains("surface-lattice")) {
            throw io::DocumentError("--base-eff", "only applies to a surface-lattice base");
        }
        doc["base"]["surface-lattice"]["eff_generators"] = parse_fragment(f.base_eff, "--base-eff");
    }
    int bundle_forms = !f.bundle.empty() + !f.hn.empty() + !f.degrees.empty();
    if (bundle_forms > 1) throw io::DocumentError("--bundle", "give one of --bundle, --hn, --degrees");
    if (!f.bundle.empty()) doc["bundle"] = bundle_from_flag(f.bundle, "--bundle");
    if (!f.hn.empty()) doc["bundle"] = {{"hn", parse_fragment(f.hn, "--hn")}};
    if (!f.degrees.empty()) doc["bundle"] = {{"line-sum", parse_fragment(f.degrees, "--degrees")}};

    json q;
    q["command"] = f.command;
    if (f.k) q["k"] = *f.k;
    if (f.k2) q["k2"] = *f.k2;
    if (f.dim) q["dim"] = *f.dim;
    if (!f.bundle2.empty() && !f.hn2.empty()) throw io::DocumentError("--bundle2", "give one of --bundle2, --hn2");
    if (!f.bundle2.empty()) q["bundle2"] = bundle_from_flag(f.bundle2, "--bundle2");
    if (!f.hn2.empty()) q["bundle2"] = {{"hn", parse_fragment(f.hn2, "--hn2")}};
    if (!f.gens.empty()) q["gens"] = parse_fragment(f.gens, "--gens");
    if (!f.halfspaces.empty()) q["halfspaces"] = parse_fragment(f.halfspaces, "--halfspaces");
    if (!f.vector.empty()) q["vector"] = parse_fragment(f.vector, "--vector");
    if (!f.polarization.empty()) q["polarization"] = parse_fragment(f.polarization, "--polarization");
    if (!f.stages.empty()) {
        q["tower"] = json::array();
        for (const auto& s : f.stages) {
            // "<bundle>;k=<k>"
            const auto semi = s.rfind(";k=");
            if (semi == std::string::npos) throw io::DocumentError("--stage", "expected <bundle>;k=<k>, got '" + s + "'");
            json stage;
            stage["bundle"] = bundle_from_flag(s.substr(0, semi), "--stage");
            stage["k"] = parse_fragment(s.substr(semi + 3), "--stage k");
            q["tower"].push_back(stage);
        }
    }
    doc["query"] = q;
    return doc;
}

inline json load_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw io::DocumentError(path.string(), "cannot open file");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw io::DocumentError(path.string(), std::string("not valid JSON: ") + e.what());
    }
}

struct Outcome {
    int code = kOk;
    std::string out;
    std::string err;
};

inline Outcome run_document(const json& doc, bool as_json, const std::string& command_override = {}) {
    Outcome o;
    try {
        io::InputDocument parsed = io::read_document(doc);
        if (!command_override.empty()) parsed.command = command_override;
        io::Report rep = execute(parsed);
        o.out = as_json ? io::render_json(rep).dump(2) + "\n" : io::render_text(rep);
        if (rep.command == "equality" && !rep.flags.value("coherent", true)) {
            o.err = "consistency failure: base Nef = Eff and Gr(k,E) Nef = Eff disagree\n";
            o.code = kInternal;
        }
    } catch (const PreconditionError& e) {
        o.err = std::string("precondition failed: ") + e.what() + "\n";
        o.code = kPrecondition;
    } catch (const ValidationError& e) {
        o.err = std::string("invalid input: ") + e.what() + "\n";
        o.code = kValidation;
    } catch (const std::exception& e) {
        o.err = std::string("internal error: ") + e.what() + "\n";
        o.code = kInternal;
    }
    return o;
}

inline Outcome run_batch(const std::filesystem::path& dir, bool as_json) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    std::vector<std::future<Outcome>> jobs;
    for (const auto& f : files) {
        jobs.push_back(std::async(std::launch::async, [f, as_json] {
            try {
                return run_document(load_json_file(f), as_json);
            } catch (const ValidationError& e) {
                return Outcome{kValidation, {}, std::string("invalid input: ") + e.what() + "\n"};
            }
        }));
    }
    Outcome total;
    for (std::size_t i = 0; i < files.size(); ++i) {
        Outcome o = jobs[i].get();
        const std::string header = "== " + files[i].filename().string() + " (exit " + std::to_string(o.code) + ")\n";
        total.out += header + o.out;
        if (!o.err.empty()) total.err += files[i].filename().string() + ": " + o.err;
        total.code = std::max(total.code, o.code);
    }
    return total;
}

}  // namespace detail

/**
 * @brief Runs the CLI on @p args (without the program name).
 * @return process exit code
 */
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"grasscone: exact nef and pseudoeffective cones of Grassmann bundles", "grasscone"};
    app.fallthrough();
    detail::FlagValues f;
    bool as_json = false;
    std::string batch;
    app.add_flag("--json", as_json, "machine-readable output");
    app.add_option("--input", f.input, "JSON input document");
    app.add_option("--batch", batch, "process every *.json document in a directory");
    app.add_option("--base", f.base, "curve | builtin:p2 | builtin:blowup-ruled-elliptic | surface-lattice JSON");
    app.add_option("--base-eff", f.base_eff, "effective generators of a surface-lattice base");
    app.add_option("--bundle", f.bundle, "bundle shorthand, e.g. sum:[[1],[1]] or asserted:r=2,d=1");
    app.add_option("--bundle2", f.bundle2, "second bundle (fiber-product)");
    app.add_option("--hn", f.hn, "HN data [[rank, slope], ...]");
    app.add_option("--hn2", f.hn2, "second HN data (fiber-product)");
    app.add_option("--degrees", f.degrees, "degrees of a direct sum of line bundles");
    app.add_option("-k,--k", f.k, "Grassmannian quotient rank");
    app.add_option("--k2", f.k2, "second quotient rank (fiber-product)");
    app.add_option("--stage", f.stages, "tower stage <bundle>;k=<k> (repeatable)");
    app.add_option("--gens", f.gens, "cone generators [[...], ...]");
    app.add_option("--halfspaces", f.halfspaces, "cone halfspaces [[...], ...], each h meaning h.x >= 0");
    app.add_option("--dim", f.dim, "ambient dimension (for empty vector lists)");
    app.add_option("--vector", f.vector, "vector for contains");
    app.add_option("--polarization", f.polarization, "polarization class (defaults to the base's ample class)");
    for (const auto& name : commands()) app.add_subcommand(name, "run " + name)->fallthrough();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "invalid arguments: " << e.what() << "\n";
        return kValidation;
    }
    for (const auto* sub : app.get_subcommands()) f.command = sub->get_name();

    detail::Outcome o;
    try {
        if (!batch.empty()) {
            o = detail::run_batch(batch, as_json);
        } else if (!f.input.empty()) {
            o = detail::run_document(detail::load_json_file(f.input), as_json, f.command);
        } else {
            if (f.command.empty()) throw ValidationError("no subcommand given (see --help)");
            o = detail::run_document(detail::document_from_flags(f), as_json);
        }
    } catch (const ValidationError& e) {
        o = {kValidation, {}, std::string("invalid input: ") + e.what() + "\n"};
    }
    out << o.out;
    err << o.err;
    return o.code;
}

}  // namespace grasscone::cli

#endif  // GRASSCONE_CLI_HPP
