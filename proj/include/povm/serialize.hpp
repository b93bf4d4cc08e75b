#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "povm/circle_set.hpp"
#include "povm/errors.hpp"
#include "povm/gram.hpp"
#include "povm/hermitian.hpp"
#include "povm/indexing.hpp"
#include "povm/line_povm.hpp"
#include "povm/matrix.hpp"
#include "povm/moments.hpp"
#include "povm/phase_povm.hpp"
#include "povm/real_set.hpp"

namespace povm {

using Json = nlohmann::json;

/// 17 significant digits: enough to round-trip any double exactly.
inline std::string format_real(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return std::string(buf);
}

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    return h;
}

inline std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return std::string(buf);
}

/// Rejects unknown fields so config typos fail loudly instead of being
/// ignored.
inline void check_keys(const Json& obj, const std::vector<std::string>& allowed,
                       const std::string& context) {
    if (!obj.is_object()) throw ConfigError(context + ": expected a JSON object");
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const auto& k : allowed)
            if (item.key() == k) {
                known = true;
                break;
            }
        if (!known) throw ConfigError(context + ": unknown field \"" + item.key() + "\"");
    }
}

inline const Json& require_field(const Json& obj, const std::string& key,
                                 const std::string& context) {
    if (!obj.contains(key)) throw ConfigError(context + ": missing field \"" + key + "\"");
    return obj.at(key);
}

inline double as_double(const Json& j, const std::string& context) {
    if (!j.is_number()) throw ConfigError(context + ": expected a number");
    return j.get<double>();
}

// ---- complex scalars and matrices ----

inline Json complex_to_json(const Complex& c) { return Json::array({c.real(), c.imag()}); }

inline Complex complex_from_json(const Json& j, const std::string& context) {
    if (!j.is_array() || j.size() != 2)
        throw ConfigError(context + ": expected [re, im]");
    return Complex(as_double(j[0], context), as_double(j[1], context));
}

inline Json matrix_to_json(const ComplexMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.dim(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(complex_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return Json{{"dim", m.dim()}, {"rows", std::move(rows)}};
}

inline ComplexMatrix matrix_from_json(const Json& j, const std::string& context = "matrix") {
    check_keys(j, {"dim", "rows"}, context);
    const auto dim = require_field(j, "dim", context).get<std::size_t>();
    const Json& rows = require_field(j, "rows", context);
    if (!rows.is_array() || rows.size() != dim)
        throw ConfigError(context + ": row count does not match dim");
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        if (!rows[i].is_array() || rows[i].size() != dim)
            throw ConfigError(context + ": column count does not match dim");
        for (std::size_t c = 0; c < dim; ++c) m(i, c) = complex_from_json(rows[i][c], context);
    }
    return m;
}

/// row,col,re,im with 17 significant digits.
inline std::string matrix_to_csv(const ComplexMatrix& m) {
    std::string out = "row,col,re,im\n";
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j)
            out += std::to_string(i) + "," + std::to_string(j) + "," +
                   format_real(m(i, j).real()) + "," + format_real(m(i, j).imag()) + "\n";
    return out;
}

// ---- outcome sets ----

inline Json circle_set_to_json(const CircleSet& x) {
    Json arr = Json::array();
    for (const auto& iv : x.intervals()) arr.push_back(Json::array({iv.lo, iv.hi}));
    return Json{{"intervals", std::move(arr)}};
}

inline CircleSet circle_set_from_json(const Json& j, const std::string& context = "circle set") {
    check_keys(j, {"intervals"}, context);
    const Json& arr = require_field(j, "intervals", context);
    if (!arr.is_array()) throw ConfigError(context + ": intervals must be an array");
    std::vector<std::pair<double, double>> raw;
    for (const auto& iv : arr) {
        if (!iv.is_array() || iv.size() != 2)
            throw ConfigError(context + ": each interval is [lo, hi]");
        raw.emplace_back(as_double(iv[0], context), as_double(iv[1], context));
    }
    try {
        return normalize(raw);
    } catch (const RangeError& e) {
        throw ConfigError(context + ": " + e.what());
    }
}

inline Json real_set_to_json(const RealSet& x) {
    Json arr = Json::array();
    for (const auto& iv : x.intervals()) arr.push_back(Json::array({iv.lo, iv.hi}));
    return Json{{"intervals", std::move(arr)}};
}

inline RealSet real_set_from_json(const Json& j, const std::string& context = "real set") {
    check_keys(j, {"intervals"}, context);
    const Json& arr = require_field(j, "intervals", context);
    if (!arr.is_array()) throw ConfigError(context + ": intervals must be an array");
    std::vector<std::pair<double, double>> raw;
    for (const auto& iv : arr) {
        if (!iv.is_array() || iv.size() != 2)
            throw ConfigError(context + ": each interval is [lo, hi]");
        raw.emplace_back(as_double(iv[0], context), as_double(iv[1], context));
    }
    try {
        return RealSet::from_intervals(raw);
    } catch (const RangeError& e) {
        throw ConfigError(context + ": " + e.what());
    }
}

// ---- index schemes and generators ----

inline Json indexing_to_json(const Indexing& idx) {
    if (idx.kind() == Indexing::Kind::nat)
        return Json{{"kind", "nat"}, {"dim", idx.dim()}};
    return Json{{"kind", "int"}, {"order", (static_cast<long>(idx.dim()) - 1) / 2}};
}

inline Indexing indexing_from_json(const Json& j, const std::string& context = "indexing") {
    if (!j.is_object()) throw ConfigError(context + ": expected a JSON object");
    const std::string kind = require_field(j, "kind", context).get<std::string>();
    try {
        if (kind == "nat") {
            check_keys(j, {"kind", "dim"}, context);
            return Indexing::nat_truncated(require_field(j, "dim", context).get<long>());
        }
        if (kind == "int") {
            check_keys(j, {"kind", "order"}, context);
            return Indexing::int_truncated(require_field(j, "order", context).get<long>());
        }
    } catch (const RangeError& e) {
        throw ConfigError(context + ": " + e.what());
    }
    throw ConfigError(context + ": kind must be \"nat\" or \"int\"");
}

inline Json generator_to_json(const GeneratorSpec& spec) {
    return std::visit(
        [](const auto& s) -> Json {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, ConstantGenerators>) {
                return Json{{"kind", "constant"}};
            } else if constexpr (std::is_same_v<T, OrthogonalGenerators>) {
                return Json{{"kind", "orthogonal"}};
            } else if constexpr (std::is_same_v<T, ExplicitGram>) {
                return Json{{"kind", "gram"}, {"matrix", matrix_to_json(s.matrix)}};
            } else if constexpr (std::is_same_v<T, ExplicitVectors>) {
                Json vecs = Json::array();
                for (const auto& v : s.vectors) {
                    Json row = Json::array();
                    for (const auto& c : v) row.push_back(complex_to_json(c));
                    vecs.push_back(std::move(row));
                }
                return Json{{"kind", "vectors"}, {"vectors", std::move(vecs)}};
            } else {
                static_assert(std::is_same_v<T, RandomSeeded>);
                return Json{{"kind", "random"}, {"seed", s.seed}, {"blend", s.blend}};
            }
        },
        spec);
}

inline GeneratorSpec generator_from_json(const Json& j,
                                         const std::string& context = "generator") {
    if (!j.is_object()) throw ConfigError(context + ": expected a JSON object");
    const std::string kind = require_field(j, "kind", context).get<std::string>();
    if (kind == "constant") {
        check_keys(j, {"kind"}, context);
        return ConstantGenerators{};
    }
    if (kind == "orthogonal") {
        check_keys(j, {"kind"}, context);
        return OrthogonalGenerators{};
    }
    if (kind == "gram") {
        check_keys(j, {"kind", "matrix"}, context);
        return ExplicitGram{matrix_from_json(require_field(j, "matrix", context), context)};
    }
    if (kind == "vectors") {
        check_keys(j, {"kind", "vectors"}, context);
        const Json& vecs = require_field(j, "vectors", context);
        if (!vecs.is_array()) throw ConfigError(context + ": vectors must be an array");
        ExplicitVectors ev;
        for (const auto& row : vecs) {
            if (!row.is_array()) throw ConfigError(context + ": each vector is an array");
            std::vector<Complex> v;
            for (const auto& c : row) v.push_back(complex_from_json(c, context));
            ev.vectors.push_back(std::move(v));
        }
        return ev;
    }
    if (kind == "random") {
        check_keys(j, {"kind", "seed", "blend"}, context);
        RandomSeeded rs;
        rs.seed = require_field(j, "seed", context).get<std::uint64_t>();
        rs.blend = as_double(require_field(j, "blend", context), context);
        return rs;
    }
    throw ConfigError(context + ": unknown generator kind \"" + kind + "\"");
}

// ---- line module ----

inline Json grid_to_json(const LineGrid& g) {
    return Json{{"n_points", g.n_points()}, {"spacing", g.spacing()}};
}

inline LineGrid grid_from_json(const Json& j, const std::string& context = "grid") {
    check_keys(j, {"n_points", "spacing"}, context);
    try {
        return LineGrid(require_field(j, "n_points", context).get<std::size_t>(),
                        as_double(require_field(j, "spacing", context), context));
    } catch (const RangeError& e) {
        throw ConfigError(context + ": " + e.what());
    }
}

inline Json density_to_json(const DensityProfile& f) {
    switch (f.kind()) {
        case DensityProfile::Kind::uniform:
            return Json{{"kind", "uniform"}, {"half_width", f.parameter()},
                        {"center", f.center()}};
        case DensityProfile::Kind::gaussian:
            return Json{{"kind", "gaussian"}, {"sigma", f.parameter()}, {"center", f.center()}};
        case DensityProfile::Kind::delta:
            return Json{{"kind", "delta"}, {"center", f.center()}};
        case DensityProfile::Kind::table:
            return Json{{"kind", "table"}, {"samples", f.table()}};
    }
    return Json{};
}

inline DensityProfile density_from_json(const Json& j, const LineGrid& grid,
                                        const std::string& context = "density") {
    if (!j.is_object()) throw ConfigError(context + ": expected a JSON object");
    const std::string kind = require_field(j, "kind", context).get<std::string>();
    try {
        if (kind == "uniform") {
            check_keys(j, {"kind", "half_width", "center"}, context);
            const double c = j.contains("center") ? as_double(j["center"], context) : 0.0;
            return DensityProfile::uniform(
                grid, as_double(require_field(j, "half_width", context), context), c);
        }
        if (kind == "gaussian") {
            check_keys(j, {"kind", "sigma", "center"}, context);
            const double c = j.contains("center") ? as_double(j["center"], context) : 0.0;
            return DensityProfile::gaussian(
                grid, as_double(require_field(j, "sigma", context), context), c);
        }
        if (kind == "delta") {
            check_keys(j, {"kind", "center"}, context);
            const double c = j.contains("center") ? as_double(j["center"], context) : 0.0;
            return DensityProfile::delta(grid, c);
        }
        if (kind == "table") {
            check_keys(j, {"kind", "samples"}, context);
            const Json& arr = require_field(j, "samples", context);
            if (!arr.is_array()) throw ConfigError(context + ": samples must be an array");
            std::vector<double> samples;
            for (const auto& v : arr) samples.push_back(as_double(v, context));
            return DensityProfile::from_table(grid, std::move(samples));
        }
    } catch (const Error& e) {
        if (dynamic_cast<const ConfigError*>(&e)) throw;
        throw ConfigError(context + ": " + e.what());
    }
    throw ConfigError(context + ": unknown density kind \"" + kind + "\"");
}

// ---- states ----

inline Json state_to_json(const StateVector& phi) {
    Json arr = Json::array();
    for (const auto& c : phi.amplitudes()) arr.push_back(complex_to_json(c));
    return Json{{"amplitudes", std::move(arr)}};
}

inline StateVector state_from_json(const Json& j, const std::string& context = "state") {
    check_keys(j, {"amplitudes"}, context);
    const Json& arr = require_field(j, "amplitudes", context);
    if (!arr.is_array()) throw ConfigError(context + ": amplitudes must be an array");
    std::vector<Complex> amp;
    for (const auto& c : arr) amp.push_back(complex_from_json(c, context));
    try {
        return StateVector(std::move(amp));
    } catch (const ValidationError& e) {
        throw ConfigError(context + ": " + e.what());
    }
}

// ---- reports ----

/// Long-format CSV of moment operator entries: k,n,m,re,im with index
/// labels, 17 significant digits.
inline std::string moment_report_csv(const PhasePovm& p, int max_k) {
    std::string out = "k,n,m,re,im\n";
    for (int k = 1; k <= max_k; ++k) {
        const HermitianOperator f = moment_operator(p, k);
        for (std::size_t i = 0; i < p.dim(); ++i)
            for (std::size_t j = 0; j < p.dim(); ++j)
                out += std::to_string(k) + "," + std::to_string(p.indexing().label(i)) + "," +
                       std::to_string(p.indexing().label(j)) + "," +
                       format_real(f.entry(i, j).real()) + "," +
                       format_real(f.entry(i, j).imag()) + "\n";
    }
    return out;
}

inline Json coefficient_table_to_json(const MomentCoefficientTable& table) {
    Json rows = Json::array();
    for (int k = 0; k <= table.max_k(); ++k) {
        Json row = Json::array();
        for (int d = -table.max_abs_d(); d <= table.max_abs_d(); ++d)
            row.push_back(complex_to_json(table.coefficient(k, d)));
        rows.push_back(std::move(row));
    }
    return Json{{"max_k", table.max_k()},
                {"max_abs_d", table.max_abs_d()},
                {"coefficients", std::move(rows)}};
}

}  // namespace povm
