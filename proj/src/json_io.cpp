#include "plab/json_io.hpp"

#include <map>

#include "plab/errors.hpp"

namespace plab {

using nlohmann::json;

namespace {

const json& field(const json& j, const char* name) {
    auto it = j.find(name);
    if (it == j.end()) throw Error(std::string("missing field \"") + name + "\"");
    return *it;
}

std::string str_field(const json& j, const char* name) {
    const json& f = field(j, name);
    if (!f.is_string()) throw Error(std::string("field \"") + name + "\" must be a string");
    return f.get<std::string>();
}

} // namespace

json scalar_to_json(const Scalar& s) { return s.str(); }

Scalar scalar_from_json(const json& j) {
    if (!j.is_string()) throw Error("scalar entries must be strings");
    return Scalar::parse(j.get<std::string>());
}

json vec_to_json(const Vec& v) {
    json arr = json::array();
    for (const Scalar& s : v) arr.push_back(scalar_to_json(s));
    return arr;
}

Vec vec_from_json(const json& j) {
    if (!j.is_array()) throw Error("vector must be an array");
    Vec v;
    v.reserve(j.size());
    for (const json& e : j) v.push_back(scalar_from_json(e));
    return v;
}

json matrix_to_json(const Matrix& m) {
    int n = m.dim();
    json rows = json::array();
    for (int i = 0; i < n; ++i) {
        json row = json::array();
        for (int j = 0; j < n; ++j) row.push_back(scalar_to_json(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return json{{"n", n}, {"entries", std::move(rows)}};
}

Matrix matrix_from_json(const json& j) {
    const json& nj = field(j, "n");
    if (!nj.is_number_integer() || nj.get<long>() < 1)
        throw Error("matrix field \"n\" must be a positive integer");
    int n = nj.get<int>();
    const json& rows = field(j, "entries");
    if (!rows.is_array() || (int)rows.size() != n)
        throw Error("matrix field \"entries\" must be an n-row array");
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) {
        const json& row = rows[(size_t)i];
        if (!row.is_array() || (int)row.size() != n)
            throw Error("matrix row " + std::to_string(i) + " must have n entries");
        for (int c = 0; c < n; ++c) m.at(i, c) = scalar_from_json(row[(size_t)c]);
    }
    return m;
}

json rank_one_to_json(const RankOneOp& op) {
    return json{{"x", vec_to_json(op.x)}, {"f", vec_to_json(op.f)}};
}

RankOneOp rank_one_from_json(const json& j) {
    RankOneOp op;
    op.x = vec_from_json(field(j, "x"));
    op.f = vec_from_json(field(j, "f"));
    if (op.x.size() != op.f.size()) throw Error("rank-one operator: x and f lengths differ");
    return op;
}

json distinguish_to_json(const DistinguishResult& r) {
    json j{{"equal", r.equal}, {"probes", r.probes}};
    j["witness"] = r.witness ? matrix_to_json(*r.witness) : json(nullptr);
    j["kind"] = r.kind ? json(witness_kind_name(*r.kind)) : json(nullptr);
    return j;
}

json canonical_map_to_json(const CanonicalMap& m) {
    json j{{"lambda", scalar_to_json(m.lambda)},
           {"t", matrix_to_json(m.t)},
           {"diamond", diamond_name(m.diamond)},
           {"sigma", sigma_name(m.sigma)}};
    if (m.alpha) j["alpha"] = scalar_to_json(*m.alpha);
    return j;
}

namespace {

Diamond diamond_from_string(const std::string& s) {
    if (s == "id") return Diamond::Identity;
    if (s == "transpose") return Diamond::Transpose;
    throw Error("field \"diamond\" must be \"id\" or \"transpose\", got \"" + s + "\"");
}

Sigma sigma_from_string(const std::string& s) {
    if (s == "id") return Sigma::Id;
    if (s == "conj") return Sigma::Conj;
    throw Error("field \"sigma\" must be \"id\" or \"conj\", got \"" + s + "\"");
}

CorruptionMode corruption_from_string(const std::string& s) {
    if (s == "swap-two-idempotents") return CorruptionMode::SwapTwoIdempotents;
    if (s == "scale-one-output") return CorruptionMode::ScaleOneOutput;
    if (s == "transpose-one-cell") return CorruptionMode::TransposeOneCell;
    throw Error("field \"corruption\" must name one of the three modes, got \"" + s + "\"");
}

} // namespace

CanonicalMap canonical_map_from_json(const json& j) {
    Matrix t = matrix_from_json(field(j, "t"));
    Diamond d = diamond_from_string(str_field(j, "diamond"));
    Sigma s = sigma_from_string(str_field(j, "sigma"));
    if (j.contains("alpha")) {
        Scalar alpha = scalar_from_json(field(j, "alpha"));
        return make_canonical_scaled(alpha, t, d, s);
    }
    Scalar lambda = scalar_from_json(field(j, "lambda"));
    return CanonicalMap{lambda, t, d, s, std::nullopt};
}

MapOracle oracle_from_spec(const json& spec, Rng& rng) {
    std::string kind = str_field(spec, "kind");
    if (kind == "canonical") return make_canonical(canonical_map_from_json(spec));
    if (kind == "corrupted") {
        CanonicalMap base = canonical_map_from_json(spec);
        CorruptionMode mode = corruption_from_string(str_field(spec, "corruption"));
        return make_corrupted(base, mode, rng);
    }
    if (kind == "table") {
        const json& nj = field(spec, "n");
        if (!nj.is_number_integer() || nj.get<long>() < 1)
            throw Error("table oracle field \"n\" must be a positive integer");
        int n = nj.get<int>();
        const json& entries = field(spec, "entries");
        if (!entries.is_array()) throw Error("table oracle field \"entries\" must be an array");
        auto table = std::make_shared<std::map<std::string, Matrix>>();
        for (const json& e : entries) {
            Matrix in = matrix_from_json(field(e, "in"));
            Matrix out = matrix_from_json(field(e, "out"));
            if (in.dim() != n || out.dim() != n)
                throw Error("table oracle entry dimension mismatch");
            (*table)[matrix_to_json(in).dump()] = out;
        }
        MapOracle o;
        o.n = n;
        o.eval = [table](const Matrix& x) {
            auto it = table->find(matrix_to_json(x).dump());
            if (it == table->end())
                throw OracleError("table oracle: input not in table: " + matrix_to_json(x).dump());
            return it->second;
        };
        return o;
    }
    throw Error("field \"kind\" must be \"canonical\", \"corrupted\" or \"table\", got \"" + kind +
                "\"");
}

} // namespace plab
