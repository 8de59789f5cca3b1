#pragma once

#include <json.hpp>

#include "plab/equality.hpp"
#include "plab/reconstruct.hpp"

namespace plab {

// Matrix wire format: {"n": int, "entries": [[entry string, ...], ...]},
// square only, entries in the canonical Scalar text form. Round-trips
// bit-exactly because both sides go through exact rationals.

nlohmann::json scalar_to_json(const Scalar& s);
Scalar scalar_from_json(const nlohmann::json& j);

nlohmann::json vec_to_json(const Vec& v);
Vec vec_from_json(const nlohmann::json& j);

nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);

nlohmann::json rank_one_to_json(const RankOneOp& op);
RankOneOp rank_one_from_json(const nlohmann::json& j);

nlohmann::json distinguish_to_json(const DistinguishResult& r);

nlohmann::json canonical_map_to_json(const CanonicalMap& m);
CanonicalMap canonical_map_from_json(const nlohmann::json& j);

/// Build an oracle from a spec object:
///   {"kind": "canonical",  "lambda": "...", "t": Matrix,
///    "diamond": "id"|"transpose", "sigma": "id"|"conj"}
///   + optional "alpha" (scaled factory; lambda is then derived, not read)
///   {"kind": "corrupted", ...canonical fields..., "corruption":
///    "swap-two-idempotents"|"scale-one-output"|"transpose-one-cell"}
///   {"kind": "table", "n": int, "entries": [{"in": Matrix, "out": Matrix}]}
/// Table oracles throw OracleError on a lookup miss. Malformed specs throw
/// Error with a message naming the offending field.
MapOracle oracle_from_spec(const nlohmann::json& spec, Rng& rng);

} // namespace plab
