#pragma once

#include "qrank/code.hpp"
#include "qrank/constructions.hpp"
#include "qrank/geometry.hpp"
#include "qrank/invariants.hpp"
#include "qrank/qmatroid.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace qrank {

// All interchange structures use nlohmann's map-backed value type: object
// keys serialize in sorted order, so the canonical text form below is
// byte-identical across runs for equal data.  Arbitrary-precision integers
// travel as decimal strings, rationals as "numerator/denominator" strings.
using Json = nlohmann::json;

// Canonical text form: two-space indent, sorted keys, terminating newline.
std::string json_canonical(const Json& j);
// Parse; malformed text raises data_error.
Json json_parse(const std::string& text);

// File helpers; unreadable, unwritable or malformed files raise data_error.
Json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

std::string bigint_to_string(const BigInt& v);
BigInt bigint_from_string(const std::string& s);  // data_error on junk
std::string bigrat_to_string(const BigRat& v);

// Field descriptor: {"p", "e", "modulus"} with the modulus coefficients
// listed constant term first (leading coefficient 1 included).
Json field_to_json(const GaloisField& f);
GaloisField::Ptr field_from_json(const Json& j);

// Tower descriptor: {"base", "top", "embed_root", "pi_basis"}.  The
// embedding root is derived data; a loaded value disagreeing with the
// reconstruction raises data_error.
Json tower_to_json(const FieldTower& t);
FieldTower::Ptr tower_from_json(const Json& j);

// Subspace: {"q", "n", "rows"}.  Rows are canonicalized on load, so
// non-canonical generating rows are accepted; q must be a prime power and
// names the field with the default (minimal-encoding) modulus.
Json subspace_to_json(const Subspace& s);
Subspace subspace_from_json(const Json& j);

// Code: {"tower", "n", "storage"} with either {"codewords"} for explicit
// storage or {"generators", "offset"} for additive storage.
Json code_to_json(const RankMetricCode& c);
RankMetricCode code_from_json(const Json& j);

// Rank table: {"q", "n", "origin", "table"} with one {"subspace", "rank"}
// record per subspace in enumeration order.  Loading requires exactly one
// record per subspace of F_q^n and rebuilds a table-backed oracle.
Json qmatroid_to_json(const QMatroid& m, uint64_t budget = kDefaultEnumerationBudget);
QMatroid qmatroid_from_json(const Json& j);

// Distribution report: {"A", "B", "R", "Rstar", "d", "nonneg", "integral"}.
// R and Rstar are the primal and dual rank censuses; d lists the generalized
// weights d_1..d_k; nonneg reports that neither enumerator has a negative
// coefficient; integral reports that the duality solve returned integers.
Json distributions_to_json(const DistributionsReport& r, const std::vector<uint32_t>& d);

// Semifield: {"q", "m", "left_mult", "identity", "proper_witness"} with one
// flat row-major m x m matrix per element encoding.  Loading revalidates the
// table from scratch; an invalid table or recorded identity/witness fields
// disagreeing with the revalidation raise data_error.
Json semifield_to_json(const SemifieldTable& t);
SemifieldTable semifield_from_json(const Json& j);

// Incidence structure: {"tower", "n", "points", "classes"} with one
// {"direction", "alpha", "members"} record per stored hyperplane.  Loading
// regroups the records and enforces structural well-formedness.
Json geometry_to_json(const Geometry& g);
Geometry geometry_from_json(const Json& j);

} // namespace qrank
