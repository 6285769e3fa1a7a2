#include "qrank/json_io.hpp"

#include "qrank/errors.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <fstream>
#include <sstream>

namespace qrank {

namespace {

[[noreturn]] void malformed(const std::string& what) { throw data_error(what); }

const Json& member(const Json& j, const char* key) {
    if (!j.is_object()) malformed("expected a JSON object carrying '" + std::string(key) + "'");
    auto it = j.find(key);
    if (it == j.end()) malformed("missing key '" + std::string(key) + "'");
    return *it;
}

uint64_t get_u64(const Json& j, const char* what) {
    if (j.is_number_unsigned()) return j.get<uint64_t>();
    if (j.is_number_integer()) {
        int64_t v = j.get<int64_t>();
        if (v >= 0) return uint64_t(v);
    }
    malformed(std::string(what) + " must be a non-negative integer");
}

uint32_t get_u32(const Json& j, const char* what) {
    uint64_t v = get_u64(j, what);
    if (v > 0xffffffffull) malformed(std::string(what) + " is out of range");
    return uint32_t(v);
}

std::string get_string(const Json& j, const char* what) {
    if (!j.is_string()) malformed(std::string(what) + " must be a string");
    return j.get<std::string>();
}

std::vector<uint64_t> get_u64_vec(const Json& j, const char* what) {
    if (!j.is_array()) malformed(std::string(what) + " must be an array of integers");
    std::vector<uint64_t> out;
    out.reserve(j.size());
    for (const auto& e : j) out.push_back(get_u64(e, what));
    return out;
}

std::vector<std::vector<uint64_t>> get_matrix(const Json& j, const char* what) {
    if (!j.is_array()) malformed(std::string(what) + " must be an array of rows");
    std::vector<std::vector<uint64_t>> out;
    out.reserve(j.size());
    for (const auto& e : j) out.push_back(get_u64_vec(e, what));
    return out;
}

// q = p^e for the smallest prime p dividing q; malformed otherwise.
std::pair<uint64_t, uint32_t> prime_power(uint64_t q, const char* what) {
    if (q < 2) malformed(std::string(what) + " must be a prime power >= 2");
    uint64_t p = q;
    for (uint64_t d = 2; d * d <= q; ++d) {
        if (q % d == 0) {
            p = d;
            break;
        }
    }
    uint32_t e = 0;
    uint64_t v = q;
    while (v > 1) {
        if (v % p != 0) malformed(std::string(what) + " is not a prime power");
        v /= p;
        ++e;
    }
    return {p, e};
}

GaloisField::Ptr field_of_order(uint64_t q, const char* what) {
    auto [p, e] = prime_power(q, what);
    return GaloisField::make(p, e);
}

} // namespace

std::string json_canonical(const Json& j) { return j.dump(2) + "\n"; }

Json json_parse(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::exception& e) {
        malformed(std::string("invalid JSON: ") + e.what());
    }
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) malformed("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return json_parse(buf.str());
}

void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) malformed("cannot write '" + path + "'");
    out << json_canonical(j);
    if (!out) malformed("failed writing '" + path + "'");
}

std::string bigint_to_string(const BigInt& v) { return v.str(); }

BigInt bigint_from_string(const std::string& s) {
    if (s.empty()) malformed("empty integer literal");
    size_t start = (s[0] == '-') ? 1 : 0;
    if (start == s.size()) malformed("invalid integer literal '" + s + "'");
    for (size_t i = start; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9') malformed("invalid integer literal '" + s + "'");
    return BigInt(s);
}

std::string bigrat_to_string(const BigRat& v) {
    return boost::multiprecision::numerator(v).str() + "/" +
           boost::multiprecision::denominator(v).str();
}

// ---------------------------------------------------------------------------
// Fields and towers
// ---------------------------------------------------------------------------

Json field_to_json(const GaloisField& f) {
    Json j;
    j["p"] = f.p();
    j["e"] = f.degree();
    j["modulus"] = f.modulus();
    return j;
}

GaloisField::Ptr field_from_json(const Json& j) {
    uint64_t p = get_u64(member(j, "p"), "field characteristic");
    uint32_t e = get_u32(member(j, "e"), "field degree");
    auto modulus = get_u64_vec(member(j, "modulus"), "field modulus");
    if (modulus.size() != size_t(e) + 1) malformed("field modulus must list e + 1 coefficients");
    return GaloisField::make(p, e, modulus);
}

Json tower_to_json(const FieldTower& t) {
    Json j;
    j["base"] = field_to_json(*t.base());
    j["top"] = field_to_json(*t.top());
    j["embed_root"] = t.embed_root();
    j["pi_basis"] = t.pi_basis();
    return j;
}

FieldTower::Ptr tower_from_json(const Json& j) {
    auto base = field_from_json(member(j, "base"));
    auto top = field_from_json(member(j, "top"));
    auto pi = get_u64_vec(member(j, "pi_basis"), "pi basis");
    auto tower = FieldTower::make(base, top, pi);
    uint64_t root = get_u64(member(j, "embed_root"), "embedding root");
    if (tower->embed_root() != root)
        malformed("recorded embedding root disagrees with the reconstructed tower");
    return tower;
}

// ---------------------------------------------------------------------------
// Subspaces
// ---------------------------------------------------------------------------

Json subspace_to_json(const Subspace& s) {
    Json j;
    j["q"] = s.field()->order();
    j["n"] = s.n();
    j["rows"] = s.rows();
    return j;
}

Subspace subspace_from_json(const Json& j) {
    auto f = field_of_order(get_u64(member(j, "q"), "subspace field order"), "subspace field order");
    uint32_t n = get_u32(member(j, "n"), "subspace ambient dimension");
    auto rows = get_matrix(member(j, "rows"), "subspace rows");
    return Subspace::from_rows(f, n, rows);
}

// ---------------------------------------------------------------------------
// Codes
// ---------------------------------------------------------------------------

Json code_to_json(const RankMetricCode& c) {
    Json j;
    j["tower"] = tower_to_json(*c.tower());
    j["n"] = c.n();
    if (c.additive_storage()) {
        j["storage"] = "additive";
        j["generators"] = c.generators();
        j["offset"] = c.offset();
    } else {
        j["storage"] = "explicit";
        j["codewords"] = c.words();
    }
    return j;
}

RankMetricCode code_from_json(const Json& j) {
    auto tower = tower_from_json(member(j, "tower"));
    uint32_t n = get_u32(member(j, "n"), "code length");
    std::string storage = get_string(member(j, "storage"), "storage kind");
    if (storage == "explicit") {
        auto words = get_matrix(member(j, "codewords"), "codewords");
        return RankMetricCode::from_words(tower, n, std::move(words));
    }
    if (storage == "additive") {
        auto gens = get_matrix(member(j, "generators"), "generators");
        auto offset = get_u64_vec(member(j, "offset"), "offset");
        return RankMetricCode::from_generators(tower, n, std::move(gens), std::move(offset));
    }
    malformed("unknown storage kind '" + storage + "'");
}

// ---------------------------------------------------------------------------
// Rank tables
// ---------------------------------------------------------------------------

Json qmatroid_to_json(const QMatroid& m, uint64_t budget) {
    Json j;
    j["q"] = m.q();
    j["n"] = m.n();
    j["origin"] = m.origin();
    Json table = Json::array();
    for_each_subspace(m.field(), m.n(), {}, budget, [&](const Subspace& V) {
        Json rec;
        rec["subspace"] = V.rows();
        rec["rank"] = m.rank(V);
        table.push_back(std::move(rec));
    });
    j["table"] = std::move(table);
    return j;
}

QMatroid qmatroid_from_json(const Json& j) {
    auto f = field_of_order(get_u64(member(j, "q"), "rank-table field order"),
                            "rank-table field order");
    uint32_t n = get_u32(member(j, "n"), "rank-table ambient dimension");
    std::string origin = get_string(member(j, "origin"), "rank-table origin");
    const Json& table = member(j, "table");
    if (!table.is_array()) malformed("rank table must be an array of records");

    QMatroid::Table ranks;
    ranks.reserve(table.size());
    for (const auto& rec : table) {
        auto rows = get_matrix(member(rec, "subspace"), "rank-table subspace");
        uint32_t r = get_u32(member(rec, "rank"), "rank value");
        if (r > n) malformed("rank value exceeds the ambient dimension");
        auto S = Subspace::from_rows(f, n, rows);
        if (!ranks.emplace(std::move(S), r).second)
            malformed("rank table lists a subspace twice");
    }
    BigInt expect = 0;
    for (uint32_t d = 0; d <= n; ++d) expect += gaussian_binomial(n, d, BigInt(f->order()));
    if (BigInt(uint64_t(ranks.size())) != expect)
        malformed("rank table does not cover every subspace exactly once");
    return QMatroid::from_table(f, n, std::move(ranks), std::move(origin));
}

// ---------------------------------------------------------------------------
// Distribution reports
// ---------------------------------------------------------------------------

Json distributions_to_json(const DistributionsReport& r, const std::vector<uint32_t>& d) {
    auto strings = [](const std::vector<BigInt>& v) {
        Json a = Json::array();
        for (const auto& x : v) a.push_back(bigint_to_string(x));
        return a;
    };
    auto census = [&](const RankCounts& c) {
        Json a = Json::array();
        for (const auto& row : c) a.push_back(strings(row));
        return a;
    };
    bool integral = true;
    for (const auto& x : r.B_from_A)
        if (boost::multiprecision::denominator(x) != 1) integral = false;
    Json j;
    j["A"] = strings(r.A);
    j["B"] = strings(r.B);
    j["R"] = census(r.counts);
    j["Rstar"] = census(r.dual_counts);
    j["d"] = d;
    j["nonneg"] = !r.negative_A && !r.negative_B;
    j["integral"] = integral;
    return j;
}

// ---------------------------------------------------------------------------
// Semifields
// ---------------------------------------------------------------------------

Json semifield_to_json(const SemifieldTable& t) {
    Json j;
    j["q"] = t.q;
    j["m"] = t.m;
    j["identity"] = t.identity;
    if (t.proper_witness) {
        const auto& w = *t.proper_witness;
        j["proper_witness"] = Json::array({w[0], w[1], w[2]});
    } else {
        j["proper_witness"] = nullptr;
    }
    Json mats = Json::array();
    for (const auto& L : semifield_left_mult_matrices(t)) {
        Json flat = Json::array();
        for (size_t r = 0; r < L.rows(); ++r)
            for (uint64_t e : L.row(r)) flat.push_back(e);
        mats.push_back(std::move(flat));
    }
    j["left_mult"] = std::move(mats);
    return j;
}

SemifieldTable semifield_from_json(const Json& j) {
    uint64_t q = get_u64(member(j, "q"), "semifield characteristic");
    uint32_t m = get_u32(member(j, "m"), "semifield degree");
    uint64_t identity = get_u64(member(j, "identity"), "semifield identity");
    const Json& mats = member(j, "left_mult");
    if (!mats.is_array()) malformed("left_mult must be an array of flat matrices");
    auto f = GaloisField::make(q, 1);
    std::vector<FqMatrix> left;
    left.reserve(mats.size());
    for (const auto& entry : mats) {
        auto flat = get_u64_vec(entry, "left-multiplication matrix");
        if (flat.size() != size_t(m) * m)
            malformed("left-multiplication matrix must hold m x m entries");
        std::vector<std::vector<uint64_t>> rows(m);
        for (uint32_t r = 0; r < m; ++r)
            rows[r].assign(flat.begin() + size_t(r) * m, flat.begin() + size_t(r + 1) * m);
        left.push_back(FqMatrix::from_rows(f, rows, m));
    }
    auto table = semifield_from_left_mult(q, m, left, identity);

    auto cert = semifield_validate(table);
    if (!cert.valid) malformed("stored table is not a semifield: " + cert.failure);
    if (cert.identity != identity)
        malformed("recorded identity disagrees with the revalidated table");
    const Json& wit = member(j, "proper_witness");
    if (wit.is_null()) {
        if (cert.witness) malformed("table is proper but no witness is recorded");
    } else {
        auto w = get_u64_vec(wit, "properness witness");
        if (w.size() != 3) malformed("properness witness must list three elements");
        if (!cert.witness || (*cert.witness)[0] != w[0] || (*cert.witness)[1] != w[1] ||
            (*cert.witness)[2] != w[2])
            malformed("recorded properness witness disagrees with the revalidated table");
    }
    return table;
}

// ---------------------------------------------------------------------------
// Incidence structures
// ---------------------------------------------------------------------------

Json geometry_to_json(const Geometry& g) {
    Json j;
    j["tower"] = tower_to_json(*g.tower);
    j["n"] = g.n;
    j["points"] = g.points;
    Json classes = Json::array();
    for (size_t d = 0; d < g.directions.size(); ++d) {
        for (const auto& h : g.classes[d]) {
            Json rec;
            rec["direction"] = g.directions[d];
            rec["alpha"] = h.alpha;
            rec["members"] = h.members;
            classes.push_back(std::move(rec));
        }
    }
    j["classes"] = std::move(classes);
    return j;
}

Geometry geometry_from_json(const Json& j) {
    Geometry g;
    g.tower = tower_from_json(member(j, "tower"));
    g.n = get_u32(member(j, "n"), "geometry ambient dimension");
    g.points = get_matrix(member(j, "points"), "geometry points");
    const Json& classes = member(j, "classes");
    if (!classes.is_array()) malformed("classes must be an array of hyperplane records");

    std::map<std::vector<uint64_t>, std::vector<GeometryHyperplane>> grouped;
    for (const auto& rec : classes) {
        auto dir = get_u64_vec(member(rec, "direction"), "hyperplane direction");
        GeometryHyperplane h;
        h.alpha = get_u64(member(rec, "alpha"), "hyperplane label");
        auto members = get_u64_vec(member(rec, "members"), "hyperplane members");
        h.members.reserve(members.size());
        for (uint64_t id : members) {
            if (id > 0xffffffffull) malformed("hyperplane member id is out of range");
            h.members.push_back(uint32_t(id));
        }
        grouped[std::move(dir)].push_back(std::move(h));
    }
    for (auto& [dir, cls] : grouped) {
        std::sort(cls.begin(), cls.end(),
                  [](const GeometryHyperplane& a, const GeometryHyperplane& b) {
                      return a.alpha < b.alpha;
                  });
        g.directions.push_back(dir);
        g.classes.push_back(std::move(cls));
    }
    validate_geometry_structure(g);
    return g;
}

} // namespace qrank
