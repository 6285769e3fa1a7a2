#include "qrank/gf.hpp"

#include <algorithm>
#include <numeric>

namespace qrank {

namespace {

// ---- dense polynomial helpers over F_p (little-endian coefficients) ----

using Poly = std::vector<uint64_t>;

void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

// c = a * b
Poly poly_mul(const Poly& a, const Poly& b, uint64_t p) {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) {
            c[i + j] = (c[i + j] + a[i] * b[j]) % p;
        }
    }
    return c;
}

uint64_t inv_mod_p(uint64_t a, uint64_t p) {
    // extended Euclid on machine integers
    int64_t t = 0, newt = 1;
    int64_t r = int64_t(p), newr = int64_t(a % p);
    while (newr != 0) {
        int64_t qq = r / newr;
        int64_t tmp = t - qq * newt;
        t = newt;
        newt = tmp;
        tmp = r - qq * newr;
        r = newr;
        newr = tmp;
    }
    if (r != 1) throw data_error("inv_mod_p: not invertible");
    if (t < 0) t += int64_t(p);
    return uint64_t(t);
}

// a mod f (f monic)
void poly_mod_inplace(Poly& a, const Poly& f, uint64_t p) {
    trim(a);
    size_t df = f.size() - 1;
    while (a.size() > df) {
        uint64_t lead = a.back();
        size_t shift = a.size() - 1 - df;
        if (lead != 0) {
            for (size_t i = 0; i <= df; ++i) {
                uint64_t sub = (lead * f[i]) % p;
                uint64_t& tgt = a[shift + i];
                tgt = (tgt + p * p - sub) % p;  // p*p safe: p <= 2^20 in practice
            }
        }
        a.pop_back();
        trim(a);
        if (a.size() <= df) break;
    }
    trim(a);
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, uint64_t p) {
    Poly c = poly_mul(a, b, p);
    poly_mod_inplace(c, f, p);
    return c;
}

Poly poly_powmod(Poly base, uint64_t exp, const Poly& f, uint64_t p) {
    Poly r{1};
    poly_mod_inplace(base, f, p);
    while (exp > 0) {
        if (exp & 1) r = poly_mulmod(r, base, f, p);
        base = poly_mulmod(base, base, f, p);
        exp >>= 1;
    }
    return r;
}

Poly poly_gcd(Poly a, Poly b, uint64_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        // make b monic
        uint64_t lc = b.back();
        if (lc != 1) {
            uint64_t il = inv_mod_p(lc, p);
            for (auto& c : b) c = (c * il) % p;
        }
        poly_mod_inplace(a, b, p);
        std::swap(a, b);
    }
    return a;
}

// x^(p^k) mod f via k successive p-th powers.
Poly poly_frob_power(const Poly& f, uint64_t p, uint32_t k) {
    Poly t{0, 1};  // x
    poly_mod_inplace(t, f, p);
    for (uint32_t i = 0; i < k; ++i) t = poly_powmod(t, p, f, p);
    return t;
}

std::vector<uint64_t> prime_factors(uint64_t n) {
    std::vector<uint64_t> out;
    for (uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

} // namespace

bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

bool GaloisField::is_irreducible(const std::vector<uint64_t>& f) const {
    if (f.size() < 2 || f.back() != 1) return false;
    uint32_t d = uint32_t(f.size() - 1);
    if (d == 1) return true;
    Poly x{0, 1};
    // x^(p^d) == x mod f
    Poly xq = poly_frob_power(f, p_, d);
    if (xq != x) return false;
    for (uint64_t r : prime_factors(d)) {
        Poly g = poly_frob_power(f, p_, uint32_t(d / r));
        // gcd(g - x, f) must be 1
        Poly diff = g;
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = (diff[1] + p_ - 1) % p_;
        trim(diff);
        Poly gc = poly_gcd(f, diff, p_);
        if (!(gc.size() == 1)) return false;
    }
    return true;
}

std::vector<uint64_t> minimal_irreducible(uint64_t p, uint32_t e) {
    if (e == 1) return {0, 1};  // x
    // Scan candidates x^e + sum a_i x^i by ascending v = sum a_i p^i.
    // A helper field object is not needed; run Rabin's test directly.
    uint64_t bound = 1;
    for (uint32_t i = 0; i < e; ++i) {
        if (bound > (uint64_t(1) << 62) / p) throw data_error("field order too large");
        bound *= p;
    }
    for (uint64_t v = 1; v < bound; ++v) {
        if (v % p == 0) continue;  // constant term zero -> divisible by x
        Poly f(e + 1, 0);
        uint64_t t = v;
        for (uint32_t i = 0; i < e; ++i) {
            f[i] = t % p;
            t /= p;
        }
        f[e] = 1;
        // cheap screen: f(1) != 0 (degree-1 factor x-1)
        uint64_t s = std::accumulate(f.begin(), f.end(), uint64_t(0)) % p;
        if (s == 0) continue;
        // Rabin test
        bool irred = true;
        Poly x{0, 1};
        Poly xq = poly_frob_power(f, p, e);
        if (xq != x) {
            irred = false;
        } else {
            for (uint64_t r : prime_factors(e)) {
                Poly g = poly_frob_power(f, p, uint32_t(e / r));
                Poly diff = g;
                if (diff.size() < 2) diff.resize(2, 0);
                diff[1] = (diff[1] + p - 1) % p;
                trim(diff);
                Poly gc = poly_gcd(f, diff, p);
                if (gc.size() != 1) {
                    irred = false;
                    break;
                }
            }
        }
        if (irred) return f;
    }
    throw data_error("no irreducible polynomial found (unreachable for valid p, e)");
}

GaloisField::Ptr GaloisField::make(uint64_t p, uint32_t e) {
    return build(p, e, minimal_irreducible(p, e), true);
}

GaloisField::Ptr GaloisField::make(uint64_t p, uint32_t e, const std::vector<uint64_t>& modulus) {
    return build(p, e, modulus, false);
}

GaloisField::Ptr GaloisField::build(uint64_t p, uint32_t e, std::vector<uint64_t> modulus,
                                    bool default_modulus) {
    if (!is_prime_u64(p)) throw data_error("field characteristic must be prime, got " + std::to_string(p));
    if (e < 1) throw data_error("field extension degree must be >= 1");
    uint64_t q = 1;
    for (uint32_t i = 0; i < e; ++i) {
        if (q > (uint64_t(1) << 62) / p) throw data_error("field order too large");
        q *= p;
    }
    auto f = std::shared_ptr<GaloisField>(new GaloisField());
    f->p_ = p;
    f->e_ = e;
    f->q_ = q;
    if (modulus.size() != size_t(e) + 1) throw data_error("modulus must have degree e (e+1 coefficients, constant first)");
    for (uint64_t c : modulus) {
        if (c >= p) throw data_error("modulus coefficient out of range");
    }
    if (modulus.back() != 1) throw data_error("modulus must be monic");
    f->modulus_ = std::move(modulus);
    if (!default_modulus && !f->is_irreducible(f->modulus_)) {
        throw data_error("modulus is reducible over F_p");
    }

    f->q1_prime_factors_ = prime_factors(q - 1);

    // find a generator of the multiplicative group using schoolbook arithmetic
    uint64_t g = 0;
    for (uint64_t cand = (q == 2 ? 1 : 2); cand < q; ++cand) {
        bool ok = true;
        for (uint64_t r : f->q1_prime_factors_) {
            if (f->pow_school(cand, (q - 1) / r) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) {
            g = cand;
            break;
        }
    }
    if (g == 0 && q > 2) throw data_error("no multiplicative generator found (internal)");
    if (q == 2) g = 1;
    f->generator_ = g;

    if (q <= kTableLimit) {
        f->log_.assign(q, 0);
        f->antilog_.assign(2 * (q - 1), 0);
        uint64_t acc = 1;
        for (uint64_t i = 0; i < q - 1; ++i) {
            f->antilog_[i] = uint32_t(acc);
            f->log_[acc] = uint32_t(i);
            acc = f->mul_school(acc, g);
        }
        if (acc != 1) throw data_error("generator order mismatch (internal)");
        for (uint64_t i = q - 1; i < 2 * (q - 1); ++i) {
            f->antilog_[i] = f->antilog_[i - (q - 1)];
        }
        if (p != 2) {
            f->neg_table_.assign(q, 0);
            for (uint64_t a = 0; a < q; ++a) f->neg_table_[a] = uint32_t(f->neg_digitwise(a));
            if (q <= 1024) {
                f->add_table_.assign(q * q, 0);
                for (uint64_t a = 0; a < q; ++a) {
                    for (uint64_t b = 0; b < q; ++b) {
                        f->add_table_[a * q + b] = uint16_t(f->add_digitwise(a, b));
                    }
                }
            }
        }
    }
    return f;
}

uint64_t GaloisField::add_digitwise(uint64_t a, uint64_t b) const {
    uint64_t r = 0;
    uint64_t mult = 1;
    for (uint32_t i = 0; i < e_; ++i) {
        uint64_t da = a % p_;
        uint64_t db = b % p_;
        a /= p_;
        b /= p_;
        uint64_t s = da + db;
        if (s >= p_) s -= p_;
        r += s * mult;
        mult *= p_;
    }
    return r;
}

uint64_t GaloisField::neg_digitwise(uint64_t a) const {
    uint64_t r = 0;
    uint64_t mult = 1;
    for (uint32_t i = 0; i < e_; ++i) {
        uint64_t da = a % p_;
        a /= p_;
        r += (da == 0 ? 0 : p_ - da) * mult;
        mult *= p_;
    }
    return r;
}

uint64_t GaloisField::mul_school(uint64_t a, uint64_t b) const {
    if (a == 0 || b == 0) return 0;
    if (p_ == 2 && e_ <= 31) {
        // carry-less multiply and reduce; modulus as bitmask
        uint64_t fm = 0;
        for (uint32_t i = 0; i <= e_; ++i) fm |= (modulus_[i] & 1) << i;
        uint64_t acc = 0;
        uint64_t x = a;
        uint64_t y = b;
        while (y) {
            if (y & 1) acc ^= x;
            y >>= 1;
            x <<= 1;
            if (x >> e_ & 1) x ^= fm;
        }
        return acc;
    }
    Poly pa = digits(a);
    Poly pb = digits(b);
    trim(pa);
    trim(pb);
    Poly c = poly_mul(pa, pb, p_);
    poly_mod_inplace(c, modulus_, p_);
    c.resize(e_, 0);
    return from_digits(c);
}

uint64_t GaloisField::pow_school(uint64_t a, uint64_t exp) const {
    if (a == 0) return exp == 0 ? 1 : 0;
    uint64_t r = 1;
    uint64_t b = a;
    exp %= (q_ - 1);
    while (exp > 0) {
        if (exp & 1) r = mul_school(r, b);
        b = mul_school(b, b);
        exp >>= 1;
    }
    return r;
}

uint64_t GaloisField::inv(uint64_t a) const {
    if (a == 0) throw data_error("division by zero in finite field");
    if (!log_.empty()) return antilog_[(q_ - 1) - log_[a]];
    return pow_school(a, q_ - 2);
}

uint64_t GaloisField::pow(uint64_t a, uint64_t exp) const {
    if (a == 0) return exp == 0 ? 1 : 0;
    if (!log_.empty()) {
        uint64_t l = log_[a];
        uint64_t r = (l * (exp % (q_ - 1))) % (q_ - 1);
        return antilog_[r];
    }
    return pow_school(a, exp);
}

uint64_t GaloisField::pow(uint64_t a, const BigInt& exp) const {
    if (a == 0) return exp == 0 ? 1 : 0;
    BigInt e = exp % (q_ - 1);
    if (e < 0) e += (q_ - 1);
    return pow(a, e.convert_to<uint64_t>());
}

uint64_t GaloisField::frobenius(uint64_t a, uint32_t t) const {
    t %= e_;
    uint64_t r = a;
    for (uint32_t i = 0; i < t; ++i) r = pow(r, p_);
    return r;
}

uint64_t GaloisField::norm_to_subfield(uint64_t a, uint32_t d) const {
    if (d == 0 || e_ % d != 0) throw data_error("norm target is not a subfield (d must divide e)");
    uint64_t pd = 1;
    for (uint32_t i = 0; i < d; ++i) pd *= p_;
    uint64_t exp = (q_ - 1) / (pd - 1);
    return pow(a, exp);
}

uint64_t GaloisField::norm_by_conjugates(uint64_t a, uint32_t d) const {
    if (d == 0 || e_ % d != 0) throw data_error("norm target is not a subfield (d must divide e)");
    uint32_t steps = e_ / d;
    uint64_t r = 1;
    uint64_t c = a;
    for (uint32_t i = 0; i < steps; ++i) {
        r = mul(r, c);
        c = frobenius(c, d);
    }
    return r;
}

bool GaloisField::in_subfield(uint64_t a, uint32_t d) const {
    if (d == 0 || e_ % d != 0) throw data_error("not a subfield (d must divide e)");
    return frobenius(a, d) == a;
}

std::vector<uint64_t> GaloisField::digits(uint64_t a) const {
    std::vector<uint64_t> d(e_);
    for (uint32_t i = 0; i < e_; ++i) {
        d[i] = a % p_;
        a /= p_;
    }
    return d;
}

uint64_t GaloisField::from_digits(const std::vector<uint64_t>& d) const {
    uint64_t a = 0;
    uint64_t mult = 1;
    for (uint32_t i = 0; i < e_; ++i) {
        uint64_t c = i < d.size() ? d[i] : 0;
        if (c >= p_) throw data_error("digit out of range");
        a += c * mult;
        mult *= p_;
    }
    return a;
}

} // namespace qrank
