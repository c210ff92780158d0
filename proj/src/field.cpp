#include "syzygy/field.hpp"

namespace syzygy {

FieldSpec FieldSpec::prime(std::uint64_t p) {
    if (p <= 2 || !is_prime_u64(p))
        throw std::invalid_argument("field: modulus " + std::to_string(p) +
                                    " is not an odd prime");
    return {FieldKind::prime, p};
}

std::string FieldSpec::str() const {
    return kind == FieldKind::rationals ? "rationals" : "prime:" + std::to_string(p);
}

FieldSpec FieldSpec::parse(const std::string& s) {
    if (s == "rationals" || s == "QQ")
        return rationals();
    if (s.rfind("prime:", 0) == 0) {
        std::uint64_t p = std::stoull(s.substr(6));
        return prime(p);
    }
    throw std::invalid_argument("field: cannot parse '" + s + "'");
}

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((unsigned __int128)a * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    // Deterministic Miller-Rabin base set for 64-bit inputs.
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

std::uint64_t random_prime(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
    if (lo < 3 || hi <= lo)
        throw std::invalid_argument("random_prime: bad range");
    std::uniform_int_distribution<std::uint64_t> dist(lo, hi - 1);
    for (int tries = 0; tries < 100000; ++tries) {
        std::uint64_t c = dist(rng) | 1;
        if (c >= lo && c < hi && is_prime_u64(c)) return c;
    }
    throw std::runtime_error("random_prime: no prime found in range");
}

RationalField::Elem RationalField::div(const Elem& a, const Elem& b) const {
    if (sgn(b) == 0) throw std::domain_error("rational division by zero");
    return a / b;
}

RationalField::Elem RationalField::from_string(const std::string& s) const {
    Elem e(s);
    e.canonicalize();
    return e;
}

PrimeField::PrimeField(std::uint64_t p) : p_(p) {
    if (p <= 2 || !is_prime_u64(p))
        throw std::invalid_argument("PrimeField: modulus " + std::to_string(p) +
                                    " is not an odd prime");
    if (p >= (std::uint64_t{1} << 62))
        throw std::invalid_argument("PrimeField: modulus too large (need p < 2^62)");
}

PrimeField::Elem PrimeField::inv(Elem a) const {
    if (a == 0) throw std::domain_error("prime field: inverse of zero");
    // Extended Euclid with signed accumulators.
    std::int64_t t = 0, newt = 1;
    std::int64_t r = static_cast<std::int64_t>(p_), newr = static_cast<std::int64_t>(a);
    while (newr != 0) {
        std::int64_t q = r / newr;
        std::int64_t tmp = t - q * newt;
        t = newt; newt = tmp;
        tmp = r - q * newr;
        r = newr; newr = tmp;
    }
    if (r != 1) throw std::domain_error("prime field: element not invertible");
    if (t < 0) t += static_cast<std::int64_t>(p_);
    return static_cast<Elem>(t);
}

PrimeField::Elem PrimeField::from_int(long v) const {
    long m = v % static_cast<long>(p_);
    if (m < 0) m += static_cast<long>(p_);
    return static_cast<Elem>(m);
}

PrimeField::Elem PrimeField::from_string(const std::string& s) const {
    // Accept arbitrary integers or num/den rationals and reduce mod p.
    auto slash = s.find('/');
    if (slash == std::string::npos) {
        mpz_class z(s);
        mpz_class m = z % static_cast<unsigned long>(p_);
        if (m < 0) m += static_cast<unsigned long>(p_);
        return m.get_ui();
    }
    mpq_class q(s);
    q.canonicalize();
    mpz_class num = q.get_num() % static_cast<unsigned long>(p_);
    if (num < 0) num += static_cast<unsigned long>(p_);
    mpz_class den = q.get_den() % static_cast<unsigned long>(p_);
    return div(num.get_ui(), den.get_ui());
}

}  // namespace syzygy
