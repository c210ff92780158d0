#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace syzygy {

enum class FieldKind { rationals, prime };

// Runtime description of the coefficient field. Every matrix and module
// carries one; mixed-field operations are rejected.
struct FieldSpec {
    FieldKind kind = FieldKind::rationals;
    std::uint64_t p = 0;  // modulus, 0 when kind == rationals

    static FieldSpec rationals() { return {FieldKind::rationals, 0}; }
    static FieldSpec prime(std::uint64_t p);

    std::string str() const;
    static FieldSpec parse(const std::string& s);

    bool operator==(const FieldSpec& o) const { return kind == o.kind && p == o.p; }
    bool operator!=(const FieldSpec& o) const { return !(*this == o); }
};

bool is_prime_u64(std::uint64_t n);

// Random prime in [lo, hi), deterministic for a fixed generator state.
std::uint64_t random_prime(std::mt19937_64& rng,
                           std::uint64_t lo = (std::uint64_t{1} << 30),
                           std::uint64_t hi = (std::uint64_t{1} << 31));

// Arithmetic policies. SparseMatrix and friends are templated on one of
// these; both expose the same surface so the elimination code is shared.

struct RationalField {
    using Elem = mpq_class;

    FieldSpec spec() const { return FieldSpec::rationals(); }

    Elem zero() const { return Elem(0); }
    Elem one() const { return Elem(1); }
    bool is_zero(const Elem& a) const { return sgn(a) == 0; }
    bool eq(const Elem& a, const Elem& b) const { return cmp(a, b) == 0; }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem div(const Elem& a, const Elem& b) const;
    Elem neg(const Elem& a) const { return -a; }
    Elem from_int(long v) const { return Elem(v); }
    Elem from_string(const std::string& s) const;
    std::string to_string(const Elem& a) const { return a.get_str(); }

    bool operator==(const RationalField&) const { return true; }
};

class PrimeField {
public:
    using Elem = std::uint64_t;

    explicit PrimeField(std::uint64_t p);

    std::uint64_t modulus() const { return p_; }
    FieldSpec spec() const { return FieldSpec::prime(p_); }

    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    bool is_zero(Elem a) const { return a == 0; }
    bool eq(Elem a, Elem b) const { return a == b; }
    Elem add(Elem a, Elem b) const {
        Elem s = a + b;
        return s >= p_ || s < a ? s - p_ : s;
    }
    Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + (p_ - b); }
    Elem mul(Elem a, Elem b) const {
        return static_cast<Elem>((unsigned __int128)a * b % p_);
    }
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
    Elem from_int(long v) const;
    Elem from_string(const std::string& s) const;
    std::string to_string(Elem a) const { return std::to_string(a); }

    bool operator==(const PrimeField& o) const { return p_ == o.p_; }

private:
    std::uint64_t p_;
};

}  // namespace syzygy
