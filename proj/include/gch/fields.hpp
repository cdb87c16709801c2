#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "gch/errors.hpp"

namespace gch {

/// Arbitrary-precision rationals. No floating point is used anywhere.
struct RationalField {
    using Elem = mpq_class;

    static Elem zero() { return Elem(0); }
    static Elem one() { return Elem(1); }
    static Elem from_int(long v) { return Elem(v); }
    static bool is_zero(const Elem& e) { return sgn(e) == 0; }
    static bool is_one(const Elem& e) { return e == 1; }
    static bool is_unit_value(const Elem& e) { return e == 1 || e == -1; }
    static Elem neg(const Elem& e) { return -e; }
    static Elem add(const Elem& a, const Elem& b) { return a + b; }
    static Elem sub(const Elem& a, const Elem& b) { return a - b; }
    static Elem mul(const Elem& a, const Elem& b) { return a * b; }
    static Elem div(const Elem& a, const Elem& b) { return a / b; }
    static std::string to_string(const Elem& e) { return e.get_str(); }
    std::string name() const { return "q"; }
};

inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull}) {
        if (n % d == 0) return n == d;
    }
    // deterministic Miller-Rabin for 64-bit input
    auto mulmod = [](std::uint64_t a, std::uint64_t b, std::uint64_t m) {
        return static_cast<std::uint64_t>((__uint128_t)a * b % m);
    };
    auto powmod = [&](std::uint64_t a, std::uint64_t e, std::uint64_t m) {
        std::uint64_t r = 1;
        a %= m;
        while (e) {
            if (e & 1) r = mulmod(r, a, m);
            a = mulmod(a, a, m);
            e >>= 1;
        }
        return r;
    };
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (a % n == 0) continue;
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

/// The finite field F_p for a word-sized prime p.
struct PrimeField {
    using Elem = std::uint64_t;
    std::uint64_t p;

    explicit PrimeField(std::uint64_t prime) : p(prime) {
        if (!is_prime_u64(prime)) throw InputError("field characteristic " + std::to_string(prime) + " is not prime");
    }
    Elem zero() const { return 0; }
    Elem one() const { return 1 % p; }
    Elem from_int(long v) const {
        long long r = v % static_cast<long long>(p);
        if (r < 0) r += p;
        return static_cast<Elem>(r);
    }
    static bool is_zero(const Elem& e) { return e == 0; }
    bool is_one(const Elem& e) const { return e == 1 % p; }
    bool is_unit_value(const Elem&) const { return true; }
    Elem neg(const Elem& a) const { return a == 0 ? 0 : p - a; }
    Elem add(const Elem& a, const Elem& b) const {
        Elem s = a + b;
        return s >= p ? s - p : s;
    }
    Elem sub(const Elem& a, const Elem& b) const { return add(a, neg(b)); }
    Elem mul(const Elem& a, const Elem& b) const {
        return static_cast<Elem>((__uint128_t)a * b % p);
    }
    Elem inv(const Elem& a) const {
        if (a == 0) throw Error("division by zero in F_p");
        // extended Euclid
        long long t = 0, nt = 1;
        long long r = static_cast<long long>(p), nr = static_cast<long long>(a);
        while (nr != 0) {
            long long q = r / nr;
            long long tmp = t - q * nt; t = nt; nt = tmp;
            tmp = r - q * nr; r = nr; nr = tmp;
        }
        if (t < 0) t += static_cast<long long>(p);
        return static_cast<Elem>(t);
    }
    Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }
    static std::string to_string(const Elem& e) { return std::to_string(e); }
    std::string name() const { return "fp:" + std::to_string(p); }
};

/// Runtime selector for the coefficient system of a computation.
struct FieldSpec {
    enum class Kind { rationals, prime, integers };
    Kind kind = Kind::rationals;
    std::uint64_t p = 0;

    static FieldSpec rationals() { return FieldSpec{Kind::rationals, 0}; }
    static FieldSpec prime(std::uint64_t p) {
        if (!is_prime_u64(p)) throw InputError("field characteristic " + std::to_string(p) + " is not prime");
        return FieldSpec{Kind::prime, p};
    }
    static FieldSpec integers() { return FieldSpec{Kind::integers, 0}; }

    /// Accepts "q", "fp:P", "z".
    static FieldSpec parse(const std::string& s) {
        if (s == "q") return rationals();
        if (s == "z") return integers();
        if (s.rfind("fp:", 0) == 0) {
            try {
                return prime(std::stoull(s.substr(3)));
            } catch (const std::logic_error&) {
                throw InputError("bad prime in field spec '" + s + "'");
            }
        }
        throw InputError("unknown field spec '" + s + "' (expected q, fp:P, or z)");
    }
    std::string to_string() const {
        switch (kind) {
            case Kind::rationals: return "q";
            case Kind::prime: return "fp:" + std::to_string(p);
            case Kind::integers: return "z";
        }
        return "?";
    }
    bool operator==(const FieldSpec& o) const { return kind == o.kind && p == o.p; }
};

} // namespace gch
