#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace fss {

struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Scalars are always stored as exact GMP rationals. For a prime field the
// value is the canonical residue in [0, p) with denominator 1.
using Scalar = mpq_class;

struct FieldId {
    enum class Kind { rationals, prime };
    Kind kind = Kind::rationals;
    unsigned long characteristic = 0;

    bool operator==(const FieldId&) const = default;
};

inline bool is_prime_ul(unsigned long p) {
    if (p < 2) return false;
    for (unsigned long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

class Field {
  public:
    static Field rationals() { return Field(FieldId{FieldId::Kind::rationals, 0}); }

    static Field prime(unsigned long p) {
        if (!is_prime_ul(p)) throw input_error("field characteristic must be prime, got " + std::to_string(p));
        return Field(FieldId{FieldId::Kind::prime, p});
    }

    const FieldId& id() const { return id_; }
    bool is_prime_field() const { return id_.kind == FieldId::Kind::prime; }
    unsigned long characteristic() const { return id_.characteristic; }
    bool operator==(const Field& o) const { return id_ == o.id_; }

    Scalar zero() const { return Scalar(0); }
    Scalar one() const { return Scalar(1); }

    Scalar from_long(long v) const { return reduce(Scalar(v)); }

    // Canonical form: rationals are gcd-reduced with positive denominator
    // (mpq_class does this on canonicalize); prime-field values are residues.
    Scalar reduce(const Scalar& v) const {
        Scalar x = v;
        x.canonicalize();
        if (!is_prime_field()) return x;
        mpz_class p(id_.characteristic);
        mpz_class num = x.get_num(), den = x.get_den();
        mpz_class dmod = den % p;
        if (dmod < 0) dmod += p;
        if (dmod == 0) throw input_error("denominator divisible by field characteristic");
        mpz_class dinv;
        if (mpz_invert(dinv.get_mpz_t(), dmod.get_mpz_t(), p.get_mpz_t()) == 0)
            throw input_error("non-invertible denominator in prime field");
        mpz_class r = (num % p) * dinv % p;
        if (r < 0) r += p;
        return Scalar(r);
    }

    Scalar add(const Scalar& a, const Scalar& b) const { return reduce(a + b); }
    Scalar sub(const Scalar& a, const Scalar& b) const { return reduce(a - b); }
    Scalar mul(const Scalar& a, const Scalar& b) const { return reduce(a * b); }
    Scalar neg(const Scalar& a) const { return reduce(-a); }

    Scalar inv(const Scalar& a) const {
        if (a == 0) throw input_error("division by zero");
        if (!is_prime_field()) return Scalar(1) / a;
        mpz_class p(id_.characteristic), v = a.get_num() % p, r;
        if (v < 0) v += p;
        if (mpz_invert(r.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t()) == 0)
            throw input_error("division by zero in prime field");
        return Scalar(r);
    }

    Scalar div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }

    // Text format: rationals "a" or "a/b" in lowest terms with b > 0;
    // prime-field values as the decimal residue.
    std::string to_string(const Scalar& v) const { return v.get_str(); }

    Scalar parse(const std::string& s) const {
        if (s.empty()) throw input_error("empty scalar literal");
        for (size_t i = 0; i < s.size(); ++i) {
            char c = s[i];
            bool ok = (c >= '0' && c <= '9') || (c == '-' && i == 0) || c == '/';
            if (!ok) throw input_error("bad scalar literal: " + s);
        }
        Scalar x;
        if (x.set_str(s, 10) != 0) throw input_error("bad scalar literal: " + s);
        if (x.get_den() <= 0) throw input_error("bad scalar literal (nonpositive denominator): " + s);
        Scalar r = reduce(x);
        if (is_prime_field() && r.get_str() != s)
            throw input_error("prime-field scalar must be a canonical residue: " + s);
        return r;
    }

  private:
    explicit Field(FieldId id) : id_(id) {}
    FieldId id_;
};

} // namespace fss
