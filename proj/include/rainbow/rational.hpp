#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>

#include "rainbow/errors.hpp"

namespace rainbow {

/// Exact rational number, always kept canonical (gcd(num, den) = 1, den > 0).
using Rational = mpq_class;
using Integer = mpz_class;

inline int sign_of(const Rational& q) { return sgn(q); }

/// Parses "p/q", integers, and decimal strings ("0.25", "-1.5e3") exactly.
inline Rational parse_rational(std::string_view text) {
    auto fail = [&]() -> Rational {
        throw InputError("parse", "not a rational number: '" + std::string(text) + "'");
    };
    std::string s(text);
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
            s.end());
    if (s.empty()) return fail();

    auto is_int = [](std::string_view v) {
        if (!v.empty() && (v[0] == '+' || v[0] == '-')) v.remove_prefix(1);
        return !v.empty() && std::all_of(v.begin(), v.end(),
                                         [](unsigned char c) { return std::isdigit(c); });
    };
    auto strip_plus = [](std::string v) {
        if (!v.empty() && v[0] == '+') v.erase(0, 1);
        return v;
    };

    if (auto slash = s.find('/'); slash != std::string::npos) {
        std::string num = s.substr(0, slash), den = s.substr(slash + 1);
        if (!is_int(num) || !is_int(den) || den[0] == '-' || den[0] == '+') return fail();
        Integer d(den, 10);
        if (d == 0) throw InputError("parse", "zero denominator in '" + s + "'");
        Rational q(Integer(strip_plus(num), 10), d);
        q.canonicalize();
        return q;
    }

    // decimal: [sign] digits [. digits] [e [sign] digits]
    std::string mant = s, expo;
    if (auto e = s.find_first_of("eE"); e != std::string::npos) {
        mant = s.substr(0, e);
        expo = s.substr(e + 1);
        if (!is_int(expo)) return fail();
    }
    bool negative = false;
    if (!mant.empty() && (mant[0] == '+' || mant[0] == '-')) {
        negative = mant[0] == '-';
        mant.erase(0, 1);
    }
    std::string digits;
    long scale = 0;
    if (auto dot = mant.find('.'); dot != std::string::npos) {
        std::string ip = mant.substr(0, dot), fp = mant.substr(dot + 1);
        if (ip.empty() && fp.empty()) return fail();
        digits = ip + fp;
        scale = -static_cast<long>(fp.size());
    } else {
        digits = mant;
    }
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(),
                                       [](unsigned char c) { return std::isdigit(c); }))
        return fail();
    if (!expo.empty()) {
        if (expo.size() > 6) return fail();
        scale += std::stol(expo);
    }
    Integer value(digits, 10);
    Integer ten_pow;
    mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
    Rational q = scale >= 0 ? Rational(value * ten_pow) : Rational(value, ten_pow);
    q.canonicalize();
    return negative ? Rational(-q) : q;
}

/// Canonical text form: "p/q", or "p" for integers.
inline std::string to_string(Rational q) {
    q.canonicalize();
    return q.get_str(10);
}

inline std::size_t bit_length(const Integer& z) {
    return z == 0 ? 0 : mpz_sizeinbase(z.get_mpz_t(), 2);
}

inline Integer pow_int(const Integer& base, std::uint64_t e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Rational pow_rational(const Rational& base, std::uint64_t e) {
    Rational r(pow_int(base.get_num(), e), pow_int(base.get_den(), e));
    r.canonicalize();
    return r;
}

inline Integer binomial(std::uint64_t n, std::uint64_t k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

namespace detail {

class MpfrValue {
public:
    explicit MpfrValue(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
    ~MpfrValue() { mpfr_clear(v_); }
    MpfrValue(const MpfrValue&) = delete;
    MpfrValue& operator=(const MpfrValue&) = delete;
    mpfr_ptr get() { return v_; }

private:
    mpfr_t v_;
};

// true iff there is an integer r with u = r^p and v = r^q (u, v >= 1)
inline bool common_power_base(const Integer& u, std::uint64_t p, const Integer& v,
                              std::uint64_t q) {
    Integer r;
    if (mpz_root(r.get_mpz_t(), u.get_mpz_t(), p) == 0) return false;
    if (r == 1) return v == 1;
    if ((bit_length(r) - 1) > bit_length(v) / std::max<std::uint64_t>(q, 1) + 1) return false;
    return pow_int(r, q) == v;
}

// bounds on a * ln(num/den), a >= 0
inline void scaled_log_bounds(const Rational& x, std::uint64_t a, mpfr_prec_t prec,
                              mpfr_ptr lo, mpfr_ptr hi) {
    MpfrValue n(prec), d(prec), ln_lo(prec), ln_hi(prec), tmp(prec);
    mpfr_set_z(n.get(), x.get_num_mpz_t(), MPFR_RNDN);
    mpfr_set_z(d.get(), x.get_den_mpz_t(), MPFR_RNDN);
    mpfr_log(ln_lo.get(), n.get(), MPFR_RNDD);
    mpfr_log(tmp.get(), d.get(), MPFR_RNDU);
    mpfr_sub(lo, ln_lo.get(), tmp.get(), MPFR_RNDD);
    mpfr_log(ln_hi.get(), n.get(), MPFR_RNDU);
    mpfr_log(tmp.get(), d.get(), MPFR_RNDD);
    mpfr_sub(hi, ln_hi.get(), tmp.get(), MPFR_RNDU);
    mpfr_mul_ui(lo, lo, a, MPFR_RNDD);
    mpfr_mul_ui(hi, hi, a, MPFR_RNDU);
}

}  // namespace detail

/// Exact sign of x^a - y^b for positive rationals x, y.
///
/// Small instances are cross-multiplied directly. When the powers would be
/// too large to materialize (exponents near 2^32 arise from tiny density
/// exponents), equality is decided exactly via integer roots and the strict
/// sign is certified with directed-rounding interval logarithms.
inline int compare_powers(const Rational& x, std::uint64_t a, const Rational& y,
                          std::uint64_t b) {
    if (sgn(x) <= 0 || sgn(y) <= 0) throw InputError("compare_powers needs positive bases");
    const std::size_t xbits = bit_length(x.get_num()) + bit_length(x.get_den());
    const std::size_t ybits = bit_length(y.get_num()) + bit_length(y.get_den());
    const long double estimate =
        static_cast<long double>(a) * xbits + static_cast<long double>(b) * ybits;
    if (estimate <= static_cast<long double>(1u << 22)) {
        Integer lhs = pow_int(x.get_num(), a) * pow_int(y.get_den(), b);
        Integer rhs = pow_int(y.get_num(), b) * pow_int(x.get_den(), a);
        return cmp(lhs, rhs) > 0 ? 1 : (lhs == rhs ? 0 : -1);
    }

    if (a == 0 || b == 0) {
        // one side is 1
        const Rational& base = a == 0 ? y : x;
        int s = cmp(base, Rational(1));
        s = s > 0 ? 1 : (s < 0 ? -1 : 0);
        return a == 0 ? -s : s;
    }
    const std::uint64_t g = std::gcd(a, b);
    const std::uint64_t ar = a / g, br = b / g;
    // x^ar == y^br  <=>  x = r^br, y = r^ar for a rational r (ar, br coprime)
    if (detail::common_power_base(x.get_num(), br, y.get_num(), ar) &&
        detail::common_power_base(x.get_den(), br, y.get_den(), ar))
        return 0;

    mpfr_prec_t prec = static_cast<mpfr_prec_t>(std::max(xbits, ybits) + 192);
    for (int round = 0; round < 16; ++round, prec *= 2) {
        detail::MpfrValue alo(prec), ahi(prec), blo(prec), bhi(prec), diff(prec);
        detail::scaled_log_bounds(x, a, prec, alo.get(), ahi.get());
        detail::scaled_log_bounds(y, b, prec, blo.get(), bhi.get());
        mpfr_sub(diff.get(), alo.get(), bhi.get(), MPFR_RNDD);
        if (mpfr_sgn(diff.get()) > 0) return 1;
        mpfr_sub(diff.get(), ahi.get(), blo.get(), MPFR_RNDU);
        if (mpfr_sgn(diff.get()) < 0) return -1;
    }
    throw Error("internal", "compare_powers: interval refinement did not converge");
}

}  // namespace rainbow
