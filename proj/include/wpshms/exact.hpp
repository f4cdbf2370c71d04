#pragma once

/// Exact arithmetic for positive reals of the form Π pᵢ^{rᵢ} with pᵢ prime and
/// rᵢ rational, and for their logarithms Σ rᵢ·log pᵢ.
///
/// By unique factorization, two such products are equal iff their exponent
/// maps are identical, so structure constants can be compared with zero
/// tolerance. Strict ordering of distinct values is deliberately not offered
/// in exact form (it is transcendence-theoretic); use to_float with its
/// documented 1e-10 margin when an order is needed.

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wpshms/primes.hpp"

namespace wpshms {

using Rational = boost::multiprecision::cpp_rational;

inline double rational_to_double(const Rational& q) { return q.convert_to<double>(); }

/// Sparse map prime -> rational exponent. Canonical form has no zero entries;
/// the empty map is the neutral element (1 for PosExact, 0 for LogValue).
using PrimeExponents = std::map<std::int64_t, Rational>;

namespace detail {

inline void add_scaled(PrimeExponents& acc, const PrimeExponents& term, const Rational& scale) {
    if (scale == 0) return;
    for (const auto& [p, r] : term) {
        auto it = acc.find(p);
        if (it == acc.end()) {
            acc.emplace(p, r * scale);
        } else {
            it->second += r * scale;
            if (it->second == 0) acc.erase(it);
        }
    }
}

// Σ r·log p with terms summed in ascending magnitude; extended precision so
// the documented 1e-12 relative bound holds for |Σ| up to 1e3.
inline long double log_sum(const PrimeExponents& exps) {
    std::vector<long double> terms;
    terms.reserve(exps.size());
    for (const auto& [p, r] : exps) {
        const long double coeff = numerator(r).convert_to<long double>() /
                                  denominator(r).convert_to<long double>();
        terms.push_back(coeff * std::log(static_cast<long double>(p)));
    }
    std::sort(terms.begin(), terms.end(),
              [](long double a, long double b) { return std::fabs(a) < std::fabs(b); });
    long double sum = 0.0L;
    for (long double t : terms) sum += t;
    return sum;
}

} // namespace detail

/// An exact positive real Π p^{e_p}.
class PosExact {
public:
    PosExact() = default; // 1

    static PosExact one() { return PosExact{}; }

    static PosExact from_exponents(PrimeExponents m) {
        for (auto it = m.begin(); it != m.end();) {
            if (it->second == 0) {
                it = m.erase(it);
            } else {
                if (!is_prime(it->first))
                    throw std::invalid_argument("PosExact: key is not prime");
                ++it;
            }
        }
        PosExact v;
        v.exps_ = std::move(m);
        return v;
    }

    const PrimeExponents& exponents() const { return exps_; }
    bool is_one() const { return exps_.empty(); }

    friend bool operator==(const PosExact&, const PosExact&) = default;

    PosExact pow(const Rational& r) const {
        PrimeExponents m;
        detail::add_scaled(m, exps_, r);
        return from_raw(std::move(m));
    }

    PosExact inverse() const { return pow(-1); }

    friend PosExact operator*(const PosExact& a, const PosExact& b) {
        PrimeExponents m = a.exps_;
        detail::add_scaled(m, b.exps_, 1);
        return from_raw(std::move(m));
    }

    friend PosExact operator/(const PosExact& a, const PosExact& b) {
        PrimeExponents m = a.exps_;
        detail::add_scaled(m, b.exps_, -1);
        return from_raw(std::move(m));
    }

    std::string str() const {
        if (exps_.empty()) return "1";
        std::string out;
        for (const auto& [p, r] : exps_) {
            if (!out.empty()) out += " * ";
            out += std::to_string(p) + "^(" + r.str() + ")";
        }
        return out;
    }

    // Internal constructor for maps already known to be canonical apart from
    // zero entries (keys validated elsewhere).
    static PosExact from_raw(PrimeExponents m) {
        PosExact v;
        v.exps_ = std::move(m);
        return v;
    }

private:
    PrimeExponents exps_;
};

/// The exact real Σ r·log p, i.e. the logarithm of a PosExact.
class LogValue {
public:
    LogValue() = default; // 0

    static LogValue zero() { return LogValue{}; }

    static LogValue from_terms(PrimeExponents m) {
        for (auto it = m.begin(); it != m.end();)
            it = (it->second == 0) ? m.erase(it) : std::next(it);
        LogValue v;
        v.terms_ = std::move(m);
        return v;
    }

    const PrimeExponents& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    friend bool operator==(const LogValue&, const LogValue&) = default;

    friend LogValue operator+(const LogValue& a, const LogValue& b) {
        PrimeExponents m = a.terms_;
        detail::add_scaled(m, b.terms_, 1);
        return from_terms(std::move(m));
    }

    friend LogValue operator-(const LogValue& a, const LogValue& b) {
        PrimeExponents m = a.terms_;
        detail::add_scaled(m, b.terms_, -1);
        return from_terms(std::move(m));
    }

    LogValue operator-() const { return scaled(-1); }

    LogValue scaled(const Rational& r) const {
        PrimeExponents m;
        detail::add_scaled(m, terms_, r);
        return from_terms(std::move(m));
    }

private:
    PrimeExponents terms_;
};

/// Exact factorization of a positive rational into prime powers.
inline PosExact factor_positive(const Rational& x) {
    if (x <= 0) throw std::domain_error("factor_positive: argument must be positive");
    PrimeExponents m;
    for (const auto& [p, e] : factor_integer(numerator(x))) m[p] = e;
    for (const auto& [p, e] : factor_integer(denominator(x))) {
        m[p] -= e;
        if (m[p] == 0) m.erase(p);
    }
    return PosExact::from_raw(std::move(m));
}

/// Π termᵢ^{rᵢ}: combines exponent maps additively after scaling.
inline PosExact pe_mul_pow(std::span<const std::pair<PosExact, Rational>> terms) {
    PrimeExponents m;
    for (const auto& [base, r] : terms) detail::add_scaled(m, base.exponents(), r);
    return PosExact::from_raw(std::move(m));
}

inline PosExact pe_mul_pow(std::initializer_list<std::pair<PosExact, Rational>> terms) {
    return pe_mul_pow(std::span<const std::pair<PosExact, Rational>>(terms.begin(), terms.size()));
}

/// Exact equality by unique factorization.
inline bool pe_eq(const PosExact& a, const PosExact& b) { return a == b; }

/// log view of a product of prime powers.
inline LogValue log_of(const PosExact& v) { return LogValue::from_terms(v.exponents()); }

/// exp view of a symbolic logarithm (exact roundtrip partner of log_of).
inline PosExact exp_of(const LogValue& v) { return PosExact::from_raw(v.terms()); }

/// exp(Σ r·log p), saturating to +inf/0 when the exponent leaves double range.
inline double to_float(const PosExact& v) {
    const long double s = detail::log_sum(v.exponents());
    if (s > std::log(std::numeric_limits<double>::max()))
        return std::numeric_limits<double>::infinity();
    if (s < std::log(std::numeric_limits<double>::min())) return 0.0;
    return static_cast<double>(std::exp(s));
}

/// Σ r·log p as binary64.
inline double to_float(const LogValue& v) {
    return static_cast<double>(detail::log_sum(v.terms()));
}

} // namespace wpshms
