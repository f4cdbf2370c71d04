#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace wpshms {

using Int = boost::multiprecision::cpp_int;

namespace detail {

inline constexpr std::int64_t kSieveLimit = 1'000'000;

// Primes below kSieveLimit, built once and cached.
inline const std::vector<std::int64_t>& prime_table() {
    static const std::vector<std::int64_t> primes = [] {
        std::vector<bool> composite(kSieveLimit, false);
        std::vector<std::int64_t> out;
        for (std::int64_t p = 2; p < kSieveLimit; ++p) {
            if (composite[p]) continue;
            out.push_back(p);
            for (std::int64_t m = p * p; m < kSieveLimit; m += p) composite[m] = true;
        }
        return out;
    }();
    return primes;
}

} // namespace detail

/// Prime factorization of a positive integer by trial division against the
/// cached sieve. Handles one residual prime factor up to kSieveLimit^2.
inline std::map<std::int64_t, std::int64_t> factor_integer(Int n) {
    if (n <= 0) throw std::domain_error("factor_integer: argument must be positive");
    std::map<std::int64_t, std::int64_t> out;
    for (std::int64_t p : detail::prime_table()) {
        if (Int(p) * p > n) break;
        while (n % p == 0) {
            ++out[p];
            n /= p;
        }
    }
    if (n > 1) {
        // Residual factor has no divisor below the sieve limit, hence is prime
        // as long as it is below the limit squared.
        if (n >= Int(detail::kSieveLimit) * detail::kSieveLimit)
            throw std::domain_error("factor_integer: residual factor exceeds factorization range");
        ++out[n.convert_to<std::int64_t>()];
    }
    return out;
}

inline bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t p : detail::prime_table()) {
        if (p * p > n) return true;
        if (n % p == 0) return n == p;
    }
    return true; // n below kSieveLimit^2 with no sieve divisor
}

} // namespace wpshms
