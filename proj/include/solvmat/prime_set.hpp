#pragma once

#include "solvmat/rational.hpp"

#include <vector>

namespace solvmat {

struct InvalidPrimeSet : std::invalid_argument {
    explicit InvalidPrimeSet(const std::string& what) : std::invalid_argument(what) {}
};

/// Deterministic primality test (trial division; inputs here are small).
bool is_prime(const Int& n);

/// A nonempty strictly increasing set of primes P and its product bP.
class PrimeSet {
public:
    explicit PrimeSet(std::vector<Int> primes);

    const std::vector<Int>& primes() const { return primes_; }
    const Int& product() const { return product_; }
    std::size_t size() const { return primes_.size(); }
    const Int& operator[](std::size_t r) const { return primes_[r]; }
    bool contains(const Int& p) const;

    bool operator==(const PrimeSet& other) const { return primes_ == other.primes_; }

private:
    std::vector<Int> primes_;
    Int product_;
};

}  // namespace solvmat
