#include "solvmat/prime_set.hpp"

#include <algorithm>

namespace solvmat {

bool is_prime(const Int& n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0) return false;
    for (Int d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

PrimeSet::PrimeSet(std::vector<Int> primes) : primes_(std::move(primes)), product_(1) {
    if (primes_.empty()) throw InvalidPrimeSet("prime set must be nonempty");
    for (std::size_t i = 0; i < primes_.size(); ++i) {
        if (!is_prime(primes_[i]))
            throw InvalidPrimeSet(primes_[i].str() + " is not prime");
        if (i > 0 && primes_[i] <= primes_[i - 1])
            throw InvalidPrimeSet("primes must be strictly increasing");
        product_ *= primes_[i];
    }
}

bool PrimeSet::contains(const Int& p) const {
    return std::binary_search(primes_.begin(), primes_.end(), p);
}

}  // namespace solvmat
