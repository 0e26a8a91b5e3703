#include <hvstab/numbers.hpp>

#include <mutex>
#include <stdexcept>
#include <vector>

namespace hvstab {

namespace {

// Grow-only memo tables. Readers may race with a growing vector, so all
// access goes through the mutex; entries are tiny compared to the callers'
// own arithmetic, and contention is negligible in practice.
std::mutex g_tables_mutex;
std::vector<Integer> g_factorials = {Integer(1)};
std::vector<Rational> g_harmonics = {Rational(0)};

}  // namespace

Integer factorial(long n) {
    if (n < 0) throw std::domain_error("factorial of negative integer");
    std::lock_guard<std::mutex> lock(g_tables_mutex);
    while (static_cast<long>(g_factorials.size()) <= n) {
        long next = static_cast<long>(g_factorials.size());
        g_factorials.push_back(g_factorials.back() * next);
    }
    return g_factorials[static_cast<size_t>(n)];
}

Rational harmonic(long k) {
    if (k < 0) throw std::domain_error("harmonic number of negative index");
    std::lock_guard<std::mutex> lock(g_tables_mutex);
    while (static_cast<long>(g_harmonics.size()) <= k) {
        long next = static_cast<long>(g_harmonics.size());
        g_harmonics.push_back(g_harmonics.back() + make_rational(1, next));
    }
    return g_harmonics[static_cast<size_t>(k)];
}

Integer binom_z(long n, long k) {
    if (n < 0) throw std::domain_error("binomial with negative upper index");
    if (k < 0 || k > n) return Integer(0);
    // n is small in every caller; the factorial route shares the memo.
    return factorial(n) / (factorial(k) * factorial(n - k));
}

Rational binom(long n, long k) { return Rational(binom_z(n, k)); }

Rational cmn(long m, long n, long k) {
    if (m < 0 || n < 0) throw std::domain_error("cmn with negative stencil index");
    if (k < -m || k > n) throw std::domain_error("cmn index outside [-m, n]");
    return make_rational(factorial(m) * factorial(n), factorial(m + k) * factorial(n - k));
}

Rational zeta(long m, long n, long k) {
    if (m < 0 || n < 0) throw std::domain_error("zeta with negative stencil index");
    if (k < -m || k > n) throw std::domain_error("zeta index outside [-m, n]");
    return harmonic(m + k) - harmonic(n - k);
}

}  // namespace hvstab
