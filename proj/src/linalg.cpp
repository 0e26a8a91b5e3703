#include <hvstab/linalg.hpp>

#include <stdexcept>

namespace hvstab {

std::vector<Rational> solve_linear(std::vector<std::vector<Rational>> A,
                                   std::vector<Rational> b) {
    const size_t n = A.size();
    if (b.size() != n) throw std::domain_error("solve_linear: shape mismatch");
    for (const auto& row : A)
        if (row.size() != n) throw std::domain_error("solve_linear: shape mismatch");

    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && sgn(A[piv][col]) == 0) ++piv;
        if (piv == n) throw std::domain_error("solve_linear: singular system");
        std::swap(A[col], A[piv]);
        std::swap(b[col], b[piv]);
        Rational inv = Rational(1) / A[col][col];
        for (size_t j = col; j < n; ++j) A[col][j] *= inv;
        b[col] *= inv;
        for (size_t i = 0; i < n; ++i) {
            if (i == col || sgn(A[i][col]) == 0) continue;
            Rational f = A[i][col];
            for (size_t j = col; j < n; ++j) A[i][j] -= f * A[col][j];
            b[i] -= f * b[col];
        }
    }
    return b;
}

Integer int_pow(long base, unsigned long e) {
    Integer out;
    mpz_pow_ui(out.get_mpz_t(), Integer(base).get_mpz_t(), e);
    return out;
}

}  // namespace hvstab
