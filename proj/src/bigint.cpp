#include "smrank/bigint.hpp"

#include <cmath>
#include <utility>

namespace smrank {

Int binom_ext(long a, long k) {
    if (k < 0)
        return 0;
    // mpz_bin_ui implements exactly the falling-factorial definition,
    // including negative upper index.
    Int n(a), r;
    mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(k));
    return r;
}

Int twisted_binom(long n, long m) {
    if (m < 0)
        return 0;
    return binom_ext(n + m, m);
}

Int det_int(std::vector<std::vector<Int>> a) {
    const std::size_t p = a.size();
    if (p == 0)
        return 1;
    for (auto& row : a)
        if (row.size() != p)
            throw std::invalid_argument("det_int: matrix not square");

    int sign = 1;
    Int prev = 1;
    Int t0, t1;
    for (std::size_t k = 0; k + 1 < p; ++k) {
        if (a[k][k] == 0) {
            std::size_t piv = k;
            while (piv < p && a[piv][k] == 0)
                ++piv;
            if (piv == p)
                return 0;
            std::swap(a[k], a[piv]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < p; ++i) {
            for (std::size_t j = k + 1; j < p; ++j) {
                t0 = a[k][k] * a[i][j];
                t1 = a[i][k] * a[k][j];
                t0 -= t1;
                // exact by the Sylvester identity
                mpz_divexact(a[i][j].get_mpz_t(), t0.get_mpz_t(), prev.get_mpz_t());
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    return sign * a[p - 1][p - 1];
}

double log2_int(const Int& x) {
    if (x <= 0)
        throw std::domain_error("log2_int: non-positive argument");
    signed long exp2;
    double d = mpz_get_d_2exp(&exp2, x.get_mpz_t());
    return std::log2(d) + static_cast<double>(exp2);
}

} // namespace smrank
