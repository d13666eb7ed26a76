#include "mts/error.hpp"
#include "mts/lp.hpp"

namespace mts {

LpResult maximize_leq(const std::vector<std::vector<Rational>>& A, const std::vector<Rational>& b,
                      const std::vector<Rational>& c) {
    const std::size_t m = A.size(), n = c.size();
    if (b.size() != m) throw DomainError("LP: row count mismatch");
    // Columns 0..n-1 are structural, n..n+m-1 slack, last is the right-hand side.
    std::vector<std::vector<Rational>> T(m, std::vector<Rational>(n + m + 1));
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) {
        if (A[i].size() != n) throw DomainError("LP: column count mismatch");
        if (b[i] < 0) throw DomainError("LP: right-hand side must be nonnegative");
        for (std::size_t j = 0; j < n; ++j) T[i][j] = A[i][j];
        T[i][n + i] = 1;
        T[i][n + m] = b[i];
        basis[i] = n + i;
    }
    // Reduced costs: z_j - c_j kept as obj[j]; entering column has obj[j] < 0.
    std::vector<Rational> obj(n + m + 1);
    for (std::size_t j = 0; j < n; ++j) obj[j] = -c[j];

    for (;;) {
        std::size_t enter = n + m;
        for (std::size_t j = 0; j < n + m; ++j)
            if (obj[j] < 0) {
                enter = j;
                break;
            }
        if (enter == n + m) break;
        std::size_t leave = m;
        Rational best_ratio;
        for (std::size_t i = 0; i < m; ++i) {
            if (T[i][enter] <= 0) continue;
            Rational r = T[i][n + m] / T[i][enter];
            if (leave == m || r < best_ratio || (r == best_ratio && basis[i] < basis[leave])) {
                leave = i;
                best_ratio = r;
            }
        }
        if (leave == m) return LpResult{true, 0, {}};
        Rational piv = T[leave][enter];
        for (auto& v : T[leave]) v /= piv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave || T[i][enter] == 0) continue;
            Rational f = T[i][enter];
            for (std::size_t j = 0; j <= n + m; ++j) T[i][j] -= f * T[leave][j];
        }
        if (obj[enter] != 0) {
            Rational f = obj[enter];
            for (std::size_t j = 0; j <= n + m; ++j) obj[j] -= f * T[leave][j];
        }
        basis[leave] = enter;
    }
    LpResult r;
    r.x.assign(n, 0);
    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] < n) r.x[basis[i]] = T[i][n + m];
    r.value = obj[n + m];
    return r;
}

}  // namespace mts
