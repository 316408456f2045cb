// SPDX-License-Identifier: MIT

#include "ngmzi/coeff_engine.hpp"

#include <array>
#include <sstream>
#include <vector>

namespace ngmzi {

namespace {

// Exact in double up to 170!.
double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

}  // namespace

double laguerre(int n, double x) {
    if (n < 0) throw DomainError("laguerre: negative order");
    if (n == 0) return 1.0;
    double lkm1 = 1.0;        // L_0
    double lk = 1.0 - x;      // L_1
    for (int k = 1; k < n; ++k) {
        const double lkp1 = ((2.0 * k + 1.0 - x) * lk - k * lkm1) / (k + 1.0);
        lkm1 = lk;
        lk = lkp1;
    }
    return lk;
}

cplx paired_monomial_sum(int p, int q, cplx A, cplx x, cplx y) {
    if (p < 0 || q < 0) throw DomainError("paired_monomial_sum: negative order");
    cplx sum = 0.0;
    for (int k = 0; k <= std::min(p, q); ++k) {
        const double comb = factorial(p) * factorial(q) /
                            (factorial(k) * factorial(p - k) * factorial(q - k));
        sum += comb * std::pow(A, k) * std::pow(x, p - k) * std::pow(y, q - k);
    }
    return sum;
}

cplx hermite_2var(int m, int n, cplx x, cplx y) {
    return paired_monomial_sum(m, n, cplx(-1.0), x, y);
}

cplx deriv_extract(const QuadExp& kernel, const DerivOrder& order) {
    const int m = order.m;
    const int n = order.n;
    if (m < 0 || n < 0) throw DomainError("deriv_extract: negative order");
    if (m > kMaxDerivOrder || n > kMaxDerivOrder) {
        std::ostringstream msg;
        msg << "deriv_extract: order (" << m << ", " << n
            << ") exceeds the cap " << kMaxDerivOrder;
        throw OrderTooLarge(msg.str());
    }

    // Dense truncated power series in (u1, v1, u2, v2): exponent of u1 and
    // v1 capped at m, of u2 and v2 at n (higher powers cannot contribute to
    // the coefficient of u1^m v1^m u2^n v2^n), total degree capped at
    // 2(m+n).  At the cap m = n = 8 this is 9^4 = 6561 coefficients.
    const int cm = m + 1, cn = n + 1;
    const int size = cm * cm * cn * cn;
    const int deg_cap = 2 * (m + n);
    auto flat = [cm, cn](int e1, int e2, int e3, int e4) {
        return ((e1 * cm + e2) * cn + e3) * cn + e4;
    };

    // Base polynomial u^T M u + b^T u as a sparse monomial list.
    struct Mono {
        std::array<int, 4> e;
        cplx c;
    };
    std::vector<Mono> base;
    for (int i = 0; i < 4; ++i) {
        if (kernel.b(i) != 0.0) {
            Mono mono{{0, 0, 0, 0}, kernel.b(i)};
            mono.e[i] = 1;
            base.push_back(mono);
        }
    }
    for (int i = 0; i < 4; ++i) {
        for (int j = i; j < 4; ++j) {
            const cplx c = (i == j) ? kernel.M(i, i)
                                    : kernel.M(i, j) + kernel.M(j, i);
            if (c != 0.0) {
                Mono mono{{0, 0, 0, 0}, c};
                mono.e[i] += 1;
                mono.e[j] += 1;
                base.push_back(mono);
            }
        }
    }

    const std::array<int, 4> caps{m, m, n, n};

    // exp(base) = sum_k base^k / k!, accumulated term by term.
    std::vector<cplx> acc(size, cplx(0.0));
    std::vector<cplx> term(size, cplx(0.0));
    std::vector<cplx> next(size);
    acc[0] = 1.0;
    term[0] = 1.0;
    for (int k = 1; k <= deg_cap; ++k) {
        std::fill(next.begin(), next.end(), cplx(0.0));
        bool any = false;
        for (int e1 = 0; e1 <= m; ++e1)
            for (int e2 = 0; e2 <= m; ++e2)
                for (int e3 = 0; e3 <= n; ++e3)
                    for (int e4 = 0; e4 <= n; ++e4) {
                        const cplx c = term[flat(e1, e2, e3, e4)];
                        if (c == 0.0) continue;
                        const int deg = e1 + e2 + e3 + e4;
                        for (const Mono& mono : base) {
                            const int f1 = e1 + mono.e[0];
                            const int f2 = e2 + mono.e[1];
                            const int f3 = e3 + mono.e[2];
                            const int f4 = e4 + mono.e[3];
                            if (f1 > caps[0] || f2 > caps[1] ||
                                f3 > caps[2] || f4 > caps[3])
                                continue;
                            const int dd = mono.e[0] + mono.e[1] +
                                           mono.e[2] + mono.e[3];
                            if (deg + dd > deg_cap) continue;
                            next[flat(f1, f2, f3, f4)] += c * mono.c;
                            any = true;
                        }
                    }
        if (!any) break;
        const double inv_k = 1.0 / k;
        for (int idx = 0; idx < size; ++idx) {
            term[idx] = next[idx] * inv_k;
            acc[idx] += term[idx];
        }
    }

    const cplx coeff = acc[flat(m, m, n, n)];
    const double fm = factorial(m);
    const double fn = factorial(n);
    const cplx deriv = coeff * fm * fm * fn * fn;
    return kernel.prefactor * std::pow(-2.0, m + n) / (fm * fn) * deriv;
}

}  // namespace ngmzi
