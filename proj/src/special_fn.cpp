#include "dsm/special_fn.hpp"

#include <cmath>
#include <string>

#include "dsm/error.hpp"

namespace dsm {

namespace {

constexpr double kEulerGamma = 0.57721566490153286061;
constexpr double kAsymptoticCrossover = 25.0;
constexpr double kSeriesCrossover = 1.0;
constexpr double kRescaleAbove = 1e250;
constexpr double kRescaleBy = 1e-250;

void check_order(int order, const char* fn) {
    if (order < 0 || order > kMaxBesselOrder) {
        throw DomainError(std::string(fn) + ": order " + std::to_string(order) +
                          " outside [0, " + std::to_string(kMaxBesselOrder) + "]");
    }
}

/// J_n(x) = sum_k (-1)^k (x/2)^(2k+n) / (k! (k+n)!), used for small |x|.
double j_power_series(int n, double x) {
    const double half = 0.5 * x;
    double term = 1.0;
    for (int i = 1; i <= n; ++i) term *= half / i;
    double sum = term;
    const double q = -half * half;
    for (int k = 1; k < 200; ++k) {
        term *= q / (static_cast<double>(k) * (k + n));
        sum += term;
        if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

/// Values gathered by one downward Miller sweep, already normalized.
struct MillerSweep {
    double jn = 0.0;
    double j0 = 0.0;
    double j1 = 0.0;
    double neumann0 = 0.0;  // sum_{q>=1} (-1)^q J_2q / q
    double neumann1 = 0.0;  // sum_{q>=1} (-1)^q (J_{2q-1} - J_{2q+1}) / q
};

int miller_start(int order, double x) {
    const int top = std::max(order, static_cast<int>(x));
    int m = top + 30 + static_cast<int>(10.0 * std::cbrt(static_cast<double>(top) + 1.0));
    return m + (m & 1);
}

/// Backward recurrence J_{k-1} = (2k/x) J_k - J_{k+1} from an arbitrary seed,
/// normalized with J_0 + 2 sum J_2k = 1. Requires x > 0.
MillerSweep miller(int order, double x) {
    const int m = miller_start(order, x);
    const double two_over_x = 2.0 / x;

    double next = 0.0;    // J_{i+1}
    double cur = 1e-30;   // J_i
    MillerSweep acc;
    double norm = 0.0;

    auto visit = [&](int i, double v) {
        if (i == order) acc.jn = v;
        if (i == 1) acc.j1 = v;
        if (i == 0) {
            acc.j0 = v;
            norm += v;
            return;
        }
        if ((i & 1) == 0) {
            const int q = i / 2;
            norm += 2.0 * v;
            acc.neumann0 += ((q & 1) ? -v : v) / q;
        } else {
            // J_i enters the q = (i+1)/2 term with + and the q = (i-1)/2 term with -.
            const int qa = (i + 1) / 2;
            double c = ((qa & 1) ? -1.0 : 1.0) / qa;
            if (i >= 3) {
                const int qb = (i - 1) / 2;
                c -= ((qb & 1) ? -1.0 : 1.0) / qb;
            }
            acc.neumann1 += c * v;
        }
    };

    visit(m, cur);
    for (int k = m; k >= 1; --k) {
        const double prev = k * two_over_x * cur - next;
        next = cur;
        cur = prev;
        visit(k - 1, cur);
        if (std::abs(cur) > kRescaleAbove) {
            cur *= kRescaleBy;
            next *= kRescaleBy;
            norm *= kRescaleBy;
            acc.jn *= kRescaleBy;
            acc.j0 *= kRescaleBy;
            acc.j1 *= kRescaleBy;
            acc.neumann0 *= kRescaleBy;
            acc.neumann1 *= kRescaleBy;
        }
    }

    const double inv = 1.0 / norm;
    acc.jn *= inv;
    acc.j0 *= inv;
    acc.j1 *= inv;
    acc.neumann0 *= inv;
    acc.neumann1 *= inv;
    return acc;
}

/// Hankel's large-argument expansion for orders 0 and 1.
CylinderPair asymptotic01(double x) {
    auto pq = [x](double nu, double& p, double& q) {
        const double mu = 4.0 * nu * nu;
        p = 1.0;
        q = 0.0;
        double term = 1.0;
        double last = 1.0;
        for (int k = 1; k < 80; ++k) {
            const double odd = 2.0 * k - 1.0;
            term *= (mu - odd * odd) / (k * 8.0 * x);
            const double mag = std::abs(term);
            if (mag > last) break;  // asymptotic series started to diverge
            last = mag;
            const int s = (k % 4 == 1 || k % 4 == 2) ? -1 : 1;
            if (k & 1) {
                q -= s * term;
            } else {
                p += s * term;
            }
            if (mag < 1e-17) break;
        }
    };
    // Signs: P = 1 - a2/x^2 + a4/x^4 ..., Q = a1/x - a3/x^3 + ...
    double p0, q0, p1, q1;
    pq(0.0, p0, q0);
    pq(1.0, p1, q1);

    const double amp = std::sqrt(2.0 / (kPi * x));
    const double s = std::sin(x);
    const double c = std::cos(x);
    const double r = std::numbers::sqrt2 / 2.0;
    // chi0 = x - pi/4, chi1 = x - 3pi/4
    const double cos0 = r * (c + s);
    const double sin0 = r * (s - c);
    const double cos1 = r * (s - c);
    const double sin1 = -r * (s + c);

    CylinderPair out;
    out.j0 = amp * (p0 * cos0 - q0 * sin0);
    out.y0 = amp * (p0 * sin0 + q0 * cos0);
    out.j1 = amp * (p1 * cos1 - q1 * sin1);
    out.y1 = amp * (p1 * sin1 + q1 * cos1);
    return out;
}

CylinderPair jy01_positive(double x) {
    if (x > kAsymptoticCrossover) return asymptotic01(x);
    const MillerSweep s = miller(1, x);
    const double log_term = std::log(0.5 * x) + kEulerGamma;
    CylinderPair out;
    out.j0 = s.j0;
    out.j1 = s.j1;
    out.y0 = (2.0 / kPi) * (log_term * s.j0 - 2.0 * s.neumann0);
    out.y1 = (2.0 / kPi) * (-s.j0 / x + log_term * s.j1 + s.neumann1);
    if (x < kSeriesCrossover) {
        out.j0 = j_power_series(0, x);
        out.j1 = j_power_series(1, x);
    }
    return out;
}

}  // namespace

double bessel_j(int order, double x) {
    check_order(order, "bessel_j");
    if (!std::isfinite(x)) throw DomainError("bessel_j: non-finite argument");
    if (x < 0.0) {
        const double v = bessel_j(order, -x);
        return (order & 1) ? -v : v;
    }
    if (x == 0.0) return order == 0 ? 1.0 : 0.0;
    if (x < kSeriesCrossover) return j_power_series(order, x);
    if (order <= 1 && x > kAsymptoticCrossover) {
        const CylinderPair p = asymptotic01(x);
        return order == 0 ? p.j0 : p.j1;
    }
    return miller(order, x).jn;
}

double bessel_y(int order, double x) {
    check_order(order, "bessel_y");
    if (!std::isfinite(x) || x <= 0.0) {
        throw DomainError("bessel_y: argument must be finite and positive");
    }
    const CylinderPair p = jy01_positive(x);
    if (order == 0) return p.y0;
    double prev = p.y0;
    double cur = p.y1;
    for (int n = 1; n < order; ++n) {
        const double nxt = (2.0 * n / x) * cur - prev;
        prev = cur;
        cur = nxt;
    }
    return cur;
}

CylinderPair bessel_jy01(double x) {
    if (!std::isfinite(x) || x <= 0.0) {
        throw DomainError("bessel_jy01: argument must be finite and positive");
    }
    return jy01_positive(x);
}

Complex hankel1_0(double x) {
    if (!std::isfinite(x) || x <= 0.0) {
        throw DomainError("hankel1_0: argument must be finite and positive");
    }
    const CylinderPair p = jy01_positive(x);
    return {p.j0, p.y0};
}

Complex hankel1_1(double x) {
    if (!std::isfinite(x) || x <= 0.0) {
        throw DomainError("hankel1_1: argument must be finite and positive");
    }
    const CylinderPair p = jy01_positive(x);
    return {p.j1, p.y1};
}

double spherical_j0(double x) {
    if (std::abs(x) < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sin(x) / x;
}

}  // namespace dsm
