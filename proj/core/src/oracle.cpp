#include "ssdlab/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <vector>

namespace ssdlab::oracle {

namespace {

// Kronrod 15-point abscissae (positive half) and weights, with the
// embedded 7-point Gauss weights on the odd-indexed nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double lo;
    double hi;
    double value;
    double error;
    bool operator<(const Segment& other) const { return error < other.error; }
};

// QUADPACK qk15 rule, including its error-estimate rescaling.
Segment gauss_kronrod(const std::function<double(double)>& g, double lo, double hi) {
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const double f_center = g(center);
    double result_gauss = f_center * kWg[3];
    double result_kronrod = f_center * kWgk[7];
    double result_abs = std::abs(result_kronrod);
    std::array<double, 7> f1{};
    std::array<double, 7> f2{};
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        f1[j] = g(center - dx);
        f2[j] = g(center + dx);
        const double pair = f1[j] + f2[j];
        result_kronrod += kWgk[j] * pair;
        result_abs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
        if (j % 2 == 1) result_gauss += kWg[j / 2] * pair;
    }
    const double mean = 0.5 * result_kronrod;
    double result_asc = kWgk[7] * std::abs(f_center - mean);
    for (int j = 0; j < 7; ++j) {
        result_asc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
    }
    const double value = result_kronrod * half;
    result_abs *= std::abs(half);
    result_asc *= std::abs(half);
    double error = std::abs((result_kronrod - result_gauss) * half);
    if (result_asc != 0.0 && error != 0.0) {
        error = result_asc * std::min(1.0, std::pow(200.0 * error / result_asc, 1.5));
    }
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (result_abs > std::numeric_limits<double>::min() / (50.0 * eps)) {
        error = std::max(50.0 * eps * result_abs, error);
    }
    return Segment{lo, hi, value, error};
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           QuadratureOptions options) {
    if (!(options.tol > 0.0)) throw std::invalid_argument("integrate: tol must be positive");
    if (std::isinf(a)) throw std::invalid_argument("integrate: lower limit must be finite");
    if (a == b) return {};

    std::function<double(double)> g = f;
    double lo = a;
    double hi = b;
    if (std::isinf(b)) {
        if (b < 0) throw std::invalid_argument("integrate: upper limit must be > lower limit");
        g = [&f, a](double t) {
            const double one_minus = 1.0 - t;
            const double x = a + t / one_minus;
            const double v = f(x);
            return v == 0.0 ? 0.0 : v / (one_minus * one_minus);
        };
        lo = 0.0;
        hi = 1.0;
    } else if (b < a) {
        auto r = integrate(f, b, a, options);
        r.value = -r.value;
        return r;
    }

    std::priority_queue<Segment> heap;
    Segment first = gauss_kronrod(g, lo, hi);
    double total = first.value;
    double total_error = first.error;
    heap.push(first);
    int subdivisions = 0;

    const auto done = [&] {
        return total_error <= std::max(options.tol, options.tol * std::abs(total));
    };
    while (!done()) {
        if (subdivisions >= options.max_subdivisions) {
            throw QuadratureError("integrate: subdivision cap exceeded",
                                  QuadratureResult{total, total_error, subdivisions});
        }
        Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (mid <= worst.lo || mid >= worst.hi) {
            // Interval at floating-point resolution; accept what we have.
            heap.push(worst);
            break;
        }
        Segment left = gauss_kronrod(g, worst.lo, mid);
        Segment right = gauss_kronrod(g, mid, worst.hi);
        total += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++subdivisions;
    }

    // Re-sum to shed the accumulated update rounding.
    double value = 0.0;
    double error = 0.0;
    while (!heap.empty()) {
        value += heap.top().value;
        error += heap.top().error;
        heap.pop();
    }
    return QuadratureResult{value, error, subdivisions};
}

double finite_diff(const std::function<double(double)>& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

}  // namespace ssdlab::oracle
