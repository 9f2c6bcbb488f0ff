#include "peridyn/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include "peridyn/errors.hpp"

namespace peridyn {
namespace {

// QUADPACK dqk15 abscissae/weights on [-1, 1]. xgk holds the Kronrod nodes
// (odd entries are the embedded Gauss-7 nodes), wgk the Kronrod weights and
// wg the Gauss-7 weights.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct Panel {
    double a, b;
    double value;
    double error;
    bool at_floor; // error estimate is pure round-off; splitting cannot help
    bool operator<(const Panel& other) const { return error < other.error; }
};

Panel evaluate_panel(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double fc = f(center);
    double result_gauss = kWg[3] * fc;
    double result_kronrod = kWgk[7] * fc;
    double result_abs = std::abs(result_kronrod);

    double fv[7][2];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        fv[j][0] = f(center - dx);
        fv[j][1] = f(center + dx);
        const double sum = fv[j][0] + fv[j][1];
        result_kronrod += kWgk[j] * sum;
        result_abs += kWgk[j] * (std::abs(fv[j][0]) + std::abs(fv[j][1]));
        if (j % 2 == 1) {
            result_gauss += kWg[j / 2] * sum;
        }
    }

    const double mean = 0.5 * result_kronrod;
    double result_asc = kWgk[7] * std::abs(fc - mean);
    for (int j = 0; j < 7; ++j) {
        result_asc += kWgk[j] * (std::abs(fv[j][0] - mean) + std::abs(fv[j][1] - mean));
    }

    const double value = result_kronrod * half;
    result_abs *= std::abs(half);
    result_asc *= std::abs(half);

    double err = std::abs((result_kronrod - result_gauss) * half);
    if (result_asc != 0.0 && err != 0.0) {
        err = result_asc * std::min(1.0, std::pow(200.0 * err / result_asc, 1.5));
    }
    const double round_floor = 50.0 * 2.220446049250313e-16 * result_abs;
    const bool at_floor = err <= round_floor;
    err = std::max(err, round_floor);

    return Panel{a, b, value, err, at_floor};
}

} // namespace

QuadratureResult gk15_panel(const std::function<double(double)>& f, double a, double b) {
    const Panel p = evaluate_panel(f, a, b);
    return QuadratureResult{p.value, p.error, 1};
}

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b,
                                    double rel_tol, double abs_tol,
                                    std::size_t max_panels) {
    if (!(rel_tol > 0.0) && !(abs_tol > 0.0)) {
        throw DomainError("integrate_adaptive: need a positive tolerance");
    }
    if (a == b) {
        return QuadratureResult{0.0, 0.0, 0};
    }

    std::priority_queue<Panel> queue;
    queue.push(evaluate_panel(f, a, b));
    double total_value = queue.top().value;
    double total_error = queue.top().error;
    std::size_t panels = 1;
    double previous_estimate = total_value;

    auto converged = [&]() {
        return total_error <= std::max(rel_tol * std::abs(total_value), abs_tol);
    };

    while (!converged()) {
        // When the dominant panel sits at its round-off floor the floor sum
        // (additive over subdivisions) is the best reachable error; return it
        // and let callers with hard tolerance requirements decide.
        if (queue.top().at_floor) break;
        if (panels + 1 > max_panels) {
            throw NumericalError("integrate_adaptive: panel budget exhausted before reaching tolerance",
                                 previous_estimate, total_value);
        }
        Panel worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // Interval no longer splittable in double precision; accept as is.
            queue.push(Panel{worst.a, worst.b, worst.value, 0.0, true});
            continue;
        }
        Panel left = evaluate_panel(f, worst.a, mid);
        Panel right = evaluate_panel(f, mid, worst.b);
        previous_estimate = total_value;
        total_value += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
        ++panels;
    }

    return QuadratureResult{total_value, total_error, panels};
}

} // namespace peridyn
