#include "eitmotion/quadrature.hpp"
#include "eitmotion/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <queue>
#include <sstream>

namespace eitmotion {

namespace {

// Orthonormal Hermite h_k for weight e^{-x^2}; returns h_n(x) and h_{n-1}(x).
// Long double: near the largest root h ~ e^{x^2/2}, which leaves double range
// for orders of a few hundred.
void hermite_pair(int n, double x, long double& hn, long double& hnm1) {
    long double hm = 0.0L;
    long double h = 0.75112554446494248286L; // pi^{-1/4}
    for (int k = 0; k < n; ++k) {
        const long double hnext =
            x * sqrtl(2.0L / (k + 1)) * h - sqrtl((long double)k / (k + 1)) * hm;
        hm = h;
        h = hnext;
    }
    hn = h;
    hnm1 = hm;
}

double christoffel_weight(int n, double x) {
    long double hm = 0.0L;
    long double h = 0.75112554446494248286L;
    long double s = h * h;
    for (int k = 0; k < n - 1; ++k) {
        const long double hnext =
            x * sqrtl(2.0L / (k + 1)) * h - sqrtl((long double)k / (k + 1)) * hm;
        hm = h;
        h = hnext;
        s += h * h;
    }
    return (double)(1.0L / s);
}

// Eigenvalues of the Jacobi matrix (zero diagonal, off-diagonal sqrt(k/2))
// strictly below x, by Sturm pivot counting.
int sturm_count_below(int n, double x) {
    int cnt = 0;
    long double d = -(long double)x;
    if (d < 0) ++cnt;
    for (int k = 1; k < n; ++k) {
        if (fabsl(d) < 1e-300L) d = (d < 0 ? -1e-300L : 1e-300L);
        d = -(long double)x - 0.5L * k / d;
        if (d < 0) ++cnt;
    }
    return cnt;
}

GaussHermiteRule build_gauss_hermite(int n) {
    GaussHermiteRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const double R = std::sqrt(2.0 * n + 1.0);
    // Bisection per root: monotone counting makes skipping impossible.
    for (int i = n / 2; i < n; ++i) {
        double lo = (n % 2 == 1 && i == n / 2) ? -1e-14 : 0.0;
        double hi = R;
        for (int it = 0; it < 90; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (sturm_count_below(n, mid) <= i)
                lo = mid;
            else
                hi = mid;
            if (hi - lo < 1e-16 * (1.0 + hi)) break;
        }
        double z = 0.5 * (lo + hi);
        // one Newton polish on the orthonormal recurrence
        long double hn, hnm1;
        hermite_pair(n, z, hn, hnm1);
        if (hnm1 != 0.0L) z -= (double)(hn / (sqrtl(2.0L * n) * hnm1));
        if (n % 2 == 1 && i == n / 2) z = 0.0; // exact by symmetry
        rule.nodes[i] = z;
        rule.nodes[n - 1 - i] = -z;
        const double w = christoffel_weight(n, z);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

} // namespace

const GaussHermiteRule& gauss_hermite(int order) {
    if (order < 2 || order > 2048)
        throw ValidationError("gauss_hermite: order out of range [2, 2048]");
    static std::mutex mtx;
    static std::map<int, GaussHermiteRule> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, build_gauss_hermite(order)).first;
    return it->second;
}

namespace {

// 15-point Kronrod extension of 7-point Gauss (QUADPACK dqk15 constants).
const double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
const double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
const double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct Panel {
    double a, b;
    Complex val;
    double err;
};

Panel eval_panel(const std::function<Complex(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    Complex resk = kWgk[7] * f(c);
    Complex resg = kWg[3] * f(c);
    for (int j = 0; j < 7; ++j) {
        const Complex fl = f(c - h * kXgk[j]);
        const Complex fr = f(c + h * kXgk[j]);
        resk += kWgk[j] * (fl + fr);
        if (j % 2 == 1) resg += kWg[j / 2] * (fl + fr);
    }
    Panel p;
    p.a = a;
    p.b = b;
    p.val = resk * h;
    p.err = std::abs((resk - resg) * h);
    return p;
}

} // namespace

Complex adaptive_gk15(const std::function<Complex(double)>& f, double a, double b,
                      const AdaptiveOptions& opt, const std::vector<double>& split_hints) {
    if (!(b > a)) throw ValidationError("adaptive_gk15: requires b > a");
    std::vector<double> cuts;
    cuts.push_back(a);
    for (double h : split_hints)
        if (h > a && h < b) cuts.push_back(h);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::vector<Panel> panels;
    for (size_t i = 0; i + 1 < cuts.size(); ++i)
        panels.push_back(eval_panel(f, cuts[i], cuts[i + 1]));

    auto worse = [&panels](size_t i, size_t j) {
        if (panels[i].err != panels[j].err) return panels[i].err < panels[j].err;
        return panels[i].a > panels[j].a; // deterministic tie-break
    };
    std::priority_queue<size_t, std::vector<size_t>, decltype(worse)> heap(worse);
    for (size_t i = 0; i < panels.size(); ++i) heap.push(i);

    double err_total = 0.0;
    Complex val_total(0.0, 0.0);
    for (const Panel& p : panels) {
        err_total += p.err;
        val_total += p.val;
    }

    while (true) {
        const double target = std::max(opt.abs_tol, opt.rel_tol * std::abs(val_total));
        if (err_total <= target) break;
        if (int(panels.size()) >= opt.max_intervals) {
            std::ostringstream os;
            os << "adaptive_gk15: interval budget (" << opt.max_intervals
               << ") exhausted; residual " << err_total << " vs target " << target;
            throw ConvergenceError(os.str());
        }
        const size_t i = heap.top();
        heap.pop();
        const Panel old = panels[i];
        const double mid = 0.5 * (old.a + old.b);
        if (!(mid > old.a && mid < old.b)) {
            // interval at floating-point resolution; accept its error
            err_total -= old.err;
            panels[i].err = 0.0;
            continue;
        }
        const Panel left = eval_panel(f, old.a, mid);
        const Panel right = eval_panel(f, mid, old.b);
        err_total += left.err + right.err - old.err;
        val_total += left.val + right.val - old.val;
        panels[i] = left;
        panels.push_back(right);
        heap.push(i);
        heap.push(panels.size() - 1);
    }

    // Deterministic final summation in spatial order.
    std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
    Complex total(0.0, 0.0);
    for (const Panel& p : panels) total += p.val;
    return total;
}

} // namespace eitmotion
