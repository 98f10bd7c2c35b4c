// Test-only oracles, kept independent of the library code they check:
// quadrature, empirical CDF distance, and small statistical helpers.

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

/// Gauss-Legendre nodes/weights on [-1,1] via Newton iteration on the
/// Legendre recurrence.
inline void gauss_legendre(int n, std::vector<double>& nodes,
                           std::vector<double>& weights) {
    nodes.resize(n);
    weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 64; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        const double dp = n * (x * p1 - p0) / (x * x - 1.0);
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
}

/// Composite 24-point Gauss-Legendre over [a,b] split into panels.
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        int panels = 64) {
    static std::vector<double> nodes, weights;
    if (nodes.empty()) gauss_legendre(24, nodes, weights);
    double total = 0.0;
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * h;
        const double mid = lo + 0.5 * h;
        double acc = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i)
            acc += weights[i] * f(mid + 0.5 * h * nodes[i]);
        total += 0.5 * h * acc;
    }
    return total;
}

/// E{exp(tu)} for the zero-inflated Laplace law by direct quadrature of the
/// continuous part plus the atom.
inline double mgf_by_quadrature(double t, double gamma, double sigma_bar) {
    const double span = 80.0 * sigma_bar;
    const auto integrand = [&](double u) {
        return std::exp(t * u) * gamma * 0.5 / sigma_bar *
               std::exp(-std::abs(u) / sigma_bar);
    };
    return integrate(integrand, -span, 0.0, 96) + integrate(integrand, 0.0, span, 96) +
           (1.0 - gamma);
}

/// Kolmogorov-Smirnov distance of samples against a CDF; sorts in place.
inline double ks_distance(std::vector<double>& samples,
                          const std::function<double(double)>& cdf) {
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double ks = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        ks = std::max(ks, std::max(std::abs(f - i / n), std::abs(f - (i + 1) / n)));
    }
    return ks;
}

/// CDF of the two-sided exponential law with the given scale.
inline double laplace_cdf(double w, double scale) {
    return w < 0.0 ? 0.5 * std::exp(w / scale) : 1.0 - 0.5 * std::exp(-w / scale);
}

struct MeanSe {
    double mean = 0.0;
    double se = 0.0;
};

inline MeanSe mean_se(const std::vector<double>& xs) {
    MeanSe r;
    const double n = static_cast<double>(xs.size());
    double sum = 0.0, sq = 0.0;
    for (double x : xs) {
        sum += x;
        sq += x * x;
    }
    r.mean = sum / n;
    if (xs.size() > 1) r.se = std::sqrt(std::max(0.0, (sq - sum * sum / n) / (n - 1.0)) / n);
    return r;
}

}  // namespace oracle
