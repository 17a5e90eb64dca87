#pragma once

// Reference computations used only by tests. None of these call into the
// library's criterion code; they recompute each quantity from its
// definition.

#include "ghvfdt/class_histogram.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

namespace ghvfdt::oracle {

/// Materializes both normalized frequency vectors in long double and sums
/// squared root differences.
inline double hellinger_from_counts(const std::vector<std::uint64_t>& pos,
                                    const std::vector<std::uint64_t>& neg) {
    long double pt = 0;
    long double nt = 0;
    for (auto c : pos) pt += static_cast<long double>(c);
    for (auto c : neg) nt += static_cast<long double>(c);
    std::vector<long double> p;
    std::vector<long double> q;
    for (auto c : pos) p.push_back(static_cast<long double>(c) / pt);
    for (auto c : neg) q.push_back(static_cast<long double>(c) / nt);
    long double s = 0;
    for (std::size_t j = 0; j < p.size(); ++j) {
        const long double d = std::sqrt(p[j]) - std::sqrt(q[j]);
        s += d * d;
    }
    return static_cast<double>(std::sqrt(s));
}

inline double normal_density(double x, double mu, double sigma) {
    const double z = (x - mu) / sigma;
    return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * std::numbers::pi));
}

/// sqrt(1/2 * integral (sqrt p - sqrt q)^2 dx) by adaptive Gauss-Kronrod over
/// a window that covers both densities to 40 standard deviations, split at
/// the means.
inline double hellinger_gaussian_integral(double mu1, double s1, double mu2, double s2) {
    auto f = [&](double x) {
        const double d = std::sqrt(normal_density(x, mu1, s1)) - std::sqrt(normal_density(x, mu2, s2));
        return d * d;
    };
    const double lo = std::min(mu1 - 40 * s1, mu2 - 40 * s2);
    const double hi = std::max(mu1 + 40 * s1, mu2 + 40 * s2);
    std::vector<double> pts{lo, std::min(mu1, mu2), std::max(mu1, mu2), hi};
    // breakpoints at 1, 3 and 6 sigma keep narrow peaks from being skipped
    for (double k : {1.0, 3.0, 6.0}) {
        pts.push_back(mu1 - k * s1);
        pts.push_back(mu1 + k * s1);
        pts.push_back(mu2 - k * s2);
        pts.push_back(mu2 + k * s2);
    }
    std::sort(pts.begin(), pts.end());
    using Quad = boost::math::quadrature::gauss_kronrod<double, 61>;
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        if (pts[i + 1] > pts[i]) total += Quad::integrate(f, pts[i], pts[i + 1], 15, 1e-14);
    }
    return std::sqrt(0.5 * total);
}

inline double entropy_bits(double a, double b) {
    double h = 0.0;
    const double n = a + b;
    if (n == 0) return 0.0;
    for (double c : {a, b}) {
        if (c > 0) h -= (c / n) * std::log(c / n) / std::log(2.0);
    }
    return h;
}

/// Information gain of the partition bins [0, cut) | [cut, b).
inline double info_gain_from_counts(const std::vector<std::uint64_t>& pos,
                                    const std::vector<std::uint64_t>& neg, std::size_t cut) {
    double pl = 0, nl = 0, pr = 0, nr = 0;
    for (std::size_t j = 0; j < pos.size(); ++j) {
        (j < cut ? pl : pr) += static_cast<double>(pos[j]);
        (j < cut ? nl : nr) += static_cast<double>(neg[j]);
    }
    const double n = pl + nl + pr + nr;
    return entropy_bits(pl + pr, nl + nr) - (pl + nl) / n * entropy_bits(pl, nl) -
           (pr + nr) / n * entropy_bits(pr, nr);
}

/// Two-bin Hellinger distance of the same partition.
inline double hellinger_cut_from_counts(const std::vector<std::uint64_t>& pos,
                                        const std::vector<std::uint64_t>& neg, std::size_t cut) {
    std::uint64_t pl = 0, nl = 0, pr = 0, nr = 0;
    for (std::size_t j = 0; j < pos.size(); ++j) {
        (j < cut ? pl : pr) += pos[j];
        (j < cut ? nl : nr) += neg[j];
    }
    return hellinger_from_counts({pl, pr}, {nl, nr});
}

/// Histogram with edges 0, 1, ..., bins and the given counts.
inline ClassHistogram make_histogram(const std::vector<std::uint64_t>& pos,
                                     const std::vector<std::uint64_t>& neg) {
    std::vector<double> edges(pos.size() + 1);
    for (std::size_t j = 0; j < edges.size(); ++j) edges[j] = static_cast<double>(j);
    ClassHistogram h(edges);
    h.set_counts(pos, neg);
    return h;
}

} // namespace ghvfdt::oracle
