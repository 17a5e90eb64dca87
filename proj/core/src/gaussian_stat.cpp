#include "ghvfdt/gaussian_stat.hpp"

#include "ghvfdt/error.hpp"

#include <cmath>
#include <fmt/format.h>

namespace ghvfdt {

void GaussianStat::add(double x) {
    if (!std::isfinite(x)) {
        throw InputError(fmt::format("GaussianStat: non-finite observation {}", x));
    }
    ++count_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(count_);
    m2_ += delta * (x - mean_);
    // rounding can push m2 a hair below zero on near-constant input
    if (m2_ < 0.0) m2_ = 0.0;
}

void GaussianStat::merge(const GaussianStat& other) noexcept {
    if (other.count_ == 0) return;
    if (count_ == 0) {
        *this = other;
        return;
    }
    const double na = static_cast<double>(count_);
    const double nb = static_cast<double>(other.count_);
    const double n = na + nb;
    const double delta = other.mean_ - mean_;
    mean_ += delta * nb / n;
    m2_ += other.m2_ + delta * delta * na * nb / n;
    count_ += other.count_;
}

double GaussianStat::variance() const noexcept {
    return count_ == 0 ? 0.0 : m2_ / static_cast<double>(count_);
}

double GaussianStat::stddev() const noexcept { return std::sqrt(variance()); }

GaussianStat GaussianStat::from_parts(std::uint64_t count, double mean, double m2) {
    if (!std::isfinite(mean) || !std::isfinite(m2) || m2 < 0.0) {
        throw InputError("GaussianStat: invalid stored mean/m2");
    }
    if (count == 0 && (mean != 0.0 || m2 != 0.0)) {
        throw InputError("GaussianStat: empty stat must have zero mean and m2");
    }
    GaussianStat s;
    s.count_ = count;
    s.mean_ = mean;
    s.m2_ = m2;
    return s;
}

} // namespace ghvfdt
