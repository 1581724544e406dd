#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace ghostlight {

// Gauss-Legendre rule on [-1, 1]; nodes/weights computed once and cached
// per order. Orders up to a few thousand are fine (Newton on the Legendre
// recurrence).
class GaussLegendre {
public:
    explicit GaussLegendre(int order);

    int order() const { return static_cast<int>(nodes_.size()); }
    std::span<const double> nodes() const { return nodes_; }
    std::span<const double> weights() const { return weights_; }

    // Nodes/weights mapped to [a, b].
    void mapped(double a, double b,
                std::vector<double>& x, std::vector<double>& w) const;

    template <class F>
    double integrate(double a, double b, F&& f) const {
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        double acc = 0.0;
        for (std::size_t i = 0; i < nodes_.size(); ++i)
            acc += weights_[i] * f(mid + half * nodes_[i]);
        return acc * half;
    }

private:
    std::vector<double> nodes_;
    std::vector<double> weights_;
};

// Shared cache keyed by order.
const GaussLegendre& gauss_legendre(int order);

// Trapezoid rule over tabulated samples on a uniform grid.
double trapezoid(std::span<const double> y, double dx);

// Run fn(i) for i in [0, n) across worker threads; the GHOSTLIGHT_THREADS
// environment variable caps the worker count (default: hardware
// concurrency). fn must be safe to call concurrently; callers index into
// preallocated output, so results are deterministic.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace ghostlight
