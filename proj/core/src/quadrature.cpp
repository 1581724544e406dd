#include "ghostlight/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace ghostlight {

GaussLegendre::GaussLegendre(int order) {
    if (order < 1)
        throw std::invalid_argument("Gauss-Legendre order must be >= 1");
    const int n = order;
    nodes_.resize(n);
    weights_.resize(n);
    // Newton iteration from the Chebyshev-like initial guess; symmetric rule,
    // solve only the lower half.
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes_[i] = -x;
        nodes_[n - 1 - i] = x;
        weights_[i] = weights_[n - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
    }
}

void GaussLegendre::mapped(double a, double b,
                           std::vector<double>& x, std::vector<double>& w) const {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    const std::size_t n = nodes_.size();
    x.resize(n);
    w.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = mid + half * nodes_[i];
        w[i] = half * weights_[i];
    }
}

const GaussLegendre& gauss_legendre(int order) {
    static std::mutex mu;
    static std::map<int, GaussLegendre> cache;
    std::lock_guard lock(mu);
    auto it = cache.find(order);
    if (it == cache.end())
        it = cache.emplace(order, GaussLegendre(order)).first;
    return it->second;
}

double trapezoid(std::span<const double> y, double dx) {
    if (y.size() < 2) return 0.0;
    double acc = 0.5 * (y.front() + y.back());
    for (std::size_t i = 1; i + 1 < y.size(); ++i) acc += y[i];
    return acc * dx;
}

namespace {

unsigned worker_count() {
    if (const char* env = std::getenv("GHOSTLIGHT_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc ? hc : 1;
}

} // namespace

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    const unsigned workers = std::min<std::size_t>(worker_count(), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::exception_ptr first_error;
    std::mutex err_mu;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < n; i += workers) fn(i);
            } catch (...) {
                std::lock_guard lock(err_mu);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace ghostlight
