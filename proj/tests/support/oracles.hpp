/*
    Licensed under the Apache License, Version 2.0 (the "License");
    you may not use this file except in compliance with the License.
    You may obtain a copy of the License at

        https://www.apache.org/licenses/LICENSE-2.0

    Unless required by applicable law or agreed to in writing, software
    distributed under the License is distributed on an "AS IS" BASIS,
    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
    See the License for the specific language governing permissions and
    limitations under the License.
*/

#pragma once

// Independent reference implementations used only by tests. Nothing here
// may call into the incremental engine's counters.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

namespace linkdyn::oracle {

/// Plain adjacency-set graph rebuilt from an edge list.
struct NaiveGraph {
    std::vector<std::set<std::uint32_t>> adj;

    explicit NaiveGraph(std::size_t n = 0) : adj(n) {}

    void ensure(std::uint32_t v) {
        if (v >= adj.size())
            adj.resize(v + 1);
    }

    bool add(std::uint32_t u, std::uint32_t v) {
        if (u == v)
            return false;
        ensure(std::max(u, v));
        if (adj[u].count(v))
            return false;
        adj[u].insert(v);
        adj[v].insert(u);
        return true;
    }

    std::size_t edges() const {
        std::size_t s = 0;
        for (const auto& a : adj)
            s += a.size();
        return s / 2;
    }

    /// Connected neighbor pairs of v, by enumerating all pairs: O(k^2).
    std::uint64_t triangles_at(std::uint32_t v) const {
        std::vector<std::uint32_t> nb(adj[v].begin(), adj[v].end());
        std::uint64_t t = 0;
        for (std::size_t i = 0; i < nb.size(); ++i)
            for (std::size_t j = i + 1; j < nb.size(); ++j)
                t += adj[nb[i]].count(nb[j]);
        return t;
    }

    double cc(std::uint32_t v) const {
        const double k = static_cast<double>(adj[v].size());
        if (k < 2)
            return 0.0;
        return 2.0 * static_cast<double>(triangles_at(v)) / (k * (k - 1.0));
    }

    std::uint32_t common(std::uint32_t u, std::uint32_t v) const {
        std::uint32_t c = 0;
        for (auto w : adj[u])
            c += adj[v].count(w);
        return c;
    }

    /// Every unordered triangle {a<b<c}, enumerated directly.
    std::uint64_t total_triangles() const {
        std::uint64_t t = 0;
        for (std::uint32_t a = 0; a < adj.size(); ++a)
            for (auto b : adj[a])
                if (b > a)
                    for (auto c : adj[b])
                        if (c > b && adj[a].count(c))
                            ++t;
        return t;
    }
};

/// Discrete power-law tail fit: for each candidate xmin the approximate MLE
///   alpha = 1 + n / sum(ln(x / (xmin - 0.5)))
/// and the KS distance between the empirical tail CDF and the fitted
/// continuous-approximation CDF; the xmin with the smallest KS wins.
struct PowerLawFit {
    double alpha = 0.0;
    std::uint32_t xmin = 0;
    double ks = 0.0;
    std::size_t n_tail = 0;
};

inline PowerLawFit fit_power_law(std::vector<std::uint32_t> degrees, std::size_t min_tail = 50) {
    std::sort(degrees.begin(), degrees.end());
    std::vector<std::uint32_t> candidates;
    for (auto d : degrees)
        if (d >= 1 && (candidates.empty() || candidates.back() != d))
            candidates.push_back(d);

    PowerLawFit best;
    best.ks = std::numeric_limits<double>::infinity();
    for (auto xmin : candidates) {
        auto first = std::lower_bound(degrees.begin(), degrees.end(), xmin);
        const std::size_t n = static_cast<std::size_t>(degrees.end() - first);
        if (n < min_tail)
            break;
        double s = 0.0;
        for (auto it = first; it != degrees.end(); ++it)
            s += std::log(static_cast<double>(*it) / (xmin - 0.5));
        if (s <= 0.0)
            continue;
        const double alpha = 1.0 + static_cast<double>(n) / s;
        // KS over distinct tail values.
        double ks = 0.0;
        std::size_t i = 0;
        for (auto it = first; it != degrees.end();) {
            auto next = std::upper_bound(it, degrees.end(), *it);
            i += static_cast<std::size_t>(next - it);
            const double emp = static_cast<double>(i) / static_cast<double>(n);
            const double model =
                1.0 - std::pow((*it + 0.5) / (xmin - 0.5), 1.0 - alpha);
            ks = std::max(ks, std::abs(emp - model));
            it = next;
        }
        if (ks < best.ks)
            best = {alpha, xmin, ks, n};
    }
    return best;
}

/// Observed vs expected counts pooled from the top so every pooled bin has
/// expected >= 5. Returns (chi2, degrees of freedom before parameter loss).
inline std::pair<double, int> chi_square(const std::map<std::uint32_t, double>& observed,
                                         const std::map<std::uint32_t, double>& expected) {
    double chi2 = 0.0;
    int bins = 0;
    double obs_acc = 0.0, exp_acc = 0.0;
    for (auto it = expected.begin(); it != expected.end(); ++it) {
        exp_acc += it->second;
        auto o = observed.find(it->first);
        obs_acc += o == observed.end() ? 0.0 : o->second;
        if (exp_acc >= 5.0) {
            chi2 += (obs_acc - exp_acc) * (obs_acc - exp_acc) / exp_acc;
            ++bins;
            obs_acc = exp_acc = 0.0;
        }
    }
    if (exp_acc > 0.0) {
        // Leftover tail mass folds into its own bin.
        chi2 += (obs_acc - exp_acc) * (obs_acc - exp_acc) / exp_acc;
        ++bins;
    }
    return {chi2, bins - 1};
}

/// Discrete power-law pmf on k >= xmin, P(k) = k^-alpha / zeta(alpha, xmin).
/// The Hurwitz zeta is summed directly to 10^5 terms past xmin plus an
/// integral tail.
inline double power_law_pmf(double alpha, std::uint32_t xmin, std::uint32_t k) {
    if (k < xmin)
        return 0.0;
    const double last = static_cast<double>(xmin) + 1e5;
    double z = 0.0;
    for (double x = xmin; x < last; x += 1.0)
        z += std::pow(x, -alpha);
    z += std::pow(last - 0.5, 1.0 - alpha) / (alpha - 1.0);
    return std::pow(static_cast<double>(k), -alpha) / z;
}

/// Binomial(n, p) pmf for k = 0..kmax via log-gamma.
inline double binomial_pmf(std::uint64_t n, double p, std::uint64_t k) {
    if (k > n)
        return 0.0;
    const double lg = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
    return std::exp(lg + k * std::log(p) + (n - k) * std::log1p(-p));
}

/// Upper tail of the chi-square distribution, P(X >= x).
inline double chi_square_sf(double x, int dof) {
    return boost::math::cdf(boost::math::complement(boost::math::chi_squared(dof), x));
}

/// Least-squares slope of log(y) against log(x).
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace linkdyn::oracle
