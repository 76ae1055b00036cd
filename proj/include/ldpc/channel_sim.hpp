#pragma once

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <tuple>
#include <stdexcept>
#include <thread>
#include <vector>

#include "ldpc/decoder.hpp"
#include "ldpc/rng.hpp"
#include "ldpc/tanner_graph.hpp"

namespace ldpc {

/// Flip each bit independently with probability alpha. With a shared stream,
/// the flip set at alpha1 <= alpha2 is nested (same uniforms, thresholded).
inline std::vector<std::uint8_t> bsc_transmit(const std::vector<std::uint8_t>& word,
                                              double alpha, CounterRng& rng) {
    if (!(alpha >= 0.0 && alpha <= 0.5))
        throw std::invalid_argument("bsc_transmit: alpha must be in [0, 0.5]");
    std::vector<std::uint8_t> out = word;
    for (auto& bit : out)
        if (rng.uniform() < alpha) bit ^= 1;
    return out;
}

struct FERPoint {
    double alpha = 0;
    std::uint64_t trials = 0;
    std::uint64_t failures = 0;
    double fer = 0;
    double ci_low = 0, ci_high = 0;  // Wilson 95%
};

struct StopRule {
    std::uint64_t min_failures = 50;
    std::uint64_t max_trials = 100'000'000;
};

/// Wilson score interval; behaves sensibly at small failure counts, unlike
/// the Wald interval.
inline std::pair<double, double> wilson_interval(std::uint64_t failures,
                                                 std::uint64_t trials,
                                                 double z = 1.959963984540054) {
    if (trials == 0) return {0.0, 1.0};
    double n = static_cast<double>(trials);
    double p = static_cast<double>(failures) / n;
    double z2 = z * z;
    double denom = 1.0 + z2 / n;
    double center = (p + z2 / (2 * n)) / denom;
    double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

namespace detail {

inline void parallel_blocks(std::uint64_t block_count, int threads,
                            const std::function<void(std::uint64_t)>& run_block) {
    if (threads <= 1) {
        for (std::uint64_t b = 0; b < block_count; ++b) run_block(b);
        return;
    }
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (std::uint64_t b; (b = next.fetch_add(1)) < block_count;) run_block(b);
        });
    for (auto& th : pool) th.join();
}

constexpr std::uint64_t kTrialBatch = 1 << 13;  // fixed, so stopping points are thread-count invariant

}  // namespace detail

/// Monte Carlo FER under the all-zero-codeword convention. Trial t draws its
/// flips from CounterRng(seed, t), so the outcome of every trial is fixed by
/// (seed, t) regardless of worker count; stopping is evaluated only at fixed
/// batch boundaries for the same reason.
inline FERPoint fer_estimate(const TannerGraph& g, double alpha, const StopRule& stop,
                             const DecoderConfig& cfg = {}, std::uint64_t seed = 0,
                             int threads = 1) {
    if (!(alpha >= 0.0 && alpha <= 0.5))
        throw std::invalid_argument("fer_estimate: alpha must be in [0, 0.5]");
    if (stop.min_failures < 1)
        throw std::invalid_argument("fer_estimate: min_failures must be >= 1");

    const int n = g.n;
    FERPoint pt;
    pt.alpha = alpha;

    std::uint64_t trials_done = 0, failures = 0;
    while (trials_done < stop.max_trials && failures < stop.min_failures) {
        std::uint64_t batch = std::min(detail::kTrialBatch, stop.max_trials - trials_done);
        std::uint64_t first = trials_done;
        int nthreads = std::max(1, threads);
        std::vector<std::uint64_t> per_chunk(nthreads, 0);
        std::uint64_t chunk = (batch + nthreads - 1) / nthreads;
        detail::parallel_blocks(nthreads, nthreads, [&](std::uint64_t b) {
            Decoder dec(g, cfg);
            std::vector<std::uint8_t> word(n);
            std::uint64_t lo = first + b * chunk;
            std::uint64_t hi = std::min(first + batch, lo + chunk);
            std::uint64_t local = 0;
            for (std::uint64_t t = lo; t < hi; ++t) {
                CounterRng rng(seed, t);
                bool any = false;
                for (int i = 0; i < n; ++i) {
                    word[i] = rng.uniform() < alpha ? 1 : 0;
                    any |= word[i];
                }
                if (!any) continue;  // all-zero received word always decodes
                auto outcome = dec.decode(word);
                if (outcome.status != DecodeStatus::Converged ||
                    !outcome.residual_error_support.empty())
                    ++local;
            }
            per_chunk[b] = local;
        });
        for (auto f : per_chunk) failures += f;
        trials_done += batch;
    }

    pt.trials = trials_done;
    pt.failures = failures;
    pt.fer = trials_done ? static_cast<double>(failures) / trials_done : 0.0;
    std::tie(pt.ci_low, pt.ci_high) = wilson_interval(failures, trials_done);
    return pt;
}

struct VerifyReport {
    int t = 0;
    std::uint64_t patterns_checked = 0;  // sum over k<=t of C(n,k)
    std::vector<std::vector<int>> failures;  // sorted supports, sorted list
    double wall_time_seconds = 0;
};

namespace detail {

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

/// Colexicographic unranking of the weight-k support with the given rank.
inline void colex_unrank(std::uint64_t rank, int k, std::vector<int>& support) {
    support.resize(k);
    for (int i = k; i >= 1; --i) {
        // Largest a with C(a, i) <= rank.
        int a = i - 1;
        while (binomial(a + 1, i) <= rank) ++a;
        support[i - 1] = a;
        rank -= binomial(a, i);
    }
}

}  // namespace detail

/// Decode every error pattern of weight 1..t; report each failure with its
/// support. Pattern order and parallel partitioning never change the report.
inline VerifyReport exhaustive_verify(const TannerGraph& g, int t,
                                      const DecoderConfig& cfg = {},
                                      std::uint64_t budget = 100'000'000,
                                      int threads = 1) {
    auto start = std::chrono::steady_clock::now();
    VerifyReport rep;
    rep.t = t;
    std::uint64_t total = 0;
    for (int k = 1; k <= t; ++k) total += detail::binomial(g.n, k);
    if (total > budget)
        throw std::invalid_argument("exhaustive_verify: " + std::to_string(total) +
                                    " patterns exceed budget " + std::to_string(budget));

    constexpr std::uint64_t kBlock = 4096;
    for (int k = 1; k <= t; ++k) {
        std::uint64_t count = detail::binomial(g.n, k);
        std::uint64_t blocks = (count + kBlock - 1) / kBlock;
        std::vector<std::vector<std::vector<int>>> block_failures(blocks);
        detail::parallel_blocks(blocks, std::max(1, threads), [&](std::uint64_t b) {
            Decoder dec(g, cfg);
            std::vector<int> support;
            std::uint64_t lo = b * kBlock, hi = std::min(count, lo + kBlock);
            detail::colex_unrank(lo, k, support);
            for (std::uint64_t r = lo; r < hi; ++r) {
                auto outcome = dec.decode_support(support);
                if (outcome.status != DecodeStatus::Converged ||
                    !outcome.residual_error_support.empty())
                    block_failures[b].push_back(support);
                // Next support in colex order: cheaper than unranking again.
                int i = 0;
                while (i + 1 < k && support[i] + 1 == support[i + 1]) {
                    support[i] = i;
                    ++i;
                }
                ++support[i];
            }
        });
        for (auto& bf : block_failures)
            for (auto& f : bf) rep.failures.push_back(std::move(f));
    }
    rep.patterns_checked = total;
    rep.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

/// Leading-term FER model: c_i * alpha^i, with the (1-alpha)^(n-i) factor
/// when the code length is supplied.
inline double dominant_term_model(double c_i, int i, double alpha,
                                  std::optional<int> n = std::nullopt) {
    double v = c_i * std::pow(alpha, i);
    if (n) v *= std::pow(1.0 - alpha, *n - i);
    return v;
}

struct SlopeFit {
    double slope = 0;
    double intercept = 0;  // log(c_i) in the dominant-term model
    int points_used = 0;
    double residual = 0;  // RMS of log-FER residuals
};

/// Least-squares slope of log FER vs log alpha over points with enough
/// failures to trust the estimate.
inline SlopeFit slope_fit(const std::vector<FERPoint>& points,
                          std::uint64_t min_failures_floor = 10) {
    std::vector<std::pair<double, double>> xy;
    double amin = 1.0, amax = 0.0;
    for (const auto& p : points) {
        if (p.failures < min_failures_floor || p.fer <= 0) continue;
        xy.push_back({std::log(p.alpha), std::log(p.fer)});
        amin = std::min(amin, p.alpha);
        amax = std::max(amax, p.alpha);
    }
    if (xy.size() < 3)
        throw std::invalid_argument("slope_fit: need at least 3 usable points");
    if (amax < 4.0 * amin - 1e-12 * amin)
        throw std::invalid_argument("slope_fit: alpha range must span a factor of 4");

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [x, y] : xy) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double n = static_cast<double>(xy.size());
    SlopeFit fit;
    fit.points_used = static_cast<int>(xy.size());
    fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss = 0;
    for (auto [x, y] : xy) {
        double r = y - (fit.intercept + fit.slope * x);
        ss += r * r;
    }
    fit.residual = std::sqrt(ss / n);
    return fit;
}

}  // namespace ldpc
