#include "aoisim/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <future>
#include <numeric>

namespace aoisim {

namespace {

std::int64_t round_ticks(double x) { return std::llround(x); }

std::int64_t draw_time(TimeDist dist, double mean, Rng& rng) {
    if (mean <= 0) return 0;
    if (dist == TimeDist::Deterministic) return round_ticks(mean);
    std::exponential_distribution<double> d(1.0 / mean);
    return std::max<std::int64_t>(0, round_ticks(d(rng)));
}

std::int64_t draw_failure_count(const ScenarioParams& p, Rng& rng) {
    if (p.mean_failures <= 0) return 0;
    if (p.failure_count_dist == FailureCountDist::FixedCount)
        return round_ticks(p.mean_failures);
    std::poisson_distribution<std::int64_t> d(p.mean_failures);
    return d(rng);
}

std::int64_t uniform_ticks(std::int64_t lo, std::int64_t hi, Rng& rng) {
    std::uniform_int_distribution<std::int64_t> d(lo, hi);
    return d(rng);
}

CycleTrace cycle_mixed(const ScenarioParams& p, const CheckpointPolicy& policy,
                       Rng& rng) {
    const Schedule sched = realized_schedule(p, policy);
    const std::int64_t d = sched.checkpoint_ticks;
    const std::int64_t v = round_ticks(p.restore_cost);

    CycleTrace c;
    c.idle_ticks = draw_time(p.idle_dist, p.mean_idle, rng);
    c.failures = draw_failure_count(p, rng);

    // Each failure strikes an interval with probability proportional to its
    // processing length; wasted work is uniform over {1 .. K + D}.
    std::vector<std::int64_t> prefix(sched.interval_ticks.size());
    std::partial_sum(sched.interval_ticks.begin(), sched.interval_ticks.end(),
                     prefix.begin());
    std::vector<std::int64_t> hits(sched.interval_ticks.size(), 0);
    for (std::int64_t j = 0; j < c.failures; ++j) {
        const std::int64_t tick = uniform_ticks(1, sched.processing_ticks, rng);
        const auto it = std::lower_bound(prefix.begin(), prefix.end(), tick);
        ++hits[static_cast<std::size_t>(it - prefix.begin())];
    }

    std::int64_t y = c.idle_ticks;
    for (std::size_t n = 0; n < sched.interval_ticks.size(); ++n) {
        const std::int64_t k = sched.interval_ticks[n];
        for (std::int64_t j = 0; j < hits[n]; ++j) {
            const std::int64_t wasted = uniform_ticks(1, k + d, rng);
            const std::int64_t off = draw_time(p.offtime_dist, p.mean_offtime, rng);
            c.segments.push_back(event::Failure{wasted, off, v});
            y += wasted + off + v;
        }
        c.segments.push_back(event::Processing{static_cast<int>(n), k});
        c.segments.push_back(event::Checkpoint{d});
        y += k + d;
    }
    c.segments.push_back(event::Transmit{});
    c.inter_completion = y;
    c.completion = y - c.idle_ticks;
    return c;
}

CycleTrace cycle_nvm(const ScenarioParams& p, Rng& rng) {
    const std::int64_t proc = round_ticks(p.mean_processing);
    CycleTrace c;
    c.idle_ticks = draw_time(p.idle_dist, p.mean_idle, rng);
    c.failures = draw_failure_count(p, rng);
    std::int64_t y = c.idle_ticks;
    for (std::int64_t j = 0; j < c.failures; ++j) {
        const std::int64_t off = draw_time(p.offtime_dist, p.mean_offtime, rng);
        c.segments.push_back(event::Failure{0, off, 0});
        y += off;
    }
    c.segments.push_back(event::Processing{0, proc});
    c.segments.push_back(event::Transmit{});
    y += proc;
    c.inter_completion = y;
    c.completion = y - c.idle_ticks;
    return c;
}

CycleTrace cycle_vm(const ScenarioParams& p, Rng& rng) {
    const std::int64_t proc = round_ticks(p.mean_processing);
    CycleTrace c;
    c.idle_ticks = draw_time(p.idle_dist, p.mean_idle, rng);
    c.failures = draw_failure_count(p, rng);
    std::int64_t y = c.idle_ticks;
    for (std::int64_t j = 0; j < c.failures; ++j) {
        // Failure wipes volatile state: up to the whole cycle's processing is
        // lost and the device must re-sense after a fresh idle period.
        const std::int64_t wasted = uniform_ticks(1, proc, rng);
        const std::int64_t off = draw_time(p.offtime_dist, p.mean_offtime, rng);
        const std::int64_t resense = draw_time(p.idle_dist, p.mean_idle, rng);
        c.segments.push_back(event::Failure{wasted, off + resense, 0});
        y += wasted + off + resense;
    }
    c.segments.push_back(event::Processing{0, proc});
    c.segments.push_back(event::Transmit{});
    y += proc;
    c.inter_completion = y;
    c.completion = y - c.idle_ticks;
    return c;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

constexpr std::int64_t kChunkCycles = 8192;

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(splitmix64(seed) ^ (index * 0x9E3779B97F4A7C15ull));
}

Schedule realized_schedule(const ScenarioParams& p, const CheckpointPolicy& policy) {
    Schedule s;
    s.checkpoint_ticks = std::max<std::int64_t>(1, round_ticks(p.checkpoint_cost));
    if (policy.is_single()) {
        const std::int64_t h =
            std::max<std::int64_t>(1, round_ticks(policy.as_single().checkpoints_per_cycle));
        const std::int64_t k = std::max<std::int64_t>(
            1, round_ticks(p.mean_processing / static_cast<double>(h)));
        s.interval_ticks.assign(static_cast<std::size_t>(h), k);
    } else {
        const auto& sp = policy.as_split();
        std::int64_t ha = std::max<std::int64_t>(1, round_ticks(sp.h_alpha));
        std::int64_t hb = std::max<std::int64_t>(1, round_ticks(sp.h_beta));
        const std::int64_t ka = std::max<std::int64_t>(1, round_ticks(sp.k_alpha));
        const std::int64_t kb = std::max<std::int64_t>(1, round_ticks(sp.k_beta));
        // Alternate the two interval types while both remain.
        while (ha > 0 || hb > 0) {
            if (ha > 0) {
                s.interval_ticks.push_back(ka);
                --ha;
            }
            if (hb > 0) {
                s.interval_ticks.push_back(kb);
                --hb;
            }
        }
    }
    s.processing_ticks = std::accumulate(s.interval_ticks.begin(),
                                         s.interval_ticks.end(), std::int64_t{0});
    return s;
}

CycleTrace simulate_cycle(const ScenarioParams& params, const CheckpointPolicy& policy,
                          Architecture architecture, Rng& rng) {
    switch (architecture) {
        case Architecture::MixedMemory: return cycle_mixed(params, policy, rng);
        case Architecture::NvmOnly: return cycle_nvm(params, rng);
        case Architecture::VmOnly: return cycle_vm(params, rng);
    }
    return cycle_mixed(params, policy, rng);
}

RunTrace run(const RunConfig& config) {
    validate(config.params, config.policy);
    if (config.n_cycles < 1) throw std::invalid_argument("n_cycles must be >= 1");

    const std::int64_t n_chunks = (config.n_cycles + kChunkCycles - 1) / kChunkCycles;
    std::vector<std::vector<CycleTrace>> chunks(static_cast<std::size_t>(n_chunks));

    // Each fixed-size chunk has its own derived seed, so the trace is
    // independent of how chunks are distributed across workers.
    const auto work = [&](std::int64_t c) {
        Rng rng(splitmix64(config.seed + static_cast<std::uint64_t>(c)));
        const std::int64_t lo = c * kChunkCycles;
        const std::int64_t hi = std::min(lo + kChunkCycles, config.n_cycles);
        auto& out = chunks[static_cast<std::size_t>(c)];
        out.reserve(static_cast<std::size_t>(hi - lo));
        for (std::int64_t i = lo; i < hi; ++i)
            out.push_back(simulate_cycle(config.params, config.policy,
                                         config.architecture, rng));
    };

    const int jobs = std::max(1, config.jobs);
    if (jobs == 1 || n_chunks == 1) {
        for (std::int64_t c = 0; c < n_chunks; ++c) work(c);
    } else {
        std::atomic<std::int64_t> next{0};
        std::vector<std::future<void>> workers;
        for (int w = 0; w < jobs; ++w) {
            workers.push_back(std::async(std::launch::async, [&] {
                for (std::int64_t c = next.fetch_add(1); c < n_chunks;
                     c = next.fetch_add(1))
                    work(c);
            }));
        }
        for (auto& f : workers) f.get();
    }

    RunTrace trace;
    trace.cycles.reserve(static_cast<std::size_t>(config.n_cycles));
    for (auto& chunk : chunks)
        for (auto& c : chunk) {
            trace.total_ticks += c.inter_completion;
            trace.cycles.push_back(std::move(c));
        }
    return trace;
}

AoiStats empirical_stats(const RunTrace& trace) {
    if (trace.cycles.empty()) throw EmptyTrace();
    AoiStats st;
    st.n_cycles = static_cast<std::int64_t>(trace.cycles.size());
    double sum_y = 0, sum_y_sq = 0, sum_s = 0, sum_idle = 0;
    for (const auto& c : trace.cycles) {
        const double y = static_cast<double>(c.inter_completion);
        sum_y += y;
        sum_y_sq += y * y;
        sum_s += static_cast<double>(c.completion);
        sum_idle += static_cast<double>(c.idle_ticks);
    }
    const double n = static_cast<double>(st.n_cycles);
    st.mean_y = sum_y / n;
    st.mean_y_sq = sum_y_sq / n;
    st.mean_s = sum_s / n;
    st.mean_idle = sum_idle / n;
    st.time_avg_age = st.mean_y_sq / (2.0 * st.mean_y) + st.mean_s;
    st.arrival_rate = 1.0 / st.mean_y;

    if (st.n_cycles >= 2) {
        std::vector<double> peaks;
        peaks.reserve(trace.cycles.size() - 1);
        double sum_p = 0;
        for (std::size_t i = 1; i < trace.cycles.size(); ++i) {
            const double peak =
                static_cast<double>(trace.cycles[i - 1].completion +
                                    trace.cycles[i].inter_completion);
            peaks.push_back(peak);
            sum_p += peak;
        }
        const double m = static_cast<double>(peaks.size());
        const double mean_p = sum_p / m;
        st.mean_peak_age = mean_p;
        if (peaks.size() >= 2) {
            // Consecutive peaks share a cycle, so the plain sample variance
            // understates the error of the mean. Batch means absorb the
            // short-range correlation once batches are long enough.
            const std::size_t n_batches =
                peaks.size() >= 64 ? 32 : peaks.size() / 2;
            const std::size_t batch = peaks.size() / n_batches;
            std::vector<double> batch_means;
            batch_means.reserve(n_batches);
            for (std::size_t b = 0; b < n_batches; ++b) {
                double s = 0;
                for (std::size_t i = b * batch; i < (b + 1) * batch; ++i)
                    s += peaks[i];
                batch_means.push_back(s / static_cast<double>(batch));
            }
            double center = 0;
            for (double bm : batch_means) center += bm;
            center /= static_cast<double>(batch_means.size());
            double ss = 0;
            for (double bm : batch_means) ss += (bm - center) * (bm - center);
            const double nb = static_cast<double>(batch_means.size());
            st.std_err_peak = std::sqrt(ss / (nb - 1.0) / nb);
        }
    }
    return st;
}

double integrate_sawtooth(const RunTrace& trace) {
    if (trace.cycles.empty()) throw EmptyTrace();
    if (trace.cycles.size() < 2) throw InsufficientCycles();
    double area = 0, span = 0;
    for (std::size_t i = 1; i < trace.cycles.size(); ++i) {
        const double s_prev = static_cast<double>(trace.cycles[i - 1].completion);
        const double y = static_cast<double>(trace.cycles[i].inter_completion);
        const double s = static_cast<double>(trace.cycles[i].completion);
        area += ((s_prev + y) * (s_prev + y) - s * s) / 2.0;
        span += y;
    }
    return area / span;
}

void write_trace_csv(const RunTrace& trace, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open trace file: " + path);
    out << "cycle,idle,failures,Y,S,peak\n";
    for (std::size_t i = 0; i < trace.cycles.size(); ++i) {
        const auto& c = trace.cycles[i];
        out << (i + 1) << ',' << c.idle_ticks << ',' << c.failures << ','
            << c.inter_completion << ',' << c.completion << ',';
        if (i > 0)
            out << (trace.cycles[i - 1].completion + c.inter_completion);
        out << '\n';
    }
    if (!out) throw std::runtime_error("failed writing trace file: " + path);
}

}  // namespace aoisim
