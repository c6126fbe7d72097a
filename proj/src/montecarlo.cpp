#include "swiptsec/montecarlo.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

#include "swiptsec/rng.hpp"

namespace swiptsec {
namespace montecarlo {

namespace {

constexpr std::uint64_t kChunkSize = 4096;
constexpr double kZ95 = 1.959963984540054;  // two-sided 95% normal quantile

struct ChunkTotals {
    std::uint64_t outage_count = 0;
    double sum_eh = 0.0;
    double sumsq_eh = 0.0;
    double sum_sec = 0.0;
    double sumsq_sec = 0.0;
};

ChunkTotals run_chunk(const SimSpec& spec, Side track_eh_side,
                      std::uint64_t chunk_index, std::uint64_t count) {
    const SystemParams& p = spec.params;
    const double k_s = effective_snr_coeff(p, Side::Main, CoeffConvention::Rederived);
    const double k_e = effective_snr_coeff(p, Side::Eve, CoeffConvention::Rederived);
    const double mean_s = p.fading_mean_s();
    const double mean_e = p.fading_mean_e();
    const bool coop = spec.mode == EveMode::Cooperative;

    RandomStream stream(spec.seed, chunk_index);
    ChunkTotals t;
    for (std::uint64_t j = 0; j < count; ++j) {
        const double hs_pow = sample_fading_power(p.m_s, mean_s, stream);
        const double hs_hat = corrupt_csi(std::sqrt(hs_pow), p.delta_s, stream);

        double chi_e = 0.0;
        double eve_hat_sq_sum = 0.0;
        for (int i = 0; i < p.n_eves; ++i) {
            const double he_pow = sample_fading_power(p.m_e, mean_e, stream);
            const double he_hat = corrupt_csi(std::sqrt(he_pow), p.delta_e, stream);
            eve_hat_sq_sum += he_hat * he_hat;
            const double chi_ie = k_e * he_pow;
            chi_e = coop ? chi_e + chi_ie : std::max(chi_e, chi_ie);
        }

        const double chi_s = k_s * hs_pow;
        const double sec = secrecy_rate(chi_s, chi_e, spec.arch);
        if (sec < p.r_s)
            ++t.outage_count;
        t.sum_sec += sec;
        t.sumsq_sec += sec * sec;

        const double eh = track_eh_side == Side::Main
                              ? harvested_energy(p, hs_hat * hs_hat, Side::Main)
                              : harvested_energy(p, eve_hat_sq_sum, Side::Eve);
        t.sum_eh += eh;
        t.sumsq_eh += eh * eh;
    }
    return t;
}

// Runs all chunks (possibly on several threads) and reduces the per-chunk
// totals in chunk-index order, so the result does not depend on scheduling.
ChunkTotals run_all(const SimSpec& spec, Side track_eh_side) {
    spec.validate();
    const std::uint64_t n = spec.n_samples;
    const std::uint64_t n_chunks = (n + kChunkSize - 1) / kChunkSize;
    std::vector<ChunkTotals> partial(n_chunks);

    auto worker_body = [&](std::atomic<std::uint64_t>& next) {
        for (;;) {
            const std::uint64_t c = next.fetch_add(1);
            if (c >= n_chunks)
                return;
            const std::uint64_t first = c * kChunkSize;
            const std::uint64_t count = std::min(kChunkSize, n - first);
            partial[c] = run_chunk(spec, track_eh_side, c, count);
        }
    };

    const std::uint64_t n_threads =
        std::min<std::uint64_t>(static_cast<std::uint64_t>(spec.workers), n_chunks);
    std::atomic<std::uint64_t> next{0};
    if (n_threads <= 1) {
        worker_body(next);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (std::uint64_t i = 0; i < n_threads; ++i)
            pool.emplace_back([&] { worker_body(next); });
        for (std::thread& th : pool)
            th.join();
    }

    ChunkTotals total;
    for (const ChunkTotals& t : partial) {
        total.outage_count += t.outage_count;
        total.sum_eh += t.sum_eh;
        total.sumsq_eh += t.sumsq_eh;
        total.sum_sec += t.sum_sec;
        total.sumsq_sec += t.sumsq_sec;
    }
    return total;
}

double mean_ci_halfwidth(double sum, double sumsq, std::uint64_t n) {
    const double nn = static_cast<double>(n);
    const double mean = sum / nn;
    if (n < 2)
        return 0.0;
    const double var = std::max(0.0, (sumsq - nn * mean * mean) / (nn - 1.0));
    return kZ95 * std::sqrt(var / nn);
}

}  // namespace

void SimSpec::validate() const {
    params.validate();
    if (n_samples < 1000)
        throw std::domain_error("SimSpec: n_samples must be at least 1000");
    if (workers < 1)
        throw std::domain_error("SimSpec: workers must be at least 1");
}

OutageEstimate simulate_outage(const SimSpec& spec) {
    const ChunkTotals t = run_all(spec, Side::Main);
    const double n = static_cast<double>(spec.n_samples);
    const double p_hat = static_cast<double>(t.outage_count) / n;

    OutageEstimate est;
    est.method = Method::monte_carlo;
    est.value = p_hat;
    est.raw_value = p_hat;
    est.ci_halfwidth = kZ95 * std::sqrt(p_hat * (1.0 - p_hat) / n);
    est.draws = spec.n_samples;
    return est;
}

EnergySecrecyPoint simulate_energy_secrecy(const SimSpec& spec, Side track_eh_side) {
    const ChunkTotals t = run_all(spec, track_eh_side);
    const double n = static_cast<double>(spec.n_samples);

    EnergySecrecyPoint pt;
    pt.rho_s = spec.params.rho_s;
    pt.mean_eh = t.sum_eh / n;
    pt.eh_ci = mean_ci_halfwidth(t.sum_eh, t.sumsq_eh, spec.n_samples);
    pt.ergodic_secrecy = t.sum_sec / n;
    pt.secrecy_ci = mean_ci_halfwidth(t.sum_sec, t.sumsq_sec, spec.n_samples);
    pt.outage = static_cast<double>(t.outage_count) / n;
    pt.outage_ci = kZ95 * std::sqrt(pt.outage * (1.0 - pt.outage) / n);
    pt.draws = spec.n_samples;
    return pt;
}

}  // namespace montecarlo
}  // namespace swiptsec
