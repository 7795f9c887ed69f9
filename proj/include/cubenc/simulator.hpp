#pragma once

// Monte Carlo end-to-end simulation of three-way relaying with one
// multiple-access and one broadcast channel use per symbol exchange.
//
// Per frame: six block-fading Rician gains are drawn (three MA, three BC), the
// relay picks its map from the MA gains, and every symbol slot runs
//   MA:  y_r = h_a x_a + h_b x_b + h_c x_c + z_r   -> joint ML at the relay
//   BC:  y_n = h'_n s(label) + z_n                 -> per-node ML over its slice
// Bit errors are counted on the two foreign messages each node recovers.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "cubenc/constellation.hpp"
#include "cubenc/latincube.hpp"
#include "cubenc/metrics.hpp"

namespace cubenc {

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Rician fading with a fixed, zero-phase line-of-sight component.
struct ChannelModel {
    double rician_k_db = 10.0;
    double variance_db = 0.0;  // total power E|h|^2

    double k_linear() const { return std::pow(10.0, rician_k_db / 10.0); }
    double total_power() const { return std::pow(10.0, variance_db / 10.0); }
    // K/(K+1) written to stay finite as K -> inf
    double los_fraction() const { return 1.0 / (1.0 + 1.0 / k_linear()); }
    double los_amplitude() const { return std::sqrt(total_power() * los_fraction()); }
    double scatter_variance() const { return total_power() * (1.0 - los_fraction()); }
};

/// Circularly symmetric complex Gaussian sample of total variance `variance`.
template <class Rng>
cplx complex_gaussian(Rng& rng, double variance) {
    if (variance <= 0.0) return {};
    std::normal_distribution<double> n(0.0, std::sqrt(variance / 2.0));
    const double re = n(rng);
    const double im = n(rng);
    return {re, im};
}

template <class Rng>
cplx rician_sample(const ChannelModel& model, Rng& rng) {
    return cplx{model.los_amplitude(), 0.0} + complex_gaussian(rng, model.scatter_variance());
}

using SymbolTriple = std::array<PskSymbol, 3>;

/// Joint ML detection at the relay; ties go to the smallest index triple.
inline SymbolTriple ma_phase_ml(cplx y_r, const FadeState& h) {
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (int i = 0; i < kCells; ++i) {
        const double d = std::norm(y_r - superpose(h, Cell::from_index(i)));
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    const Cell x = Cell::from_index(best);
    return {PskSymbol{x.a}, PskSymbol{x.b}, PskSymbol{x.c}};
}

/// Unit-energy t-PSK point for a cluster label.
inline cplx bc_modulate(int label, int t) {
    if (t <= 0 || label < 0 || label >= t) throw std::out_of_range("bc_modulate: label outside 0..t-1");
    return std::polar(1.0, 2.0 * std::numbers::pi * double(label) / double(t));
}

/// ML detection of the relay label among the 16 labels in node n's own slice,
/// followed by inversion of the map.
inline std::pair<PskSymbol, PskSymbol> node_decode(cplx y, cplx h_bc, const RelayMap& m, Node n, PskSymbol own) {
    const int t = m.label_count();
    int best_label = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for (Cell x : slice_cells(n, own.index())) {
        const int label = m.label(x);
        const double d = std::norm(y - h_bc * bc_modulate(label, t));
        if (d < best_d) {
            best_d = d;
            best_label = label;
        }
    }
    return invert(m, n, own, best_label);
}

enum class Scheme { Adaptive, NonAdaptive };

inline const char* scheme_name(Scheme s) { return s == Scheme::Adaptive ? "adaptive" : "fixed"; }

struct SimConfig {
    std::vector<double> snr_db_list;
    int frames = 1000;
    int frame_len_bits = 256;  // message bits per node per frame
    Scheme scheme = Scheme::Adaptive;
    std::uint64_t seed = 1;
    unsigned threads = 0;  // 0: hardware concurrency

    int slots_per_frame() const { return frame_len_bits / 2; }

    void validate() const {
        if (snr_db_list.empty()) throw ConfigError("snr list is empty");
        for (double s : snr_db_list)
            if (std::isnan(s) || s == -std::numeric_limits<double>::infinity())
                throw ConfigError("snr values must be numbers above -inf dB");
        if (frames <= 0) throw ConfigError("frames must be positive");
        if (frame_len_bits <= 0 || frame_len_bits % 2 != 0)
            throw ConfigError("frame length must be a positive multiple of 2 bits");
    }
};

struct BerRecord {
    double snr_db = 0.0;
    Node node = Node::A;
    std::int64_t bit_errors = 0;
    std::int64_t bits_total = 0;

    double ber() const { return bits_total > 0 ? double(bit_errors) / double(bits_total) : 0.0; }
};

/// The six gains of one frame.
struct FrameChannels {
    FadeState ma;
    std::array<cplx, 3> bc{};  // R-A, R-B, R-C
};

template <class Rng>
FrameChannels draw_channels(const ChannelModel& model, Rng& rng) {
    FrameChannels ch;
    ch.ma.h_a = rician_sample(model, rng);
    ch.ma.h_b = rician_sample(model, rng);
    ch.ma.h_c = rician_sample(model, rng);
    for (auto& g : ch.bc) g = rician_sample(model, rng);
    return ch;
}

/// Noise variance per complex sample for E_s/N_0 = snr_db at unit symbol energy.
inline double noise_variance(double snr_db) {
    if (snr_db == std::numeric_limits<double>::infinity()) return 0.0;
    return std::pow(10.0, -snr_db / 10.0);
}

/// Bit errors per node over `slots` symbol exchanges through map m. The same
/// map object drives the relay and all three decoders.
template <class Rng>
std::array<std::int64_t, 3> simulate_frame(const RelayMap& m, const FrameChannels& ch, double sigma2, int slots,
                                           Rng& rng) {
    std::array<std::int64_t, 3> errors{};
    std::uniform_int_distribution<int> bit(0, 1);
    const int t = m.label_count();
    for (int s = 0; s < slots; ++s) {
        std::array<BitPair, 3> msg{};
        SymbolTriple x{};
        for (std::size_t n = 0; n < 3; ++n) {
            msg[n] = {static_cast<std::uint8_t>(bit(rng)), static_cast<std::uint8_t>(bit(rng))};
            x[n] = mu(msg[n]);
        }
        const cplx y_r = superpose(ch.ma, Cell{x[0].index(), x[1].index(), x[2].index()}) + complex_gaussian(rng, sigma2);
        const SymbolTriple est = ma_phase_ml(y_r, ch.ma);
        const cplx x_r = bc_modulate(m.label(est[0], est[1], est[2]), t);

        for (Node n : kNodes) {
            const auto ni = static_cast<std::size_t>(n);
            const cplx y = ch.bc[ni] * x_r + complex_gaussian(rng, sigma2);
            const auto [p, q] = node_decode(y, ch.bc[ni], m, n, x[ni]);
            // foreign nodes in A, B, C order
            std::array<std::size_t, 2> others{};
            for (std::size_t k = 0, j = 0; k < 3; ++k)
                if (k != ni) others[j++] = k;
            for (auto [got, idx] : {std::pair{p, others[0]}, std::pair{q, others[1]}}) {
                const BitPair b = mu_inverse(got);
                errors[ni] += (b[0] != msg[idx][0]) + (b[1] != msg[idx][1]);
            }
        }
    }
    return errors;
}

namespace detail {

inline std::mt19937_64 stream(std::uint64_t seed, std::uint64_t frame, std::uint64_t sub) {
    std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(frame), std::uint32_t(frame >> 32),
                      std::uint32_t(sub)};
    return std::mt19937_64{seq};
}

}  // namespace detail

/// Runs the configured sweep and returns one record per (snr, node), in snr
/// order then A, B, C. Channel gains depend only on (seed, frame), so every
/// SNR point sees the same fading realizations; noise and data streams are
/// keyed on (seed, frame, snr index). Results are independent of the thread
/// count.
inline std::vector<BerRecord> run_sim(const SimConfig& config, const MapCatalog& catalog, const ChannelModel& model) {
    config.validate();
    if (config.scheme == Scheme::Adaptive && catalog.adaptive().empty() && !catalog.non_adaptive())
        throw ConfigError("adaptive scheme needs a non-empty map catalog");

    const std::size_t n_snr = config.snr_db_list.size();
    using Counts = std::vector<std::array<std::int64_t, 3>>;

    auto worker = [&](int first, int last, Counts& acc) {
        for (int f = first; f < last; ++f) {
            auto ch_rng = detail::stream(config.seed, std::uint64_t(f), 0);
            const FrameChannels ch = draw_channels(model, ch_rng);
            const RelayMap& m = config.scheme == Scheme::Adaptive ? select_map(catalog, ch.ma).map() : xor_map();
            for (std::size_t s = 0; s < n_snr; ++s) {
                auto rng = detail::stream(config.seed, std::uint64_t(f), 1 + s);
                const auto e =
                    simulate_frame(m, ch, noise_variance(config.snr_db_list[s]), config.slots_per_frame(), rng);
                for (std::size_t n = 0; n < 3; ++n) acc[s][n] += e[n];
            }
        }
    };

    unsigned n_threads = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
    n_threads = std::min<unsigned>(n_threads, unsigned(config.frames));
    std::vector<Counts> partial(n_threads, Counts(n_snr));
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < n_threads; ++w) {
            const int first = int(std::int64_t(config.frames) * w / n_threads);
            const int last = int(std::int64_t(config.frames) * (w + 1) / n_threads);
            pool.emplace_back(worker, first, last, std::ref(partial[w]));
        }
    }

    const std::int64_t bits_per_node = std::int64_t(config.frames) * config.slots_per_frame() * 4;
    std::vector<BerRecord> out;
    for (std::size_t s = 0; s < n_snr; ++s)
        for (Node n : kNodes) {
            BerRecord r{config.snr_db_list[s], n, 0, bits_per_node};
            for (const auto& p : partial) r.bit_errors += p[s][static_cast<std::size_t>(n)];
            out.push_back(r);
        }
    return out;
}

}  // namespace cubenc
