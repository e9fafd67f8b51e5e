#pragma once
#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "eitmotion/params.hpp"

namespace eitmotion {

// Counter-based PRNG: Philox4x32 with 10 rounds, multipliers 0xD2511F53 and
// 0xCD9E8D57, Weyl key increments 0x9E3779B9 and 0xBB67AE85. Counter word
// layout: {block_lo, block_hi, substream_lo, substream_hi}; the 64-bit seed
// is the key. Streams are reproducible across platforms and atoms draw from
// disjoint substreams.
class PhiloxStream {
public:
    PhiloxStream(uint64_t seed, uint64_t substream);

    static std::array<uint32_t, 4> encrypt(std::array<uint32_t, 4> ctr,
                                           std::array<uint32_t, 2> key);

    double uniform();            // strictly inside (0,1), 53-bit resolution
    double normal();             // standard normal, Box-Muller pairs
    double exponential(double rate);

private:
    std::array<uint32_t, 2> key_;
    uint32_t sub_lo_, sub_hi_;
    uint64_t block_ = 0;
    double u_buf_[2];
    int u_have_ = 0;
    double n_buf_ = 0.0;
    bool n_have_ = false;
};

struct McConfig {
    long long n_atoms = 0;
    double dt = 0.0;      // observable sampling step
    double t_total = 0.0; // per-atom simulated time
    std::optional<uint64_t> seed;
    double probe_drive = 1.0; // linear-response source amplitude
    // Throws unless: seed set, n_atoms >= 1, probe_drive finite, and
    // dt <= 0.1 / max(Gamma_d + gamma, |Delta_1 + omega|, v_th q1).
    void validate(const MediumParams& m, const BeamParams& b, double omega) const;
};

struct McResult {
    Complex chi = {0.0, 0.0}; // coupling-scaled susceptibility estimate
    double stderr_chi = 0.0;  // jackknife standard error (combined re/im)
    double ks_vz = 0.0;       // KS distance, final v_z sample vs Maxwellian
    std::vector<Complex> window_means; // per-window estimates, all windows
    int discarded_windows = 0;
    long long collisions = 0;
};

// Monte-Carlo estimate of the probe susceptibility from the raw single-atom
// coherence equations under BGK collisions: each atom free-streams, its
// velocity fully re-thermalizes at exponential waiting times of rate gamma
// (coherences ride through unchanged), and the two-coherence system is
// advanced exactly per segment in the co-moving envelope frame (the plane
// wave phase e^{i k.r(t)} enters as the k.v Doppler shift of the envelope).
// Averaging windows are 5/gamma_hom long; the first two are discarded and a
// ConvergenceError is raised if the last two disagree beyond 3 sigma.
McResult simulate_chi(const std::array<double, 3>& k_perp, double omega,
                      const MediumParams& m, const BeamParams& b,
                      const McConfig& cfg);

} // namespace eitmotion
