#include "eitmotion/kinetic_mc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "eitmotion/errors.hpp"
#include "eitmotion/velocity_integrals.hpp"

namespace eitmotion {

namespace {

constexpr uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void mulhilo(uint32_t a, uint32_t b, uint32_t& hi, uint32_t& lo) {
    uint64_t p = static_cast<uint64_t>(a) * b;
    hi = static_cast<uint32_t>(p >> 32);
    lo = static_cast<uint32_t>(p);
}

} // namespace

PhiloxStream::PhiloxStream(uint64_t seed, uint64_t substream)
    : key_{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32)},
      sub_lo_(static_cast<uint32_t>(substream)),
      sub_hi_(static_cast<uint32_t>(substream >> 32)) {}

std::array<uint32_t, 4> PhiloxStream::encrypt(std::array<uint32_t, 4> ctr,
                                              std::array<uint32_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
        uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kPhiloxM0, ctr[0], hi0, lo0);
        mulhilo(kPhiloxM1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += kPhiloxW0;
        key[1] += kPhiloxW1;
    }
    return ctr;
}

double PhiloxStream::uniform() {
    if (u_have_ == 0) {
        const auto x = encrypt({static_cast<uint32_t>(block_),
                                static_cast<uint32_t>(block_ >> 32), sub_lo_, sub_hi_},
                               key_);
        ++block_;
        const uint64_t w0 = (static_cast<uint64_t>(x[0]) << 32) | x[1];
        const uint64_t w1 = (static_cast<uint64_t>(x[2]) << 32) | x[3];
        // 53-bit mantissa, offset by half an ulp so 0 and 1 are excluded
        u_buf_[0] = (static_cast<double>(w0 >> 11) + 0.5) * 0x1.0p-53;
        u_buf_[1] = (static_cast<double>(w1 >> 11) + 0.5) * 0x1.0p-53;
        u_have_ = 2;
    }
    return u_buf_[--u_have_];
}

double PhiloxStream::normal() {
    if (n_have_) {
        n_have_ = false;
        return n_buf_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * M_PI * u2;
    n_buf_ = r * std::sin(phi);
    n_have_ = true;
    return r * std::cos(phi);
}

double PhiloxStream::exponential(double rate) {
    return -std::log(uniform()) / rate;
}

void McConfig::validate(const MediumParams& m, const BeamParams& b, double omega) const {
    if (!seed.has_value())
        throw ValidationError("McConfig.seed: required, no default");
    if (n_atoms < 1)
        throw ValidationError("McConfig.n_atoms: must be >= 1");
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw ValidationError("McConfig.dt: must be positive and finite");
    if (!(t_total > 0.0) || !std::isfinite(t_total))
        throw ValidationError("McConfig.t_total: must be positive and finite");
    if (!std::isfinite(probe_drive) || probe_drive == 0.0)
        throw ValidationError("McConfig.probe_drive: must be finite and nonzero");
    const double fastest = std::max({m.Gamma_d + m.gamma, std::abs(b.Delta_1 + omega),
                                     m.v_th * b.q1});
    if (dt > 0.1 / fastest)
        throw ValidationError("McConfig.dt: must satisfy dt <= 0.1 / max(Gamma_d + gamma, "
                              "|Delta_1 + omega|, v_th q1)");
}

namespace {

struct EnvelopeMatrix {
    Complex m00, m01, m10, m11; // d sigma/dt = M sigma + (i drive, 0)
    Complex x31, x21;           // M^{-1} (i drive, 0); stationary point is -x
    bool scalar;                // drive off: sigma21 decoupled and identically 0
};

// One exact advance over a segment of constant velocity:
//   sigma(tau) = E sigma(0) + (E - I) x,   E = exp(M tau).
struct SegmentStep {
    Complex e00, e01, e10, e11;
    Complex a31, a21;
};

inline Complex sinhc(Complex z) {
    if (std::abs(z) < 1e-4) {
        const Complex z2 = z * z;
        return 1.0 + z2 * (1.0 / 6.0) + z2 * z2 * (1.0 / 120.0);
    }
    return std::sinh(z) / z;
}

EnvelopeMatrix envelope_matrix(const std::array<double, 3>& v,
                               const std::array<double, 3>& k_perp, double omega,
                               const MediumParams& m, const BeamParams& b,
                               double drive) {
    const Complex i1(0.0, 1.0);
    const double u1 = k_perp[0] * v[0] + k_perp[1] * v[1] + (k_perp[2] + b.q1) * v[2];
    const double u2 = (k_perp[0] + b.delta_q[0]) * v[0] + (k_perp[1] + b.delta_q[1]) * v[1] +
                      (k_perp[2] + b.delta_q[2]) * v[2];
    EnvelopeMatrix em;
    em.m00 = i1 * (b.Delta_1 + omega - u1) - m.Gamma_d;
    em.m11 = i1 * (b.Delta + omega - u2) - m.Gamma_21;
    em.m01 = i1 * b.Omega_2;
    em.m10 = i1 * std::conj(b.Omega_2);
    em.scalar = (b.Omega_2 == Complex{0.0, 0.0});
    const Complex s0 = i1 * drive;
    if (em.scalar) {
        em.x31 = s0 / em.m00;
        em.x21 = 0.0;
    } else {
        const Complex det = em.m00 * em.m11 - em.m01 * em.m10;
        em.x31 = em.m11 * s0 / det;
        em.x21 = -em.m10 * s0 / det;
    }
    return em;
}

SegmentStep build_step(const EnvelopeMatrix& em, double tau) {
    SegmentStep st;
    if (em.scalar) {
        st.e00 = std::exp(em.m00 * tau);
        st.e01 = st.e10 = 0.0;
        st.e11 = std::exp(em.m11 * tau);
        st.a31 = (st.e00 - 1.0) * em.x31;
        st.a21 = 0.0;
        return st;
    }
    const Complex h = 0.5 * (em.m00 + em.m11);
    const Complex d = 0.5 * (em.m00 - em.m11);
    const Complex sq = std::sqrt(d * d + em.m01 * em.m10);
    const Complex z = sq * tau;
    const Complex eh = std::exp(h * tau);
    const Complex ch = std::cosh(z);
    const Complex sc = sinhc(z) * tau;
    st.e00 = eh * (ch + sc * d);
    st.e01 = eh * (sc * em.m01);
    st.e10 = eh * (sc * em.m10);
    st.e11 = eh * (ch - sc * d);
    st.a31 = (st.e00 - 1.0) * em.x31 + st.e01 * em.x21;
    st.a21 = st.e10 * em.x31 + (st.e11 - 1.0) * em.x21;
    return st;
}

inline void advance(Complex& s31, Complex& s21, const SegmentStep& st) {
    const Complex n31 = st.e00 * s31 + st.e01 * s21 + st.a31;
    const Complex n21 = st.e10 * s31 + st.e11 * s21 + st.a21;
    s31 = n31;
    s21 = n21;
}

// Leave-one-block-out jackknife over weighted block sums. Returns the
// combined real+imag standard error of the weighted mean.
double jackknife_stderr(const std::vector<Complex>& block_sums,
                        const std::vector<double>& block_counts) {
    const size_t nb = block_sums.size();
    if (nb < 2)
        return 0.0;
    Complex total{0.0, 0.0};
    double count = 0.0;
    for (size_t j = 0; j < nb; ++j) {
        total += block_sums[j];
        count += block_counts[j];
    }
    std::vector<Complex> loo(nb);
    Complex loo_mean{0.0, 0.0};
    for (size_t j = 0; j < nb; ++j) {
        loo[j] = (total - block_sums[j]) / (count - block_counts[j]);
        loo_mean += loo[j];
    }
    loo_mean /= static_cast<double>(nb);
    double vr = 0.0, vi = 0.0;
    for (size_t j = 0; j < nb; ++j) {
        const Complex d = loo[j] - loo_mean;
        vr += d.real() * d.real();
        vi += d.imag() * d.imag();
    }
    const double f = static_cast<double>(nb - 1) / static_cast<double>(nb);
    return std::sqrt(f * (vr + vi));
}

} // namespace

McResult simulate_chi(const std::array<double, 3>& k_perp, double omega,
                      const MediumParams& m, const BeamParams& b,
                      const McConfig& cfg) {
    m.validate();
    b.validate();
    cfg.validate(m, b, omega);

    const double W = std::norm(b.Omega_2);
    const double gamma_hom =
        m.Gamma_21 + one_photon_K(m, b.q1, b.Delta_1).real() * W;
    if (!(gamma_hom > 0.0))
        throw ValidationError("simulate_chi: gamma_hom = Gamma_21 + Re K |Omega_2|^2 "
                              "must be positive to set the averaging window");

    const long long n_win_steps =
        static_cast<long long>(std::ceil(5.0 / (gamma_hom * cfg.dt)));
    const long long n_win = static_cast<long long>(
        std::floor(cfg.t_total / (static_cast<double>(n_win_steps) * cfg.dt)));
    if (n_win < 4)
        throw ValidationError("simulate_chi: t_total must cover at least 4 averaging "
                              "windows of 5/gamma_hom each (2 discarded, 2 compared)");
    const long long n_steps = n_win * n_win_steps;

    const long long n_blocks = std::min<long long>(100, cfg.n_atoms);
    // block_win_sums[w][j]: sum over block-j atoms of that atom's window-w mean
    std::vector<std::vector<Complex>> block_win_sums(
        static_cast<size_t>(n_win), std::vector<Complex>(static_cast<size_t>(n_blocks)));
    std::vector<double> block_sizes(static_cast<size_t>(n_blocks), 0.0);
    std::vector<double> vz_final(static_cast<size_t>(cfg.n_atoms));
    std::vector<Complex> win_sum(static_cast<size_t>(n_win));
    long long collisions = 0;

    for (long long atom = 0; atom < cfg.n_atoms; ++atom) {
        PhiloxStream rng(*cfg.seed, static_cast<uint64_t>(atom));
        std::array<double, 3> v{m.v_th * rng.normal(), m.v_th * rng.normal(),
                                m.v_th * rng.normal()};
        EnvelopeMatrix em = envelope_matrix(v, k_perp, omega, m, b, cfg.probe_drive);
        SegmentStep full = build_step(em, cfg.dt);
        // start at the collisionless stationary point; the discarded windows
        // absorb the remaining collision-induced transient
        Complex s31 = -em.x31, s21 = -em.x21;
        double to_coll =
            (m.gamma > 0.0) ? rng.exponential(m.gamma) : std::numeric_limits<double>::infinity();

        std::fill(win_sum.begin(), win_sum.end(), Complex{0.0, 0.0});
        for (long long step = 0; step < n_steps; ++step) {
            double rem = cfg.dt;
            while (to_coll < rem) {
                advance(s31, s21, build_step(em, to_coll));
                rem -= to_coll;
                v = {m.v_th * rng.normal(), m.v_th * rng.normal(), m.v_th * rng.normal()};
                em = envelope_matrix(v, k_perp, omega, m, b, cfg.probe_drive);
                full = build_step(em, cfg.dt);
                ++collisions;
                to_coll = rng.exponential(m.gamma);
            }
            if (rem == cfg.dt)
                advance(s31, s21, full);
            else
                advance(s31, s21, build_step(em, rem));
            to_coll -= rem;
            win_sum[static_cast<size_t>(step / n_win_steps)] += s31;
        }

        const size_t blk = static_cast<size_t>(atom * n_blocks / cfg.n_atoms);
        for (long long w = 0; w < n_win; ++w)
            block_win_sums[static_cast<size_t>(w)][blk] +=
                win_sum[static_cast<size_t>(w)] / static_cast<double>(n_win_steps);
        block_sizes[blk] += 1.0;
        vz_final[static_cast<size_t>(atom)] = v[2];
    }

    McResult res;
    res.discarded_windows = 2;
    res.collisions = collisions;
    res.window_means.resize(static_cast<size_t>(n_win));
    for (long long w = 0; w < n_win; ++w) {
        Complex s{0.0, 0.0};
        for (long long j = 0; j < n_blocks; ++j)
            s += block_win_sums[static_cast<size_t>(w)][static_cast<size_t>(j)];
        res.window_means[static_cast<size_t>(w)] =
            m.coupling * s / static_cast<double>(cfg.n_atoms);
    }

    // steady-state estimate over the kept windows, jackknife over atom blocks
    std::vector<Complex> kept_sums(static_cast<size_t>(n_blocks), Complex{0.0, 0.0});
    std::vector<double> kept_counts(static_cast<size_t>(n_blocks), 0.0);
    for (long long w = 2; w < n_win; ++w)
        for (long long j = 0; j < n_blocks; ++j)
            kept_sums[static_cast<size_t>(j)] +=
                block_win_sums[static_cast<size_t>(w)][static_cast<size_t>(j)];
    for (long long j = 0; j < n_blocks; ++j)
        kept_counts[static_cast<size_t>(j)] =
            block_sizes[static_cast<size_t>(j)] * static_cast<double>(n_win - 2);
    Complex total{0.0, 0.0};
    double count = 0.0;
    for (long long j = 0; j < n_blocks; ++j) {
        total += kept_sums[static_cast<size_t>(j)];
        count += kept_counts[static_cast<size_t>(j)];
    }
    res.chi = m.coupling * total / count;
    res.stderr_chi = m.coupling * jackknife_stderr(kept_sums, kept_counts);

    // stationarity: the last two windows must agree within 3 sigma
    {
        std::vector<Complex> diff_sums(static_cast<size_t>(n_blocks));
        for (long long j = 0; j < n_blocks; ++j)
            diff_sums[static_cast<size_t>(j)] =
                block_win_sums[static_cast<size_t>(n_win - 1)][static_cast<size_t>(j)] -
                block_win_sums[static_cast<size_t>(n_win - 2)][static_cast<size_t>(j)];
        Complex dsum{0.0, 0.0};
        for (long long j = 0; j < n_blocks; ++j)
            dsum += diff_sums[static_cast<size_t>(j)];
        const double dmean = std::abs(dsum) / static_cast<double>(cfg.n_atoms);
        const double dsig = jackknife_stderr(diff_sums, block_sizes);
        if (dmean > 3.0 * dsig)
            throw ConvergenceError("simulate_chi: last two averaging windows differ "
                                   "beyond 3 sigma, steady state not reached; "
                                   "increase t_total");
    }

    // KS distance of the final v_z sample against the Maxwellian marginal
    std::sort(vz_final.begin(), vz_final.end());
    const double n = static_cast<double>(cfg.n_atoms);
    double ks = 0.0;
    for (long long i = 0; i < cfg.n_atoms; ++i) {
        const double cdf =
            0.5 * std::erfc(-vz_final[static_cast<size_t>(i)] / (m.v_th * std::sqrt(2.0)));
        ks = std::max(ks, std::max(cdf - static_cast<double>(i) / n,
                                   static_cast<double>(i + 1) / n - cdf));
    }
    res.ks_vz = ks;
    return res;
}

} // namespace eitmotion
