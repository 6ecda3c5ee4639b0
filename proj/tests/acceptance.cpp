// Acceptance gate: one numbered criterion per invocation (all when run with no
// arguments). Each criterion prints exactly one PASS/FAIL summary line; the
// process exits non-zero if any requested criterion fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

#include "pla/pla.hpp"

using namespace pla;

namespace {

int worker_threads() {
    unsigned hw = std::thread::hardware_concurrency();
    return static_cast<int>(hw == 0 ? 1 : std::min(hw, 8u));
}

double col(const CsvTable& t, std::size_t row, const char* name) {
    for (std::size_t i = 0; i < t.header.size(); ++i)
        if (t.header[i] == name) return std::stod(t.rows[row][i]);
    std::fprintf(stderr, "missing column %s\n", name);
    std::exit(1);
}

void report(int n, bool pass, const std::string& detail) {
    std::printf("criterion %d %s: %s\n", n, pass ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
}

std::string num(double v) { return fmt(v); }

// 1. Full-scale regime: L_k=128, L_t=256, beta=0.01 at Eb/N0 = -1 dB.
//    Requires P_SPB >= 0.99, empirical P_D >= 0.999, empirical P_FA <= 0.012
//    over 1e5 trials.
bool criterion_1() {
    auto t0 = std::chrono::steady_clock::now();
    ExperimentConfig cfg;
    cfg.l_k = 128;
    cfg.l_t = 256;
    cfg.q = 4;
    cfg.tag_function = TagKind::KeyedHash;
    cfg.sweep_eb_n0_db = {-1.0};
    cfg.trials = 100000;
    cfg.target_pfa = 0.01;
    cfg.master_seed = 1;
    cfg.threads = worker_threads();
    auto table = run_auth_sweep(cfg);
    double pd = col(table, 0, "pd_empirical");
    double pfa = col(table, 0, "pfa_empirical");
    double spb = col(table, 0, "p_spb");
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool pd_ok = pd >= 0.999;
    bool pfa_ok = pfa <= 0.012;
    bool spb_ok = spb >= 0.99;
    report(1, pd_ok && pfa_ok && spb_ok,
           "full-scale regime at -1 dB: p_d=" + num(pd) + (pd_ok ? " (>=0.999 ok)" : " (<0.999)") +
               ", p_fa=" + num(pfa) + (pfa_ok ? " (<=0.012 ok)" : " (>0.012)") +
               ", p_spb=" + num(spb) + (spb_ok ? " (>=0.99 ok)" : " (<0.99)") +
               ", runtime=" + num(secs) + "s");
    return pd_ok && pfa_ok && spb_ok;
}

// 2. Desk-scale bound consistency: empirical ML error >= P_SPB - 3 binomial
//    standard errors at Eb/N0 in {-1, 3, 7} dB.
bool criterion_2() {
    ExperimentConfig cfg;
    cfg.l_k = 8;
    cfg.l_t = 16;
    cfg.q = 4;
    cfg.tag_function = TagKind::SeededCodebook;
    cfg.codebook_seed = 1;
    cfg.sweep_eb_n0_db = {-1.0, 3.0, 7.0};
    cfg.trials = 10000;
    cfg.master_seed = 2;
    cfg.attack = AttackKind::Ml;
    cfg.threads = worker_threads();
    auto table = run_attack_sweep(cfg);
    bool ok = true;
    std::string detail = "ml error vs sphere-packing bound:";
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        double pe = col(table, r, "pe_empirical");
        double se = col(table, r, "pe_stderr");
        double spb = col(table, r, "p_spb");
        bool point_ok = pe >= spb - 3.0 * se;
        ok = ok && point_ok;
        detail += " [" + num(col(table, r, "eb_n0_db")) + "dB pe=" + num(pe) +
                  " spb=" + num(spb) + (point_ok ? " ok]" : " VIOLATED]");
    }
    report(2, ok, detail);
    return ok;
}

// 3. C_2 crosses one-half at Eb/N0 = 0.19 +- 0.05 dB for rate one-half.
bool criterion_3() {
    double lo = -2.0, hi = 2.0;
    for (int i = 0; i < 60; ++i) {
        double mid = 0.5 * (lo + hi);
        (capacity_biawgn(gamma_from_eb_n0_db(mid, 0.5)).c2 < 0.5 ? lo : hi) = mid;
    }
    double crossing = 0.5 * (lo + hi);
    bool ok = std::abs(crossing - 0.19) <= 0.05;
    report(3, ok, "capacity crossing at eb_n0=" + num(crossing) + " dB (target 0.19 +- 0.05)");
    return ok;
}

// 4. Hypothesis-testing bound: d(alpha, beta) of the calibrated detector is at
//    most the exhaustive I(Y;K) estimate plus 3 standard errors (L_k=4, L_t=8,
//    gamma_t=1).
bool criterion_4() {
    auto params = make_params(4, 8, 1, 1.0 / std::sqrt(2.0), 1.0);
    SeededRandomCodebook tf(1, params);
    RngStream rng(3, 0);
    Key k_b{rng.bit_vector(params.l_k)};
    Message s{rng.bit_vector(params.l_s)};

    DetectorConfig det{0.0, 0.05, Calibration::BinomialExact};
    double rho = calibrate_threshold(tf, params, det, k_b, {}, rng);
    double alpha = 1.0 - detection_probability(rho, params);  // miss probability
    double beta = expected_far_binomial(rho, params);
    double d = d_alpha_beta(alpha, beta);

    auto mi = mutual_information_exact(tf, s, params, 100000, rng);
    bool ok = d <= mi.bits + 3.0 * mi.std_err;
    report(4, ok, "d(alpha,beta)=" + num(d) + " bits vs I(Y;K)=" + num(mi.bits) + "+-" +
                      num(mi.std_err) + " (alpha=" + num(alpha) + ", beta=" + num(beta) + ")");
    return ok;
}

// 5. H0 moment anchors at L_t=256, gamma_t=0.397: eta mean within 1% of 256,
//    variance within 2% of 256/0.397, over 1e6 trials.
bool criterion_5() {
    const int l_t = 256;
    const double gamma = 0.397;
    const double sd = 1.0 / std::sqrt(gamma);
    const int trials = 1000000;
    const int n_workers = worker_threads();
    std::vector<double> sums(n_workers, 0.0), sum_sqs(n_workers, 0.0);
    RngStream key_rng(4, 0);
    Tag c{key_rng.bit_vector(l_t)};
    auto x = bpsk(c.bits);
    std::vector<std::thread> pool;
    int chunk = (trials + n_workers - 1) / n_workers;
    for (int w = 0; w < n_workers; ++w) {
        pool.emplace_back([&, w] {
            int begin = w * chunk, end = std::min(trials, begin + chunk);
            double acc = 0.0, acc_sq = 0.0;
            for (int t = begin; t < end; ++t) {
                RngStream rng(5, static_cast<std::uint64_t>(t));
                double eta = 0.0;
                for (int i = 0; i < l_t; ++i) eta += x[i] * (x[i] + sd * rng.gaussian());
                acc += eta;
                acc_sq += eta * eta;
            }
            sums[w] = acc;
            sum_sqs[w] = acc_sq;
        });
    }
    for (auto& th : pool) th.join();
    double sum = 0.0, sum_sq = 0.0;
    for (int w = 0; w < n_workers; ++w) sum += sums[w], sum_sq += sum_sqs[w];
    double mean = sum / trials;
    double var = sum_sq / trials - mean * mean;
    bool mean_ok = std::abs(mean - l_t) <= 0.01 * l_t;
    bool var_ok = std::abs(var - l_t / gamma) <= 0.02 * (l_t / gamma);
    report(5, mean_ok && var_ok,
           "H0 moments: mean=" + num(mean) + " (target 256 +-1%), var=" + num(var) +
               " (target " + num(l_t / gamma) + " +-2%)");
    return mean_ok && var_ok;
}

// 6. Impersonation direction: measured false-acceptance rate is strictly
//    decreasing in the attacker's Hamming distance d in {0, 4, 8} at L_t=16.
bool criterion_6() {
    auto params = make_params(8, 16, 1, 1.0 / std::sqrt(2.0), 4.0);
    const double rho = 8.0;
    const double sd = 1.0 / std::sqrt(params.gamma_t);
    RngStream setup(6, 0);
    Tag c_b{setup.bit_vector(16)};
    const int trials = 10000;
    std::vector<double> far;
    for (int d : {0, 4, 8}) {
        Tag c_e = c_b;
        for (int i = 0; i < d; ++i) c_e.bits[i] ^= 1;
        auto x = bpsk(c_e.bits);
        int accepts = 0;
        for (int t = 0; t < trials; ++t) {
            RngStream rng(7, static_cast<std::uint64_t>(d) * trials + t);
            ObservedTag y;
            y.gamma_t = params.gamma_t;
            y.samples.resize(16);
            for (int i = 0; i < 16; ++i) y.samples[i] = x[i] + sd * rng.gaussian();
            if (statistic(y, c_b) >= rho) ++accepts;
        }
        far.push_back(static_cast<double>(accepts) / trials);
    }
    bool ok = far[0] > far[1] && far[1] > far[2];
    report(6, ok, "false-acceptance vs distance: d=0 -> " + num(far[0]) + ", d=4 -> " +
                      num(far[1]) + ", d=8 -> " + num(far[2]) + " (strictly decreasing)");
    return ok;
}

// 7. Numerical self-consistency: doubling quadrature resolution moves every
//    p_spb and capacity value on the acceptance grid by less than its reported
//    abs_error_est.
bool criterion_7() {
    QuadratureOptions fine;
    fine.min_nodes *= 2;
    bool ok = true;
    int checked = 0;
    double worst = 0.0;
    for (int l_t : {16, 64, 256}) {
        for (double db : {-1.0, 3.0, 7.0}) {
            double g = gamma_from_eb_n0_db(db, 0.5);
            auto base = p_spb(l_t, 0.5, g);
            auto refined = p_spb(l_t, 0.5, g, fine);
            double delta = std::abs(refined.p_e_lower - base.p_e_lower);
            worst = std::max(worst, delta - base.abs_error_est);
            ok = ok && delta < base.abs_error_est;
            ++checked;
        }
    }
    for (double g : {0.1, 0.397, 0.522, 1.0, 5.0}) {
        auto base = capacity_biawgn(g);
        auto refined = capacity_biawgn(g, fine);
        double delta = std::abs(refined.c2 - base.c2);
        worst = std::max(worst, delta - base.abs_error_est);
        ok = ok && delta < base.abs_error_est;
        ++checked;
    }
    report(7, ok, "refinement self-consistency on " + std::to_string(checked) +
                      " grid points, worst (delta - est) = " + num(worst));
    return ok;
}

// 8. Reproducibility: the auth sweep yields byte-identical CSV for serial and
//    parallel execution with the same seed.
bool criterion_8() {
    ExperimentConfig cfg;
    cfg.l_k = 8;
    cfg.l_t = 16;
    cfg.q = 4;
    cfg.tag_function = TagKind::SeededCodebook;
    cfg.codebook_seed = 1;
    cfg.sweep_eb_n0_db = {-1.0, 3.0};
    cfg.trials = 2000;
    cfg.master_seed = 8;
    cfg.threads = 1;
    std::string serial = run_auth_sweep(cfg).to_string();
    std::string serial_again = run_auth_sweep(cfg).to_string();
    cfg.threads = 4;
    std::string parallel = run_auth_sweep(cfg).to_string();
    bool ok = serial == serial_again && serial == parallel;
    report(8, ok, ok ? "serial and 4-thread auth sweeps are byte-identical"
                     : "csv output differs across runs");
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    bool (*criteria[])() = {criterion_1, criterion_2, criterion_3, criterion_4,
                            criterion_5, criterion_6, criterion_7, criterion_8};
    bool all_ok = true;
    if (argc > 1) {
        for (int i = 1; i < argc; ++i) {
            int n = std::atoi(argv[i]);
            if (n < 1 || n > 8) {
                std::fprintf(stderr, "unknown criterion %s (expected 1..8)\n", argv[i]);
                return 2;
            }
            all_ok = criteria[n - 1]() && all_ok;
        }
    } else {
        for (auto* c : criteria) all_ok = c() && all_ok;
    }
    return all_ok ? 0 : 1;
}
