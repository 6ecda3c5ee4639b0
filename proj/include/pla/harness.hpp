#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "pla/adversary.hpp"
#include "pla/bounds.hpp"
#include "pla/detector.hpp"
#include "pla/errors.hpp"
#include "pla/tag_codec.hpp"
#include "pla/waveform.hpp"

namespace pla {

enum class TagKind { SeededCodebook, KeyedHash };
enum class AttackKind { None, Ml, Impersonation };

// Flat key-value experiment description; gamma_t is derived per sweep point
// from Eb/N0 = gamma_t / R_c.
struct ExperimentConfig {
    int l_k = 8;
    int l_t = 16;
    int q = 4;
    double rho_t = 0.70710678118654752440;
    TagKind tag_function = TagKind::SeededCodebook;
    std::uint64_t codebook_seed = 1;
    std::vector<double> sweep_eb_n0_db;
    int trials = 10000;
    double target_pfa = 0.01;
    std::uint64_t master_seed = 1;
    AttackKind attack = AttackKind::None;
    Calibration calibration = Calibration::BinomialExact;
    int mc_samples = 10000;
    int threads = 1;

    double rc() const { return static_cast<double>(l_k) / l_t; }

    SystemParams params_at(double eb_n0_db) const {
        return make_params(l_k, l_t, q, rho_t, gamma_from_eb_n0_db(eb_n0_db, rc()));
    }

    std::unique_ptr<TagFunction> make_tag_function(const SystemParams& params) const {
        if (tag_function == TagKind::SeededCodebook)
            return std::make_unique<SeededRandomCodebook>(codebook_seed, params);
        return std::make_unique<KeyedHash>(params);
    }

    void validate() const {
        if (trials < 1) throw config_error("config: trials must be >= 1");
        if (sweep_eb_n0_db.empty()) throw config_error("config: sweep_eb_n0_db must be non-empty");
        if (!(target_pfa > 0.0 && target_pfa < 1.0))
            throw config_error("config: target_pfa must lie in (0, 1)");
        if (threads < 1) throw config_error("config: threads must be >= 1");
        params_at(sweep_eb_n0_db.front());  // surfaces geometry errors early
    }
};

namespace detail {

inline std::string trim(const std::string& s) {
    auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

template <class T>
T parse_number(const std::string& v, int line, const char* key) {
    std::istringstream iss(v);
    T out;
    iss >> out;
    bool bad = iss.fail();
    iss.clear();
    auto pos = iss.tellg();
    auto consumed = pos == -1 ? v.size() : static_cast<std::size_t>(pos);
    if (bad || !detail::trim(v.substr(consumed)).empty())
        throw config_error("config line " + std::to_string(line) + ": bad value for " + key);
    return out;
}

}  // namespace detail

inline ExperimentConfig parse_config(std::istream& in) {
    ExperimentConfig cfg;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error("config line " + std::to_string(line_no) + ": expected key = value");
        std::string key = detail::trim(line.substr(0, eq));
        std::string val = detail::trim(line.substr(eq + 1));
        if (key == "l_k") cfg.l_k = detail::parse_number<int>(val, line_no, "l_k");
        else if (key == "l_t") cfg.l_t = detail::parse_number<int>(val, line_no, "l_t");
        else if (key == "q") cfg.q = detail::parse_number<int>(val, line_no, "q");
        else if (key == "rho_t") cfg.rho_t = detail::parse_number<double>(val, line_no, "rho_t");
        else if (key == "tag_function") {
            if (val == "seeded_codebook") cfg.tag_function = TagKind::SeededCodebook;
            else if (val == "keyed_hash") cfg.tag_function = TagKind::KeyedHash;
            else throw config_error("config line " + std::to_string(line_no) + ": unknown tag_function");
        } else if (key == "codebook_seed")
            cfg.codebook_seed = detail::parse_number<std::uint64_t>(val, line_no, "codebook_seed");
        else if (key == "sweep_eb_n0_db") {
            cfg.sweep_eb_n0_db.clear();
            std::istringstream iss(val);
            std::string item;
            while (std::getline(iss, item, ','))
                cfg.sweep_eb_n0_db.push_back(
                    detail::parse_number<double>(detail::trim(item), line_no, "sweep_eb_n0_db"));
        } else if (key == "trials")
            cfg.trials = detail::parse_number<int>(val, line_no, "trials");
        else if (key == "target_pfa")
            cfg.target_pfa = detail::parse_number<double>(val, line_no, "target_pfa");
        else if (key == "master_seed")
            cfg.master_seed = detail::parse_number<std::uint64_t>(val, line_no, "master_seed");
        else if (key == "attack") {
            if (val == "none") cfg.attack = AttackKind::None;
            else if (val == "ml") cfg.attack = AttackKind::Ml;
            else if (val == "impersonation") cfg.attack = AttackKind::Impersonation;
            else throw config_error("config line " + std::to_string(line_no) + ": unknown attack");
        } else if (key == "calibration") {
            if (val == "binomial_exact") cfg.calibration = Calibration::BinomialExact;
            else if (val == "monte_carlo") cfg.calibration = Calibration::MonteCarlo;
            else throw config_error("config line " + std::to_string(line_no) + ": unknown calibration");
        } else if (key == "mc_samples")
            cfg.mc_samples = detail::parse_number<int>(val, line_no, "mc_samples");
        else if (key == "threads")
            cfg.threads = detail::parse_number<int>(val, line_no, "threads");
        else
            throw config_error("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    return cfg;
}

inline ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("config: cannot open " + path);
    return parse_config(in);
}

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string to_string() const {
        std::string out;
        for (std::size_t i = 0; i < header.size(); ++i)
            out += (i ? "," : "") + header[i];
        out += "\n";
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i)
                out += (i ? "," : "") + row[i];
            out += "\n";
        }
        return out;
    }
};

inline std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

namespace detail {

inline std::uint64_t point_master(std::uint64_t master_seed, std::size_t point) {
    return mix64(master_seed + (point + 1) * kGolden);
}

// Stream ids reserved for per-point setup draws; trial streams use [0, 2*trials).
inline constexpr std::uint64_t kKeyStream = ~std::uint64_t{0};
inline constexpr std::uint64_t kCalibStream = ~std::uint64_t{0} - 1;

struct TrialCounts {
    std::int64_t accepts = 0;
    std::int64_t false_accepts = 0;
};

// Runs [begin, end) trials; per-trial streams make the result independent of
// scheduling, so parallel partitions reproduce the serial counts exactly.
inline TrialCounts run_auth_trials(const ExperimentConfig& cfg, const SystemParams& params,
                                   const TagFunction& tf, const Key& k_b, double threshold,
                                   std::uint64_t pm, int begin, int end) {
    const double noise_var = params.q * params.rho_t * params.rho_t / params.gamma_t;
    DetectorConfig det{threshold, cfg.target_pfa, cfg.calibration, cfg.mc_samples};
    TrialCounts counts;
    for (int t = begin; t < end; ++t) {
        {
            RngStream rng(pm, 2 * static_cast<std::uint64_t>(t));
            Message s{rng.bit_vector(params.l_s)};
            Tag tag = tf.encode(s, k_b);
            auto u = superpose(s, tag, params);
            auto r = awgn(u, noise_var, rng);
            auto y = cancel_and_despread(r, s, params);
            if (verify(y, s, k_b, tf, det).decision == Decision::Accept) ++counts.accepts;
        }
        {
            RngStream rng(pm, 2 * static_cast<std::uint64_t>(t) + 1);
            Message s{rng.bit_vector(params.l_s)};
            Key k_e{rng.bit_vector(params.l_k)};
            Tag tag_e = tf.encode(s, k_e);
            auto u = superpose(s, tag_e, params);
            auto r = awgn(u, noise_var, rng);
            auto y = cancel_and_despread(r, s, params);
            if (verify(y, s, k_b, tf, det).decision == Decision::Accept) ++counts.false_accepts;
        }
    }
    return counts;
}

template <class Count, class Work>
Count parallel_counts(int trials, int threads, Work&& work) {
    int n_workers = std::min(threads, trials);
    if (n_workers <= 1) return work(0, trials);
    std::vector<Count> partial(n_workers);
    std::vector<std::thread> pool;
    int chunk = (trials + n_workers - 1) / n_workers;
    for (int w = 0; w < n_workers; ++w) {
        int begin = w * chunk, end = std::min(trials, begin + chunk);
        pool.emplace_back([&, w, begin, end] { partial[w] = work(begin, end); });
    }
    for (auto& th : pool) th.join();
    Count total{};
    for (const auto& p : partial) {  // fixed order, identical to serial
        total.accepts += p.accepts;
        total.false_accepts += p.false_accepts;
    }
    return total;
}

}  // namespace detail

inline CsvTable run_impersonation_sweep(const ExperimentConfig& cfg);

// Per sweep point: calibrate, run legitimate and random-key impostor trials
// through the full waveform chain, and attach the information-theoretic bounds.
inline CsvTable run_auth_sweep(const ExperimentConfig& cfg) {
    cfg.validate();
    CsvTable table;
    table.header = {"eb_n0_db", "gamma_t",      "threshold", "pd_closed_form",
                    "pd_empirical", "pfa_empirical", "p_spb",  "c2",
                    "info_secure",  "trials"};
    Key k_b{RngStream(cfg.master_seed, detail::kKeyStream).bit_vector(cfg.l_k)};
    for (std::size_t pt = 0; pt < cfg.sweep_eb_n0_db.size(); ++pt) {
        const double db = cfg.sweep_eb_n0_db[pt];
        SystemParams params = cfg.params_at(db);
        auto tf = cfg.make_tag_function(params);
        std::uint64_t pm = detail::point_master(cfg.master_seed, pt);

        DetectorConfig det{0.0, cfg.target_pfa, cfg.calibration, cfg.mc_samples};
        RngStream cal_rng(pm, detail::kCalibStream);
        double threshold = calibrate_threshold(*tf, params, det, k_b, {}, cal_rng);

        auto counts = detail::parallel_counts<detail::TrialCounts>(
            cfg.trials, cfg.threads, [&](int begin, int end) {
                return detail::run_auth_trials(cfg, params, *tf, k_b, threshold, pm, begin, end);
            });

        auto spb = p_spb(params.l_t, cfg.rc(), params.gamma_t);
        auto margin = security_margin(params);
        table.rows.push_back({fmt(db), fmt(params.gamma_t), fmt(threshold),
                              fmt(detection_probability(threshold, params)),
                              fmt(static_cast<double>(counts.accepts) / cfg.trials),
                              fmt(static_cast<double>(counts.false_accepts) / cfg.trials),
                              fmt(spb.p_e_lower), fmt(margin.c2),
                              margin.info_secure ? "1" : "0", std::to_string(cfg.trials)});
    }
    return table;
}

// Empirical ML key recovery against the sphere-packing bound at matching
// (l_t, r_c, gamma_t). Observations are taken at the post-despreading level.
inline CsvTable run_attack_sweep(const ExperimentConfig& cfg) {
    cfg.validate();
    if (cfg.attack == AttackKind::Impersonation) return run_impersonation_sweep(cfg);
    if (cfg.l_k > kEnumerableKeyBits)
        throw capability_error("attack-sweep: l_k exceeds the enumerable cap");
    CsvTable table;
    table.header = {"eb_n0_db", "gamma_t", "pe_empirical", "pe_stderr", "p_spb", "ratio", "trials"};
    for (std::size_t pt = 0; pt < cfg.sweep_eb_n0_db.size(); ++pt) {
        const double db = cfg.sweep_eb_n0_db[pt];
        SystemParams params = cfg.params_at(db);
        auto tf = cfg.make_tag_function(params);
        std::uint64_t pm = detail::point_master(cfg.master_seed, pt);
        const double sd = 1.0 / std::sqrt(params.gamma_t);

        struct ErrCount {
            std::int64_t accepts = 0;       // unused lanes of parallel_counts
            std::int64_t false_accepts = 0; // decode errors
        };
        auto work = [&](int begin, int end) {
            ErrCount c;
            for (int t = begin; t < end; ++t) {
                RngStream rng(pm, static_cast<std::uint64_t>(t));
                Message s{rng.bit_vector(params.l_s)};
                Key k_true{rng.bit_vector(params.l_k)};
                ObservedTag y;
                y.gamma_t = params.gamma_t;
                auto x = bpsk(tf->encode(s, k_true).bits);
                y.samples.resize(params.l_t);
                for (int i = 0; i < params.l_t; ++i) y.samples[i] = x[i] + sd * rng.gaussian();
                auto res = ml_decode(*tf, s, y);
                if (!(res.guessed_key && *res.guessed_key == k_true)) ++c.false_accepts;
            }
            return c;
        };
        auto counts = detail::parallel_counts<ErrCount>(cfg.trials, cfg.threads, work);

        double pe = static_cast<double>(counts.false_accepts) / cfg.trials;
        double se = std::sqrt(std::max(pe * (1.0 - pe), 0.0) / cfg.trials);
        auto spb = p_spb(params.l_t, cfg.rc(), params.gamma_t);
        table.rows.push_back({fmt(db), fmt(params.gamma_t), fmt(pe), fmt(se),
                              fmt(spb.p_e_lower),
                              fmt(spb.p_e_lower > 0.0 ? pe / spb.p_e_lower : 0.0),
                              std::to_string(cfg.trials)});
    }
    return table;
}

// Impersonation attack sweep: the attacker plays the best (s, k_E) found over
// a sampled message set; measured false-acceptance rate vs the closed form.
inline CsvTable run_impersonation_sweep(const ExperimentConfig& cfg) {
    cfg.validate();
    if (cfg.l_k > kEnumerableKeyBits)
        throw capability_error("attack-sweep: l_k exceeds the enumerable cap");
    CsvTable table;
    table.header = {"eb_n0_db", "gamma_t", "threshold", "d_star",
                    "far_closed_form", "far_empirical", "trials"};
    Key k_b{RngStream(cfg.master_seed, detail::kKeyStream).bit_vector(cfg.l_k)};
    for (std::size_t pt = 0; pt < cfg.sweep_eb_n0_db.size(); ++pt) {
        const double db = cfg.sweep_eb_n0_db[pt];
        SystemParams params = cfg.params_at(db);
        auto tf = cfg.make_tag_function(params);
        std::uint64_t pm = detail::point_master(cfg.master_seed, pt);

        DetectorConfig det{0.0, cfg.target_pfa, cfg.calibration, cfg.mc_samples};
        RngStream cal_rng(pm, detail::kCalibStream);
        double threshold = calibrate_threshold(*tf, params, det, k_b, {}, cal_rng);

        RngStream setup(pm, detail::kCalibStream - 1);
        std::vector<Message> candidates;
        for (int i = 0; i < 16; ++i) candidates.push_back(Message{setup.bit_vector(params.l_s)});
        auto plan = impersonation_search(*tf, k_b, candidates);
        Tag c_b = tf->encode(plan.message, k_b);
        Tag c_e = tf->encode(plan.message, plan.key);

        const double sd = 1.0 / std::sqrt(params.gamma_t);
        struct FarCount {
            std::int64_t accepts = 0;
            std::int64_t false_accepts = 0;
        };
        auto work = [&](int begin, int end) {
            FarCount c;
            auto x = bpsk(c_e.bits);
            for (int t = begin; t < end; ++t) {
                RngStream rng(pm, static_cast<std::uint64_t>(t));
                ObservedTag y;
                y.gamma_t = params.gamma_t;
                y.samples.resize(params.l_t);
                for (int i = 0; i < params.l_t; ++i) y.samples[i] = x[i] + sd * rng.gaussian();
                if (statistic(y, c_b) >= threshold) ++c.false_accepts;
            }
            return c;
        };
        auto counts = detail::parallel_counts<FarCount>(cfg.trials, cfg.threads, work);

        table.rows.push_back({fmt(db), fmt(params.gamma_t), fmt(threshold),
                              std::to_string(plan.d_star),
                              fmt(impersonation_far(plan.d_star, threshold, params)),
                              fmt(static_cast<double>(counts.false_accepts) / cfg.trials),
                              std::to_string(cfg.trials)});
    }
    return table;
}

// Bounds-engine tabulation over an Eb/N0 grid.
inline CsvTable tabulate_bounds(int l_t, double r_c, const std::vector<double>& sweep_eb_n0_db) {
    if (sweep_eb_n0_db.empty()) throw config_error("bounds: sweep must be non-empty");
    CsvTable table;
    table.header = {"eb_n0_db", "gamma_t", "rc", "c2", "p_spb", "theta", "abs_error_est"};
    for (double db : sweep_eb_n0_db) {
        double gamma = gamma_from_eb_n0_db(db, r_c);
        auto cap = capacity_biawgn(gamma);
        auto spb = p_spb(l_t, r_c, gamma);
        table.rows.push_back({fmt(db), fmt(gamma), fmt(r_c), fmt(cap.c2), fmt(spb.p_e_lower),
                              fmt(spb.theta), fmt(spb.abs_error_est)});
    }
    return table;
}

// Threshold calibration table for each sweep point.
inline CsvTable run_calibrate(const ExperimentConfig& cfg) {
    cfg.validate();
    CsvTable table;
    table.header = {"eb_n0_db", "gamma_t", "threshold", "pd_closed_form", "target_pfa"};
    Key k_b{RngStream(cfg.master_seed, detail::kKeyStream).bit_vector(cfg.l_k)};
    for (std::size_t pt = 0; pt < cfg.sweep_eb_n0_db.size(); ++pt) {
        const double db = cfg.sweep_eb_n0_db[pt];
        SystemParams params = cfg.params_at(db);
        auto tf = cfg.make_tag_function(params);
        DetectorConfig det{0.0, cfg.target_pfa, cfg.calibration, cfg.mc_samples};
        RngStream cal_rng(detail::point_master(cfg.master_seed, pt), detail::kCalibStream);
        double threshold = calibrate_threshold(*tf, params, det, k_b, {}, cal_rng);
        table.rows.push_back({fmt(db), fmt(params.gamma_t), fmt(threshold),
                              fmt(detection_probability(threshold, params)),
                              fmt(cfg.target_pfa)});
    }
    return table;
}

}  // namespace pla
