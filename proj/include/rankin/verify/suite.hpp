#pragma once

#include <algorithm>
#include <atomic>
#include <functional>
#include <iomanip>
#include <thread>

#include "rankin/verify/checks.hpp"

namespace rankin {

namespace detail {

inline std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) h = (h ^ c) * 0x100000001b3ULL;
    return h;
}

struct SuiteTask {
    std::string id;
    std::function<VerificationReport(Sampler&)> run;
};

/// Draws fresh parameters until the check no longer hits a degenerate ratio or a pole collision.
inline VerificationReport run_task(const SuiteTask& t, std::uint64_t seed) {
    std::string last;
    for (int attempt = 0; attempt < 32; ++attempt) {
        std::uint64_t s = splitmix(seed + static_cast<std::uint64_t>(attempt) * 0x632be59bd9b4e019ULL);
        Sampler smp(s);
        try {
            VerificationReport r = t.run(smp);
            r.case_id = t.id;
            r.seed = s;
            r.flags["attempt"] = attempt;
            return r;
        } catch (const DegenerateError& e) {
            last = e.what();
        } catch (const PoleError& e) {
            last = e.what();
        }
    }
    VerificationReport r;
    r.case_id = t.id;
    r.error = "no admissible parameters after resampling: " + last;
    return r;
}

inline std::string numbered(const std::string& stem, int i) {
    std::ostringstream os;
    os << stem << " #" << std::setw(3) << std::setfill('0') << i;
    return os.str();
}

inline NumericOptions numeric_options(const io::json& cfg) {
    NumericOptions o;
    if (!cfg.contains("numeric")) return o;
    const auto& j = cfg.at("numeric");
    o.cutoff = j.value("cutoff", o.cutoff);
    o.tol = j.value("tol", o.tol);
    o.points = j.value("points", o.points);
    o.pad = j.value("pad", o.pad);
    if (j.contains("s")) o.s_values = j.at("s").get<std::vector<double>>();
    return o;
}

inline std::vector<long> field_sizes(const io::json& j, const io::json& cfg) {
    if (j.contains("qs")) return j.at("qs").get<std::vector<long>>();
    if (j.contains("q")) return {j.at("q").get<long>()};
    if (cfg.contains("qs")) return cfg.at("qs").get<std::vector<long>>();
    return {cfg.value("q", 5L)};
}

inline io::json as_list(const io::json& j) { return j.is_array() ? j : io::json::array({j}); }

inline std::vector<SuiteTask> build_tasks(const io::json& cfg) {
    std::vector<SuiteTask> tasks;
    NumericOptions nopt = numeric_options(cfg);
    auto qid = [](const std::string& stem, long q) { return stem + " " + field_name(q); };

    if (cfg.contains("theorem_a"))
        for (const auto& item : as_list(cfg.at("theorem_a"))) {
            char which = item.value("case", std::string("b")).at(0);
            int n = item.value("n", 2), np = which == 'a' ? n : n - 1;
            Mode mode = parse_mode(item.value("mode", std::string("exact")));
            int count = item.value("count", 10);
            auto qs = field_sizes(item, cfg);
            for (int i = 0; i < count; ++i) {
                long q = qs[i % qs.size()];
                std::string stem = qid(std::string("theorem-A(") + which + ") n=" + std::to_string(n) + " n'=" +
                                       std::to_string(np) + " " + mode_name(mode), q);
                tasks.push_back({numbered(stem, i), [=](Sampler& smp) {
                                     bool unit = mode == Mode::Numeric;
                                     OpenOrbitParams P;
                                     P.q = q;
                                     P.nu = smp.tuple(n, unit);
                                     P.nup = smp.tuple(np, unit);
                                     if (np == n) P.phi = n == 1 ? smp.phi_line(q, i) : smp.phi_row(q, n, i % 2 == 1);
                                     return verify_theorem_A(which, P, mode, nopt, smp.seed());
                                 }});
            }
        }

    if (cfg.contains("recurrence"))
        for (const auto& item : as_list(cfg.at("recurrence"))) {
            std::string name = item.value("which", std::string("prop31"));
            Recurrence which = name == "prop32" ? Recurrence::HatLeg : Recurrence::PlusLeg;
            if (name != "prop31" && name != "prop32") throw DomainError("recurrence must be prop31 or prop32");
            int count = item.value("count", 25), translated = item.value("translated", 5);
            auto qs = field_sizes(item, cfg);
            for (int i = 0; i < count; ++i) {
                long q = qs[i % qs.size()];
                bool tr = i < translated;
                tasks.push_back({numbered(qid(name + (tr ? " translated" : " spherical"), q), i), [=](Sampler& smp) {
                                     RecurrenceParams P;
                                     P.q = q;
                                     P.chi = smp.unr();
                                     if (which == Recurrence::PlusLeg) {
                                         P.nu = smp.tuple(2);
                                         P.nup = smp.tuple(1);
                                         P.phi1 = Schwartz::lattice(q, 1, 2, smp.uniform(-1, 1));
                                         P.phi2 = smp.phi_row(q, 2, smp.uniform(0, 1) == 1);
                                         if (tr) P.translate = smp.translate(2, q);
                                     } else {
                                         P.nu = smp.tuple(1);
                                         P.nup = smp.tuple(1);
                                         P.phi1 = Schwartz::lattice(q, 1, 1, smp.uniform(-1, 1));
                                         P.phi2 = smp.phi_line(q, smp.uniform(0, 2));
                                         if (tr) P.translate = Mat{{smp.nonzero_rational(30)}};
                                     }
                                     return verify_recurrence(which, P);
                                 }});
            }
        }

    if (cfg.contains("gamma_lemma")) {
        const auto& item = cfg.at("gamma_lemma");
        auto ns = item.value("n", std::vector<int>{2, 3});
        auto qs = field_sizes(item, cfg);
        for (int i = 0, count = item.value("count", 100); i < count; ++i) {
            int n = ns[i % ns.size()];
            long q = qs[i % qs.size()];
            tasks.push_back({numbered(qid("gamma-lemma n=" + std::to_string(n), q), i), [=](Sampler& smp) {
                                 return verify_gamma_lemma(smp.tuple(n), smp.tuple(n - 1), q);
                             }});
        }
    }

    if (cfg.contains("reflection")) {
        const auto& item = cfg.at("reflection");
        auto qs = field_sizes(item, cfg);
        for (int i = 0, count = item.value("count", 50); i < count; ++i) {
            long q = qs[i % qs.size()];
            tasks.push_back({numbered(qid("gamma-reflection", q), i),
                             [=](Sampler& smp) { return verify_gamma_reflection(smp.unr(), q); }});
        }
    }

    if (cfg.contains("psi_conjugation")) {
        const auto& item = cfg.at("psi_conjugation");
        auto qs = field_sizes(item, cfg);
        for (int i = 0, count = item.value("count", 10); i < count; ++i) {
            long q = qs[i % qs.size()];
            tasks.push_back({numbered(qid("psi-conjugation", q), i),
                             [=](Sampler& smp) { return verify_psi_conjugation(smp.unr(), q); }});
        }
        for (int eps : {0, 1})
            tasks.push_back({numbered("psi-conjugation R", eps), [=](Sampler&) {
                                 return verify_psi_conjugation(MultChar::real(eps, rat(eps, 3)), 0);
                             }});
    }

    if (cfg.contains("tate")) {
        const auto& item = cfg.at("tate");
        auto qs = field_sizes(item, cfg);
        for (int i = 0, count = item.value("count", 50); i < count; ++i) {
            long q = qs[i % qs.size()];
            tasks.push_back({numbered(qid("tate-fe", q), i),
                             [=](Sampler& smp) { return verify_tate_fe(smp.unr(), smp.phi_line(q, i)); }});
        }
        if (item.value("real", true)) {
            tasks.push_back({numbered("tate-fe R", 0),
                             [](Sampler&) { return verify_tate_fe(MultChar::real(0), RealSchwartz::gaussian()); }});
            tasks.push_back({numbered("tate-fe R", 1),
                             [](Sampler&) { return verify_tate_fe(MultChar::real(1), RealSchwartz::monomial(1)); }});
        }
    }

    if (cfg.contains("equivariance")) {
        const auto& item = cfg.at("equivariance");
        auto qs = field_sizes(item, cfg);
        for (int i = 0, count = item.value("n1", 10); i < count; ++i) {
            long q = qs[i % qs.size()];
            tasks.push_back({numbered(qid("equivariance n=1", q), i), [=](Sampler& smp) {
                                 CharTuple a = smp.tuple(1), b = smp.tuple(1);
                                 return verify_equivariance_n1(a, b, smp.phi_line(q, i), smp.nonzero_rational(30));
                             }});
        }
        for (int i = 0, count = item.value("n2", 10); i < count; ++i) {
            long q = qs[i % qs.size()];
            tasks.push_back({numbered(qid("equivariance n=2", q), i), [=](Sampler& smp) {
                                 CharTuple a = smp.tuple(2, true), b = smp.tuple(1, true);
                                 NumericOptions o = nopt;
                                 o.tol = std::min(o.tol, 1e-8);
                                 return verify_equivariance_n2(a, b, q, smp.translate(1, q)(0, 0), o);
                             }});
        }
    }

    if (cfg.contains("zk")) {
        int kmax = cfg.at("zk").value("kmax", 10);
        tasks.push_back({"zk", [=](Sampler&) { return verify_zk(kmax); }});
    }

    if (cfg.contains("probes")) {
        auto qs = field_sizes(cfg.at("probes"), cfg);
        for (std::size_t i = 0; i < qs.size(); ++i) {
            long q = qs[i];
            for (int np : {1, 2})
                tasks.push_back({numbered(qid("convergence-probe n=2 n'=" + std::to_string(np), q), static_cast<int>(i)),
                                 [=](Sampler& smp) {
                                     CharTuple a = smp.tuple(2, true), b = smp.tuple(np, true);
                                     return verify_convergence_probe(a, b, q, nopt);
                                 }});
        }
    }
    return tasks;
}

inline bool all_pass(const std::vector<VerificationReport>& reps, const std::string& prefix, bool& any) {
    bool ok = true;
    for (const auto& r : reps)
        if (r.case_id.rfind(prefix, 0) == 0) {
            any = true;
            ok = ok && r.equal;
        }
    return ok;
}

/// The recurrences at n = 2 together with the Tate functional equation yield the open-orbit identity at (2, 1).
inline std::optional<VerificationReport> implication_report(const std::vector<VerificationReport>& reps, std::uint64_t seed) {
    bool a = false, b = false, c = false, d = false;
    bool p31 = all_pass(reps, "prop31", a), p32 = all_pass(reps, "prop32", b);
    bool fe = all_pass(reps, "tate-fe Q_", c), thm = all_pass(reps, "theorem-A(b) n=2 n'=1 exact", d);
    if (!(a && b && c && d)) return std::nullopt;
    VerificationReport r;
    r.case_id = "~implication recurrences+fe => theorem-A(b) n=2";
    r.field = "all";
    r.seed = seed;
    r.lhs = std::string("prop31=") + (p31 ? "pass" : "fail") + " prop32=" + (p32 ? "pass" : "fail") + " fe=" + (fe ? "pass" : "fail");
    r.rhs = std::string("theorem-A(b) n=2 n'=1 exact=") + (thm ? "pass" : "fail");
    r.equal = !(p31 && p32 && fe) || thm;
    return r;
}

}  // namespace detail

/// The battery used by `suite` without a config file.
inline io::json default_suite_config() {
    return io::json::parse(R"({
      "seed": 20240601,
      "q": 5,
      "theorem_a": [
        {"case": "b", "n": 2, "count": 100, "mode": "exact"},
        {"case": "b", "n": 1, "count": 25, "mode": "exact"},
        {"case": "a", "n": 1, "count": 25, "mode": "exact"},
        {"case": "a", "n": 2, "count": 10, "mode": "exact"},
        {"case": "a", "n": 2, "count": 2, "mode": "numeric"},
        {"case": "b", "n": 2, "count": 2, "mode": "numeric"}
      ],
      "recurrence": [
        {"which": "prop31", "count": 25, "translated": 5},
        {"which": "prop32", "count": 25, "translated": 5}
      ],
      "gamma_lemma": {"count": 100},
      "reflection": {"count": 50},
      "psi_conjugation": {"count": 10},
      "tate": {"count": 50},
      "equivariance": {"n1": 10, "n2": 3},
      "zk": {"kmax": 10},
      "probes": {},
      "implication": true
    })");
}

/// Runs every configured check in parallel; reports come back sorted by case id.
inline std::vector<VerificationReport> run_suite(const io::json& cfg, unsigned threads = 0) {
    std::vector<VerificationReport> out;
    if (cfg.is_null() || cfg.empty()) return out;
    std::uint64_t seed = cfg.value("seed", std::uint64_t{1});
    auto tasks = detail::build_tasks(cfg);
    out.resize(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next++) < tasks.size();) {
            out[i] = detail::run_task(tasks[i], seed ^ detail::fnv1a(tasks[i].id));
        }
    };
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, tasks.size())));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.case_id < b.case_id; });
    if (cfg.value("implication", false))
        if (auto imp = detail::implication_report(out, seed)) out.push_back(*imp);
    return out;
}

inline io::json suite_json(const std::vector<VerificationReport>& reps) {
    io::json arr = io::json::array();
    int failed = 0;
    for (const auto& r : reps) {
        arr.push_back(r.to_json());
        failed += !r.equal;
    }
    return {{"reports", arr}, {"total", reps.size()}, {"failed", failed}, {"all_pass", failed == 0}};
}

}  // namespace rankin
