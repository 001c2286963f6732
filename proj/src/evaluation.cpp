#include "fedirec/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "fedirec/stats_math.hpp"
#include "json.hpp"

namespace fedirec::eval {

SnapshotPair build_snapshot_pair(const DirectedGraph& train,
                                 const DirectedGraph& truth) {
    SnapshotPair pair;
    pair.train = &train;
    pair.truth = &truth;
    const auto added = DirectedGraph::diff_edges(train, truth);
    for (const auto& [key, new_keys] : added) {
        const auto tid = train.id_of(key);
        if (tid < 0) continue;
        const auto u = static_cast<NodeId>(tid);
        if (!train.is_visited(u)) continue;
        if (truth.id_of(key) < 0) continue;  // deleted at t2
        std::set<NodeId> rel;
        for (const auto& nk : new_keys) {
            const auto vid = train.id_of(nk);
            if (vid >= 0) rel.insert(static_cast<NodeId>(vid));
        }
        if (rel.empty()) continue;
        pair.eval_targets.push_back(u);
        pair.relevance.emplace(u, std::move(rel));
    }
    std::sort(pair.eval_targets.begin(), pair.eval_targets.end());
    return pair;
}

double average_precision(const std::vector<NodeId>& recs,
                         const std::set<NodeId>& relevant) {
    if (relevant.empty()) {
        throw std::domain_error("average_precision: empty relevant set");
    }
    double sum = 0.0;
    std::size_t hits = 0;
    for (std::size_t i = 0; i < recs.size(); ++i) {
        if (relevant.count(recs[i])) {
            ++hits;
            sum += static_cast<double>(hits) / static_cast<double>(i + 1);
        }
    }
    return sum / static_cast<double>(relevant.size());
}

double precision_at(const std::vector<NodeId>& recs,
                    const std::set<NodeId>& relevant, std::size_t k) {
    if (k < 1) throw std::domain_error("precision_at: k >= 1 required");
    std::size_t hits = 0;
    for (std::size_t i = 0; i < recs.size() && i < k; ++i) {
        if (relevant.count(recs[i])) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(k);
}

bool success_at(const std::vector<NodeId>& recs,
                const std::set<NodeId>& relevant, std::size_t k) {
    for (std::size_t i = 0; i < recs.size() && i < k; ++i) {
        if (relevant.count(recs[i])) return true;
    }
    return false;
}

TTestResult paired_t_test(const std::vector<double>& a,
                          const std::vector<double>& b, double alpha) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("paired_t_test: length mismatch");
    }
    const std::size_t n = a.size();
    if (n < 2) throw std::domain_error("paired_t_test: need n >= 2");

    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += a[i] - b[i];
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = (a[i] - b[i]) - mean;
        ss += d * d;
    }
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));

    TTestResult r;
    r.df = n - 1;
    if (sd == 0.0) {
        if (mean == 0.0) {
            r.t_statistic = 0.0;
            r.p_value = 1.0;
            return r;
        }
        // constant nonzero differences: degenerate, p forced to 0
        r.degenerate = true;
        r.t_statistic = mean > 0 ? std::numeric_limits<double>::infinity()
                                 : -std::numeric_limits<double>::infinity();
        r.p_value = 0.0;
    } else {
        r.t_statistic = mean / (sd / std::sqrt(static_cast<double>(n)));
        r.p_value = stats::student_t_two_tailed_p(r.t_statistic,
                                                  static_cast<double>(r.df));
    }
    if (r.p_value < alpha) {
        r.mark = r.t_statistic > 0 ? Mark::Improvement : Mark::Deterioration;
    }
    return r;
}

InterleavedList balanced_interleave(const std::vector<NodeId>& a,
                                    const std::vector<NodeId>& b,
                                    std::uint64_t rng_seed,
                                    std::size_t display_size) {
    InterleavedList il;
    std::mt19937_64 rng(rng_seed);
    il.first_picker_a = std::uniform_int_distribution<int>(0, 1)(rng) == 0;

    const std::size_t target_len =
        std::min(display_size, 2 * std::min(a.size(), b.size()));
    std::set<NodeId> seen;
    std::size_t ka = 0, kb = 0;
    auto in_a = [&](NodeId x) {
        return std::find(a.begin(), a.end(), x) != a.end();
    };
    auto in_b = [&](NodeId x) {
        return std::find(b.begin(), b.end(), x) != b.end();
    };
    while (il.items.size() < target_len && (ka < a.size() || kb < b.size())) {
        const bool pick_a =
            kb >= b.size() ||
            (ka < a.size() && (ka < kb || (ka == kb && il.first_picker_a)));
        const auto& src = pick_a ? a : b;
        std::size_t& ptr = pick_a ? ka : kb;
        while (ptr < src.size() && seen.count(src[ptr])) ++ptr;
        if (ptr >= src.size()) {
            // source exhausted; let the other side finish
            if (pick_a) ka = a.size(); else kb = b.size();
            continue;
        }
        const NodeId item = src[ptr++];
        seen.insert(item);
        il.items.push_back(item);
        const bool both = in_a(item) && in_b(item);
        il.origin.push_back(both ? Origin::Both
                                 : (pick_a ? Origin::A : Origin::B));
    }
    return il;
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::AWins: return "A_wins";
        case Verdict::BWins: return "B_wins";
        case Verdict::Tie: return "tie";
    }
    return "?";
}

Attribution attribute_clicks(const InterleavedList& il,
                             const std::vector<NodeId>& a,
                             const std::vector<NodeId>& b,
                             const std::set<NodeId>& clicks) {
    Attribution result;
    if (clicks.empty()) return result;
    for (NodeId c : clicks) {
        if (std::find(il.items.begin(), il.items.end(), c) == il.items.end()) {
            throw std::invalid_argument(
                "attribute_clicks: clicked item not in the interleaved list");
        }
    }

    // lowest (deepest) clicked rank, 1-based
    std::size_t lowest = 0;
    for (std::size_t i = 0; i < il.items.size(); ++i) {
        if (clicks.count(il.items[i])) lowest = i + 1;
    }
    result.lowest_click_rank = lowest;

    // smallest joint prefix of a and b covering il.items[0..lowest)
    std::set<NodeId> needed(il.items.begin(), il.items.begin() + lowest);
    std::size_t k = 0;
    while (true) {
        std::set<NodeId> covered;
        for (std::size_t i = 0; i < k && i < a.size(); ++i) covered.insert(a[i]);
        for (std::size_t i = 0; i < k && i < b.size(); ++i) covered.insert(b[i]);
        if (std::includes(covered.begin(), covered.end(), needed.begin(),
                          needed.end())) {
            break;
        }
        if (k >= a.size() && k >= b.size()) break;  // cannot cover further
        ++k;
    }
    result.prefix_k = k;

    for (std::size_t i = 0; i < k && i < a.size(); ++i) {
        if (clicks.count(a[i])) ++result.credit_a;
    }
    for (std::size_t i = 0; i < k && i < b.size(); ++i) {
        if (clicks.count(b[i])) ++result.credit_b;
    }
    if (result.credit_a > result.credit_b) result.verdict = Verdict::AWins;
    else if (result.credit_b > result.credit_a) result.verdict = Verdict::BWins;
    return result;
}

EvalReport run_experiment(const SnapshotPair& pair,
                          const std::vector<NamedSystem>& systems,
                          const std::vector<std::size_t>& ks_report,
                          std::size_t curve_max) {
    if (systems.empty()) {
        throw std::invalid_argument("run_experiment: need >= 1 system");
    }
    EvalReport report;
    report.targets = pair.eval_targets;
    const std::size_t n_targets = report.targets.size();

    for (const auto& sys : systems) {
        SystemResult sr;
        sr.name = sys.name;
        for (std::size_t k : ks_report) {
            sr.p_at[k].reserve(n_targets);
            sr.s_at[k].reserve(n_targets);
        }
        std::vector<double> curve_sum(curve_max, 0.0);
        for (NodeId target : report.targets) {
            const auto& relevant = pair.relevance.at(target);
            rec::RankedList list = sys.run(target);
            std::vector<NodeId> recs;
            recs.reserve(list.entries.size());
            for (const auto& [cand, score] : list.entries) recs.push_back(cand);

            sr.ap.push_back(average_precision(recs, relevant));
            for (std::size_t k : ks_report) {
                sr.p_at[k].push_back(precision_at(recs, relevant, k));
                sr.s_at[k].push_back(success_at(recs, relevant, k) ? 1.0 : 0.0);
            }
            // incremental p@k for the whole curve
            std::size_t hits = 0;
            for (std::size_t k = 1; k <= curve_max; ++k) {
                if (k - 1 < recs.size() && relevant.count(recs[k - 1])) ++hits;
                curve_sum[k - 1] +=
                    static_cast<double>(hits) / static_cast<double>(k);
            }
        }
        auto mean = [n_targets](const std::vector<double>& v) {
            double s = 0.0;
            for (double x : v) s += x;
            return n_targets ? s / static_cast<double>(n_targets) : 0.0;
        };
        sr.map = mean(sr.ap);
        for (std::size_t k : ks_report) {
            sr.mean_p_at[k] = mean(sr.p_at[k]);
            sr.mean_s_at[k] = mean(sr.s_at[k]);
        }
        sr.p_curve.resize(curve_max);
        for (std::size_t k = 0; k < curve_max; ++k) {
            sr.p_curve[k] = n_targets
                                ? curve_sum[k] / static_cast<double>(n_targets)
                                : 0.0;
        }
        report.systems.push_back(std::move(sr));
    }

    // adjacent-row significance, each metric column tested independently
    report.significance.resize(systems.size());
    if (n_targets >= 2) {
        for (std::size_t i = 1; i < report.systems.size(); ++i) {
            auto& rows = report.significance[i];
            const auto& cur = report.systems[i];
            const auto& prev = report.systems[i - 1];
            rows.push_back({"MAP", paired_t_test(cur.ap, prev.ap)});
            for (std::size_t k : ks_report) {
                rows.push_back({"s@" + std::to_string(k),
                                paired_t_test(cur.s_at.at(k), prev.s_at.at(k))});
            }
        }
    }
    return report;
}

namespace {

const char* mark_symbol(const TTestResult& t) {
    switch (t.mark) {
        case Mark::Improvement: return "^";
        case Mark::Deterioration: return "v";
        case Mark::None: return "o";
    }
    return "?";
}

}  // namespace

std::string EvalReport::to_json() const {
    nlohmann::json j;
    j["n_targets"] = targets.size();
    auto sys_arr = nlohmann::json::array();
    for (std::size_t i = 0; i < systems.size(); ++i) {
        const auto& s = systems[i];
        nlohmann::json js;
        js["name"] = s.name;
        js["MAP"] = s.map;
        for (const auto& [k, v] : s.mean_s_at) {
            js["s@" + std::to_string(k)] = v;
        }
        for (const auto& [k, v] : s.mean_p_at) {
            js["p@" + std::to_string(k)] = v;
        }
        js["per_target_ap"] = s.ap;
        if (i > 0 && i < significance.size() && !significance[i].empty()) {
            auto sig = nlohmann::json::object();
            for (const auto& row : significance[i]) {
                sig[row.metric] = {{"t", row.test.t_statistic},
                                   {"p", row.test.p_value},
                                   {"mark", mark_symbol(row.test)},
                                   {"degenerate", row.test.degenerate}};
            }
            js["significance_vs_previous"] = std::move(sig);
        }
        sys_arr.push_back(std::move(js));
    }
    j["systems"] = std::move(sys_arr);
    return j.dump(2);
}

std::string EvalReport::render_table() const {
    std::ostringstream out;
    out << "System";
    std::vector<std::size_t> ks;
    if (!systems.empty()) {
        for (const auto& [k, v] : systems.front().mean_s_at) ks.push_back(k);
    }
    out << "\tMAP";
    for (std::size_t k : ks) out << "\ts@" << k;
    out << '\n';
    out.setf(std::ios::fixed);
    out.precision(3);
    for (std::size_t i = 0; i < systems.size(); ++i) {
        const auto& s = systems[i];
        auto sig_for = [&](const std::string& metric) -> std::string {
            if (i == 0 || i >= significance.size()) return "";
            for (const auto& row : significance[i]) {
                if (row.metric == metric) {
                    return std::string(" [") + mark_symbol(row.test) + "]";
                }
            }
            return "";
        };
        out << s.name << '\t' << s.map << sig_for("MAP");
        for (std::size_t k : ks) {
            out << '\t' << s.mean_s_at.at(k)
                << sig_for("s@" + std::to_string(k));
        }
        out << '\n';
    }
    return out.str();
}

std::string EvalReport::p_curve_csv() const {
    std::ostringstream out;
    out << "k,system,p_at_k\n";
    for (const auto& s : systems) {
        for (std::size_t k = 0; k < s.p_curve.size(); ++k) {
            out << (k + 1) << ',' << s.name << ',' << s.p_curve[k] << '\n';
        }
    }
    return out.str();
}

}  // namespace fedirec::eval
