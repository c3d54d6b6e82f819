#include "grade3/engine.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <set>
#include <tuple>

namespace grade3 {

std::string to_string(const LinkSpec& spec) {
    return "(" + std::to_string(spec.t1) + "," + (spec.phi2_unit ? "true" : "false") + ")";
}

RankProfile profile_of(const LinkSpec& spec) { return {spec.t1, spec.phi2_unit ? 1 : 0, 0}; }

namespace {

int dense_of(const std::vector<int>& raw_map, int raw) {
    auto it = std::find(raw_map.begin(), raw_map.end(), raw);
    return it == raw_map.end() ? 0 : static_cast<int>(it - raw_map.begin()) + 1;
}

bool supported(const LinkSpec& s) {
    if (s.phi2_unit) return s.t1 == 2;
    return s.t1 >= 0 && s.t1 <= 3;
}

}  // namespace

std::int64_t LinkedPresentation::raw_ef(int e, int f, int g) const {
    const int de = dense_of(e_raw, e), df = dense_of(f_raw, f), dg = dense_of(g_raw, g);
    if (!de || !df || !dg) return 0;
    return presentation.ef_coeff(de, df, dg);
}

std::int64_t LinkedPresentation::raw_ee(int a, int b, int f) const {
    const int da = dense_of(e_raw, a), db = dense_of(e_raw, b), df = dense_of(f_raw, f);
    if (!da || !db || !df) return 0;
    return presentation.ee_coeff(da, db, df);
}

LinkedPresentation mapping_cone_presentation(const TorPresentation& a, const LinkSpec& spec) {
    if (!supported(spec)) {
        throw Error(ErrorCode::UnsupportedSpec, "link spec " + to_string(spec) + " is not supported");
    }
    if (auto diags = validate_presentation(a); !diags.empty()) {
        throw Error(ErrorCode::DimensionMismatch, diags.front().message);
    }
    const int m = a.m, n = a.n, t = spec.t1;
    if (m - t < 1) {
        throw Error(ErrorCode::UnsupportedSpec, "t1 = " + std::to_string(t) + " leaves no generator of A3 at m = " +
                                                    std::to_string(m));
    }
    if (spec.phi2_unit) {
        Coeffs unit(static_cast<std::size_t>(a.dim_a2()), 0);
        unit[0] = 1;
        auto it = a.ee.find({1, 2});
        if (it == a.ee.end() || it->second != unit) {
            throw Error(ErrorCode::Phi2Mismatch, "phi2_unit needs e1 e2 = f1 exactly");
        }
    }

    const int ne = n + 3, nf = m + n + 2, ng = m;
    const int d = m + n - 1;  // raw F_1..F_d carry the f basis of A2
    std::set<int> split_e, split_f, split_g;
    for (int k = 1; k <= t; ++k) {
        split_g.insert(k);
        split_f.insert(m + n + k - 1);
    }
    if (spec.phi2_unit) {
        split_f.insert(1);
        split_e.insert(n + 3);
    }

    std::map<std::tuple<int, int, int>, std::int64_t> ee;  // (a<b, F) -> coeff
    std::map<std::tuple<int, int, int>, std::int64_t> ef;  // (E, F, G) -> coeff
    auto add_ee = [&](int x, int y, int f, std::int64_t c) {
        if (c == 0) return;
        if (x > y) {
            std::swap(x, y);
            c = -c;
        }
        ee[{x, y, f}] += c;
    };
    auto add_ef = [&](int e, int f, int g, std::int64_t c) {
        if (c != 0) ef[{e, f, g}] += c;
    };

    // u_a u_b = v_{ab}: v23 = F_{m+n}, v13 = F_{m+n+1}, v12 = F_{m+n+2}.
    add_ee(n + 1, n + 2, m + n + 2, 1);
    add_ee(n + 1, n + 3, m + n + 1, 1);
    add_ee(n + 2, n + 3, m + n, 1);

    for (int s = 1; s <= t; ++s) {
        // E_{n+s} E_i = sum_k <e_s f_k, g_i*> F_k
        for (int i = 1; i <= n; ++i) {
            for (int k = 1; k <= d; ++k) add_ee(n + s, i, k, a.ef_coeff(s, k, i));
        }
        // E_{n+s} F_i = sum_{k>t} <e_s e_k, f_i*> G_k
        for (int i = 1; i <= d; ++i) {
            for (int k = t + 1; k <= m; ++k) add_ef(n + s, i, k, a.ee_coeff(s, k, i));
        }
    }
    if (spec.phi2_unit) {
        // E_i F_{m+n+2} = sum_{k>=3} <f_1 e_k, g_i*> G_k
        for (int i = 1; i <= n; ++i) {
            for (int k = 3; k <= m; ++k) add_ef(i, m + n + 2, k, a.ef_coeff(k, 1, i));
        }
    }

    LinkedPresentation lp;
    for (int i = 1; i <= ne; ++i) {
        if (!split_e.count(i)) lp.e_raw.push_back(i);
    }
    for (int i = 1; i <= nf; ++i) {
        if (!split_f.count(i)) lp.f_raw.push_back(i);
    }
    for (int i = 1; i <= ng; ++i) {
        if (!split_g.count(i)) lp.g_raw.push_back(i);
    }
    for (int i : split_e) lp.splits.push_back("E" + std::to_string(i));
    for (int i : split_f) lp.splits.push_back("F" + std::to_string(i));
    for (int i : split_g) lp.splits.push_back("G" + std::to_string(i));

    const int m2 = static_cast<int>(lp.e_raw.size());
    const int n2 = static_cast<int>(lp.g_raw.size());
    if (m2 + n2 - 1 != static_cast<int>(lp.f_raw.size())) {
        throw Error(ErrorCode::DimensionMismatch, "cone ranks do not satisfy dim B2 = dim B1 + dim B3 - 1");
    }
    lp.presentation = TorPresentation(Format(m2, n2));
    for (const auto& [key, c] : ee) {
        const auto [x, y, f] = key;
        const int dx = dense_of(lp.e_raw, x), dy = dense_of(lp.e_raw, y), df = dense_of(lp.f_raw, f);
        if (dx && dy && df && c != 0) lp.presentation.add_ee(dx, dy, df, c);
    }
    for (const auto& [key, c] : ef) {
        const auto [e, f, g] = key;
        const int de = dense_of(lp.e_raw, e), df = dense_of(lp.f_raw, f), dg = dense_of(lp.g_raw, g);
        if (de && df && dg && c != 0) lp.presentation.add_ef(de, df, dg, c);
    }
    lp.presentation.prune();

    if (t == 3) {
        // E_i E_j and E_i F_j for the old A3/A2 bases depend on X and Y.
        auto name = [](char k, int i) { return std::string(1, k) + std::to_string(i); };
        for (int i = 1; i <= n; ++i) {
            for (int j = i + 1; j <= n; ++j) {
                lp.symbolic.emplace_back(name('E', dense_of(lp.e_raw, i)), name('E', dense_of(lp.e_raw, j)));
            }
        }
        for (int i = 1; i <= n; ++i) {
            for (int j = 1; j <= d; ++j) {
                lp.symbolic.emplace_back(name('E', dense_of(lp.e_raw, i)), name('F', dense_of(lp.f_raw, j)));
            }
        }
    }
    if (auto diags = validate_presentation(lp.presentation); !diags.empty()) {
        throw Error(ErrorCode::DimensionMismatch, "linked table invalid: " + diags.front().message);
    }
    return lp;
}

Json to_json(const LinkedPresentation& lp) {
    Json doc = to_json(lp.presentation);
    doc["splits"] = lp.splits;
    doc["index_map"] = {{"E", lp.e_raw}, {"F", lp.f_raw}, {"G", lp.g_raw}};
    doc["symbolic"] = Json::array();
    for (const auto& [x, y] : lp.symbolic) doc["symbolic"].push_back({x, y});
    return doc;
}

std::optional<EngineScenario> engine_scenario(LinkRule rule) {
    switch (rule) {
        case LinkRule::LinkToT: return EngineScenario{std::nullopt, {0, false}};
        case LinkRule::LinkTi: return EngineScenario{Arrangement::TB, {1, false}};
        case LinkRule::LinkTii: return EngineScenario{Arrangement::TA, {1, false}};
        case LinkRule::LinkTiii: return EngineScenario{Arrangement::TB, {2, false}};
        case LinkRule::LinkTiv: return EngineScenario{Arrangement::TA, {2, true}};
        case LinkRule::LinkGi: return EngineScenario{Arrangement::GStd, {1, false}};
        case LinkRule::LinkGii: return EngineScenario{Arrangement::GStd, {2, false}};
        case LinkRule::LinkHi: return EngineScenario{Arrangement::HI, {1, false}};
        case LinkRule::LinkHii: return EngineScenario{Arrangement::HII, {1, false}};
        case LinkRule::LinkHiii: return EngineScenario{Arrangement::HIII, {2, false}};
        case LinkRule::LinkHiv: return EngineScenario{Arrangement::HIV, {2, false}};
        case LinkRule::LinkHv: return EngineScenario{Arrangement::HV, {3, false}};
        case LinkRule::ExtCVW31:
        case LinkRule::ExtCVW33: return std::nullopt;
    }
    return std::nullopt;
}

bool TheoremReport::all_pass() const {
    return !scenarios.empty() &&
           std::all_of(scenarios.begin(), scenarios.end(), [](const auto& s) { return s.pass(); });
}

namespace {

std::vector<ClassLabel> inputs_for(LinkRule rule, int m_max, int n_max) {
    std::vector<ClassLabel> out;
    const bool any = rule == LinkRule::LinkToT;
    const auto name = to_string(rule);
    if (any || name.starts_with("linkT")) out.push_back(ClassLabel::t());
    if (any) out.push_back(ClassLabel::b());
    if (any || name.starts_with("linkG")) {
        for (int r = 2; r <= m_max + n_max; ++r) out.push_back(ClassLabel::g(r));
    }
    if (any || name.starts_with("linkH")) {
        for (int p = 0; p <= m_max; ++p) {
            for (int q = 0; q <= n_max; ++q) out.push_back(ClassLabel::h(p, q));
        }
    }
    return out;
}

// Determinate products of the linkH-v output are exactly E_{n+1} F_i = G_{i+3}, i <= p.
bool hv_products_match(const LinkedPresentation& lp, int n, int p) {
    const auto& t = lp.presentation;
    if (!t.ee.empty()) return false;
    std::size_t entries = 0;
    for (const auto& [key, v] : t.ef) {
        for (auto c : v) entries += c != 0;
    }
    if (entries != static_cast<std::size_t>(p)) return false;
    for (int i = 1; i <= p; ++i) {
        if (lp.raw_ef(n + 1, i, i + 3) != 1) return false;
    }
    return true;
}

ScenarioResult run_scenario(LinkRule rule, int m_max, int n_max) {
    const auto sc = *engine_scenario(rule);
    ScenarioResult res;
    res.name = std::string(to_string(rule)) + " [" +
               (sc.arrangement ? std::string(to_string(*sc.arrangement)) : std::string("canonical")) +
               ", t1=" + std::to_string(sc.spec.t1) + (sc.spec.phi2_unit ? ", phi2" : "") + "]";
    const auto labels = inputs_for(rule, m_max, n_max);
    for (int m = 4; m <= m_max; ++m) {
        for (int n = 1; n <= n_max; ++n) {
            const Format f(m, n);
            for (const auto& c : labels) {
                const bool fits = sc.arrangement ? arrangement_fits(c, f, *sc.arrangement) : canonical_fits(c, f);
                if (!fits) continue;
                auto claim = try_apply_rule(rule, State{c, f});
                if (!claim) continue;
                if (sc.spec.t1 >= m) continue;
                const auto a = sc.arrangement ? arranged_presentation(c, f, *sc.arrangement)
                                              : canonical_presentation(c, f);
                ++res.instances;
                std::string problem;
                try {
                    const auto lp = mapping_cone_presentation(a, sc.spec);
                    const auto rep = classify(lp.presentation);
                    const State got{rep.label, lp.format()};
                    if (lp.format() != link_option_format(f, profile_of(sc.spec))) {
                        problem = "format law broken";
                    } else if (got != claim->out) {
                        problem = "engine gives " + to_string(got) + ", theorem claims " + to_string(claim->out);
                    } else if (rule == LinkRule::LinkHv) {
                        if (!hv_products_match(lp, n, c.p())) problem = "determinate products differ";
                        if (lp.symbolic.empty()) problem = "X/Y slots not flagged";
                    } else if (!lp.symbolic.empty()) {
                        problem = "unexpected X/Y slots";
                    }
                } catch (const Error& e) {
                    problem = e.what();
                }
                if (!problem.empty()) {
                    ++res.failures;
                    if (res.failure_samples.size() < 3) {
                        res.failure_samples.push_back(to_string(State{c, f}) + ": " + problem);
                    }
                }
            }
        }
    }
    if (rule == LinkRule::LinkHv) {
        res.note = "verified modulo the q=p argument; X/Y-dependent slots flagged, not evaluated";
    }
    return res;
}

}  // namespace

TheoremReport verify_linkage_theorems(int m_max, int n_max) {
    std::vector<std::future<ScenarioResult>> jobs;
    for (auto rule : all_rules()) {
        if (!engine_scenario(rule)) continue;
        jobs.push_back(std::async(std::launch::async, run_scenario, rule, m_max, n_max));
    }
    TheoremReport report;
    for (auto& j : jobs) report.scenarios.push_back(j.get());
    return report;
}

}  // namespace grade3
