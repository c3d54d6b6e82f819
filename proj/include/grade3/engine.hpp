#pragma once

#include "grade3/linkage.hpp"
#include "grade3/presentation.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace grade3 {

// e_1..e_t1 are the images of the Koszul generators; phi2_unit marks the
// e_1 e_2 = f_1 case where phi_2 has rank one.
struct LinkSpec {
    int t1 = 0;
    bool phi2_unit = false;
    friend bool operator==(const LinkSpec&, const LinkSpec&) = default;
};

std::string to_string(const LinkSpec& spec);
RankProfile profile_of(const LinkSpec& spec);

// Linked algebra on the cone basis E_1..E_{n+3}, F_1..F_{m+n+2}, G_1..G_m
// after splitting; `presentation` is densely re-indexed over the survivors.
struct LinkedPresentation {
    TorPresentation presentation;
    std::vector<std::string> splits;  // raw names, e.g. "G1"
    std::vector<int> e_raw;           // dense position -> raw 1-based index
    std::vector<int> f_raw;
    std::vector<int> g_raw;
    // Products that depend on the undetermined comparison maps; dense names.
    std::vector<std::pair<std::string, std::string>> symbolic;

    Format format() const { return Format(presentation.m, presentation.n); }
    // Coefficient of G_g in E_e F_f, raw indices; 0 when any factor was split.
    std::int64_t raw_ef(int e, int f, int g) const;
    // Coefficient of F_f in E_a E_b, raw indices.
    std::int64_t raw_ee(int a, int b, int f) const;
};

LinkedPresentation mapping_cone_presentation(const TorPresentation& a, const LinkSpec& spec);

Json to_json(const LinkedPresentation& lp);

// Arrangement and LinkSpec that carry out a rule on structure constants.
struct EngineScenario {
    std::optional<Arrangement> arrangement;  // empty: canonical basis
    LinkSpec spec;
};

std::optional<EngineScenario> engine_scenario(LinkRule rule);

struct ScenarioResult {
    std::string name;
    int instances = 0;
    int failures = 0;
    std::vector<std::string> failure_samples;
    std::string note;
    bool pass() const { return instances > 0 && failures == 0; }
};

struct TheoremReport {
    std::vector<ScenarioResult> scenarios;
    bool all_pass() const;
};

TheoremReport verify_linkage_theorems(int m_max, int n_max);

}  // namespace grade3
