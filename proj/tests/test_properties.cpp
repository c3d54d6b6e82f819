#include "doctest.h"

#include "grade3/engine.hpp"
#include "grade3/planner.hpp"
#include "support.hpp"

#include <random>

using namespace grade3;

namespace {

std::vector<ClassLabel> labels_up_to(int bound) {
    std::vector<ClassLabel> out = {ClassLabel::t(), ClassLabel::b(), ClassLabel::c3()};
    for (int r = 2; r <= bound; ++r) out.push_back(ClassLabel::g(r));
    for (int p = 0; p <= bound; ++p) {
        for (int q = 0; q <= bound; ++q) out.push_back(ClassLabel::h(p, q));
    }
    return out;
}

// Builds the engine input a rule's scenario expects, if the state admits one.
std::optional<TorPresentation> scenario_input(const EngineScenario& sc, const ClassLabel& c, const Format& f) {
    if (sc.arrangement) {
        if (!arrangement_fits(c, f, *sc.arrangement)) return std::nullopt;
        return arranged_presentation(c, f, *sc.arrangement);
    }
    if (!canonical_fits(c, f)) return std::nullopt;
    return canonical_presentation(c, f);
}

}  // namespace

TEST_SUITE("properties") {

TEST_CASE("class invariants match the table up to 50") {
    for (const auto& c : labels_up_to(50)) CHECK(class_invariants(c) == testsupport::table_pqr(c));
    CHECK(ClassLabel::g(0) == ClassLabel::h(0, 0));
    CHECK(ClassLabel::g(1) == ClassLabel::h(0, 1));
    CHECK(parse_class_label(to_string(ClassLabel::g(1))) == ClassLabel::g(1));
}

TEST_CASE("betti total is twice the generator count") {
    for (int m = 1; m <= 40; ++m) {
        for (int n = 1; n <= 40; ++n) CHECK(betti_total(make_format(m, n)) == 2 * (m + n));
    }
}

TEST_CASE("double linktoT") {
    for (const auto& c : labels_up_to(8)) {
        if (c == ClassLabel::c3()) continue;
        for (int m = 1; m <= 12; ++m) {
            for (int n = 1; n <= 12; ++n) {
                const auto once = apply_rule(LinkRule::LinkToT, c, Format(m, n));
                const auto twice = apply_rule(LinkRule::LinkToT, once.out);
                CHECK(twice.out == State{ClassLabel::t(), Format(m + 3, n + 3)});
            }
        }
    }
}

TEST_CASE("betti and format coherence") {
    for (const auto& rp : supported_profiles()) {
        for (int m = 1; m <= 25; ++m) {
            for (int n = 1; n <= 25; ++n) {
                const Format f(m, n);
                if (n + 3 - rp.t2 < 1 || m - rp.t1 < 1) continue;
                CHECK(betti_total(link_option_format(f, rp)) == betti_after_link(betti_total(f), rp));
            }
        }
    }
}

TEST_CASE("links never leave permissible ground") {
    const auto labels = labels_up_to(21);
    int transitions = 0;
    for (int m = 1; m <= 20; ++m) {
        for (int n = 1; n <= 20; ++n) {
            const Format f(m, n);
            for (const auto& c : labels) {
                if (is_permissible(c, f).status != Status::Permissible) continue;
                for (auto r : all_rules()) {
                    const auto t = try_apply_rule(r, State{c, f});
                    if (!t || !t->out.cls) continue;
                    ++transitions;
                    CAPTURE(to_string(r));
                    CAPTURE(to_string(t->in));
                    CAPTURE(to_string(t->out));
                    CHECK(is_permissible(*t->out.cls, t->out.format).status != Status::NotPermissible);
                }
            }
        }
    }
    CHECK(transitions > 1000);
}

TEST_CASE("engine format law and table hygiene") {
    std::mt19937 rng(11);
    const auto labels = labels_up_to(6);
    const std::vector<LinkSpec> specs = {{0, false}, {1, false}, {2, false}, {3, false}};
    int runs = 0;
    for (int trial = 0; trial < 600; ++trial) {
        const auto& c = labels[rng() % labels.size()];
        const Format f(1 + static_cast<int>(rng() % 10), 1 + static_cast<int>(rng() % 8));
        if (!canonical_fits(c, f)) continue;
        const auto spec = specs[rng() % specs.size()];
        if (f.m() - spec.t1 < 1) continue;
        const auto lp = mapping_cone_presentation(canonical_presentation(c, f), spec);
        ++runs;
        CHECK(lp.format() == link_option_format(f, profile_of(spec)));
        CHECK(lp.presentation.dim_a2() == lp.presentation.m + lp.presentation.n - 1);
        CHECK(validate_presentation(lp.presentation).empty());
        for (const auto& [key, v] : lp.presentation.ee) CHECK(key.first < key.second);
    }
    CHECK(runs > 200);
}

TEST_CASE("realize is deterministic") {
    for (const auto& [c, f] : {std::pair{ClassLabel::t(), Format(11, 9)}, std::pair{ClassLabel::b(), Format(9, 6)},
                               std::pair{ClassLabel::h(5, 4), Format(8, 6)}, std::pair{ClassLabel::h(0, 1), Format(5, 3)}}) {
        const auto a = realize(c, f), b = realize(c, f);
        REQUIRE(a.certificate);
        REQUIRE(b.certificate);
        CHECK(to_json(*a.certificate).dump() == to_json(*b.certificate).dump());
    }
}

TEST_CASE("every certificate verifies and single edits break it") {
    const auto rep = realize_all(12, 12);
    REQUIRE(rep.emitted.size() > 50);
    std::mt19937 rng(5);
    for (const auto& cert : rep.emitted) {
        REQUIRE(verify_certificate(cert));
        if (cert.steps.empty()) continue;
        auto bad = cert;
        auto& step = bad.steps[rng() % bad.steps.size()];
        step.out.format = Format(step.out.format.m() + 1, step.out.format.n());
        CHECK_FALSE(verify_certificate(bad));
    }
}

TEST_CASE("engine replays sampled certificate steps") {
    const auto rep = realize_all(14, 14);
    std::mt19937 rng(3);
    int sampled = 0, replayed = 0;
    while (sampled < 20) {
        const auto& cert = rep.emitted[rng() % rep.emitted.size()];
        if (cert.steps.empty()) continue;
        ++sampled;
        for (const auto& step : cert.steps) {
            const auto sc = engine_scenario(step.rule);
            if (!sc || !step.in.cls) continue;
            const auto input = scenario_input(*sc, *step.in.cls, step.in.format);
            if (!input) continue;
            const auto lp = mapping_cone_presentation(*input, sc->spec);
            CAPTURE(to_string(step.rule));
            CAPTURE(to_string(step.in));
            CHECK(lp.format() == step.out.format);
            if (step.rule != LinkRule::LinkHv) CHECK(classify(lp.presentation).label == step.out.cls);
            ++replayed;
        }
    }
    CHECK(replayed >= 20);
}

TEST_CASE("family assignment is total on permissible T formats") {
    for (int m = 5; m <= 30; ++m) {
        for (int n = 4; n <= 30; ++n) {
            REQUIRE(is_permissible(ClassLabel::t(), Format(m, n)).status == Status::Permissible);
            CHECK_NOTHROW(family_assignment(Format(m, n)));
        }
    }
}

}
