#include "doctest.h"

#include "grade3/linkage.hpp"

using namespace grade3;

namespace {

ErrorCode code_of(LinkRule rule, const ClassLabel& c, const Format& f) {
    try {
        apply_rule(rule, c, f);
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::OutOfDomain;
}

}  // namespace

TEST_SUITE("linkage") {

TEST_CASE("link option formats") {
    CHECK(link_option_format(Format(8, 6), {0, 0, 0}) == Format(9, 8));
    CHECK(link_option_format(Format(8, 6), {2, 1, 0}) == Format(8, 6));
    CHECK(link_option_format(Format(8, 6), {3, 0, 0}) == Format(9, 5));
    CHECK(link_option_format(Format(8, 6), {1, 0, 0}) == Format(9, 7));
    CHECK(link_option_format(Format(8, 6), {2, 0, 0}) == Format(9, 6));
    CHECK(supported_profiles().size() == 5);
    for (RankProfile rp : {RankProfile{3, 1, 0}, RankProfile{3, 2, 0}, RankProfile{3, 3, 1}}) {
        CHECK_FALSE(is_supported(rp));
        try {
            link_option_format(Format(8, 6), rp);
            FAIL("expected UnsupportedProfile");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::UnsupportedProfile);
        }
    }
    try {
        link_option_format(Format(3, 2), {3, 0, 0});
        FAIL("expected InvalidFormat");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InvalidFormat);
    }
}

TEST_CASE("betti after link") {
    CHECK(betti_after_link(28, {0, 0, 0}) == 34);
    CHECK(betti_after_link(28, {0, 0, 0}) == betti_total(Format(9, 8)));
    for (int b = 0; b <= 40; b += 4) {
        CHECK(betti_after_link(b, {1, 0, 0}) == b + 4);
        CHECK(betti_after_link(b, {3, 0, 0}) == b);
    }
}

TEST_CASE("apply_rule examples") {
    auto t = apply_rule(LinkRule::LinkToT, ClassLabel::h(1, 2), Format(6, 2));
    CHECK(t.out == State{ClassLabel::t(), Format(5, 6)});
    t = apply_rule(LinkRule::LinkTiv, ClassLabel::t(), Format(4, 3));
    CHECK(t.out == State{ClassLabel::b(), Format(5, 2)});
    t = apply_rule(LinkRule::LinkHii, ClassLabel::h(3, 0), Format(4, 6));
    CHECK(t.out == State{ClassLabel::h(2, 3), Format(9, 3)});
    CHECK(apply_rule(LinkRule::LinkHv, ClassLabel::h(2, 0), Format(5, 4)).out ==
          State{ClassLabel::h(0, 2), Format(7, 2)});
    CHECK(code_of(LinkRule::LinkHv, ClassLabel::h(1, 0), Format(5, 4)) == ErrorCode::PreconditionViolated);
    CHECK_FALSE(try_apply_rule(LinkRule::LinkHv, State{ClassLabel::h(1, 0), Format(5, 4)}).has_value());
}

TEST_CASE("rule outputs follow the theorem tables") {
    const Format f(8, 6);
    auto out = [&](LinkRule r, const ClassLabel& c) { return apply_rule(r, c, f).out; };
    CHECK(out(LinkRule::LinkTi, ClassLabel::t()) == State{ClassLabel::h(2, 0), Format(9, 7)});
    CHECK(out(LinkRule::LinkTii, ClassLabel::t()) == State{ClassLabel::h(2, 2), Format(9, 7)});
    CHECK(out(LinkRule::LinkTiii, ClassLabel::t()) == State{ClassLabel::h(1, 2), Format(9, 6)});
    CHECK(out(LinkRule::LinkTiv, ClassLabel::t()) == State{ClassLabel::b(), Format(8, 6)});
    CHECK(out(LinkRule::LinkGi, ClassLabel::g(4)) == State{ClassLabel::h(3, 0), Format(9, 7)});
    CHECK(out(LinkRule::LinkGii, ClassLabel::g(4)) == State{ClassLabel::t(), Format(9, 6)});
    CHECK(out(LinkRule::LinkHi, ClassLabel::h(3, 1)) == State{ClassLabel::h(2, 1), Format(9, 7)});
    CHECK(out(LinkRule::LinkHii, ClassLabel::h(3, 1)) == State{ClassLabel::h(3, 3), Format(9, 7)});
    CHECK(out(LinkRule::LinkHiii, ClassLabel::h(3, 1)) == State{ClassLabel::h(1, 1), Format(9, 6)});
    CHECK(out(LinkRule::LinkHiv, ClassLabel::h(3, 1)) == State{ClassLabel::h(2, 3), Format(9, 6)});
    CHECK(out(LinkRule::LinkHv, ClassLabel::h(4, 0)) == State{ClassLabel::h(0, 4), Format(9, 5)});
    CHECK(apply_rule(LinkRule::ExtCVW31, ClassLabel::g(5), Format(5, 1)).out ==
          State{ClassLabel::h(3, 2), Format(4, 2)});
    CHECK(apply_rule(LinkRule::ExtCVW33, ClassLabel::h(2, 0), Format(6, 3)).out ==
          State{ClassLabel::h(0, 1), Format(5, 3)});
}

TEST_CASE("rule preconditions") {
    using R = LinkRule;
    const auto bad = ErrorCode::PreconditionViolated;
    CHECK(code_of(R::LinkToT, ClassLabel::c3(), Format(3, 1)) == bad);
    CHECK(code_of(R::LinkTi, ClassLabel::b(), Format(8, 6)) == bad);
    CHECK(code_of(R::LinkGi, ClassLabel::t(), Format(8, 6)) == bad);
    CHECK(code_of(R::LinkHi, ClassLabel::h(0, 2), Format(8, 6)) == bad);
    CHECK(code_of(R::LinkHiii, ClassLabel::h(0, 2), Format(8, 6)) == bad);
    CHECK(code_of(R::LinkHiii, ClassLabel::h(7, 2), Format(8, 6)) == bad);
    CHECK(code_of(R::LinkHiv, ClassLabel::h(7, 2), Format(8, 6)) == bad);
    CHECK(code_of(R::LinkHv, ClassLabel::h(3, 1), Format(8, 6)) == bad);
    CHECK(code_of(R::LinkHv, ClassLabel::h(6, 0), Format(8, 6)) == bad);
    CHECK(code_of(R::ExtCVW31, ClassLabel::g(5), Format(5, 3)) == bad);
    CHECK(code_of(R::ExtCVW33, ClassLabel::h(2, 0), Format(7, 3)) == bad);
    CHECK(code_of(R::ExtCVW33, ClassLabel::h(2, 0), Format(6, 4)) == bad);
    CHECK(code_of(R::LinkTi, ClassLabel::t(), Format(1, 1)) == bad);
    // Opaque states only feed linktoT.
    const State opaque{std::nullopt, Format(8, 6)};
    CHECK(apply_rule(R::LinkToT, opaque).out == State{ClassLabel::t(), Format(9, 8)});
    CHECK_FALSE(try_apply_rule(R::LinkTi, opaque).has_value());
}

TEST_CASE("rule registry") {
    CHECK(all_rules().size() == 14);
    for (auto r : all_rules()) {
        CHECK(parse_rule(to_string(r)) == r);
        CHECK_FALSE(rule_cite(r).empty());
    }
    CHECK(to_string(LinkRule::LinkToT) == "linktoT");
    CHECK(to_string(LinkRule::LinkHiv) == "linkH-iv");
    CHECK(to_string(LinkRule::ExtCVW33) == "ext-CVW33");
    CHECK_THROWS_AS(parse_rule("linkH-vi"), Error);
    CHECK(rule_profile(LinkRule::LinkTiv) == RankProfile{2, 1, 0});
    CHECK(rule_profile(LinkRule::LinkHv) == RankProfile{3, 0, 0});
}

TEST_CASE("consistency checks") {
    CHECK(consistency_check(LinkRule::LinkTiv));
    CHECK(consistency_check(LinkRule::LinkHv));
    CHECK(consistency_check(LinkRule::LinkToT));
    int holding = 0;
    for (auto r : all_rules()) holding += consistency_check(r) ? 1 : 0;
    // ext-CVW33 uses a link outside the supported rank profiles.
    CHECK(holding == 13);
    CHECK_FALSE(consistency_check(LinkRule::ExtCVW33));
}

TEST_CASE("transition JSON round trip") {
    for (auto r : all_rules()) {
        for (const auto& s : {State{ClassLabel::t(), Format(8, 6)}, State{ClassLabel::h(3, 0), Format(8, 6)},
                              State{ClassLabel::g(5), Format(5, 1)}, State{ClassLabel::h(2, 0), Format(6, 3)}}) {
            const auto t = try_apply_rule(r, s);
            if (!t) continue;
            CHECK(transition_from_json(to_json(*t)) == *t);
            CHECK(transition_from_json(Json::parse(to_json(*t).dump())) == *t);
        }
    }
    auto doc = to_json(apply_rule(LinkRule::LinkTiv, ClassLabel::t(), Format(4, 3)));
    doc["out"][1] = Json::array({5, 3});
    CHECK_THROWS_AS(transition_from_json(doc), Error);
    doc = to_json(apply_rule(LinkRule::LinkTiv, ClassLabel::t(), Format(4, 3)));
    doc["extra"] = 1;
    CHECK_THROWS_AS(transition_from_json(doc), Error);
}

}
