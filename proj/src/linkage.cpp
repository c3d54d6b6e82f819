#include "grade3/linkage.hpp"

#include <array>

namespace grade3 {

std::string to_string(const RankProfile& rp) {
    return "(" + std::to_string(rp.t1) + "," + std::to_string(rp.t2) + "," + std::to_string(rp.t3) + ")";
}

std::vector<RankProfile> supported_profiles() {
    return {{0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {2, 1, 0}, {3, 0, 0}};
}

bool is_supported(const RankProfile& rp) {
    for (const auto& s : supported_profiles()) {
        if (s == rp) return true;
    }
    return false;
}

Format link_option_format(const Format& f, const RankProfile& rp) {
    if (!is_supported(rp)) {
        throw Error(ErrorCode::UnsupportedProfile, "rank profile " + to_string(rp) + " is not modeled");
    }
    const int m = f.m(), n = f.n();
    if (rp.t2 == 1) return Format(n + 2, m - 2);
    return Format(n + 3, m - rp.t1);
}

int betti_after_link(int b, const RankProfile& rp) { return b + 6 - 2 * rp.t1 - 2 * rp.t2 - rp.t3; }

namespace {

struct RuleInfo {
    LinkRule rule;
    std::string_view id;
    RankProfile profile;
    std::string_view cite;
};

constexpr std::array<RuleInfo, 14> kRules{{
    {LinkRule::LinkToT, "linktoT", {0, 0, 0}, "mapping cone link, profile (0,0,0): any class to T"},
    {LinkRule::LinkTi, "linkT-i", {1, 0, 0}, "mapping cone link, profile (1,0,0): T to H(2,0)"},
    {LinkRule::LinkTii, "linkT-ii", {1, 0, 0}, "mapping cone link, profile (1,0,0): T to H(2,2)"},
    {LinkRule::LinkTiii, "linkT-iii", {2, 0, 0}, "mapping cone link, profile (2,0,0): T to H(1,2)"},
    {LinkRule::LinkTiv, "linkT-iv", {2, 1, 0}, "mapping cone link, profile (2,1,0): T to B"},
    {LinkRule::LinkGi, "linkG-i", {1, 0, 0}, "mapping cone link, profile (1,0,0): G(r) to H(3,0)"},
    {LinkRule::LinkGii, "linkG-ii", {2, 0, 0}, "mapping cone link, profile (2,0,0): G(r) to T"},
    {LinkRule::LinkHi, "linkH-i", {1, 0, 0}, "mapping cone link, profile (1,0,0): H(p,q) to H(2,1)"},
    {LinkRule::LinkHii, "linkH-ii", {1, 0, 0}, "mapping cone link, profile (1,0,0): H(p,q) to H(q+2,p)"},
    {LinkRule::LinkHiii, "linkH-iii", {2, 0, 0}, "mapping cone link, profile (2,0,0): H(p,q) to H(1,1)"},
    {LinkRule::LinkHiv, "linkH-iv", {2, 0, 0}, "mapping cone link, profile (2,0,0): H(p,q) to H(q+1,p)"},
    {LinkRule::LinkHv, "linkH-v", {3, 0, 0}, "mapping cone link, profile (3,0,0): H(p,0) to H(0,p)"},
    {LinkRule::ExtCVW31, "ext-CVW31", {3, 0, 0},
     "Christensen-Veliche-Weyman 2020, Prop 3.1 and Thm 4.1"},
    {LinkRule::ExtCVW33, "ext-CVW33", {3, 1, 0}, "Christensen-Veliche-Weyman 2020, Prop 3.3"},
}};

const RuleInfo& info(LinkRule rule) { return kRules.at(static_cast<std::size_t>(rule)); }

bool is_tag(const State& s, ClassTag tag) { return s.cls && s.cls->tag() == tag; }

// Output of a rule, or empty with the unmet assumption stored in why.
std::optional<State> rule_output(LinkRule rule, const State& in, std::string& why) {
    const int m = in.format.m(), n = in.format.n();
    auto fail = [&](const char* what) {
        why = what;
        return std::optional<State>{};
    };
    auto out = [&](ClassLabel c, int m2, int n2) {
        if (m2 < 1 || n2 < 1) return fail("a linked format with positive ranks");
        return std::optional<State>{State{c, Format(m2, n2)}};
    };
    if (rule != LinkRule::LinkToT && !in.cls) return fail("a known class");
    switch (rule) {
        case LinkRule::LinkToT:
            if (is_tag(in, ClassTag::C3)) return fail("a class other than C(3)");
            return out(ClassLabel::t(), n + 3, m);
        case LinkRule::LinkTi:
        case LinkRule::LinkTii:
        case LinkRule::LinkTiii:
        case LinkRule::LinkTiv:
            if (!is_tag(in, ClassTag::T)) return fail("class T");
            if (rule == LinkRule::LinkTi) return out(ClassLabel::h(2, 0), n + 3, m - 1);
            if (rule == LinkRule::LinkTii) return out(ClassLabel::h(2, 2), n + 3, m - 1);
            if (rule == LinkRule::LinkTiii) return out(ClassLabel::h(1, 2), n + 3, m - 2);
            return out(ClassLabel::b(), n + 2, m - 2);
        case LinkRule::LinkGi:
        case LinkRule::LinkGii:
            if (!is_tag(in, ClassTag::G)) return fail("class G(r)");
            if (rule == LinkRule::LinkGi) return out(ClassLabel::h(3, 0), n + 3, m - 1);
            return out(ClassLabel::t(), n + 3, m - 2);
        case LinkRule::ExtCVW31:
            if (!(in.cls == ClassLabel::g(5) && in.format == Format(5, 1))) {
                return fail("G(5) at format (5,1)");
            }
            return out(ClassLabel::h(3, 2), 4, 2);
        case LinkRule::ExtCVW33:
            if (!(in.cls == ClassLabel::h(2, 0) && n == 3 && m >= 6 && m % 2 == 0)) {
                return fail("H(2,0) at format (m,3) with m >= 6 even");
            }
            return out(ClassLabel::h(0, 1), 5, m - 3);
        default:
            break;
    }
    if (!is_tag(in, ClassTag::H)) return fail("class H(p,q)");
    const int p = in.cls->p(), q = in.cls->q();
    switch (rule) {
        case LinkRule::LinkHi:
            if (p < 1) return fail("p >= 1");
            return out(ClassLabel::h(2, 1), n + 3, m - 1);
        case LinkRule::LinkHii:
            return out(ClassLabel::h(q + 2, p), n + 3, m - 1);
        case LinkRule::LinkHiii:
            if (!(1 <= p && p <= m - 2)) return fail("1 <= p <= m-2");
            return out(ClassLabel::h(1, 1), n + 3, m - 2);
        case LinkRule::LinkHiv:
            if (p > m - 2) return fail("p <= m-2");
            return out(ClassLabel::h(q + 1, p), n + 3, m - 2);
        case LinkRule::LinkHv:
            if (!(2 <= p && p <= m - 3 && q == 0)) return fail("2 <= p <= m-3 and q = 0");
            return out(ClassLabel::h(0, p), n + 3, m - 3);
        default:
            return fail("a known rule");
    }
}

}  // namespace

const std::vector<LinkRule>& all_rules() {
    static const std::vector<LinkRule> rules = [] {
        std::vector<LinkRule> v;
        for (const auto& r : kRules) v.push_back(r.rule);
        return v;
    }();
    return rules;
}

std::string_view to_string(LinkRule rule) { return info(rule).id; }
std::string_view rule_cite(LinkRule rule) { return info(rule).cite; }
RankProfile rule_profile(LinkRule rule) { return info(rule).profile; }

LinkRule parse_rule(std::string_view id) {
    for (const auto& r : kRules) {
        if (r.id == id) return r.rule;
    }
    throw Error(ErrorCode::InvalidDocument, "unknown linkage rule '" + std::string(id) + "'");
}

std::string class_string(const std::optional<ClassLabel>& c) { return c ? to_string(*c) : "?"; }

std::optional<ClassLabel> parse_class_or_opaque(std::string_view s) {
    if (s == "?") return std::nullopt;
    return parse_class_label(s);
}

std::string to_string(const State& s) { return class_string(s.cls) + "@" + to_string(s.format); }

Transition apply_rule(LinkRule rule, const State& in) {
    std::string why;
    auto out = rule_output(rule, in, why);
    if (!out) {
        throw Error(ErrorCode::PreconditionViolated,
                    std::string(to_string(rule)) + " on " + to_string(in) + ": needs " + why);
    }
    return Transition{rule, in, *out, std::string(rule_cite(rule))};
}

Transition apply_rule(LinkRule rule, const ClassLabel& c, const Format& f) {
    return apply_rule(rule, State{c, f});
}

std::optional<Transition> try_apply_rule(LinkRule rule, const State& in) {
    std::string why;
    auto out = rule_output(rule, in, why);
    if (!out) return std::nullopt;
    return Transition{rule, in, *out, std::string(rule_cite(rule))};
}

bool consistency_check(LinkRule rule) {
    const RankProfile rp = rule_profile(rule);
    if (!is_supported(rp)) return false;
    // Probe every format up to 30 with any class the rule accepts there.
    std::vector<ClassLabel> probes = {ClassLabel::t(), ClassLabel::b()};
    for (int r = 2; r <= 30; ++r) probes.push_back(ClassLabel::g(r));
    for (int p = 0; p <= 12; ++p) {
        for (int q = 0; q <= 12; ++q) probes.push_back(ClassLabel::h(p, q));
    }
    bool any = false;
    for (int m = 1; m <= 30; ++m) {
        for (int n = 1; n <= 30; ++n) {
            const Format f(m, n);
            for (const auto& c : probes) {
                auto t = try_apply_rule(rule, State{c, f});
                if (!t) continue;
                any = true;
                if (t->out.format != link_option_format(f, rp)) return false;
            }
        }
    }
    return any;
}

Json to_json(const Transition& t) {
    Json doc;
    doc["rule"] = std::string(to_string(t.rule));
    doc["in"] = {class_string(t.in.cls), to_string(t.in.format)};
    doc["out"] = {class_string(t.out.cls), to_string(t.out.format)};
    doc["cite"] = t.cite;
    return doc;
}

namespace {

[[noreturn]] void bad_doc(const std::string& what) {
    throw Error(ErrorCode::InvalidDocument, "transition: " + what);
}

State state_from_pair(const Json& pair) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() || !pair[1].is_string()) {
        bad_doc("states must be [class, format] string pairs");
    }
    try {
        return State{parse_class_or_opaque(pair[0].get<std::string>()),
                     parse_format(pair[1].get<std::string>())};
    } catch (const Error& e) {
        bad_doc(e.what());
    }
}

}  // namespace

Transition transition_from_json(const Json& doc) {
    if (!doc.is_object()) bad_doc("expected an object");
    for (const auto& item : doc.items()) {
        const auto& k = item.key();
        if (k != "rule" && k != "in" && k != "out" && k != "cite") bad_doc("unknown field '" + k + "'");
    }
    if (!doc.contains("rule") || !doc["rule"].is_string()) bad_doc("missing 'rule'");
    if (!doc.contains("cite") || !doc["cite"].is_string()) bad_doc("missing 'cite'");
    if (!doc.contains("in") || !doc.contains("out")) bad_doc("missing 'in' or 'out'");
    return Transition{parse_rule(doc["rule"].get<std::string>()), state_from_pair(doc["in"]),
                      state_from_pair(doc["out"]), doc["cite"].get<std::string>()};
}

}  // namespace grade3
