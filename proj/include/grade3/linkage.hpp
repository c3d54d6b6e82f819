#pragma once

#include "grade3/core.hpp"
#include "grade3/presentation.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace grade3 {

// Ranks of phi_1, phi_2, phi_3 (tensored with k) for the comparison map
// from the Koszul complex on the regular sequence.
struct RankProfile {
    int t1 = 0;
    int t2 = 0;
    int t3 = 0;
    friend bool operator==(const RankProfile&, const RankProfile&) = default;
};

std::string to_string(const RankProfile& rp);
bool is_supported(const RankProfile& rp);
std::vector<RankProfile> supported_profiles();

Format link_option_format(const Format& f, const RankProfile& rp);
int betti_after_link(int b, const RankProfile& rp);

enum class LinkRule {
    LinkToT,
    LinkTi,
    LinkTii,
    LinkTiii,
    LinkTiv,
    LinkGi,
    LinkGii,
    LinkHi,
    LinkHii,
    LinkHiii,
    LinkHiv,
    LinkHv,
    ExtCVW31,
    ExtCVW33,
};

// Declaration order; also the tie-break order used by the planner.
const std::vector<LinkRule>& all_rules();
std::string_view to_string(LinkRule rule);
LinkRule parse_rule(std::string_view id);
std::string_view rule_cite(LinkRule rule);
RankProfile rule_profile(LinkRule rule);

// A (class, format) pair. An empty class is opaque: a known format whose
// class is not pinned down (only linktoT accepts it).
struct State {
    std::optional<ClassLabel> cls;
    Format format;
    friend auto operator<=>(const State&, const State&) = default;
};

std::string class_string(const std::optional<ClassLabel>& c);
std::optional<ClassLabel> parse_class_or_opaque(std::string_view s);
std::string to_string(const State& s);

struct Transition {
    LinkRule rule;
    State in;
    State out;
    std::string cite;
    friend bool operator==(const Transition&, const Transition&) = default;
};

Transition apply_rule(LinkRule rule, const State& in);
Transition apply_rule(LinkRule rule, const ClassLabel& c, const Format& f);
// Like apply_rule but returns empty instead of throwing PreconditionViolated.
std::optional<Transition> try_apply_rule(LinkRule rule, const State& in);

bool consistency_check(LinkRule rule);

Json to_json(const Transition& t);
Transition transition_from_json(const Json& doc);

}  // namespace grade3

template <>
struct std::hash<grade3::State> {
    std::size_t operator()(const grade3::State& s) const noexcept {
        std::size_t h = s.cls ? std::hash<grade3::ClassLabel>{}(*s.cls) : 0x9e3779b9u;
        return h * 31u + std::hash<grade3::Format>{}(s.format);
    }
};
