#include "grade3/planner.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <set>
#include <unordered_set>

namespace grade3 {

namespace {

bool odd(int x) { return x % 2 != 0; }

const std::vector<BaseFamily> kFamilies = {
    {"ACI-a", "H(3,2)@(4,2)", "Christensen-Veliche-Weyman 2020, Prop 3.1 and Thm 4.1", true},
    {"ACI-b", "H(3,0)@(4,n), n >= 4 even", "Avramov 1981; Christensen-Veliche-Weyman 2020, Remark 4.2",
     false},
    {"ACI-c", "T@(4,n), n >= 3 odd", "Avramov 1981; Christensen-Veliche-Weyman 2020, Remark 4.2", false},
    {"EXT-m3", "?@(m,3), m >= 6", "Christensen-Veliche 2014, Thm 2 (m = 6); VandeBogert 2020, Cor 5.9",
     true},
    {"GOR", "G(m)@(m,1), m >= 5 odd", "Buchsbaum-Eisenbud 1977, Thm 2.1", true},
    {"HS", "H(p,p-1)@(p+1,p-1), p >= 3", "Avramov 2012, 3.9.2(b)", true},
    {"T2-d", "H(1,2)@(m,2), m >= 6 even", "Brown 1984, Thm 4.4", false},
    {"T2-e", "B@(m,2), m >= 5 odd", "Brown 1984, Thm 4.4", false},
};

}  // namespace

const std::vector<BaseFamily>& base_families() { return kFamilies; }

const BaseFamily* find_family(std::string_view id) {
    for (const auto& f : kFamilies) {
        if (f.id == id) return &f;
    }
    return nullptr;
}

bool family_contains(std::string_view id, const State& s) {
    const int m = s.format.m(), n = s.format.n();
    if (id == "EXT-m3") return !s.cls && n == 3 && m >= 6;
    if (!s.cls) return false;
    const ClassLabel& c = *s.cls;
    if (id == "GOR") return c == ClassLabel::g(m) && n == 1 && m >= 5 && odd(m);
    if (id == "HS") return c.tag() == ClassTag::H && c.p() >= 3 && c.q() == c.p() - 1 && m == c.p() + 1 && n == c.p() - 1;
    if (id == "ACI-a") return c == ClassLabel::h(3, 2) && m == 4 && n == 2;
    if (id == "ACI-b") return c == ClassLabel::h(3, 0) && m == 4 && n >= 4 && !odd(n);
    if (id == "ACI-c") return c == ClassLabel::t() && m == 4 && n >= 3 && odd(n);
    if (id == "T2-d") return c == ClassLabel::h(1, 2) && n == 2 && m >= 6 && !odd(m);
    if (id == "T2-e") return c == ClassLabel::b() && n == 2 && m >= 5 && odd(m);
    return false;
}

namespace {

std::vector<State> search_sources(int bound) {
    std::vector<State> out;
    for (int m = 5; m <= bound; m += 2) out.push_back({ClassLabel::g(m), Format(m, 1)});
    for (int p = 3; p + 1 <= bound; ++p) out.push_back({ClassLabel::h(p, p - 1), Format(p + 1, p - 1)});
    for (int m = 6; m <= bound && bound >= 3; ++m) out.push_back({std::nullopt, Format(m, 3)});
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Smallest search family (by id) containing the state.
std::optional<std::string_view> search_family_of(const State& s) {
    for (const auto& f : kFamilies) {
        if (f.search_axiom && family_contains(f.id, s)) return f.id;
    }
    return std::nullopt;
}

bool admissible(const State& s) {
    return !s.cls || is_permissible(*s.cls, s.format).status != Status::NotPermissible;
}

}  // namespace

std::string certificate_problem(const DerivationCertificate& cert) {
    const auto* fam = find_family(cert.axiom.family);
    if (!fam) return "unknown base family '" + cert.axiom.family + "'";
    if (!family_contains(fam->id, cert.axiom.state)) {
        return to_string(cert.axiom.state) + " is not an instance of " + std::string(fam->id);
    }
    if (cert.axiom.cite != fam->cite) return "axiom citation does not match family " + std::string(fam->id);
    if (!admissible(cert.axiom.state)) return "axiom instance is not permissible";
    State cur = cert.axiom.state;
    for (std::size_t i = 0; i < cert.steps.size(); ++i) {
        const auto& step = cert.steps[i];
        const std::string where = "step " + std::to_string(i + 1) + ": ";
        if (step.in != cur) return where + "input " + to_string(step.in) + " != previous " + to_string(cur);
        auto replay = try_apply_rule(step.rule, step.in);
        if (!replay) return where + "preconditions of " + std::string(to_string(step.rule)) + " fail";
        if (replay->out != step.out) {
            return where + "rule gives " + to_string(replay->out) + ", certificate says " + to_string(step.out);
        }
        if (step.cite != replay->cite) return where + "citation mismatch";
        if (!step.out.cls) return where + "output class is opaque";
        if (!admissible(step.out)) return where + to_string(step.out) + " is not permissible";
        cur = step.out;
    }
    if (cur != cert.target) return "chain ends at " + to_string(cur) + ", target is " + to_string(cert.target);
    return {};
}

bool verify_certificate(const DerivationCertificate& cert) { return certificate_problem(cert).empty(); }

Json to_json(const DerivationCertificate& cert) {
    Json doc;
    doc["version"] = 1;
    doc["axiom"] = {{"family", cert.axiom.family},
                    {"class", class_string(cert.axiom.state.cls)},
                    {"format", to_string(cert.axiom.state.format)},
                    {"cite", cert.axiom.cite}};
    doc["steps"] = Json::array();
    for (const auto& s : cert.steps) doc["steps"].push_back(to_json(s));
    doc["target"] = {{"class", class_string(cert.target.cls)}, {"format", to_string(cert.target.format)}};
    return doc;
}

namespace {

[[noreturn]] void bad_cert(const std::string& what) {
    throw Error(ErrorCode::InvalidDocument, "certificate: " + what);
}

void only_fields(const Json& obj, std::initializer_list<std::string_view> allowed, const char* where) {
    if (!obj.is_object()) bad_cert(std::string(where) + " must be an object");
    for (const auto& item : obj.items()) {
        if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
            bad_cert("unknown field '" + item.key() + "' in " + where);
        }
    }
    for (auto key : allowed) {
        if (!obj.contains(std::string(key))) bad_cert("missing '" + std::string(key) + "' in " + where);
    }
}

std::string str_field(const Json& obj, const char* key) {
    if (!obj[key].is_string()) bad_cert(std::string("'") + key + "' must be a string");
    return obj[key].get<std::string>();
}

}  // namespace

DerivationCertificate certificate_from_json(const Json& doc) {
    only_fields(doc, {"version", "axiom", "steps", "target"}, "document");
    if (!doc["version"].is_number_integer() || doc["version"].get<int>() != 1) bad_cert("unsupported version");
    only_fields(doc["axiom"], {"family", "class", "format", "cite"}, "axiom");
    only_fields(doc["target"], {"class", "format"}, "target");
    if (!doc["steps"].is_array()) bad_cert("'steps' must be an array");
    DerivationCertificate cert{Axiom{"", State{std::nullopt, Format(1, 1)}, ""}, {}, State{std::nullopt, Format(1, 1)}};
    try {
        const auto& ax = doc["axiom"];
        cert.axiom.family = str_field(ax, "family");
        cert.axiom.state = State{parse_class_or_opaque(str_field(ax, "class")), parse_format(str_field(ax, "format"))};
        cert.axiom.cite = str_field(ax, "cite");
        const auto& tg = doc["target"];
        cert.target = State{parse_class_or_opaque(str_field(tg, "class")), parse_format(str_field(tg, "format"))};
    } catch (const Error& e) {
        if (e.code() == ErrorCode::InvalidDocument) throw;
        bad_cert(e.what());
    }
    for (const auto& s : doc["steps"]) cert.steps.push_back(transition_from_json(s));
    return cert;
}

struct Planner::Layers {
    std::unordered_map<State, int> dist;
    std::unordered_map<State, std::vector<State>> preds;  // tight edges only
};

Planner::Planner(PlannerOptions options) : options_(options) {}
Planner::~Planner() = default;

const Planner::Layers& Planner::layers(int bound) {
    std::lock_guard lock(mutex_);
    auto& slot = cache_[bound];
    if (slot) return *slot;
    auto lay = std::make_unique<Layers>();
    std::deque<State> queue;
    for (const auto& s : search_sources(bound)) {
        lay->dist.emplace(s, 0);
        queue.push_back(s);
    }
    while (!queue.empty()) {
        const State s = queue.front();
        queue.pop_front();
        const int d = lay->dist.at(s);
        for (auto rule : all_rules()) {
            auto t = try_apply_rule(rule, s);
            if (!t) continue;
            const State& out = t->out;
            if (out.format.m() > bound || out.format.n() > bound) continue;
            auto it = lay->dist.find(out);
            if (it == lay->dist.end()) {
                if (!admissible(out)) continue;
                lay->dist.emplace(out, d + 1);
                lay->preds[out].push_back(s);
                queue.push_back(out);
            } else if (it->second == d + 1) {
                auto& p = lay->preds[out];
                if (std::find(p.begin(), p.end(), s) == p.end()) p.push_back(s);
            }
        }
    }
    slot = std::move(lay);
    return *slot;
}

RealizeResult Planner::realize(const ClassLabel& c, const Format& f) {
    RealizeResult res;
    res.verdict = is_permissible(c, f);
    if (res.verdict.status == Status::NotPermissible) {
        res.kind = RealizeResult::Kind::NotPermissible;
        res.reason = "excluded by " + res.verdict.violated_rules.front().id;
        return res;
    }
    res.kind = RealizeResult::Kind::NotFound;
    if (c.tag() == ClassTag::C3) {
        res.reason = "complete intersections are not produced by the registered links";
        return res;
    }
    if (res.verdict.status == Status::UnknownNecessaryOnly) {
        res.reason = "only necessary conditions are known for this class and format";
        return res;
    }
    const int bound = std::min(std::max(f.m(), f.n()) + 6, options_.max_search);
    if (f.m() > bound || f.n() > bound) {
        res.reason = "target exceeds the search cap " + std::to_string(options_.max_search);
        return res;
    }
    const auto& lay = layers(bound);
    const State target{c, f};
    auto hit = lay.dist.find(target);
    if (hit == lay.dist.end()) {
        res.reason = "no derivation within the search box of side " + std::to_string(bound);
        return res;
    }
    const int depth = hit->second;

    // States lying on some shortest derivation of the target.
    std::unordered_set<State> on_path{target};
    std::vector<State> stack{target};
    while (!stack.empty()) {
        const State s = stack.back();
        stack.pop_back();
        auto it = lay.preds.find(s);
        if (it == lay.preds.end()) continue;
        for (const auto& p : it->second) {
            if (on_path.insert(p).second) stack.push_back(p);
        }
    }

    // Greedy: smallest rule at each layer.
    std::vector<std::vector<State>> frontier(static_cast<std::size_t>(depth) + 1);
    for (const auto& s : on_path) {
        if (lay.dist.at(s) == 0) frontier[0].push_back(s);
    }
    std::vector<LinkRule> rules;
    for (int j = 1; j <= depth; ++j) {
        for (auto rule : all_rules()) {
            std::set<State> next;
            for (const auto& s : frontier[static_cast<std::size_t>(j - 1)]) {
                auto t = try_apply_rule(rule, s);
                if (!t || !on_path.count(t->out) || lay.dist.at(t->out) != j) continue;
                next.insert(t->out);
            }
            if (!next.empty()) {
                rules.push_back(rule);
                frontier[static_cast<std::size_t>(j)].assign(next.begin(), next.end());
                break;
            }
        }
    }

    // Sources that reach the target along the chosen rule sequence.
    std::set<State> reach{target};
    for (int j = depth; j >= 1; --j) {
        std::set<State> prev;
        for (const auto& s : frontier[static_cast<std::size_t>(j - 1)]) {
            auto t = try_apply_rule(rules[static_cast<std::size_t>(j - 1)], s);
            if (t && reach.count(t->out)) prev.insert(s);
        }
        reach = std::move(prev);
    }
    std::optional<std::pair<std::string_view, State>> best;
    for (const auto& s : reach) {
        auto fam = search_family_of(s);
        if (fam && (!best || *fam < best->first)) best.emplace(*fam, s);
    }
    if (!best) {
        res.reason = "internal: no axiom on the shortest derivation";
        return res;
    }

    DerivationCertificate cert{Axiom{std::string(best->first), best->second, std::string(find_family(best->first)->cite)},
                               {},
                               target};
    State cur = best->second;
    for (auto rule : rules) {
        auto t = apply_rule(rule, cur);
        cur = t.out;
        cert.steps.push_back(std::move(t));
    }
    res.kind = RealizeResult::Kind::Certificate;
    res.certificate = std::move(cert);
    return res;
}

RealizeResult realize(const ClassLabel& c, const Format& f, PlannerOptions options) {
    Planner planner(options);
    return planner.realize(c, f);
}

PlannerOptions planner_options_from_env() {
    PlannerOptions opts;
    if (const char* v = std::getenv("GRADE3_MAX_SEARCH")) {
        char* end = nullptr;
        const long x = std::strtol(v, &end, 10);
        if (end != v && *end == '\0' && x >= 1 && x <= 100000) opts.max_search = static_cast<int>(x);
    }
    return opts;
}

CoverageReport realize_all(int m_max, int n_max, PlannerOptions options) {
    CoverageReport report;
    Planner planner(options);
    auto attempt = [&](CoverageGroup& group, const ClassLabel& c, const Format& f) {
        ++group.targets;
        auto res = planner.realize(c, f);
        if (res.kind == RealizeResult::Kind::Certificate) {
            ++report.certificates;
            if (verify_certificate(*res.certificate)) {
                ++report.verified;
                ++group.realized;
                report.emitted.push_back(std::move(*res.certificate));
                return;
            }
        }
        group.gaps.push_back(State{c, f});
    };
    for (int m = 1; m <= m_max; ++m) {
        for (int n = 1; n <= n_max; ++n) {
            const Format f(m, n);
            if (is_permissible(ClassLabel::t(), f).status == Status::Permissible) attempt(report.t, ClassLabel::t(), f);
            if (is_permissible(ClassLabel::b(), f).status == Status::Permissible) attempt(report.b, ClassLabel::b(), f);
            for (const auto& c : boundary_classes(f)) attempt(report.h, c, f);
        }
    }
    return report;
}

std::string_view to_string(TFamily fam) {
    switch (fam) {
        case TFamily::M2: return "T-m2";
        case TFamily::N2: return "T-n2";
        case TFamily::M0: return "T-m0";
        case TFamily::N0: return "T-n0";
        case TFamily::N1: return "T-n1";
        case TFamily::M1: return "T-m1";
        case TFamily::HSChain: return "HS-chain";
    }
    return "?";
}

std::string_view describe(TFamily fam) {
    switch (fam) {
        case TFamily::M2: return "(3k+2,n), n >= 3k+2: type 2 ideal, linktoT, then double linktoT steps";
        case TFamily::N2: return "(m,3k+2), m >= 3k+5: type 2 ideal, two linktoT, then double linktoT steps";
        case TFamily::M0: return "(3k+3,n), n >= 3k+3: format (m,3) ideal, linktoT, then double linktoT steps";
        case TFamily::N0: return "(m,3k+3), m >= 3k+6: format (m,3) ideal, two linktoT, then double linktoT steps";
        case TFamily::N1: return "(m,3k+1), m >= 3k+3: almost complete intersection, linktoT, then double steps";
        case TFamily::M1: return "(3k+4,n), n >= 3k+3: almost complete intersection, two linktoT, then double steps";
        case TFamily::HSChain: return "(n+3,n+2) and (n+5,n+3): hypersurface section followed by linktoT";
    }
    return "?";
}

TFamily family_assignment(const Format& f) {
    const int m = f.m(), n = f.n();
    if (m < 5 || n < 4 || is_permissible(ClassLabel::t(), f).status != Status::Permissible) {
        throw Error(ErrorCode::OutOfDomain, "family schedule covers permissible T formats with m >= 5, n >= 4");
    }
    if (m % 3 == 2 && n >= m) return TFamily::M2;
    if (m % 3 == 0 && n >= m) return TFamily::M0;
    if (m % 3 == 1 && n >= m - 1) return TFamily::M1;
    if (n % 3 == 2 && m >= n + 3) return TFamily::N2;
    if (n % 3 == 0 && m >= n + 3) return TFamily::N0;
    if (n % 3 == 1 && m >= n + 2) return TFamily::N1;
    return TFamily::HSChain;
}

}  // namespace grade3
