#pragma once

#include "grade3/linkage.hpp"
#include "grade3/permissibility.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace grade3 {

struct BaseFamily {
    std::string_view id;
    std::string_view pattern;
    std::string_view cite;
    // Primitive families seed the search; the others are reachable from them
    // by registered rules and are accepted only when replaying certificates.
    bool search_axiom;
};

const std::vector<BaseFamily>& base_families();
const BaseFamily* find_family(std::string_view id);
bool family_contains(std::string_view id, const State& s);

struct Axiom {
    std::string family;
    State state;
    std::string cite;
    friend bool operator==(const Axiom&, const Axiom&) = default;
};

struct DerivationCertificate {
    Axiom axiom;
    std::vector<Transition> steps;
    State target;
    friend bool operator==(const DerivationCertificate&, const DerivationCertificate&) = default;
};

// Empty string when the certificate replays, otherwise the first failure.
std::string certificate_problem(const DerivationCertificate& cert);
bool verify_certificate(const DerivationCertificate& cert);

Json to_json(const DerivationCertificate& cert);
DerivationCertificate certificate_from_json(const Json& doc);

struct RealizeResult {
    enum class Kind { Certificate, NotPermissible, NotFound };
    Kind kind = Kind::NotFound;
    std::optional<DerivationCertificate> certificate;
    PermissibilityVerdict verdict;
    std::string reason;
};

struct PlannerOptions {
    int max_search = 64;  // hard cap on the search box side
};

// Reads GRADE3_MAX_SEARCH; falls back to the default on absence or junk.
PlannerOptions planner_options_from_env();

// Breadth-first search from base-family instances. Searches are memoized
// per box bound; results do not depend on what was searched before.
class Planner {
public:
    explicit Planner(PlannerOptions options = {});
    ~Planner();
    Planner(const Planner&) = delete;
    Planner& operator=(const Planner&) = delete;

    RealizeResult realize(const ClassLabel& c, const Format& f);

private:
    struct Layers;
    const Layers& layers(int bound);

    PlannerOptions options_;
    std::mutex mutex_;
    std::map<int, std::unique_ptr<Layers>> cache_;
};

RealizeResult realize(const ClassLabel& c, const Format& f, PlannerOptions options = {});

struct CoverageGroup {
    std::string name;
    int targets = 0;
    int realized = 0;
    std::vector<State> gaps;
};

struct CoverageReport {
    CoverageGroup t{"T", 0, 0, {}};
    CoverageGroup b{"B", 0, 0, {}};
    CoverageGroup h{"boundary H", 0, 0, {}};
    int certificates = 0;
    int verified = 0;
    std::vector<DerivationCertificate> emitted;
};

CoverageReport realize_all(int m_max, int n_max, PlannerOptions options = {});

enum class TFamily { M2, N2, M0, N0, N1, M1, HSChain };

std::string_view to_string(TFamily fam);
std::string_view describe(TFamily fam);
TFamily family_assignment(const Format& f);

}  // namespace grade3
