#pragma once

#include "grade3/core.hpp"

#include "json.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace grade3 {

using Coeffs = std::vector<std::int64_t>;

// Multiplication table of a graded Tor algebra A = A0 + A1 + A2 + A3 with
// bases e_1..e_m, f_1..f_{m+n-1}, g_1..g_n. All indices are 1-based.
// ee holds e_i e_j for i < j over the f basis; ef holds e_i f_l over the g basis.
struct TorPresentation {
    int m = 0;
    int n = 0;
    std::map<std::pair<int, int>, Coeffs> ee;
    std::map<std::pair<int, int>, Coeffs> ef;

    TorPresentation() = default;
    explicit TorPresentation(const Format& f) : m(f.m()), n(f.n()) {}

    int dim_a2() const noexcept { return m + n - 1; }

    // Adds c * f_l to e_i e_j for any i != j, applying e_j e_i = -e_i e_j.
    void add_ee(int i, int j, int l, std::int64_t c);
    // Adds c * g_t to e_i f_l.
    void add_ef(int i, int l, int t, std::int64_t c);

    // Coefficient of f_l in e_i e_j (any order of i, j).
    std::int64_t ee_coeff(int i, int j, int l) const;
    // Coefficient of g_t in e_i f_l.
    std::int64_t ef_coeff(int i, int l, int t) const;

    // Drops all-zero coefficient vectors.
    void prune();

    friend bool operator==(const TorPresentation&, const TorPresentation&) = default;
};

enum class Arrangement { TA, TB, GStd, HI, HII, HIII, HIV, HV };

std::string_view to_string(Arrangement a);
Arrangement parse_arrangement(std::string_view id);
std::vector<Arrangement> all_arrangements();
// Arrangements registered for the class of c.
std::vector<Arrangement> arrangements_for(const ClassLabel& c);
// True when arranged_presentation(c, f, a) would succeed.
bool arrangement_fits(const ClassLabel& c, const Format& f, Arrangement a);

bool canonical_fits(const ClassLabel& c, const Format& f);
TorPresentation canonical_presentation(const ClassLabel& c, const Format& f);
TorPresentation arranged_presentation(const ClassLabel& c, const Format& f, Arrangement a);

struct ClassifierReport {
    int p = 0;
    int q = 0;
    int r = 0;
    int s1 = 0;
    std::optional<ClassLabel> label;  // empty means Unclassifiable
};

ClassifierReport compute_pqrs(const TorPresentation& a);
ClassifierReport classify(const TorPresentation& a);
std::string label_or_unclassifiable(const ClassifierReport& report);

struct Diagnostic {
    enum class Kind { Dimension, Index, Format };
    Kind kind;
    std::string message;
};

std::vector<Diagnostic> validate_presentation(const TorPresentation& a);

// Versioned JSON document. Unknown fields are rejected unless listed in
// extra_fields.
using Json = nlohmann::ordered_json;

Json to_json(const TorPresentation& a);
TorPresentation presentation_from_json(const Json& doc,
                                       const std::vector<std::string>& extra_fields = {});

}  // namespace grade3
