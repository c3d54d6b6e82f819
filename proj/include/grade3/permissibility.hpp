#pragma once

#include "grade3/core.hpp"

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace grade3 {

enum class Status { Permissible, NotPermissible, UnknownNecessaryOnly };

std::string_view to_string(Status s);

struct RuleCitation {
    std::string id;
    std::string cite;
    friend bool operator==(const RuleCitation&, const RuleCitation&) = default;
};

struct PermissibilityVerdict {
    Status status = Status::UnknownNecessaryOnly;
    std::vector<RuleCitation> violated_rules;
    // For Permissible verdicts: the realized family that makes the claim.
    std::string basis;
};

PermissibilityVerdict is_permissible(const ClassLabel& c, const Format& f);

// H(p,q) with (m,n) a permissible boundary format of the form (m,p+1) or (q+4,n).
std::vector<ClassLabel> boundary_classes(const Format& f);

enum class Cell { White, Dotted, Black };

struct AtlasGrid {
    Format format;
    std::map<std::pair<int, int>, Cell> cells;  // key (p,q), 0 <= p <= n+1, 0 <= q <= m-2
    std::map<std::pair<int, int>, std::vector<RuleCitation>> rules;
};

AtlasGrid atlas_grid(const Format& f);
std::string render_atlas_text(const AtlasGrid& grid);
std::string render_atlas_csv(const AtlasGrid& grid);

}  // namespace grade3
