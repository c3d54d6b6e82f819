#pragma once

#include "grade3/core.hpp"

#include <vector>

namespace testsupport {

// Class labels exercised by the classifier suites.
inline std::vector<grade3::ClassLabel> suite_labels() {
    using grade3::ClassLabel;
    std::vector<ClassLabel> out = {ClassLabel::t(), ClassLabel::b(), ClassLabel::c3()};
    for (int r = 2; r <= 8; ++r) out.push_back(ClassLabel::g(r));
    for (int p = 0; p <= 6; ++p) {
        for (int q = 0; q <= 6; ++q) out.push_back(ClassLabel::h(p, q));
    }
    return out;
}

// (p,q,r) as printed in the classification table, typed in independently.
inline grade3::ClassInvariants table_pqr(const grade3::ClassLabel& c) {
    using grade3::ClassTag;
    switch (c.tag()) {
        case ClassTag::B: return {1, 1, 2};
        case ClassTag::C3: return {3, 1, 3};
        case ClassTag::T: return {3, 0, 0};
        case ClassTag::G: return {0, 1, c.r()};
        case ClassTag::H: return {c.p(), c.q(), c.q()};
    }
    return {-1, -1, -1};
}

}  // namespace testsupport
