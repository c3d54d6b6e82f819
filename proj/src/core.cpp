#include "grade3/core.hpp"

#include <charconv>
#include <vector>

namespace grade3 {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidFormat: return "InvalidFormat";
        case ErrorCode::InvalidLabel: return "InvalidLabel";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::UnknownArrangement: return "UnknownArrangement";
        case ErrorCode::UnsupportedProfile: return "UnsupportedProfile";
        case ErrorCode::PreconditionViolated: return "PreconditionViolated";
        case ErrorCode::UnsupportedSpec: return "UnsupportedSpec";
        case ErrorCode::Phi2Mismatch: return "Phi2Mismatch";
        case ErrorCode::OutOfDomain: return "OutOfDomain";
        case ErrorCode::InvalidDocument: return "InvalidDocument";
    }
    return "Unknown";
}

Format::Format(int m, int n) : m_(m), n_(n) {
    if (m < 1 || n < 1) {
        throw Error(ErrorCode::InvalidFormat,
                    "format (" + std::to_string(m) + "," + std::to_string(n) +
                        ") needs m >= 1 and n >= 1");
    }
}

Format make_format(int m, int n) { return Format(m, n); }

int betti_total(const Format& f) { return 2 * (f.m() + f.n()); }

std::string to_string(const Format& f) {
    return "(" + std::to_string(f.m()) + "," + std::to_string(f.n()) + ")";
}

namespace {

// Splits "(a,b,...)" into integers; returns false on any syntax problem.
bool parse_int_tuple(std::string_view body, std::vector<int>& out) {
    if (body.size() < 2 || body.front() != '(' || body.back() != ')') return false;
    body = body.substr(1, body.size() - 2);
    while (true) {
        auto comma = body.find(',');
        auto piece = body.substr(0, comma);
        if (piece.empty()) return false;
        int value = 0;
        auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), value);
        if (ec != std::errc{} || ptr != piece.data() + piece.size()) return false;
        out.push_back(value);
        if (comma == std::string_view::npos) return true;
        body.remove_prefix(comma + 1);
    }
}

}  // namespace

Format parse_format(std::string_view text) {
    std::vector<int> v;
    if (!parse_int_tuple(text, v) || v.size() != 2) {
        throw Error(ErrorCode::InvalidFormat, "malformed format '" + std::string(text) + "'");
    }
    return Format(v[0], v[1]);
}

ClassLabel ClassLabel::g(int r) {
    if (r < 0) throw Error(ErrorCode::InvalidLabel, "G(r) needs r >= 0");
    if (r <= 1) return h(0, r);
    return ClassLabel(ClassTag::G, r, 0, 0);
}

ClassLabel ClassLabel::h(int p, int q) {
    if (p < 0 || q < 0) throw Error(ErrorCode::InvalidLabel, "H(p,q) needs p,q >= 0");
    return ClassLabel(ClassTag::H, 0, p, q);
}

std::string to_string(const ClassLabel& c) {
    switch (c.tag()) {
        case ClassTag::B: return "B";
        case ClassTag::C3: return "C(3)";
        case ClassTag::T: return "T";
        case ClassTag::G: return "G(" + std::to_string(c.r()) + ")";
        case ClassTag::H:
            return "H(" + std::to_string(c.p()) + "," + std::to_string(c.q()) + ")";
    }
    return "?";
}

ClassLabel parse_class_label(std::string_view text) {
    if (text == "B") return ClassLabel::b();
    if (text == "T") return ClassLabel::t();
    if (text == "C(3)") return ClassLabel::c3();
    std::vector<int> v;
    if (!text.empty() && parse_int_tuple(text.substr(1), v)) {
        if (text.front() == 'G' && v.size() == 1 && v[0] >= 0) return ClassLabel::g(v[0]);
        if (text.front() == 'H' && v.size() == 2 && v[0] >= 0 && v[1] >= 0) {
            return ClassLabel::h(v[0], v[1]);
        }
    }
    throw Error(ErrorCode::InvalidLabel, "unknown class label '" + std::string(text) + "'");
}

ClassInvariants class_invariants(const ClassLabel& c) {
    switch (c.tag()) {
        case ClassTag::C3: return {3, 1, 3};
        case ClassTag::T: return {3, 0, 0};
        case ClassTag::B: return {1, 1, 2};
        case ClassTag::G: return {0, 1, c.r()};
        case ClassTag::H: return {c.p(), c.q(), c.q()};
    }
    return {};
}

}  // namespace grade3
