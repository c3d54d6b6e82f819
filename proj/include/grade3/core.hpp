#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace grade3 {

enum class ErrorCode {
    InvalidFormat,
    InvalidLabel,
    DimensionMismatch,
    UnknownArrangement,
    UnsupportedProfile,
    PreconditionViolated,
    UnsupportedSpec,
    Phi2Mismatch,
    OutOfDomain,
    InvalidDocument,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

// Ranks of F1 and F3 in a minimal resolution; F2 has rank m+n-1.
class Format {
public:
    Format(int m, int n);

    int m() const noexcept { return m_; }
    int n() const noexcept { return n_; }
    int f2_rank() const noexcept { return m_ + n_ - 1; }

    friend auto operator<=>(const Format&, const Format&) = default;

private:
    int m_;
    int n_;
};

Format make_format(int m, int n);
int betti_total(const Format& f);
std::string to_string(const Format& f);
Format parse_format(std::string_view text);

enum class ClassTag { B, C3, G, H, T };

// Normalized class label. G(0) and G(1) collapse to H(0,0) and H(0,1).
class ClassLabel {
public:
    static ClassLabel b() { return ClassLabel(ClassTag::B, 0, 0, 0); }
    static ClassLabel c3() { return ClassLabel(ClassTag::C3, 0, 0, 0); }
    static ClassLabel t() { return ClassLabel(ClassTag::T, 0, 0, 0); }
    static ClassLabel g(int r);
    static ClassLabel h(int p, int q);

    ClassTag tag() const noexcept { return tag_; }
    int r() const noexcept { return r_; }
    int p() const noexcept { return p_; }
    int q() const noexcept { return q_; }

    friend auto operator<=>(const ClassLabel&, const ClassLabel&) = default;

private:
    ClassLabel(ClassTag tag, int r, int p, int q) : tag_(tag), r_(r), p_(p), q_(q) {}

    ClassTag tag_;
    int r_;
    int p_;
    int q_;
};

std::string to_string(const ClassLabel& c);
ClassLabel parse_class_label(std::string_view text);

struct ClassInvariants {
    int p = 0;
    int q = 0;
    int r = 0;
    friend bool operator==(const ClassInvariants&, const ClassInvariants&) = default;
};

ClassInvariants class_invariants(const ClassLabel& c);

}  // namespace grade3

template <>
struct std::hash<grade3::Format> {
    std::size_t operator()(const grade3::Format& f) const noexcept {
        return std::hash<long long>{}((static_cast<long long>(f.m()) << 32) ^ f.n());
    }
};

template <>
struct std::hash<grade3::ClassLabel> {
    std::size_t operator()(const grade3::ClassLabel& c) const noexcept {
        std::size_t h = static_cast<std::size_t>(c.tag());
        h = h * 1000003u + static_cast<std::size_t>(c.r());
        h = h * 1000003u + static_cast<std::size_t>(c.p());
        h = h * 1000003u + static_cast<std::size_t>(c.q());
        return h;
    }
};
