#include "grade3/presentation.hpp"

#include "grade3/rank.hpp"

#include <algorithm>
#include <set>

namespace grade3 {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw Error(ErrorCode::DimensionMismatch, what);
}

std::string fit_message(const ClassLabel& c, const Format& f, const std::string& need) {
    return to_string(c) + " does not fit format " + to_string(f) + ": needs " + need;
}

}  // namespace

void TorPresentation::add_ee(int i, int j, int l, std::int64_t c) {
    if (i == j) throw Error(ErrorCode::DimensionMismatch, "e_i e_i is zero by graded commutativity");
    if (i > j) {
        std::swap(i, j);
        c = -c;
    }
    auto& v = ee[{i, j}];
    v.resize(static_cast<std::size_t>(dim_a2()), 0);
    v.at(static_cast<std::size_t>(l - 1)) += c;
}

void TorPresentation::add_ef(int i, int l, int t, std::int64_t c) {
    auto& v = ef[{i, l}];
    v.resize(static_cast<std::size_t>(n), 0);
    v.at(static_cast<std::size_t>(t - 1)) += c;
}

std::int64_t TorPresentation::ee_coeff(int i, int j, int l) const {
    if (i == j) return 0;
    const int sign = i < j ? 1 : -1;
    auto it = ee.find({std::min(i, j), std::max(i, j)});
    if (it == ee.end() || l < 1 || static_cast<std::size_t>(l) > it->second.size()) return 0;
    return sign * it->second[static_cast<std::size_t>(l - 1)];
}

std::int64_t TorPresentation::ef_coeff(int i, int l, int t) const {
    auto it = ef.find({i, l});
    if (it == ef.end() || t < 1 || static_cast<std::size_t>(t) > it->second.size()) return 0;
    return it->second[static_cast<std::size_t>(t - 1)];
}

void TorPresentation::prune() {
    auto zero = [](const auto& kv) {
        return std::all_of(kv.second.begin(), kv.second.end(), [](auto c) { return c == 0; });
    };
    std::erase_if(ee, zero);
    std::erase_if(ef, zero);
}

std::string_view to_string(Arrangement a) {
    switch (a) {
        case Arrangement::TA: return "T-A";
        case Arrangement::TB: return "T-B";
        case Arrangement::GStd: return "G-std";
        case Arrangement::HI: return "H-i";
        case Arrangement::HII: return "H-ii";
        case Arrangement::HIII: return "H-iii";
        case Arrangement::HIV: return "H-iv";
        case Arrangement::HV: return "H-v";
    }
    return "?";
}

std::vector<Arrangement> all_arrangements() {
    return {Arrangement::TA,  Arrangement::TB,   Arrangement::GStd, Arrangement::HI,
            Arrangement::HII, Arrangement::HIII, Arrangement::HIV,  Arrangement::HV};
}

Arrangement parse_arrangement(std::string_view id) {
    for (auto a : all_arrangements()) {
        if (to_string(a) == id) return a;
    }
    throw Error(ErrorCode::UnknownArrangement, "unknown arrangement '" + std::string(id) + "'");
}

std::vector<Arrangement> arrangements_for(const ClassLabel& c) {
    switch (c.tag()) {
        case ClassTag::T: return {Arrangement::TA, Arrangement::TB};
        case ClassTag::G: return {Arrangement::GStd};
        case ClassTag::H:
            return {Arrangement::HI, Arrangement::HII, Arrangement::HIII, Arrangement::HIV,
                    Arrangement::HV};
        default: return {};
    }
}

namespace {

// Returns an empty string when (c, f) fits, otherwise the unmet requirement.
std::string canonical_gap(const ClassLabel& c, const Format& f) {
    const int m = f.m(), n = f.n(), d = f.f2_rank();
    switch (c.tag()) {
        case ClassTag::C3:
            return (m == 3 && n == 1) ? "" : "format (3,1)";
        case ClassTag::T:
            return (m >= 3 && d >= 3) ? "" : "m >= 3 and m+n-1 >= 3";
        case ClassTag::B:
            return (m >= 2 && d >= 3) ? "" : "m >= 2 and m+n-1 >= 3";
        case ClassTag::G:
            return (m >= c.r() && d >= c.r()) ? "" : "m >= r and m+n-1 >= r";
        case ClassTag::H:
            return (m >= c.p() + 1 && d >= c.p() + c.q() && n >= c.q())
                       ? ""
                       : "m >= p+1, m+n-1 >= p+q and n >= q";
    }
    return "known class";
}

std::string arrangement_gap(const ClassLabel& c, const Format& f, Arrangement a) {
    auto allowed = arrangements_for(c);
    if (std::find(allowed.begin(), allowed.end(), a) == allowed.end()) return "class";
    const int m = f.m(), n = f.n(), d = f.f2_rank();
    const int p = c.p(), q = c.q();
    const bool h_dims = d >= p + q && n >= q;
    switch (a) {
        case Arrangement::TA:
        case Arrangement::TB:
            return (m >= 4 && d >= 3) ? "" : "m >= 4 and m+n-1 >= 3";
        case Arrangement::GStd:
            return canonical_gap(c, f);
        case Arrangement::HII:
            return (m >= p + 1 && h_dims) ? "" : "m >= p+1, m+n-1 >= p+q and n >= q";
        case Arrangement::HIV:
            return (m >= p + 2 && h_dims) ? "" : "m >= p+2, m+n-1 >= p+q and n >= q";
        case Arrangement::HV:
            return (m >= p + 3 && h_dims) ? "" : "m >= p+3, m+n-1 >= p+q and n >= q";
        case Arrangement::HI:
            return (m >= std::max(2, p + 1) && h_dims) ? ""
                                                       : "m >= max(2,p+1), m+n-1 >= p+q and n >= q";
        case Arrangement::HIII:
            return (m >= std::max(3, p + 2) && h_dims)
                       ? ""
                       : "m >= max(3,p+2), m+n-1 >= p+q and n >= q";
    }
    return "known arrangement";
}

void fill_t(TorPresentation& a) {
    a.add_ee(1, 2, 3, 1);
    a.add_ee(2, 3, 1, 1);
    a.add_ee(3, 1, 2, 1);
}

}  // namespace

bool canonical_fits(const ClassLabel& c, const Format& f) { return canonical_gap(c, f).empty(); }

bool arrangement_fits(const ClassLabel& c, const Format& f, Arrangement a) {
    return arrangement_gap(c, f, a).empty();
}

TorPresentation canonical_presentation(const ClassLabel& c, const Format& f) {
    const auto gap = canonical_gap(c, f);
    require(gap.empty(), fit_message(c, f, gap));
    TorPresentation a(f);
    switch (c.tag()) {
        case ClassTag::C3:
            fill_t(a);
            for (int i = 1; i <= 3; ++i) a.add_ef(i, i, 1, 1);
            break;
        case ClassTag::T:
            fill_t(a);
            break;
        case ClassTag::B:
            a.add_ee(1, 2, 3, 1);
            for (int i = 1; i <= 2; ++i) a.add_ef(i, i, 1, 1);
            break;
        case ClassTag::G:
            for (int i = 1; i <= c.r(); ++i) a.add_ef(i, i, 1, 1);
            break;
        case ClassTag::H:
            for (int i = 1; i <= c.p(); ++i) a.add_ee(i, c.p() + 1, i, 1);
            for (int i = 1; i <= c.q(); ++i) a.add_ef(c.p() + 1, c.p() + i, i, 1);
            break;
    }
    return a;
}

TorPresentation arranged_presentation(const ClassLabel& c, const Format& f, Arrangement arr) {
    const auto gap = arrangement_gap(c, f, arr);
    if (gap == "class") {
        throw Error(ErrorCode::UnknownArrangement, "arrangement " + std::string(to_string(arr)) +
                                                       " is not registered for " + to_string(c));
    }
    require(gap.empty(), fit_message(c, f, gap) + " (arrangement " + std::string(to_string(arr)) + ")");
    TorPresentation a(f);
    const int p = c.p(), q = c.q();
    // H arrangements: a central generator e_k with e_k e_{x(i)} = f_i and e_k f_{p+i} = g_i.
    auto fill_h = [&](int central, auto partner) {
        for (int i = 1; i <= p; ++i) a.add_ee(central, partner(i), i, 1);
        for (int i = 1; i <= q; ++i) a.add_ef(central, p + i, i, 1);
    };
    switch (arr) {
        case Arrangement::TA:
            a.add_ee(1, 2, 1, 1);
            a.add_ee(1, 4, 2, 1);
            a.add_ee(2, 4, 3, 1);
            break;
        case Arrangement::TB:
            a.add_ee(2, 3, 1, 1);
            a.add_ee(2, 4, 2, 1);
            a.add_ee(3, 4, 3, 1);
            break;
        case Arrangement::GStd:
            return canonical_presentation(c, f);
        case Arrangement::HII:
            fill_h(1, [](int i) { return i + 1; });
            break;
        case Arrangement::HIV:
            fill_h(1, [](int i) { return i + 2; });
            break;
        case Arrangement::HV:
            fill_h(1, [](int i) { return i + 3; });
            break;
        case Arrangement::HI:
            fill_h(2, [](int i) { return i == 1 ? 1 : i + 1; });
            break;
        case Arrangement::HIII:
            fill_h(3, [](int i) { return i == 1 ? 1 : i + 2; });
            break;
    }
    return a;
}

std::vector<Diagnostic> validate_presentation(const TorPresentation& a) {
    std::vector<Diagnostic> out;
    if (a.m < 1 || a.n < 1) {
        out.push_back({Diagnostic::Kind::Format, "format needs m >= 1 and n >= 1"});
        return out;
    }
    const auto d = static_cast<std::size_t>(a.dim_a2());
    for (const auto& [key, v] : a.ee) {
        const auto [i, j] = key;
        const std::string where = "ee(" + std::to_string(i) + "," + std::to_string(j) + ")";
        if (i < 1 || j > a.m || i >= j) {
            out.push_back({Diagnostic::Kind::Index,
                           where + ": needs 1 <= i < j <= " + std::to_string(a.m)});
        }
        if (v.size() != d) {
            out.push_back({Diagnostic::Kind::Dimension, where + ": vector has " +
                                                            std::to_string(v.size()) +
                                                            " entries, A2 has dimension " +
                                                            std::to_string(d)});
        }
    }
    for (const auto& [key, v] : a.ef) {
        const auto [i, l] = key;
        const std::string where = "ef(" + std::to_string(i) + "," + std::to_string(l) + ")";
        if (i < 1 || i > a.m || l < 1 || l > a.dim_a2()) {
            out.push_back({Diagnostic::Kind::Index, where + ": index out of range"});
        }
        if (v.size() != static_cast<std::size_t>(a.n)) {
            out.push_back({Diagnostic::Kind::Dimension, where + ": vector has " +
                                                            std::to_string(v.size()) +
                                                            " entries, A3 has dimension " +
                                                            std::to_string(a.n)});
        }
    }
    return out;
}

ClassifierReport compute_pqrs(const TorPresentation& a) {
    if (auto diags = validate_presentation(a); !diags.empty()) {
        throw Error(ErrorCode::DimensionMismatch, diags.front().message);
    }
    const auto m = static_cast<std::size_t>(a.m);
    const auto n = static_cast<std::size_t>(a.n);
    const auto d = static_cast<std::size_t>(a.dim_a2());
    ClassifierReport rep;

    IntMatrix rows;
    for (const auto& kv : a.ee) rows.push_back(kv.second);
    rep.p = exact_rank(rows);

    rows.clear();
    for (const auto& kv : a.ef) rows.push_back(kv.second);
    rep.q = exact_rank(rows);

    // delta(f_l) as a vector indexed by (i, t).
    rows.assign(d, std::vector<std::int64_t>(m * n, 0));
    for (const auto& [key, v] : a.ef) {
        const auto i = static_cast<std::size_t>(key.first - 1);
        const auto l = static_cast<std::size_t>(key.second - 1);
        for (std::size_t t = 0; t < n; ++t) rows[l][i * n + t] = v[t];
    }
    rep.r = exact_rank(rows);

    // Row i: the map e_j -> e_i e_j, flattened over (j, l).
    rows.assign(m, std::vector<std::int64_t>(m * d, 0));
    for (const auto& [key, v] : a.ee) {
        const auto i = static_cast<std::size_t>(key.first - 1);
        const auto j = static_cast<std::size_t>(key.second - 1);
        for (std::size_t l = 0; l < d; ++l) {
            rows[i][j * d + l] = v[l];
            rows[j][i * d + l] = -v[l];
        }
    }
    rep.s1 = exact_rank(rows);
    return rep;
}

ClassifierReport classify(const TorPresentation& a) {
    auto rep = compute_pqrs(a);
    const int p = rep.p, q = rep.q, r = rep.r;
    if (p == 3 && q == 1 && r == 3 && a.m == 3 && a.n == 1) {
        rep.label = ClassLabel::c3();
    } else if (p == 3 && q == 0 && r == 0 && (rep.s1 == 3 || rep.s1 == 4)) {
        rep.label = rep.s1 == 3 ? ClassLabel::t() : ClassLabel::h(3, 0);
    } else if (p == 1 && q == 1 && r == 2) {
        rep.label = ClassLabel::b();
    } else if (p == 0 && q == 1 && r >= 2) {
        rep.label = ClassLabel::g(r);
    } else if (r == q) {
        rep.label = ClassLabel::h(p, q);
    }
    return rep;
}

std::string label_or_unclassifiable(const ClassifierReport& report) {
    return report.label ? to_string(*report.label) : std::string("Unclassifiable");
}

Json to_json(const TorPresentation& a) {
    Json doc;
    doc["version"] = 1;
    doc["m"] = a.m;
    doc["n"] = a.n;
    doc["ee"] = Json::array();
    doc["ef"] = Json::array();
    for (const auto& [key, v] : a.ee) {
        for (std::size_t l = 0; l < v.size(); ++l) {
            if (v[l] != 0) doc["ee"].push_back({key.first, key.second, l + 1, v[l]});
        }
    }
    for (const auto& [key, v] : a.ef) {
        for (std::size_t t = 0; t < v.size(); ++t) {
            if (v[t] != 0) doc["ef"].push_back({key.first, key.second, t + 1, v[t]});
        }
    }
    return doc;
}

namespace {

[[noreturn]] void bad_doc(const std::string& what) {
    throw Error(ErrorCode::InvalidDocument, "presentation document: " + what);
}

int int_field(const Json& doc, const char* key) {
    if (!doc.contains(key) || !doc[key].is_number_integer()) bad_doc(std::string("missing integer '") + key + "'");
    return doc[key].get<int>();
}

std::vector<std::int64_t> entry4(const Json& e, const char* table) {
    if (!e.is_array() || e.size() != 4) bad_doc(std::string(table) + " entries must be [a, b, c, coeff]");
    std::vector<std::int64_t> out;
    for (const auto& x : e) {
        if (!x.is_number_integer()) bad_doc(std::string(table) + " entries must be integers");
        out.push_back(x.get<std::int64_t>());
    }
    return out;
}

}  // namespace

TorPresentation presentation_from_json(const Json& doc, const std::vector<std::string>& extra_fields) {
    if (!doc.is_object()) bad_doc("expected an object");
    static const std::set<std::string> known = {"version", "m", "n", "ee", "ef"};
    for (const auto& item : doc.items()) {
        const bool extra = std::find(extra_fields.begin(), extra_fields.end(), item.key()) != extra_fields.end();
        if (!known.count(item.key()) && !extra) bad_doc("unknown field '" + item.key() + "'");
    }
    if (int_field(doc, "version") != 1) bad_doc("unsupported version");
    const int m = int_field(doc, "m");
    const int n = int_field(doc, "n");
    if (m < 1 || n < 1) bad_doc("format needs m >= 1 and n >= 1");
    TorPresentation a(Format(m, n));
    for (const char* table : {"ee", "ef"}) {
        if (!doc.contains(table)) continue;
        if (!doc[table].is_array()) bad_doc(std::string("'") + table + "' must be an array");
    }
    if (doc.contains("ee")) {
        for (const auto& e : doc["ee"]) {
            auto v = entry4(e, "ee");
            const auto i = v[0], j = v[1], l = v[2];
            if (i < 1 || j > m || i >= j) bad_doc("ee index needs 1 <= i < j <= m");
            if (l < 1 || l > a.dim_a2()) bad_doc("ee target index out of range");
            a.add_ee(static_cast<int>(i), static_cast<int>(j), static_cast<int>(l), v[3]);
        }
    }
    if (doc.contains("ef")) {
        for (const auto& e : doc["ef"]) {
            auto v = entry4(e, "ef");
            const auto i = v[0], l = v[1], t = v[2];
            if (i < 1 || i > m || l < 1 || l > a.dim_a2()) bad_doc("ef index out of range");
            if (t < 1 || t > n) bad_doc("ef target index out of range");
            a.add_ef(static_cast<int>(i), static_cast<int>(l), static_cast<int>(t), v[3]);
        }
    }
    a.prune();
    return a;
}

}  // namespace grade3
