#include "grade3/permissibility.hpp"

#include <algorithm>
#include <sstream>

namespace grade3 {

namespace {

const char* const kAvr341 = "Avramov 2012, 3.4.1";
const char* const kAvr342 = "Avramov 2012, 3.4.2";
const char* const kAvrThm31 = "Avramov 2012, Thm 3.1";
const char* const kAvrCor33 = "Avramov 2012, Cor 3.3";
const char* const kCvwThm11 = "Christensen-Veliche-Weyman 2020, Thm 1.1";
const char* const kCvwThm45 = "Christensen-Veliche-Weyman 2020, Thm 4.5";
const char* const kBrown = "Brown 1984, Thm 4.4";
const char* const kGorenstein = "Avramov-Kustin-Miller 1988, remarks after Def 2.2; Buchsbaum-Eisenbud 1977";

bool odd(int x) { return x % 2 != 0; }
bool same_parity(int a, int b) { return ((a - b) % 2 + 2) % 2 == 0; }

class Collector {
public:
    void check(bool trips, const char* id, std::string_view cite, std::string_view also = {}) {
        if (!trips) return;
        std::string full(cite);
        if (!also.empty()) full.append("; ").append(also);
        out_.push_back({id, std::move(full)});
    }
    std::vector<RuleCitation> take() { return std::move(out_); }

private:
    std::vector<RuleCitation> out_;
};

PermissibilityVerdict decide(std::vector<RuleCitation> violated, std::string basis) {
    PermissibilityVerdict v;
    if (!violated.empty()) {
        v.status = Status::NotPermissible;
        v.violated_rules = std::move(violated);
    } else if (!basis.empty()) {
        v.status = Status::Permissible;
        v.basis = std::move(basis);
    } else {
        v.status = Status::UnknownNecessaryOnly;
    }
    return v;
}

PermissibilityVerdict verdict_t(int m, int n) {
    Collector c;
    c.check(m < 4, "T.m>=4", kAvr341);
    c.check(n < 3, "T.n>=3", kGorenstein, kBrown);
    c.check(m == 4 && !odd(n), "T.m=4=>n-odd", kAvr342);
    c.check(m >= 5 && n < 4, "T.m>=5=>n>=4", "Sanchez 1989", kCvwThm45);
    return decide(c.take(), "class T realized at every format passing its constraints");
}

PermissibilityVerdict verdict_b(int m, int n) {
    Collector c;
    c.check(m < 5, "B.m>=5", kAvr341, kAvr342);
    c.check(n < 2, "B.n>=2", kGorenstein);
    c.check(m == 5 && n != 2, "B.m=5=>n=2", kCvwThm45);
    c.check(n == 2 && !odd(m), "B.n=2=>m-odd", kBrown, "Avramov-Kustin-Miller 1988, 3.4.3");
    return decide(c.take(), "class B realized at every format passing its constraints");
}

PermissibilityVerdict verdict_h(int p, int q, int m, int n) {
    Collector c;
    c.check(m < 4 || n < 2, "H.m>=4&n>=2", kAvr341, kGorenstein);
    c.check(n == p, "H.n!=p", kCvwThm11);
    c.check(m == q + 3, "H.m!=q+3", kCvwThm11);
    c.check(m < p + 1 || m < q + 2, "H.m>=p+1&m>=q+2", kAvrThm31);
    c.check(n < p - 1 || n < q, "H.n>=p-1&n>=q", kAvrThm31);
    c.check(p > std::max(m - 1, n + 1), "H.p<=m-1|n+1", kAvrThm31);
    c.check(q > std::max(m - 2, n), "H.q<=m-2|n", kAvrThm31);
    c.check(q != m - 2 && q > m - 4, "H.q!=m-2=>q<=m-4", kCvwThm11);
    c.check(n == p - 1 && !(m == p + 1 && m == q + 2), "H.n=p-1=>corner", kAvrCor33);
    c.check(m == q + 2 && !(n == q && p == n + 1), "H.m=q+2=>corner", kAvrCor33);
    c.check(q == m - 2 && p != n + 1, "H.q=m-2=>p=n+1", kAvrCor33);
    c.check(n == p + 1 && !same_parity(q, m - 4), "H.n=p+1=>q~m-4", kCvwThm11);
    c.check(m == q + 4 && !same_parity(p, n - 1), "H.m=q+4=>p~n-1", kCvwThm11);
    c.check(p == n - 1 && (q > m - 4 || !same_parity(q, m - 4)), "H.p=n-1=>q<=m-4&q~m-4",
            kCvwThm11, kAvrCor33);
    c.check(q == m - 4 && (p > n - 1 || !same_parity(p, n - 1)), "H.q=m-4=>p<=n-1&p~n-1",
            kCvwThm11, kAvrCor33);

    const bool aci_a = p == 3 && q == 2 && m == 4 && n == 2;
    const bool aci_b = p == 3 && q == 0 && m == 4 && n >= 4 && !odd(n);
    const bool type2 = p == 1 && q == 2 && n == 2 && m >= 6 && !odd(m);
    c.check(m == 4 && !aci_a && !aci_b, "H.m=4-family", kAvr342);
    c.check(n == 2 && !aci_a && !type2, "H.n=2-family", kBrown);

    std::string basis;
    if (n == p + 1) {
        basis = "boundary format (m,p+1)";
    } else if (m == q + 4) {
        basis = "boundary format (q+4,n)";
    } else if (aci_a || aci_b) {
        basis = "almost complete intersection";
    } else if (type2) {
        basis = "type 2 family";
    } else if (p >= 3 && q == p - 1 && m == p + 1 && n == p - 1) {
        basis = "hypersurface section";
    } else if (p == n + 1 && q == m - 2) {
        basis = "hypersurface corner";
    }
    return decide(c.take(), basis);
}

}  // namespace

std::string_view to_string(Status s) {
    switch (s) {
        case Status::Permissible: return "Permissible";
        case Status::NotPermissible: return "NotPermissible";
        case Status::UnknownNecessaryOnly: return "UnknownNecessaryOnly";
    }
    return "?";
}

PermissibilityVerdict is_permissible(const ClassLabel& c, const Format& f) {
    const int m = f.m(), n = f.n();
    switch (c.tag()) {
        case ClassTag::T: return verdict_t(m, n);
        case ClassTag::B: return verdict_b(m, n);
        case ClassTag::H: return verdict_h(c.p(), c.q(), m, n);
        case ClassTag::C3: {
            std::vector<RuleCitation> v;
            if (!(m == 3 && n == 1)) v.push_back({"C3.format=3x1", "complete intersection of grade 3"});
            return decide(std::move(v), "complete intersection");
        }
        case ClassTag::G: {
            const int r = c.r();
            if (n != 1) return decide({}, "");
            std::vector<RuleCitation> v;
            if (!(m == r && r >= 5 && odd(r))) v.push_back({"G.n=1=>m=r>=5-odd", kGorenstein});
            return decide(std::move(v), "Gorenstein");
        }
    }
    return {};
}

std::vector<ClassLabel> boundary_classes(const Format& f) {
    const int m = f.m(), n = f.n();
    std::vector<ClassLabel> out;
    auto consider = [&](int p, int q) {
        if (p < 0 || q < 0) return;
        auto c = ClassLabel::h(p, q);
        if (std::find(out.begin(), out.end(), c) != out.end()) return;
        if (is_permissible(c, f).status == Status::Permissible) out.push_back(c);
    };
    for (int q = 0; q <= m - 4; ++q) {
        if (same_parity(q, m - 4)) consider(n - 1, q);
    }
    for (int p = 0; p <= n - 1; ++p) {
        if (same_parity(p, n - 1)) consider(p, m - 4);
    }
    std::sort(out.begin(), out.end());
    return out;
}

AtlasGrid atlas_grid(const Format& f) {
    AtlasGrid grid{f, {}, {}};
    const auto boundary = boundary_classes(f);
    for (int p = 0; p <= f.n() + 1; ++p) {
        for (int q = 0; q <= f.m() - 2; ++q) {
            const auto c = ClassLabel::h(p, q);
            auto v = is_permissible(c, f);
            Cell cell = Cell::White;
            if (v.status == Status::NotPermissible) {
                cell = Cell::Dotted;
            } else if (std::find(boundary.begin(), boundary.end(), c) != boundary.end()) {
                cell = Cell::Black;
            }
            grid.cells[{p, q}] = cell;
            grid.rules[{p, q}] = std::move(v.violated_rules);
        }
    }
    return grid;
}

namespace {

char glyph(Cell c) {
    switch (c) {
        case Cell::White: return 'o';
        case Cell::Dotted: return '.';
        case Cell::Black: return '#';
    }
    return '?';
}

const char* status_word(Cell c) {
    switch (c) {
        case Cell::White: return "white";
        case Cell::Dotted: return "dotted";
        case Cell::Black: return "black";
    }
    return "?";
}

}  // namespace

std::string render_atlas_text(const AtlasGrid& grid) {
    const int pmax = grid.format.n() + 1;
    const int qmax = grid.format.m() - 2;
    std::ostringstream os;
    os << "H(p,q) atlas for format " << to_string(grid.format) << "\n";
    for (int q = qmax; q >= 0; --q) {
        os << "q=" << q << (q < 10 ? "  |" : " |");
        for (int p = 0; p <= pmax; ++p) os << ' ' << glyph(grid.cells.at({p, q}));
        os << "\n";
    }
    os << "      ";
    for (int p = 0; p <= pmax; ++p) os << ' ' << (p % 10);
    os << "  p\n";
    os << "legend: '.' not permissible, 'o' permissible or open, '#' permissible boundary\n";
    return os.str();
}

std::string render_atlas_csv(const AtlasGrid& grid) {
    std::ostringstream os;
    os << "p,q,status,rules\n";
    for (const auto& [key, cell] : grid.cells) {
        os << key.first << ',' << key.second << ',' << status_word(cell) << ',';
        const auto& rules = grid.rules.at(key);
        for (std::size_t i = 0; i < rules.size(); ++i) os << (i ? ";" : "") << rules[i].id;
        os << "\n";
    }
    return os.str();
}

}  // namespace grade3
