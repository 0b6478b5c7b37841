#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dpcolor/errors.hpp"
#include "dpcolor/graph.hpp"
#include "dpcolor/isomorphism.hpp"

namespace dpcolor {

enum class FamilyKind { Wheel, Gnrs, Sporadic };

enum class SporadicName { K5, K5minus, K33, K3boxK2, A, Aplus, B, Bplus, C, Cplus, D };

inline const std::vector<SporadicName>& all_sporadics() {
    static const std::vector<SporadicName> v{SporadicName::K5, SporadicName::K5minus, SporadicName::K33,
                                             SporadicName::K3boxK2, SporadicName::A, SporadicName::Aplus,
                                             SporadicName::B, SporadicName::Bplus, SporadicName::C,
                                             SporadicName::Cplus, SporadicName::D};
    return v;
}

inline std::string sporadic_name(SporadicName s) {
    switch (s) {
        case SporadicName::K5: return "K5";
        case SporadicName::K5minus: return "K5-";
        case SporadicName::K33: return "K33";
        case SporadicName::K3boxK2: return "K3xK2";
        case SporadicName::A: return "A";
        case SporadicName::Aplus: return "A+";
        case SporadicName::B: return "B";
        case SporadicName::Bplus: return "B+";
        case SporadicName::C: return "C";
        case SporadicName::Cplus: return "C+";
        case SporadicName::D: return "D";
    }
    return "?";
}

/// Member of W ∪ G ∪ G'. Wheel(n) has n rim vertices; Gnrs is G_{n,r,s}
/// (or G^+_{n,r,s} when `plus`).
struct FamilyId {
    FamilyKind kind = FamilyKind::Wheel;
    int n = 0, r = 0, s = 0;
    bool plus = false;
    SporadicName sporadic = SporadicName::K5;

    static FamilyId wheel(int n) { return {FamilyKind::Wheel, n, 0, 0, false, SporadicName::K5}; }
    static FamilyId gnrs(int n, int r, int s, bool plus) { return {FamilyKind::Gnrs, n, r, s, plus, SporadicName::K5}; }
    static FamilyId named(SporadicName s) { return {FamilyKind::Sporadic, 0, 0, 0, false, s}; }

    int order() const;

    std::string name() const {
        switch (kind) {
            case FamilyKind::Wheel: return "W" + std::to_string(n);
            case FamilyKind::Gnrs:
                return std::string(plus ? "G+" : "G") + std::to_string(n) + "," + std::to_string(r) + "," +
                       std::to_string(s);
            case FamilyKind::Sporadic: return sporadic_name(sporadic);
        }
        return "?";
    }

    friend bool operator==(const FamilyId& a, const FamilyId& b) {
        if (a.kind != b.kind) return false;
        switch (a.kind) {
            case FamilyKind::Wheel: return a.n == b.n;
            case FamilyKind::Gnrs: return a.n == b.n && a.r == b.r && a.s == b.s && a.plus == b.plus;
            case FamilyKind::Sporadic: return a.sporadic == b.sporadic;
        }
        return false;
    }
};

/// Membership of G_{n,r,s}^{(+)} in the family G (either orientation of r, s).
inline bool gnrs_in_family(int n, int r, int s) {
    if (r > s) std::swap(r, s);
    return n >= 6 && r >= 2 && s >= 3 && s <= n - 3 && (r + s == n - 2 || r + s == n - 1);
}

/// Parse "W5", "G8,2,4", "G+6,2,3" or a sporadic name.
inline FamilyId parse_family_id(const std::string& text) {
    for (SporadicName s : all_sporadics())
        if (sporadic_name(s) == text) return FamilyId::named(s);
    auto num = [&](const std::string& t) {
        if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos)
            throw InvalidParams("bad family id: " + text);
        return std::stoi(t);
    };
    if (text.size() > 1 && text[0] == 'W') {
        int n = num(text.substr(1));
        if (n < 3) throw InvalidParams(text + " is not a family member");
        return FamilyId::wheel(n);
    }
    if (text.size() > 1 && text[0] == 'G') {
        bool plus = text[1] == '+';
        std::string rest = text.substr(plus ? 2 : 1);
        auto c1 = rest.find(','), c2 = rest.rfind(',');
        if (c1 == std::string::npos || c1 == c2) throw InvalidParams("bad family id: " + text);
        auto id = FamilyId::gnrs(num(rest.substr(0, c1)), num(rest.substr(c1 + 1, c2 - c1 - 1)), num(rest.substr(c2 + 1)),
                                 plus);
        if (!gnrs_in_family(id.n, id.r, id.s)) throw InvalidParams(text + " is not a family member");
        return id;
    }
    throw InvalidParams("bad family id: " + text);
}

struct LabelledGraph {
    Graph graph;
    std::vector<std::string> labels;
    std::vector<Vertex> spine;         // G_{n,r,s} only
    std::vector<Vertex> second_spine;  // G_{n,r,s} only
};

namespace detail {

using EdgeList = std::vector<std::pair<Vertex, Vertex>>;

// Sporadic members of G', vertex i is v_{i+1}.
inline EdgeList sporadic_edges(SporadicName s) {
    switch (s) {
        case SporadicName::K5:
            return {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}};
        case SporadicName::K5minus:  // = G^+_{5,2,2}: missing v2v4
            return {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 4}, {2, 3}, {2, 4}, {3, 4}};
        case SporadicName::K33:
            return {{0, 3}, {0, 4}, {0, 5}, {1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}};
        case SporadicName::K3boxK2:  // = G_{6,2,2}
            return {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 3}, {0, 4}, {1, 5}, {2, 5}};
        case SporadicName::A:
            return {{0, 3}, {0, 4}, {0, 5}, {1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}, {1, 2}};
        case SporadicName::Aplus:
            return {{0, 3}, {0, 4}, {0, 5}, {1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}, {1, 2}, {3, 4}};
        case SporadicName::B:
            return {{0, 4}, {0, 5}, {0, 6}, {1, 4}, {1, 5}, {1, 6}, {2, 3}, {2, 5}, {2, 6}, {3, 4}, {3, 6}};
        case SporadicName::Bplus:
            return {{0, 4}, {0, 5}, {0, 6}, {1, 4}, {1, 5}, {1, 6}, {2, 3}, {2, 5}, {2, 6}, {3, 4}, {3, 6}, {0, 1}};
        case SporadicName::C:
            return {{0, 5}, {0, 6}, {0, 7}, {1, 3}, {1, 4}, {1, 7}, {2, 3}, {2, 4}, {2, 7}, {3, 6}, {4, 5}, {5, 6}};
        case SporadicName::Cplus:
            return {{0, 5}, {0, 6}, {0, 7}, {1, 3}, {1, 4}, {1, 7}, {2, 3}, {2, 4},
                    {2, 7}, {3, 6}, {4, 5}, {5, 6}, {1, 2}};
        case SporadicName::D:
            return {{0, 1}, {0, 2}, {0, 3}, {0, 5}, {1, 4}, {1, 6}, {2, 3}, {2, 5}, {3, 4}, {3, 5}, {4, 6}, {5, 6}};
    }
    return {};
}

inline int sporadic_order(SporadicName s) {
    switch (s) {
        case SporadicName::K5:
        case SporadicName::K5minus: return 5;
        case SporadicName::K33:
        case SporadicName::K3boxK2:
        case SporadicName::A:
        case SporadicName::Aplus: return 6;
        case SporadicName::B:
        case SporadicName::Bplus:
        case SporadicName::D: return 7;
        case SporadicName::C:
        case SporadicName::Cplus: return 8;
    }
    return 0;
}

// Sorted degree sequences, guarding the transcriptions above.
inline std::vector<int> sporadic_degrees(SporadicName s) {
    switch (s) {
        case SporadicName::K5: return {4, 4, 4, 4, 4};
        case SporadicName::K5minus: return {3, 3, 4, 4, 4};
        case SporadicName::K33:
        case SporadicName::K3boxK2: return {3, 3, 3, 3, 3, 3};
        case SporadicName::A: return {3, 3, 3, 3, 4, 4};
        case SporadicName::Aplus: return {3, 3, 4, 4, 4, 4};
        case SporadicName::B: return {3, 3, 3, 3, 3, 3, 4};
        case SporadicName::Bplus:
        case SporadicName::D: return {3, 3, 3, 3, 4, 4, 4};
        case SporadicName::C: return {3, 3, 3, 3, 3, 3, 3, 3};
        case SporadicName::Cplus: return {3, 3, 3, 3, 3, 3, 4, 4};
    }
    return {};
}

inline std::vector<std::string> v_labels(int n) {
    std::vector<std::string> out;
    for (int i = 1; i <= n; ++i) out.push_back("v" + std::to_string(i));
    return out;
}

} // namespace detail

inline int FamilyId::order() const {
    switch (kind) {
        case FamilyKind::Wheel: return n + 1;
        case FamilyKind::Gnrs: return n;
        case FamilyKind::Sporadic: return detail::sporadic_order(sporadic);
    }
    return 0;
}

/// Generate a family member with its labels. Wheels: rim v1..vn, hub h.
inline LabelledGraph gen_family(const FamilyId& id) {
    LabelledGraph out;
    switch (id.kind) {
        case FamilyKind::Wheel: {
            if (id.n < 3) throw InvalidParams("wheel needs n >= 3");
            out.graph = wheel_graph(id.n);
            out.labels = detail::v_labels(id.n);
            out.labels.push_back("h");
            break;
        }
        case FamilyKind::Gnrs: {
            const int n = id.n;
            if (n < 6 || id.r < 2 || id.s < 2 || id.r > n - 3 || id.s > n - 3)
                throw InvalidParams("G_{n,r,s} needs n >= 6 and r, s in 2..n-3");
            Graph g(n);
            for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
            for (int i = 1; i <= id.r; ++i)
                if (!g.adjacent(0, n - i - 1)) g.add_edge(0, n - i - 1);
            for (int j = 1; j <= id.s; ++j)
                if (!g.adjacent(n - 1, j)) g.add_edge(n - 1, j);
            if (id.plus) g.add_edge(0, n - 1);
            out.graph = g;
            out.labels = detail::v_labels(n);
            for (int i = 0; i < n; ++i) out.spine.push_back(i);
            // v_{n-2} ... v_1 v_{n-1} v_n
            for (int i = n - 3; i >= 0; --i) out.second_spine.push_back(i);
            out.second_spine.push_back(n - 2);
            out.second_spine.push_back(n - 1);
            break;
        }
        case FamilyKind::Sporadic: {
            const int n = detail::sporadic_order(id.sporadic);
            out.graph = Graph(n, detail::sporadic_edges(id.sporadic));
            out.labels = detail::v_labels(n);
            std::vector<int> deg;
            for (int v = 0; v < n; ++v) deg.push_back(out.graph.degree(v));
            std::sort(deg.begin(), deg.end());
            if (deg != detail::sporadic_degrees(id.sporadic))
                throw InvariantBreach("degree sequence of " + id.name() + " does not match its table");
            break;
        }
    }
    return out;
}

/// All members of W ∪ G ∪ G' on at most max_order vertices. G_{n,r,s} is
/// listed with r <= s only; isomorphic coincidences (G^+_{7,2,3} and
/// G_{7,2,4}, ...) are kept as separate ids.
inline std::vector<FamilyId> family_members(int max_order) {
    std::vector<FamilyId> out;
    for (int n = 3; n + 1 <= max_order; ++n) out.push_back(FamilyId::wheel(n));
    for (int n = 6; n <= max_order; ++n)
        for (int r = 2; r <= n - 3; ++r)
            for (int s = r; s <= n - 3; ++s)
                if (gnrs_in_family(n, r, s))
                    for (bool plus : {false, true}) out.push_back(FamilyId::gnrs(n, r, s, plus));
    for (SporadicName s : all_sporadics())
        if (detail::sporadic_order(s) <= max_order) out.push_back(FamilyId::named(s));
    std::stable_sort(out.begin(), out.end(),
                     [](const FamilyId& a, const FamilyId& b) { return a.order() < b.order(); });
    return out;
}

inline bool is_family_member(const FamilyId& id) {
    switch (id.kind) {
        case FamilyKind::Wheel: return id.n >= 3;
        case FamilyKind::Gnrs: return gnrs_in_family(id.n, id.r, id.s);
        case FamilyKind::Sporadic: return true;
    }
    return false;
}

} // namespace dpcolor
