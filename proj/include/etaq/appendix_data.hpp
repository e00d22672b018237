#pragma once

#include <array>
#include <vector>

#include "etaq/basis.hpp"

namespace etaq {

// The six U_7 image families over the {t, p1, p2} basis.
//   A_FAMILY  : U_7(A t^k)        P1_A : U_7(A p1 t^k)   P2_A : U_7(A p2 t^k)
//   T_PURE    : U_7(t^k)          P1_PURE : U_7(p1 t^k)  P2_PURE : U_7(p2 t^k)
enum class U7Family : char { A = 'a', AP1 = 'b', AP2 = 'c', T = 'd', P1 = 'e', P2 = 'f' };

inline const char* family_name(U7Family f) {
    switch (f) {
        case U7Family::A: return "A*t^k";
        case U7Family::AP1: return "A*p1*t^k";
        case U7Family::AP2: return "A*p2*t^k";
        case U7Family::T: return "t^k";
        case U7Family::P1: return "p1*t^k";
        case U7Family::P2: return "p2*t^k";
    }
    return "?";
}

// Group labels I..VI map onto the families in the order above.
inline U7Family family_of_group(int group_1_to_6) {
    static constexpr U7Family fams[6] = {U7Family::A,  U7Family::AP1, U7Family::AP2,
                                         U7Family::T, U7Family::P1,  U7Family::P2};
    if (group_1_to_6 < 1 || group_1_to_6 > 6) throw std::invalid_argument("group out of range");
    return fams[group_1_to_6 - 1];
}

struct AppendixTerm {
    int deg;             // t-degree
    long long mantissa;  // printed integer factor
    int pow7;            // printed power of 7
};

struct AppendixRow {
    U7Family family;
    int k;  // 0 .. -6
    std::vector<AppendixTerm> part1, part2, part3;
};

inline BasisDecomposition decomposition_of(const AppendixRow& row) {
    BasisDecomposition d;
    auto fill = [](LaurentPoly& p, const std::vector<AppendixTerm>& terms) {
        for (auto& t : terms)
            p.set(t.deg, Rat(Int(static_cast<long>(t.mantissa)) * pow7(static_cast<unsigned long>(t.pow7))));
    };
    fill(d.part1, row.part1);
    fill(d.part2, row.part2);
    fill(d.part3, row.part3);
    return d;
}

// The 42 seed identities: U_7 images for k = 0, -1, ..., -6 in each family,
// as coefficient tables mantissa * 7^power at each t-degree.
inline const std::vector<AppendixRow>& appendix_rows() {
    static const std::vector<AppendixRow> rows = {
        // ---- Group I: U_7(A t^k) ----
        {U7Family::A, 0,
         {{1, 16, 2}, {2, 7148, 2}, {3, 1536, 5}, {4, 921, 7}, {5, 40, 10}, {6, 324, 10}, {7, 4, 13}, {8, 1, 14}},
         {{0, 2, 2}, {1, 6161, 1}, {2, 9045, 3}, {3, 36870, 4}, {4, 1551, 7}, {5, 248, 9}, {6, 145, 10}, {7, 5, 12}},
         {{0, 2, 2}, {1, 6273, 1}, {2, 70359, 2}, {3, 330714, 3}, {4, 16935, 6}, {5, 3540, 8}, {6, 3053, 9}, {7, 207, 11}, {8, 6, 13}}},
        {U7Family::A, -1,
         {{1, 1, 2}},
         {{0, 6, 0}},
         {{0, 6, 0}, {1, 48, 0}}},
        {U7Family::A, -2,
         {{1, -8, 1}, {2, 1, 3}},
         {{0, -8, 0}, {1, -2, 1}},
         {{0, -8, 0}, {1, -78, 0}}},
        {U7Family::A, -3,
         {{1, 150, 1}, {2, 24, 3}, {3, 1, 5}},
         {{0, 20, 1}, {1, 30, 2}, {2, 10, 3}},
         {{0, 20, 1}, {1, 370, 1}, {2, 302, 2}, {3, 12, 4}}},
        {U7Family::A, -4,
         {{0, 8, 0}, {1, -24, 3}, {2, -160, 3}, {4, -1, 7}},
         {{-1, 1, 0}, {0, -156, 1}, {1, -191, 2}, {3, 1, 5}},
         {{-1, 1, 0}, {0, -1084, 0}, {1, -2585, 1}, {2, -216, 3}, {3, -1, 4}}},
        {U7Family::A, -5,
         {{0, -104, 0}, {1, 144, 3}, {2, 32, 4}, {3, -16, 6}, {4, 20, 7}, {5, 1, 9}},
         {{-1, -13, 0}, {0, 6574, 0}, {1, 423, 2}, {2, -134, 4}, {3, 3, 6}, {4, 6, 7}},
         {{-1, -13, 0}, {0, 6470, 0}, {1, 10475, 1}, {2, -446, 3}, {3, -129, 5}, {4, 10, 7}, {5, 6, 8}}},
        {U7Family::A, -6,
         {{0, 904, 0}, {1, -4544, 2}, {2, 1066, 4}, {3, 192, 6}, {4, -400, 7}, {5, -40, 9}, {6, -1, 11}},
         {{-1, 113, 0}, {0, -4294, 1}, {1, 5685, 2}, {2, 1382, 4}, {3, -295, 6}, {4, -46, 8}, {5, -10, 9}},
         {{-1, 113, 0}, {0, -29154, 0}, {1, 5427, 1}, {2, 2290, 4}, {3, -433, 5}, {4, -654, 7}, {5, -430, 8}, {6, -12, 10}}},

        // ---- Group II: U_7(A p1 t^k) ----
        {U7Family::AP1, 0,
         {{1, 8, 1}, {2, 12, 3}, {3, 24, 4}, {4, 2, 6}},
         {{0, 1, 1}, {1, 79, 1}, {2, 190, 2}, {3, 24, 4}, {4, 1, 6}},
         {{0, 1, 1}, {1, 87, 1}, {2, 40, 3}, {3, 381, 3}, {4, 33, 5}, {5, 1, 7}}},
        {U7Family::AP1, -1,
         {{1, 2, 1}},
         {{0, 2, 0}, {1, 1, 1}},
         {{0, 2, 0}, {1, 23, 0}, {2, 1, 2}}},
        {U7Family::AP1, -2,
         {{1, -4, 2}, {2, -4, 3}},
         {{0, -26, 0}, {1, -32, 1}, {2, -1, 3}},
         {{0, -26, 0}, {1, -432, 0}, {2, -43, 2}, {3, -1, 4}}},
        {U7Family::AP1, -3,
         {{1, 26, 2}, {2, 8, 3}, {3, -4, 5}},
         {{0, 24, 1}, {1, 94, 1}, {2, -20, 3}, {3, -1, 5}},
         {{0, 24, 1}, {1, 286, 1}, {2, -34, 2}, {3, -31, 4}, {4, -1, 6}}},
        {U7Family::AP1, -4,
         {{1, -124, 2}, {2, 32, 4}, {3, 80, 5}, {4, 2, 7}},
         {{0, -804, 0}, {1, 159, 2}, {2, 470, 3}, {3, 24, 5}},
         {{0, -804, 0}, {1, 194, 1}, {2, 652, 3}, {3, 717, 4}, {4, 26, 6}}},
        {U7Family::AP1, -5,
         {{0, 8, 0}, {1, 300, 2}, {2, -552, 4}, {3, -20, 7}, {4, -36, 7}},
         {{-1, 1, 0}, {0, 2012, 0}, {1, -3153, 2}, {2, -802, 4}, {3, -29, 6}, {4, 18, 7}, {5, 1, 9}},
         {{-1, 1, 0}, {0, 2020, 0}, {1, -19769, 1}, {2, -9220, 3}, {3, -163, 6}, {4, -16, 7}, {5, 25, 8}, {6, 1, 10}}},
        {U7Family::AP1, -6,
         {{0, -24, 1}, {1, 2300, 2}, {2, 6368, 4}, {3, 1648, 6}, {4, 146, 8}, {5, 80, 9}, {6, 4, 11}},
         {{-1, -3, 1}, {0, 13854, 0}, {1, 37400, 2}, {2, 9144, 4}, {3, 675, 6}, {4, 209, 7}, {5, 20, 9}, {6, 1, 11}},
         {{-1, -3, 1}, {0, 13686, 0}, {1, 277603, 1}, {2, 106814, 3}, {3, 15420, 5}, {4, 1019, 7}, {5, 425, 8}, {6, 31, 10}, {7, 1, 12}}},

        // ---- Group III: U_7(A p2 t^k) ----
        {U7Family::AP2, 0,
         {{1, 64, 1}, {2, 12, 4}, {3, 24, 5}, {4, 2, 7}},
         {{0, 8, 1}, {1, 79, 2}, {2, 190, 3}, {3, 24, 5}, {4, 1, 7}},
         {{0, 8, 1}, {1, 617, 1}, {2, 40, 4}, {3, 381, 4}, {4, 33, 6}, {5, 1, 8}}},
        {U7Family::AP2, -1,
         {{1, -2, 1}},
         {{0, -2, 0}, {1, -2, 1}},
         {{0, -2, 0}, {1, -30, 0}, {2, -1, 2}}},
        {U7Family::AP2, -2,
         {{1, 36, 1}, {2, 4, 3}},
         {{0, 36, 0}, {1, 48, 1}},
         {{0, 36, 0}, {1, 624, 0}, {2, 52, 2}, {3, 1, 4}}},
        {U7Family::AP2, -3,
         {{0, 8, 0}, {1, -58, 2}, {2, -48, 3}, {3, 4, 5}},
         {{-1, 1, 0}, {0, -8, 2}, {1, -65, 2}, {2, 20, 3}, {3, 1, 5}},
         {{-1, 1, 0}, {0, -384, 0}, {1, -129, 2}, {2, -382, 2}, {3, 23, 4}, {4, 1, 6}}},
        {U7Family::AP2, -4,
         {{0, -96, 0}, {1, 412, 2}, {3, -16, 6}, {4, -2, 7}},
         {{-1, -12, 0}, {0, 2778, 0}, {1, 109, 2}, {2, -100, 4}, {3, -4, 6}, {4, 1, 7}},
         {{-1, -12, 0}, {0, 2682, 0}, {1, 3938, 1}, {2, -562, 3}, {3, -143, 5}, {4, -5, 7}}},
        {U7Family::AP2, -5,
         {{0, 800, 0}, {1, -2076, 2}, {2, 752, 4}, {3, 268, 6}, {4, 68, 7}},
         {{-1, 100, 0}, {0, -14268, 0}, {1, 596, 3}, {2, 1602, 4}, {3, 58, 6}, {4, -26, 7}},
         {{-1, 100, 0}, {0, -1924, 1}, {1, 1842, 2}, {2, 15860, 3}, {3, 2304, 5}, {4, 8, 8}, {5, -26, 8}, {6, -1, 10}}},
        {U7Family::AP2, -6,
         {{0, -776, 1}, {1, 4444, 2}, {2, -12960, 4}, {3, -3744, 6}, {4, -274, 8}, {5, -96, 9}, {6, -4, 11}},
         {{-1, -97, 1}, {0, 722, 2}, {1, -77076, 2}, {2, -20798, 4}, {3, -1175, 6}, {4, -3, 9}, {5, -44, 9}, {6, -2, 11}},
         {{-1, -97, 1}, {0, 4278, 1}, {1, -499047, 1}, {2, -33272, 4}, {3, -32808, 5}, {4, -219, 8}, {5, -241, 8}, {6, -22, 10}, {7, -1, 12}}},

        // ---- Group IV: U_7(t^k) ----
        {U7Family::T, 0, {{0, 1, 0}}, {}, {}},
        {U7Family::T, -1, {{0, -4, 0}, {1, -1, 1}}, {}, {}},
        {U7Family::T, -2, {{0, 20, 0}, {2, -1, 3}}, {}, {}},
        {U7Family::T, -3, {{0, -88, 0}, {3, -1, 5}}, {}, {}},
        {U7Family::T, -4, {{0, 260, 0}, {4, -1, 7}}, {}, {}},
        {U7Family::T, -5, {{0, 68, 1}, {5, -1, 9}}, {}, {}},
        {U7Family::T, -6, {{0, -2392, 1}, {6, -1, 11}}, {}, {}},

        // ---- Group V: U_7(p1 t^k) ----
        {U7Family::P1, 0,
         {{0, 4, 0}, {1, 1672, 1}, {2, 2320, 3}, {3, 920, 5}, {4, 144, 7}, {5, 8, 9}},
         {{1, 83, 1}, {2, 454, 3}, {3, 407, 5}, {4, 134, 7}, {5, 19, 9}, {6, 1, 11}},
         {{1, -4, 0}, {2, -34, 3}, {3, -327, 4}, {4, -18, 7}, {5, -19, 8}, {6, -1, 10}}},
        {U7Family::P1, -1,
         {{0, 8, 0}},
         {{1, -1, 1}},
         {{1, -1, 1}, {2, -1, 2}}},
        {U7Family::P1, -2,
         {{0, -12, 0}},
         {{2, -1, 3}},
         {{2, -1, 3}, {3, -1, 4}}},
        {U7Family::P1, -3,
         {{0, 80, 0}, {1, -64, 2}, {2, -32, 4}, {3, -4, 6}},
         {{0, 1, 0}, {1, 6, 2}, {2, 6, 4}, {3, 6, 5}},
         {{1, 4, 1}, {2, 3, 4}, {3, 8, 5}, {4, 6, 6}}},
        {U7Family::P1, -4,
         {{0, -96, 1}, {1, 384, 2}, {2, 192, 4}, {3, 24, 6}},
         {{0, -6, 0}, {1, -36, 2}, {2, -36, 4}, {3, -6, 6}, {4, -1, 7}},
         {{1, -24, 1}, {2, -18, 4}, {3, -54, 5}, {4, -1, 8}, {5, -1, 8}}},
        {U7Family::P1, -5,
         {{0, 752, 1}, {1, -192, 3}, {2, -96, 5}, {3, -12, 7}},
         {{0, 3, 1}, {1, 18, 3}, {2, 18, 5}, {3, 3, 7}, {5, -1, 9}},
         {{1, 12, 2}, {2, 9, 5}, {3, 27, 6}, {4, 3, 8}, {5, -1, 9}, {6, -1, 10}}},
        {U7Family::P1, -6,
         {{0, -108, 3}, {1, -128, 3}, {2, -64, 5}, {3, -8, 7}},
         {{0, 2, 1}, {1, 12, 3}, {2, 12, 5}, {3, 2, 7}, {6, -1, 11}},
         {{1, 8, 2}, {2, 6, 5}, {3, 18, 6}, {4, 2, 8}, {6, -1, 11}, {7, -1, 12}}},

        // ---- Group VI: U_7(p2 t^k) ----
        {U7Family::P2, 0,
         {{0, -4, 0}},
         {},
         {{1, 1, 0}}},
        {U7Family::P2, -1,
         {{0, 16, 0}},
         {},
         {{2, 1, 2}}},
        {U7Family::P2, -2,
         {{0, -76, 0}},
         {},
         {{3, 1, 4}}},
        {U7Family::P2, -3,
         {{0, 304, 0}, {1, 64, 2}, {2, 32, 4}, {3, 4, 6}},
         {{0, -1, 0}, {1, -6, 2}, {2, -6, 4}, {3, -1, 6}},
         {{1, -4, 1}, {2, -3, 4}, {3, -9, 5}, {4, -6, 6}}},
        {U7Family::P2, -4,
         {{0, -88, 1}, {1, -128, 3}, {2, -64, 5}, {3, -8, 7}},
         {{0, 2, 1}, {1, 12, 3}, {2, 12, 5}, {3, 2, 7}},
         {{1, 8, 2}, {2, 6, 5}, {3, 18, 6}, {4, 2, 8}, {5, 1, 8}}},
        {U7Family::P2, -5,
         {{0, -104, 2}, {1, 1216, 3}, {2, 608, 5}, {3, 76, 7}},
         {{0, -19, 1}, {1, -114, 3}, {2, -114, 5}, {3, -19, 7}},
         {{1, -76, 2}, {2, -57, 5}, {3, -171, 6}, {4, -19, 8}, {6, 1, 10}}},
        {U7Family::P2, -6,
         {{0, 12588, 1}, {1, -9288, 3}, {2, -4432, 5}, {3, -464, 7}, {4, 144, 8}, {5, 8, 10}},
         {{0, 149, 1}, {1, 905, 3}, {2, 958, 5}, {3, 207, 7}, {4, 134, 8}, {5, 19, 10}, {6, 1, 12}},
         {{0, 1, 0}, {1, 85, 3}, {2, 3092, 4}, {3, 1293, 6}, {4, 916, 7}, {5, -19, 9}, {6, -1, 11}, {7, 1, 12}}},
    };
    return rows;
}

inline const AppendixRow& appendix_row(U7Family fam, int k) {
    for (auto& r : appendix_rows())
        if (r.family == fam && r.k == k) return r;
    throw std::out_of_range("no appendix row for family/k");
}

}  // namespace etaq
