#include "quadlie/families.hpp"

#include <map>
#include <stdexcept>

namespace quadlie {

FamilyId family_from_string(const std::string& s) {
    static const std::map<std::string, FamilyId> table = {
        {"B21", FamilyId::B21},     {"B22", FamilyId::B22},   {"B23", FamilyId::B23},
        {"B24", FamilyId::B24},     {"B25", FamilyId::B25},   {"B31", FamilyId::B31},
        {"B32", FamilyId::B32},     {"B33", FamilyId::B33},   {"PHI23", FamilyId::PHI23},
        {"PHI32", FamilyId::PHI32},
    };
    auto it = table.find(s);
    if (it == table.end()) throw std::invalid_argument("unknown family: " + s);
    return it->second;
}

std::string family_to_string(FamilyId id) {
    switch (id) {
    case FamilyId::B21: return "B21";
    case FamilyId::B22: return "B22";
    case FamilyId::B23: return "B23";
    case FamilyId::B24: return "B24";
    case FamilyId::B25: return "B25";
    case FamilyId::B31: return "B31";
    case FamilyId::B32: return "B32";
    case FamilyId::B33: return "B33";
    case FamilyId::PHI23: return "PHI23";
    case FamilyId::PHI32: return "PHI32";
    }
    throw std::logic_error("unreachable");
}

std::vector<FamilyId> all_families() {
    return {FamilyId::B21, FamilyId::B22,   FamilyId::B23,  FamilyId::B24,   FamilyId::B25,
            FamilyId::B31, FamilyId::B32,   FamilyId::B33,  FamilyId::PHI23, FamilyId::PHI32};
}

FamilyShape family_shape(FamilyId id) {
    switch (id) {
    case FamilyId::B21: return {2, 1, 2, true, false, false, 2, 0};
    case FamilyId::B22: return {2, 2, 3, true, false, false, 2, 0};
    case FamilyId::B23: return {2, 3, 5, true, true, false, 2, 0};
    case FamilyId::B24: return {2, 4, 8, true, true, false, 2, 0};
    case FamilyId::B25: return {2, 5, 14, true, true, true, 2, 2};
    case FamilyId::B31: return {3, 1, 3, true, false, false, 3, 0};
    case FamilyId::B32: return {3, 2, 6, true, true, false, 3, 0};
    case FamilyId::B33: return {3, 3, 14, true, true, true, 3, 3};
    case FamilyId::PHI23: return {2, 3, 5, false, false, false, 0, 0};
    case FamilyId::PHI32: return {3, 2, 6, false, false, false, 0, 0};
    }
    throw std::logic_error("unreachable");
}

QMatrix c_flip() {
    return QMatrix{{0, 0, 1}, {0, -1, 0}, {1, 0, 0}};
}

QMatrix w_matrix(const Rat& gamma) { return c_flip() * gamma; }

QMatrix a2prime(const QMatrix& m) {
    if (m.rows() != 3 || m.cols() != 3 || !m.is_symmetric())
        throw std::invalid_argument("a2prime: need a symmetric 3x3 matrix");
    const Rat &a = m.at(0, 0), &b = m.at(0, 1), &c = m.at(0, 2);
    const Rat &d = m.at(1, 1), &e = m.at(1, 2), &f = m.at(2, 2);
    return QMatrix{{0, a, b, 0, b, d, c, e},
                   {-a, 0, c, -b, 0, e, 0, f},
                   {-b, -c, 0, -d, -e, 0, -f, 0}};
}

namespace {

void check_a1(const QMatrix& a1, int size, FamilyId id) {
    if (a1.rows() != size || a1.cols() != size || !a1.is_symmetric())
        throw std::invalid_argument("family " + family_to_string(id) + ": A1 must be symmetric " +
                                    std::to_string(size) + "x" + std::to_string(size));
}

// The common 5x5 top of the two-generator t=3,4 forms.
void fill_23_block(QMatrix& b, const QMatrix& a1, const Rat& g) {
    b.set_block(0, 0, a1);
    b.at(0, 4) = g;
    b.at(4, 0) = g;
    b.at(1, 3) = -g;
    b.at(3, 1) = -g;
    b.at(2, 2) = g;
}

} // namespace

QMatrix family_form(FamilyId id, const FamilyParams& given) {
    FamilyShape sh = family_shape(id);
    FamilyParams p = given;
    // an absent matrix parameter stands for the zero matrix
    if (sh.uses_a1 && p.A1.rows() == 0 && p.A1.cols() == 0)
        p.A1 = QMatrix(sh.a1_size, sh.a1_size);
    if (sh.uses_a2 && p.A2.rows() == 0 && p.A2.cols() == 0)
        p.A2 = QMatrix(sh.a2_size, sh.a2_size);
    switch (id) {
    case FamilyId::B21:
        check_a1(p.A1, 2, id);
        return p.A1;
    case FamilyId::B31:
        check_a1(p.A1, 3, id);
        return p.A1;
    case FamilyId::B22: {
        check_a1(p.A1, 2, id);
        QMatrix b(3, 3);
        b.set_block(0, 0, p.A1);
        return b;
    }
    case FamilyId::B23: {
        check_a1(p.A1, 2, id);
        QMatrix b(5, 5);
        fill_23_block(b, p.A1, p.gamma);
        return b;
    }
    case FamilyId::B24: {
        check_a1(p.A1, 2, id);
        QMatrix b(8, 8);
        fill_23_block(b, p.A1, p.gamma);
        return b;
    }
    case FamilyId::B25: {
        check_a1(p.A1, 2, id);
        if (p.A2.rows() != 2 || p.A2.cols() != 2 || !p.A2.is_symmetric())
            throw std::invalid_argument("family B25: A2 must be symmetric 2x2");
        const Rat &d = p.A2.at(0, 0), &e = p.A2.at(0, 1), &f = p.A2.at(1, 1);
        QMatrix b(14, 14);
        fill_23_block(b, p.A1, p.gamma);
        // grade pair (3,3): B(h4..h5, h4..h5) = A2
        b.set_block(3, 3, p.A2);
        // grade pair (1,5) and (5,1)
        QMatrix top{{0, -d, d, -e, e, -f}, {d, 0, e, 0, f, 0}};
        b.set_block(0, 8, top);
        b.set_block(8, 0, top.transpose());
        // grade pair (2,4) and (4,2)
        QMatrix mid{{-d, -e, -f}};
        b.set_block(2, 5, mid);
        b.set_block(5, 2, mid.transpose());
        return b;
    }
    case FamilyId::B32: {
        check_a1(p.A1, 3, id);
        QMatrix b(6, 6);
        b.set_block(0, 0, p.A1);
        QMatrix w = w_matrix(p.gamma);
        b.set_block(0, 3, w);
        b.set_block(3, 0, w);
        return b;
    }
    case FamilyId::B33: {
        check_a1(p.A1, 3, id);
        if (p.A2.rows() != 3 || p.A2.cols() != 3 || !p.A2.is_symmetric())
            throw std::invalid_argument("family B33: A2 must be symmetric 3x3");
        QMatrix b(14, 14);
        b.set_block(0, 0, p.A1);
        QMatrix w = w_matrix(p.gamma);
        b.set_block(0, 3, w);
        b.set_block(3, 0, w);
        b.set_block(3, 3, p.A2);
        QMatrix ap = a2prime(p.A2);
        b.set_block(0, 6, ap);
        b.set_block(6, 0, ap.transpose());
        return b;
    }
    case FamilyId::PHI23: {
        QMatrix b(5, 5);
        fill_23_block(b, QMatrix(2, 2), Rat(1));
        return b;
    }
    case FamilyId::PHI32: {
        QMatrix b(6, 6);
        QMatrix w = w_matrix(Rat(1));
        b.set_block(0, 3, w);
        b.set_block(3, 0, w);
        return b;
    }
    }
    throw std::logic_error("unreachable");
}

} // namespace quadlie
