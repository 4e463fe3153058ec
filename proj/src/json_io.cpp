#include "quadlie/json_io.hpp"

#include <fstream>

namespace quadlie {

ojson mat_to_json(const QMatrix& m) {
    ojson j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    ojson entries = ojson::array();
    for (int i = 0; i < m.rows(); ++i) {
        ojson row = ojson::array();
        for (int c = 0; c < m.cols(); ++c) row.push_back(format_rational(m.at(i, c)));
        entries.push_back(std::move(row));
    }
    j["entries"] = std::move(entries);
    return j;
}

QMatrix mat_from_json(const json& j) {
    const json& entries = j.is_array() ? j : j.at("entries");
    if (!entries.is_array())
        throw std::invalid_argument("matrix JSON: expected array of rows");
    int rows = int(entries.size());
    int cols = rows ? int(entries[0].size()) : 0;
    QMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        if (int(entries[i].size()) != cols)
            throw std::invalid_argument("matrix JSON: ragged rows");
        for (int c = 0; c < cols; ++c) {
            const json& cell = entries[i][c];
            m.at(i, c) = cell.is_string() ? parse_rational(cell.get<std::string>())
                                          : Rat(cell.get<long long>());
        }
    }
    if (!j.is_array()) {
        if (j.at("rows").get<int>() != rows || j.at("cols").get<int>() != cols)
            throw std::invalid_argument("matrix JSON: declared shape mismatch");
    }
    return m;
}

ojson vec_to_json(const VecQ& v) {
    ojson j = ojson::array();
    for (const auto& x : v) j.push_back(format_rational(x));
    return j;
}

VecQ vec_from_json(const json& j) {
    VecQ v;
    v.reserve(j.size());
    for (const auto& cell : j)
        v.push_back(cell.is_string() ? parse_rational(cell.get<std::string>())
                                     : Rat(cell.get<long long>()));
    return v;
}

ojson algebra_to_json(const FreeNilpotent& alg) {
    ojson j;
    j["d"] = alg.d();
    j["t"] = alg.t();
    ojson basis = ojson::array();
    for (int i = 0; i < alg.dim(); ++i) basis.push_back(alg.word_name(i));
    j["basis"] = std::move(basis);
    j["graded_offsets"] = alg.graded_offsets();
    ojson structure = ojson::array();
    for (const auto& row : alg.structure_constants())
        structure.push_back(ojson::array({row.i, row.j, row.k, format_rational(row.c)}));
    j["structure"] = std::move(structure);
    return j;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    json j;
    in >> j;
    return j;
}

void save_json_file(const std::string& path, const ojson& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(1) << "\n";
}

} // namespace quadlie
