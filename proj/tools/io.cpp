#include "io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "tetra/poly.hpp"

namespace tetra::io {

json to_json(cplx z) {
    return json::array({z.real(), z.imag()});
}

json to_json(const ComplexMatrix& m) {
    json data = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) data.push_back(to_json(m(i, j)));
    json out;
    if (m.rows() == m.cols()) {
        out["order"] = m.rows();
    } else {
        out["rows"] = m.rows();
        out["cols"] = m.cols();
    }
    out["data"] = std::move(data);
    return out;
}

json to_json(const TetraPoint& pt) {
    return json::array({to_json(pt.x1), to_json(pt.x2), to_json(pt.x3)});
}

cplx complex_from_json(const json& j) {
    if (j.is_number()) return j.get<double>();
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw Error(ErrorKind::Parse, "complex numbers are [re, im] arrays");
    return {j[0].get<double>(), j[1].get<double>()};
}

ComplexMatrix matrix_from_json(const json& j) {
    if (!j.is_object() || !j.contains("data") || !j["data"].is_array())
        throw Error(ErrorKind::Parse, "matrix JSON needs \"order\" and \"data\"");
    Eigen::Index rows = 0, cols = 0;
    if (j.contains("order") && j["order"].is_number_integer()) {
        rows = cols = j["order"].get<Eigen::Index>();
    } else if (j.contains("rows") && j.contains("cols")) {
        rows = j["rows"].get<Eigen::Index>();
        cols = j["cols"].get<Eigen::Index>();
    } else {
        throw Error(ErrorKind::Parse, "matrix JSON needs \"order\"");
    }
    const json& data = j["data"];
    if (rows < 0 || cols < 0 || data.size() != static_cast<std::size_t>(rows * cols))
        throw Error(ErrorKind::Parse, "matrix JSON: data length does not match order");
    ComplexMatrix m(rows, cols);
    std::size_t k = 0;
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = complex_from_json(data[k++]);
    if (!all_finite(m)) throw Error(ErrorKind::Parse, "matrix JSON: non-finite entry");
    return m;
}

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Parse, "cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::Parse, path + ": " + e.what());
    }
}

ComplexMatrix read_matrix(const std::string& path) {
    try {
        return matrix_from_json(read_json(path));
    } catch (const json::exception& e) {
        throw Error(ErrorKind::Parse, path + ": " + e.what());
    }
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::Parse, "cannot write " + path);
    out << text;
}

cplx parse_complex(std::string_view text) {
    const Poly3 p = parse_poly(text);
    if (p.degree() > 0) throw Error(ErrorKind::Parse, "expected a complex number, got a polynomial");
    const auto it = p.terms.find({0, 0, 0});
    return it == p.terms.end() ? cplx(0.0) : it->second;
}

TetraPoint parse_point(std::string_view text) {
    cplx x[3];
    std::size_t start = 0;
    for (int k = 0; k < 3; ++k) {
        const std::size_t comma = text.find(',', start);
        if ((k < 2) == (comma == std::string_view::npos))
            throw Error(ErrorKind::Parse, "a point needs exactly three comma-separated coordinates");
        const std::size_t end = k < 2 ? comma : text.size();
        x[k] = parse_complex(text.substr(start, end - start));
        start = end + 1;
    }
    return {x[0], x[1], x[2]};
}

void write_cloud_csv(std::ostream& out, const VarietyPointCloud& cloud) {
    out << "x1_re,x1_im,x2_re,x2_im,x3_re,x3_im,residual,tag\n";
    char buf[512];
    for (const auto& rec : cloud.records) {
        for (std::size_t j = 0; j < rec.points.size(); ++j) {
            const TetraPoint& p = rec.points[j];
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%s\n", p.x1.real(),
                          p.x1.imag(), p.x2.real(), p.x2.imag(), p.x3.real(), p.x3.imag(), rec.residuals[j],
                          to_string(rec.tags[j]));
            out << buf;
        }
    }
}

json model_to_json(const ModelTriple& mt) {
    json out;
    out["n"] = mt.n;
    out["N"] = mt.modes;
    out["layout"] = kModeMajorLayout;
    out["periodic"] = mt.periodic;
    out["hypothesis_residuals"] = {{"commutator", mt.commutator}, {"normality_gap", mt.normality_gap}};
    out["commutator_residuals"] = {{"Q1Q2", mt.residuals[0]}, {"Q1V", mt.residuals[1]}, {"Q2V", mt.residuals[2]}};
    out["A1"] = to_json(mt.a1);
    out["A2"] = to_json(mt.a2);
    out["Q1"] = to_json(mt.q1);
    out["Q2"] = to_json(mt.q2);
    out["V"] = to_json(mt.v);
    return out;
}

std::string dump(const json& j) {
    return j.dump(2) + "\n";
}

} // namespace tetra::io
