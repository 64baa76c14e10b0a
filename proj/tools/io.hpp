#pragma once

// Wire formats: complex scalars as [re, im]; matrices as
// {"order": n, "data": [[re, im], ...]} in row-major order (rectangular
// matrices carry "rows" and "cols" instead of "order"); point clouds as CSV.

#include <iosfwd>
#include <string>
#include <string_view>

#include <json.hpp>

#include "tetra/model.hpp"
#include "tetra/variety.hpp"

namespace tetra::io {

using nlohmann::json;

json to_json(cplx z);
json to_json(const ComplexMatrix& m);
json to_json(const TetraPoint& pt);

cplx complex_from_json(const json& j);
ComplexMatrix matrix_from_json(const json& j);

/// Reads a matrix JSON file; throws Error(Parse).
ComplexMatrix read_matrix(const std::string& path);
json read_json(const std::string& path);
void write_text(const std::string& path, const std::string& text);

/// "a", "bi", "a+bi" (any constant expression of the polynomial grammar).
cplx parse_complex(std::string_view text);

/// Three comma-separated complex coordinates.
TetraPoint parse_point(std::string_view text);

/// Columns x1_re,x1_im,x2_re,x2_im,x3_re,x3_im,residual,tag, values as %.17g.
void write_cloud_csv(std::ostream& out, const VarietyPointCloud& cloud);

/// Model with metadata: n, N, layout, hypothesis residuals.
json model_to_json(const ModelTriple& mt);

/// Stable serialization with two-space indentation.
std::string dump(const json& j);

} // namespace tetra::io
