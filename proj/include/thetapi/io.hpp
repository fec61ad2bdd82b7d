// File formats: point clouds and distance matrices, graphs, paths,
// polylines, certificates, presentations, towers, barcodes and reports.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "thetapi/decider.hpp"
#include "thetapi/paths.hpp"
#include "thetapi/presentation.hpp"
#include "thetapi/scale_maps.hpp"
#include "thetapi/spaces.hpp"

namespace thetapi {

using Json = nlohmann::json;

std::string read_text(const std::string& path);
/// Writes via a temporary file and rename, so a failed run leaves nothing half-written.
void write_text(const std::string& path, const std::string& content);

/// Sidecar path of a point cloud: "<path>.json".
std::string sidecar_path(const std::string& cloud_path);

/**
 * Reads a point cloud (CSV with header x1..xd, optional sidecar) or a
 * distance matrix (CSV without header). The first line decides: a header
 * means points.
 */
FiniteMetricSpace read_space(const std::string& path);
FiniteMetricSpace parse_point_csv(const std::string& text, const std::optional<Json>& sidecar);
FiniteMetricSpace parse_matrix_csv(const std::string& text);

std::string point_csv(const FiniteMetricSpace& space);
Json space_sidecar(const FiniteMetricSpace& space);
std::string matrix_csv(const FiniteMetricSpace& space);

std::string graph_dot(const ThetaGraph& graph);
std::string graph_edge_csv(const ThetaGraph& graph);

Json path_json(const ThetaPath& path);
ThetaPath path_from_json(const Json& j, const SpaceRef& space);

/// Polyline CSV: header x1..xd, one vertex per row, optional line "#closed".
PolylinePath parse_polyline_csv(const std::string& text);
std::string polyline_csv(const PolylinePath& poly);

Json certificate_json(const GridHomotopy& h);
GridHomotopy certificate_from_json(const Json& j);
Json certificate_report_json(const CertificateReport& r);

Json invariants_json(const AbelianInvariants& a);
Json presentation_json(const GroupPresentation& p, const AbelianInvariants& a);

Json integer_json(const mpz_class& z);
Json vector_json(const std::vector<mpz_class>& v);
Json matrix_json(const IntMatrix& m);

Json scale_map_json(const ScaleMap& m);
Json tower_json(const ScaleTower& tower);
std::string barcode_csv(const std::vector<Bar>& bars);
Json report_json(const InverseLimitReport& r);
std::string report_text(const InverseLimitReport& r);

Json verdict_json(const Verdict& v);

/// Shortest decimal that round-trips.
std::string format_double(double v);

}  // namespace thetapi
