#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "ddvv/matrix.hpp"
#include "ddvv/search.hpp"

namespace ddvv::io {

/// On-disk family document:
/// {"n":2,"m":2,"kind":"symmetric","matrices":[[[0,1],[1,0]],[[1,0],[0,-1]]]}
/// kind is one of symmetric (default), antisymmetric, mixed.
struct FamilyDocument {
  int n = 0;
  int m = 0;
  std::string kind = "symmetric";
  std::vector<Mat> matrices;
};

FamilyDocument parse_family_document(const nlohmann::json& j);
nlohmann::json family_document_json(const FamilyDocument& doc);

nlohmann::json matrix_json(const Mat& m);
Mat matrix_from_json(const nlohmann::json& j, int rows, int cols);

/// Gap/equality report for one family document.
nlohmann::json check_report(const FamilyDocument& doc, double tol);

/// Batch wrapper: per-item failures land in the item's slot, the rest of the
/// batch still runs. Output order matches input order.
nlohmann::json check_batch_report(const nlohmann::json& input, double tol);

/// CSV rendering of check reports; fixed column order
/// index,n,m,kind,lhs,rhs,gap,equality,mu,residual,error
std::string check_report_csv(const nlohmann::json& batch_or_single);

/// Curvature report for shape-operator input.
nlohmann::json geom_report(const FamilyDocument& doc, double c, double tol);

/// Deterministic search report for the given configuration.
nlohmann::json search_report(const search::SearchConfig& config);

/// Named demonstration scenarios: counterexample, equality, lemmas.
std::string run_demo(const std::string& name);

/// True when some item of a batch report carries an internal-inconsistency
/// failure (used for the process exit code).
bool report_has_internal_error(const nlohmann::json& report);

}  // namespace ddvv::io
