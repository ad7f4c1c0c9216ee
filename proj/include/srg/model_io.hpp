#pragma once

// JSON model files.
//   {"type":"tf","m":2,"entries":[[{"num":[..],"den":[..],"delay":0.0},..],..]}
//   {"type":"ss","A":[[..]],"B":[[..]],"C":[[..]],"D":[[..]]}
//   {"type":"matrix","re":[[..]],"im":[[..]]}      ("im" optional)
// Coefficients are in ascending degree. Parse failures throw ModelError.

#include <filesystem>
#include <string>
#include <variant>

#include <Eigen/Dense>

#include "srg/lti_model.hpp"

namespace srg {

enum class ModelKind { matrix, tf, ss };

const char* to_string(ModelKind k);
ModelKind parse_model_kind(const std::string& s);

struct ModelFile {
  std::variant<Eigen::MatrixXcd, TransferMatrix, StateSpace> model;
  ModelKind kind() const;
};

ModelFile parse_model(const std::string& json_text);
ModelFile load_model(const std::filesystem::path& path);
std::string serialize_model(const ModelFile& f);
void save_model(const std::filesystem::path& path, const ModelFile& f);

/// The operator as an LTI model; constant matrices are rejected.
LtiModel as_lti(const ModelFile& f);

}  // namespace srg
