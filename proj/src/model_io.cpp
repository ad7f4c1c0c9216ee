#include "srg/model_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "srg/errors.hpp"

namespace srg {

namespace {

using nlohmann::json;
using ojson = nlohmann::ordered_json;

Eigen::MatrixXd read_matrix(const json& j, const char* name) {
  if (!j.is_array()) throw ModelError(std::string(name) + ": expected an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  Eigen::Index cols = -1;
  Eigen::MatrixXd M;
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array()) throw ModelError(std::string(name) + ": rows must be arrays");
    if (cols < 0) {
      cols = static_cast<Eigen::Index>(row.size());
      M.resize(rows, cols);
    } else if (static_cast<Eigen::Index>(row.size()) != cols) {
      throw ModelError(std::string(name) + ": ragged rows");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      const json& v = row[static_cast<std::size_t>(c)];
      if (!v.is_number()) throw ModelError(std::string(name) + ": entries must be numbers");
      M(i, c) = v.get<double>();
    }
  }
  if (rows == 0) return Eigen::MatrixXd(0, 0);
  return M;
}

// Empty A, B, C are written as [] so the state count is implied by D.
Eigen::MatrixXd sized(const Eigen::MatrixXd& M, Eigen::Index rows, Eigen::Index cols) {
  if (M.size() == 0) return Eigen::MatrixXd(rows, cols);
  return M;
}

poly::Coeffs read_coeffs(const json& j, const char* name) {
  if (!j.is_array() || j.empty()) throw ModelError(std::string(name) + ": expected a nonempty array");
  poly::Coeffs out;
  for (const json& v : j) {
    if (!v.is_number()) throw ModelError(std::string(name) + ": coefficients must be numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

ojson write_matrix(const Eigen::MatrixXd& M) {
  ojson rows = ojson::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    ojson row = ojson::array();
    for (Eigen::Index c = 0; c < M.cols(); ++c) row.push_back(M(i, c));
    rows.push_back(row);
  }
  return rows;
}

ModelFile parse_json(const json& j) {
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) {
    throw ModelError("model: missing \"type\"");
  }
  const std::string type = j["type"].get<std::string>();
  if (type == "tf") {
    if (!j.contains("m") || !j["m"].is_number_integer()) throw ModelError("tf: missing integer \"m\"");
    const int m = j["m"].get<int>();
    if (m < 1) throw ModelError("tf: m must be >= 1");
    const json& rows = j.value("entries", json());
    if (!rows.is_array() || rows.size() != static_cast<std::size_t>(m)) {
      throw ModelError("tf: \"entries\" must have m rows");
    }
    std::vector<RationalDelayEntry> entries;
    for (const json& row : rows) {
      if (!row.is_array() || row.size() != static_cast<std::size_t>(m)) {
        throw ModelError("tf: each row must have m entries");
      }
      for (const json& e : row) {
        if (!e.is_object()) throw ModelError("tf: entries must be objects");
        const double delay = e.contains("delay") ? e["delay"].get<double>() : 0.0;
        entries.emplace_back(read_coeffs(e.value("num", json()), "num"),
                             read_coeffs(e.value("den", json()), "den"), delay);
      }
    }
    return {TransferMatrix(m, std::move(entries))};
  }
  if (type == "ss") {
    for (const char* k : {"A", "B", "C", "D"}) {
      if (!j.contains(k)) throw ModelError(std::string("ss: missing \"") + k + "\"");
    }
    const Eigen::MatrixXd D = read_matrix(j["D"], "D");
    const Eigen::MatrixXd A = read_matrix(j["A"], "A");
    const Eigen::Index n = A.rows();
    return {StateSpace(A, sized(read_matrix(j["B"], "B"), n, D.rows()),
                       sized(read_matrix(j["C"], "C"), D.rows(), n), D)};
  }
  if (type == "matrix") {
    if (!j.contains("re")) throw ModelError("matrix: missing \"re\"");
    const Eigen::MatrixXd re = read_matrix(j["re"], "re");
    Eigen::MatrixXd im = Eigen::MatrixXd::Zero(re.rows(), re.cols());
    if (j.contains("im")) im = read_matrix(j["im"], "im");
    if (re.rows() < 1 || re.rows() != re.cols() || im.rows() != re.rows() ||
        im.cols() != re.cols()) {
      throw ModelError("matrix: \"re\" and \"im\" must be square of equal size");
    }
    if (!re.allFinite() || !im.allFinite()) throw ModelError("matrix: entries must be finite");
    Eigen::MatrixXcd M(re.rows(), re.cols());
    M.real() = re;
    M.imag() = im;
    return {M};
  }
  throw ModelError("model: unknown type \"" + type + "\"");
}

}  // namespace

const char* to_string(ModelKind k) {
  switch (k) {
    case ModelKind::matrix: return "matrix";
    case ModelKind::tf: return "tf";
    case ModelKind::ss: return "ss";
  }
  return "?";
}

ModelKind parse_model_kind(const std::string& s) {
  if (s == "matrix") return ModelKind::matrix;
  if (s == "tf") return ModelKind::tf;
  if (s == "ss") return ModelKind::ss;
  throw ModelError("unknown model kind \"" + s + "\"");
}

ModelKind ModelFile::kind() const { return static_cast<ModelKind>(model.index()); }

ModelFile parse_model(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ModelError(std::string("model: invalid JSON: ") + e.what());
  }
  try {
    return parse_json(j);
  } catch (const json::exception& e) {
    throw ModelError(std::string("model: ") + e.what());
  }
}

ModelFile load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ModelError("cannot open model file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_model(ss.str());
}

std::string serialize_model(const ModelFile& f) {
  ojson j;
  if (const auto* M = std::get_if<Eigen::MatrixXcd>(&f.model)) {
    j["type"] = "matrix";
    j["re"] = write_matrix(M->real());
    j["im"] = write_matrix(M->imag());
  } else if (const auto* t = std::get_if<TransferMatrix>(&f.model)) {
    j["type"] = "tf";
    j["m"] = t->size();
    ojson rows = ojson::array();
    for (int i = 0; i < t->size(); ++i) {
      ojson row = ojson::array();
      for (int c = 0; c < t->size(); ++c) {
        const RationalDelayEntry& e = t->entry(i, c);
        ojson entry;
        entry["num"] = e.num();
        entry["den"] = e.den();
        entry["delay"] = e.delay();
        row.push_back(entry);
      }
      rows.push_back(row);
    }
    j["entries"] = rows;
  } else {
    const auto& s = std::get<StateSpace>(f.model);
    j["type"] = "ss";
    j["A"] = write_matrix(s.A());
    j["B"] = write_matrix(s.B());
    j["C"] = write_matrix(s.C());
    j["D"] = write_matrix(s.D());
  }
  return j.dump(2) + "\n";
}

void save_model(const std::filesystem::path& path, const ModelFile& f) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ModelError("cannot write model file " + path.string());
  out << serialize_model(f);
}

LtiModel as_lti(const ModelFile& f) {
  if (const auto* t = std::get_if<TransferMatrix>(&f.model)) return *t;
  if (const auto* s = std::get_if<StateSpace>(&f.model)) return *s;
  throw ModelError("a constant matrix is not an LTI model");
}

}  // namespace srg
