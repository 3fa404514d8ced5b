#include "opineq/serialize.hpp"

#include <fstream>

namespace opineq {

Json matrix_to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw Error(ErrorCode::ParseError, "matrix must be a nonempty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  CMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw Error(ErrorCode::ParseError, "ragged matrix");
    for (Eigen::Index c = 0; c < cols; ++c) {
      const Json& z = row[static_cast<std::size_t>(c)];
      if (!z.is_array() || z.size() != 2) throw Error(ErrorCode::ParseError, "entry must be [re, im]");
      m(i, c) = Complex(z[0].get<double>(), z[1].get<double>());
    }
  }
  return m;
}

Json element_to_json(const ModuleElement& x) {
  Json parts = Json::array();
  for (const CMatrix& p : x.parts()) parts.push_back(matrix_to_json(p));
  return {{"dim", x.dim()}, {"weights", x.ctx().weights}, {"parts", std::move(parts)}};
}

ModuleElement element_from_json(const Json& j) {
  try {
    ModuleContext ctx{j.at("dim").get<Eigen::Index>(), j.at("weights").get<std::vector<double>>()};
    std::vector<CMatrix> parts;
    for (const Json& p : j.at("parts")) parts.push_back(matrix_from_json(p));
    return ModuleElement(std::move(ctx), std::move(parts));
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

Json report_to_json(const InequalityReport& r) {
  Json j;
  j["name"] = r.name;
  j["seed"] = r.seed;
  j["dim"] = r.dim;
  j["len"] = r.len;
  j["params"] = r.params;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["margin"] = r.margin;
  j["holds"] = r.holds;
  j["norm_detail"] = r.norm_detail;
  return j;
}

Json record_to_json(const InstanceRecord& rec) {
  const Instance& in = rec.instance;
  Json j;
  j["check"] = rec.check;
  j["seed"] = in.seed;
  j["kind"] = std::string(to_string(in.kind));
  j["params"] = rec.params;
  j["contraction"] = in.contraction;
  Json drop = Json::array();
  if (rec.drop_normality) drop.push_back("normality");
  if (rec.drop_contraction) drop.push_back("contraction");
  j["drop"] = std::move(drop);
  j["x"] = element_to_json(in.x);
  j["y"] = element_to_json(in.y);
  j["a"] = matrix_to_json(in.a);
  if (in.e) j["e"] = element_to_json(*in.e);
  if (in.ball) j["ball"] = {{"m", in.ball->m}, {"M", in.ball->M}, {"p", in.ball->p}, {"P", in.ball->P}};
  if (in.basis_x) j["basis_x"] = matrix_to_json(*in.basis_x);
  if (in.basis_y) j["basis_y"] = matrix_to_json(*in.basis_y);
  return j;
}

InstanceRecord record_from_json(const Json& j) {
  try {
    ModuleElement x = element_from_json(j.at("x"));
    ModuleElement y = element_from_json(j.at("y"));
    InstanceRecord rec;
    rec.check = j.at("check").get<std::string>();
    rec.params = j.value("params", std::map<std::string, double>{});
    Instance& in = rec.instance;
    in.seed = j.at("seed").get<std::uint64_t>();
    in.kind = generator_kind_from_string(j.at("kind").get<std::string>());
    in.x = std::move(x);
    in.y = std::move(y);
    in.a = matrix_from_json(j.at("a"));
    in.contraction = j.value("contraction", 0.999);
    for (const Json& d : j.value("drop", Json::array())) {
      const std::string flag = d.get<std::string>();
      if (flag == "normality") rec.drop_normality = true;
      else if (flag == "contraction") rec.drop_contraction = true;
      else throw Error(ErrorCode::ParseError, "unknown hypothesis '" + flag + "'");
    }
    if (j.contains("e")) in.e = element_from_json(j["e"]);
    if (j.contains("ball")) {
      const Json& b = j["ball"];
      in.ball = GrussBall{b.at("m").get<double>(), b.at("M").get<double>(), b.at("p").get<double>(),
                          b.at("P").get<double>()};
    }
    if (j.contains("basis_x")) in.basis_x = matrix_from_json(j["basis_x"]);
    if (j.contains("basis_y")) in.basis_y = matrix_from_json(j["basis_y"]);
    return rec;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

void write_record(const std::string& path, const InstanceRecord& rec) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IOFailure, "cannot open '" + path + "' for writing");
  out << record_to_json(rec).dump(2) << '\n';
  if (!out) throw Error(ErrorCode::IOFailure, "write to '" + path + "' failed");
}

InstanceRecord read_record(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IOFailure, "cannot open '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  return record_from_json(j);
}

}  // namespace opineq
