#include "speclearn/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace speclearn::io {

namespace {

json cplx_to_json(const std::complex<double>& v) {
  return json::array({v.real(), v.imag()});
}

std::complex<double> cplx_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2)
    throw Error(ErrorKind::Parse, "complex entry must be a [re, im] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

json matrix_to_json(const Eigen::MatrixXcd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      row.push_back(cplx_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

// Fixed 17-significant-digit formatting: round-trip exact and byte-stable.
std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

json signal_to_json(const Signal& x) {
  json vals = json::array();
  for (Eigen::Index i = 0; i < x.size(); ++i)
    vals.push_back(cplx_to_json(x[i]));
  return json{{"values", std::move(vals)}};
}

Signal signal_from_json(const json& j) {
  if (!j.contains("values") || !j["values"].is_array())
    throw Error(ErrorKind::Parse, "signal file needs a 'values' array");
  const json& vals = j["values"];
  Signal x(vals.size());
  for (std::size_t i = 0; i < vals.size(); ++i)
    x[static_cast<Eigen::Index>(i)] = cplx_from_json(vals[i]);
  return x;
}

json irreps_to_json(const IrrepSet& irr) {
  json list = json::array();
  for (const Irrep& rho : irr.irreps) {
    json mats = json::array();
    for (const auto& m : rho.mats) mats.push_back(matrix_to_json(m));
    list.push_back(json{{"dim", rho.dim},
                        {"label", rho.label},
                        {"matrices", std::move(mats)}});
  }
  return json{{"group_order", irr.group_order},
              {"commutative", irr.commutative},
              {"irreps", std::move(list)}};
}

json fourier_to_json(const FourierCoefficients& c) {
  json blocks = json::array();
  for (const auto& b : c.blocks) blocks.push_back(matrix_to_json(b));
  return json{{"blocks", std::move(blocks)}};
}

json weights_to_json(const WeightTensor& W, const std::string& group_spec) {
  json slots = json::array();
  for (const WeightSlot& s : W.slots()) {
    json data = json::array();
    for (const auto& block : s.blocks)
      for (int r = 0; r < s.dim; ++r)
        for (int c = 0; c < s.dim; ++c)
          data.push_back(cplx_to_json(block(r, c)));
    slots.push_back(json{{"dim", s.dim}, {"data", std::move(data)}});
  }
  return json{{"group_spec", group_spec},
              {"group_order", W.group_order()},
              {"slots", std::move(slots)}};
}

std::pair<WeightTensor, std::string> weights_from_json(const json& j) {
  if (!j.contains("group_order") || !j.contains("slots"))
    throw Error(ErrorKind::Parse, "weights file needs group_order and slots");
  int order = j["group_order"].get<int>();
  std::vector<int> dims;
  for (const json& s : j["slots"]) dims.push_back(s["dim"].get<int>());
  WeightTensor W(order, dims);
  for (std::size_t i = 0; i < dims.size(); ++i) {
    const json& data = j["slots"][i]["data"];
    int d = dims[i];
    if (static_cast<int>(data.size()) != order * d * d)
      throw Error(ErrorKind::Parse, "weight slot data length mismatch");
    std::size_t at = 0;
    for (int g = 0; g < order; ++g)
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c)
          W.slot(static_cast<int>(i)).blocks[g](r, c) =
              cplx_from_json(data[at++]);
  }
  std::string spec = j.value("group_spec", std::string{});
  return {std::move(W), std::move(spec)};
}

json table_to_json(const Eigen::MatrixXi& t) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < t.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < t.cols(); ++c) row.push_back(t(r, c));
    rows.push_back(std::move(row));
  }
  return json{{"order", t.rows()}, {"table", std::move(rows)}};
}

Eigen::MatrixXi table_from_json(const json& j) {
  if (!j.contains("table"))
    throw Error(ErrorKind::Parse, "table file needs a 'table' array");
  const json& rows = j["table"];
  int n = static_cast<int>(rows.size());
  Eigen::MatrixXi t(n, n);
  for (int r = 0; r < n; ++r) {
    if (static_cast<int>(rows[r].size()) != n)
      throw Error(ErrorKind::Parse, "table is not square");
    for (int c = 0; c < n; ++c) t(r, c) = rows[r][c].get<int>();
  }
  return t;
}

json recovery_to_json(const RecoveryReport& rep) {
  json margins = json::array();
  for (Eigen::Index r = 0; r < rep.margins.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < rep.margins.cols(); ++c)
      row.push_back(rep.margins(r, c));
    margins.push_back(std::move(row));
  }
  json out{{"table", table_to_json(rep.table)["table"]},
           {"margins", std::move(margins)},
           {"min_margin", rep.margins.minCoeff()},
           {"L", rep.L},
           {"identity_slice_ok", rep.identity_slice_ok}};
  if (rep.vs_truth.has_value()) {
    out["isomorphic_to_truth"] = rep.vs_truth->isomorphic;
    if (rep.vs_truth->isomorphic) out["witness_permutation"] = rep.vs_truth->perm;
  }
  return out;
}

json train_report_to_json(const TrainReport& rep,
                          const std::string& group_spec) {
  json curve = json::array();
  for (const LossTerms& t : rep.curve)
    curve.push_back(json::array({t.invariance, t.orthogonality}));
  return json{{"group_spec", group_spec},
              {"seed", rep.seed},
              {"steps_completed", rep.steps_completed},
              {"diverged", rep.diverged},
              {"final_invariance",
               rep.curve.empty() ? 0.0 : rep.curve.back().invariance},
              {"final_orthogonality",
               rep.curve.empty() ? 0.0 : rep.curve.back().orthogonality},
              {"curve", std::move(curve)},
              {"weights", weights_to_json(rep.final_weights, group_spec)},
              {"meta", json{{"wall_seconds", rep.wall_seconds}}}};
}

std::string loss_curve_csv(const std::vector<LossTerms>& curve) {
  std::ostringstream os;
  os << "step,invariance,orthogonality\n";
  for (std::size_t i = 0; i < curve.size(); ++i)
    os << i << ',' << fmt(curve[i].invariance) << ','
       << fmt(curve[i].orthogonality) << '\n';
  return os.str();
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << "sigma,accuracy,runs\n";
  for (const SweepRow& r : rows)
    os << fmt(r.sigma) << ',' << fmt(r.accuracy) << ',' << r.runs << '\n';
  return os.str();
}

std::string spectra_csv(
    const std::vector<std::pair<SpectrumIndex, Eigen::MatrixXcd>>& entries) {
  std::ostringstream os;
  os << "multi_index,entries_re_im\n";
  for (const auto& [idx, beta] : entries) {
    os << '"';
    for (std::size_t i = 0; i < idx.indices.size(); ++i)
      os << (i ? " " : "") << idx.indices[i];
    os << '"';
    for (Eigen::Index r = 0; r < beta.rows(); ++r)
      for (Eigen::Index c = 0; c < beta.cols(); ++c)
        os << ',' << fmt(beta(r, c).real()) << ',' << fmt(beta(r, c).imag());
    os << '\n';
  }
  return os.str();
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse,
                "JSON parse error in " + path + ": " + e.what());
  }
  return j;
}

void save_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Parse, "cannot write file: " + path);
  out << content;
}

}  // namespace speclearn::io
