#pragma once

// JSON / CSV serialization for the public file formats:
//   signals              {"values": [[re, im], ...]}
//   irrep sets           {"irreps": [{"dim", "label", "matrices": ...}]}
//   weight checkpoints   {"group_spec", "slots": [{"dim", "data": ...}]}
//   train reports, recovery reports, loss / sweep / spectra CSVs
//
// Complex entries are [re, im] pairs; matrix data is row-major, element-major
// over the group for weight slots. CSV files carry a one-line header.

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "speclearn/group.hpp"
#include "speclearn/invariants.hpp"
#include "speclearn/recover.hpp"
#include "speclearn/repr.hpp"
#include "speclearn/train.hpp"
#include "speclearn/weight_tensor.hpp"

namespace speclearn::io {

using json = nlohmann::ordered_json;

json signal_to_json(const Signal& x);
Signal signal_from_json(const json& j);

json irreps_to_json(const IrrepSet& irr);

json fourier_to_json(const FourierCoefficients& c);

json weights_to_json(const WeightTensor& W, const std::string& group_spec);
// Returns the tensor and the embedded group spec string.
std::pair<WeightTensor, std::string> weights_from_json(const json& j);

json table_to_json(const Eigen::MatrixXi& t);
Eigen::MatrixXi table_from_json(const json& j);

json recovery_to_json(const RecoveryReport& rep);

// Everything except wall time / timestamp is deterministic; those live under
// the single "meta" key.
json train_report_to_json(const TrainReport& rep, const std::string& group_spec);

std::string loss_curve_csv(const std::vector<LossTerms>& curve);

struct SweepRow {
  double sigma = 0.0;
  double accuracy = 0.0;
  int runs = 0;
};
std::string sweep_csv(const std::vector<SweepRow>& rows);

std::string spectra_csv(
    const std::vector<std::pair<SpectrumIndex, Eigen::MatrixXcd>>& entries);

json load_json_file(const std::string& path);
void save_text_file(const std::string& path, const std::string& content);

}  // namespace speclearn::io
