#include <algorithm>
#include <map>

#include "subclust/data_model.hpp"

namespace subclust {

DataMatrix::DataMatrix(Matrix values) : values_(std::move(values)) {
  if (values_.rows() < 1 || values_.cols() < 2) {
    throw DataError("data matrix must have at least 1 feature and 2 samples, got " +
                    std::to_string(values_.rows()) + "x" + std::to_string(values_.cols()));
  }
  if (!values_.allFinite()) {
    throw DataError("data matrix contains non-finite entries");
  }
}

LabelVector::LabelVector(std::vector<int> labels, int k) : labels_(std::move(labels)), k_(k) {
  if (k_ < 0 || (k_ == 0 && !labels_.empty())) {
    throw DataError("label vector needs k >= 1");
  }
  for (int l : labels_) {
    if (l < 0 || l >= k_) {
      throw DataError("label " + std::to_string(l) + " outside 0.." + std::to_string(k_ - 1));
    }
  }
}

LabelVector LabelVector::remap(std::span<const std::int64_t> raw) {
  std::map<std::int64_t, int> index;
  for (auto v : raw) index.emplace(v, 0);
  int next = 0;
  for (auto& [value, id] : index) id = next++;
  std::vector<int> labels;
  labels.reserve(raw.size());
  for (auto v : raw) labels.push_back(index.at(v));
  return LabelVector(std::move(labels), next);
}

Dataset::Dataset(DataMatrix m, LabelVector t, std::string n, std::vector<std::string> steps)
    : matrix(std::move(m)), truth(std::move(t)), name(std::move(n)),
      preprocessing(std::move(steps)) {
  if (static_cast<std::size_t>(matrix.samples()) != truth.size()) {
    throw DataError("dimension mismatch: matrix has " + std::to_string(matrix.samples()) +
                    " samples but labels file has " + std::to_string(truth.size()));
  }
}

}  // namespace subclust
