#include "gaudin/model.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "gaudin/errors.hpp"

namespace gaudin {

ModelSpec::ModelSpec(std::vector<int> weights, std::vector<Rational> z)
    : weights_(std::move(weights)), z_(std::move(z)) {
  if (weights_.size() < 2) throw DomainError("model needs at least 2 sites");
  if (weights_.size() != z_.size()) {
    throw DomainError("weights and z must have the same length");
  }
  for (int w : weights_) {
    if (w < 1) throw DomainError("highest weights must be positive integers");
  }
  for (auto& q : z_) {
    if (q.get_den() == 0) throw DomainError("site parameter with zero denominator");
    q.canonicalize();
  }
  for (std::size_t i = 0; i < z_.size(); ++i) {
    for (std::size_t j = i + 1; j < z_.size(); ++j) {
      if (z_[i] == z_[j]) {
        throw DomainError("site parameters must be pairwise distinct (z" + std::to_string(i + 1) +
                          " = z" + std::to_string(j + 1) + ")");
      }
    }
  }
  for (int w : weights_) total_weight_ += w;
  min_weight_ = *std::min_element(weights_.begin(), weights_.end());
}

ModelSpec ModelSpec::from_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("model file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("weights") || !doc.contains("z")) {
    throw ParseError("model file must be an object with \"weights\" and \"z\"");
  }
  const auto& jw = doc.at("weights");
  const auto& jz = doc.at("z");
  if (!jw.is_array() || !jz.is_array()) throw ParseError("\"weights\" and \"z\" must be arrays");

  std::vector<int> weights;
  for (const auto& w : jw) {
    if (!w.is_number_integer()) throw ParseError("weights must be integers");
    weights.push_back(w.get<int>());
  }
  std::vector<Rational> z;
  for (const auto& v : jz) {
    if (v.is_string()) {
      z.push_back(parse_rational(v.get<std::string>()));
    } else if (v.is_number_integer()) {
      z.emplace_back(v.get<long>());
    } else {
      throw ParseError("z entries must be \"p/q\" strings or integers");
    }
  }
  return ModelSpec(std::move(weights), std::move(z));
}

std::string ModelSpec::to_json() const {
  nlohmann::json doc;
  doc["weights"] = weights_;
  auto& jz = doc["z"] = nlohmann::json::array();
  for (const auto& q : z_) jz.push_back(to_string(q));
  return doc.dump();
}

}  // namespace gaudin
