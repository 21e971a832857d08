#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace tnn {

enum class CartanFamily { A, B, C, D, AffineA };

/// Parses "A", "B", "C", "D" or "affine-A" (also "Ahat", "A~").
CartanFamily parse_cartan_family(std::string_view name);
std::string to_string(CartanFamily family);

/// Square integer matrix with the usual generalized Cartan conditions:
/// a_ii = 2, a_ij <= 0 off the diagonal, and a_ij = 0 iff a_ji = 0.
///
/// Vertices carry explicit labels. Labels of the form "inf<l>" mark the
/// vertices added by thicken(); all other vertices form the base set I and
/// must precede the infinity vertices.
class GeneralizedCartanMatrix {
 public:
  GeneralizedCartanMatrix(std::vector<std::string> labels,
                          std::vector<std::vector<int>> entries);

  std::size_t size() const { return labels_.size(); }
  int operator()(std::size_t i, std::size_t j) const { return entries_[i * size() + j]; }

  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  std::vector<std::vector<int>> rows() const;

  /// Number of vertices in I (non-infinity vertices).
  std::size_t base_rank() const { return base_rank_; }
  /// Number of infinity vertices, i.e. n - 1 for a thickening with n factors.
  std::size_t infinity_count() const { return size() - base_rank_; }
  bool is_infinity(std::size_t i) const { return i >= base_rank_; }

  /// The submatrix on I with the original labels.
  GeneralizedCartanMatrix base() const;

  friend bool operator==(const GeneralizedCartanMatrix&, const GeneralizedCartanMatrix&) = default;

 private:
  std::vector<std::string> labels_;
  std::vector<int> entries_;
  std::size_t base_rank_ = 0;
};

/// Standard matrices. Labels are "1".."rank" ("0".."rank" for affine A).
/// Rank bounds: A >= 1, B and C >= 2, D >= 4, affine A >= 1.
GeneralizedCartanMatrix cartan_of_type(CartanFamily family, int rank);

/// Adjoins infinity vertices inf1..inf{n-1}; every entry coupling an infinity
/// vertex to any other vertex is -2. thicken(A, 1) returns A.
GeneralizedCartanMatrix thicken(const GeneralizedCartanMatrix& base, int n);

std::string infinity_label(std::size_t l);

void to_json(nlohmann::json& j, const GeneralizedCartanMatrix& a);
GeneralizedCartanMatrix cartan_from_json(const nlohmann::json& j);

}  // namespace tnn
