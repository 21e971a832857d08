#include "tnn/root_datum.hpp"

#include <algorithm>
#include <cctype>

#include "tnn/error.hpp"

namespace tnn {

namespace {

bool is_infinity_label(const std::string& label) {
  if (label.size() < 4 || label.compare(0, 3, "inf") != 0) return false;
  return std::all_of(label.begin() + 3, label.end(),
                     [](unsigned char c) { return std::isdigit(c) != 0; });
}

}  // namespace

std::string infinity_label(std::size_t l) { return "inf" + std::to_string(l); }

CartanFamily parse_cartan_family(std::string_view name) {
  if (name == "A") return CartanFamily::A;
  if (name == "B") return CartanFamily::B;
  if (name == "C") return CartanFamily::C;
  if (name == "D") return CartanFamily::D;
  if (name == "affine-A" || name == "Ahat" || name == "A~") return CartanFamily::AffineA;
  throw InvalidArgument("unsupported Cartan family '" + std::string(name) + "'");
}

std::string to_string(CartanFamily family) {
  switch (family) {
    case CartanFamily::A: return "A";
    case CartanFamily::B: return "B";
    case CartanFamily::C: return "C";
    case CartanFamily::D: return "D";
    case CartanFamily::AffineA: return "affine-A";
  }
  return "?";
}

GeneralizedCartanMatrix::GeneralizedCartanMatrix(std::vector<std::string> labels,
                                                 std::vector<std::vector<int>> entries)
    : labels_(std::move(labels)) {
  const std::size_t n = labels_.size();
  if (n == 0) throw InvalidArgument("Cartan matrix must have at least one vertex");
  if (entries.size() != n) throw InvalidArgument("Cartan matrix row count does not match labels");
  entries_.reserve(n * n);
  for (const auto& row : entries) {
    if (row.size() != n) throw InvalidArgument("Cartan matrix is not square");
    entries_.insert(entries_.end(), row.begin(), row.end());
  }
  for (std::size_t i = 0; i < n; ++i) {
    if ((*this)(i, i) != 2) throw InvalidArgument("diagonal entry a_ii must be 2");
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if ((*this)(i, j) > 0) throw InvalidArgument("off-diagonal entries must be <= 0");
      if (((*this)(i, j) == 0) != ((*this)(j, i) == 0))
        throw InvalidArgument("a_ij = 0 must imply a_ji = 0");
    }
  }
  std::vector<std::string> sorted = labels_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw InvalidArgument("vertex labels must be distinct");

  base_rank_ = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (is_infinity_label(labels_[i])) {
      base_rank_ = i;
      break;
    }
  }
  for (std::size_t i = base_rank_; i < n; ++i) {
    if (labels_[i] != infinity_label(i - base_rank_ + 1))
      throw InvalidArgument("infinity vertices must be labelled inf1, inf2, ... after the base vertices");
    // Only non-vanishing coupling to the other vertices is required.
    for (std::size_t j = 0; j < n; ++j)
      if (j != i && (*this)(i, j) == 0)
        throw InvalidArgument("infinity vertex " + labels_[i] + " must couple to every other vertex");
  }
}

std::vector<std::vector<int>> GeneralizedCartanMatrix::rows() const {
  std::vector<std::vector<int>> out(size(), std::vector<int>(size()));
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = 0; j < size(); ++j) out[i][j] = (*this)(i, j);
  return out;
}

GeneralizedCartanMatrix GeneralizedCartanMatrix::base() const {
  std::vector<std::string> labels(labels_.begin(), labels_.begin() + static_cast<long>(base_rank_));
  std::vector<std::vector<int>> entries(base_rank_, std::vector<int>(base_rank_));
  for (std::size_t i = 0; i < base_rank_; ++i)
    for (std::size_t j = 0; j < base_rank_; ++j) entries[i][j] = (*this)(i, j);
  return {std::move(labels), std::move(entries)};
}

GeneralizedCartanMatrix cartan_of_type(CartanFamily family, int rank) {
  if (rank < 1) throw InvalidArgument("rank must be positive");
  const auto r = static_cast<std::size_t>(rank);
  std::size_t size = r;
  std::size_t first_label = 1;
  switch (family) {
    case CartanFamily::A: break;
    case CartanFamily::B:
    case CartanFamily::C:
      if (rank < 2) throw InvalidArgument("types B and C need rank >= 2");
      break;
    case CartanFamily::D:
      if (rank < 4) throw InvalidArgument("type D needs rank >= 4");
      break;
    case CartanFamily::AffineA:
      size = r + 1;
      first_label = 0;
      break;
  }

  std::vector<std::vector<int>> a(size, std::vector<int>(size, 0));
  for (std::size_t i = 0; i < size; ++i) a[i][i] = 2;
  auto link = [&](std::size_t i, std::size_t j) { a[i][j] = a[j][i] = -1; };

  switch (family) {
    case CartanFamily::A:
      for (std::size_t i = 0; i + 1 < r; ++i) link(i, i + 1);
      break;
    case CartanFamily::B:
      for (std::size_t i = 0; i + 1 < r; ++i) link(i, i + 1);
      a[r - 1][r - 2] = -2;  // short simple root last
      break;
    case CartanFamily::C:
      for (std::size_t i = 0; i + 1 < r; ++i) link(i, i + 1);
      a[r - 2][r - 1] = -2;
      break;
    case CartanFamily::D:
      for (std::size_t i = 0; i + 2 < r; ++i) link(i, i + 1);
      link(r - 3, r - 1);
      break;
    case CartanFamily::AffineA:
      if (r == 1) {
        a[0][1] = a[1][0] = -2;
      } else {
        for (std::size_t i = 0; i < size; ++i) link(i, (i + 1) % size);
      }
      break;
  }

  std::vector<std::string> labels;
  for (std::size_t i = 0; i < size; ++i) labels.push_back(std::to_string(first_label + i));
  return {std::move(labels), std::move(a)};
}

GeneralizedCartanMatrix thicken(const GeneralizedCartanMatrix& base, int n) {
  if (n < 1) throw InvalidArgument("thickening needs n >= 1");
  if (n == 1) return base;
  if (base.infinity_count() != 0)
    throw InvalidArgument("matrix is already thickened; thicken its base() instead");
  const std::size_t r = base.size();
  const std::size_t size = r + static_cast<std::size_t>(n) - 1;
  std::vector<std::vector<int>> a(size, std::vector<int>(size, -2));
  for (std::size_t i = 0; i < size; ++i) a[i][i] = 2;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) a[i][j] = base(i, j);
  std::vector<std::string> labels = base.labels();
  for (std::size_t l = 1; l < static_cast<std::size_t>(n); ++l) labels.push_back(infinity_label(l));
  return {std::move(labels), std::move(a)};
}

void to_json(nlohmann::json& j, const GeneralizedCartanMatrix& a) {
  j = nlohmann::json{{"labels", a.labels()}, {"matrix", a.rows()}};
}

GeneralizedCartanMatrix cartan_from_json(const nlohmann::json& j) {
  try {
    return {j.at("labels").get<std::vector<std::string>>(),
            j.at("matrix").get<std::vector<std::vector<int>>>()};
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("bad Cartan matrix JSON: ") + e.what());
  }
}

}  // namespace tnn
