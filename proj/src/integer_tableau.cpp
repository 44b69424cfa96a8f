#include "nash/integer_tableau.hpp"

#include <stdexcept>
#include <string>

namespace nash {

IntegerTableau::IntegerTableau(std::vector<std::vector<BigInt>> coeffs, std::vector<BigInt> rhs,
                               std::vector<std::size_t> basis, BigInt scale)
    : basis_(std::move(basis)), scale_(std::move(scale)) {
  if (coeffs.size() != rhs.size() || coeffs.size() != basis_.size()) {
    throw std::invalid_argument("tableau: row count mismatch");
  }
  if (scale_ <= 0) throw std::invalid_argument("tableau: scale must be positive");
  const std::size_t nvars = coeffs.empty() ? 0 : coeffs.front().size();
  row_of_.assign(nvars, -1);
  cells_ = std::move(coeffs);
  for (std::size_t r = 0; r < cells_.size(); ++r) {
    if (cells_[r].size() != nvars) throw std::invalid_argument("tableau: ragged rows");
    cells_[r].push_back(std::move(rhs[r]));
  }
  for (std::size_t r = 0; r < basis_.size(); ++r) {
    const std::size_t b = basis_[r];
    if (b >= nvars || row_of_[b] >= 0) throw std::invalid_argument("tableau: bad basis");
    for (std::size_t i = 0; i < cells_.size(); ++i) {
      if (cells_[i][b] != (i == r ? scale_ : BigInt(0))) {
        throw std::invalid_argument("tableau: basic column " + std::to_string(b) + " is not a unit column");
      }
    }
    row_of_[b] = static_cast<long>(r);
  }
}

IntegerTableau IntegerTableau::scaled_identity_start(const RationalMatrix& coeffs, const RationalVector& rhs) {
  if (coeffs.size() != rhs.size()) throw std::invalid_argument("tableau: row count mismatch");
  // Implicit identity basis on the integer-scaled rows; requested basic
  // variables are then pivoted in.
  IntegerTableau t;
  const std::size_t nvars = coeffs.empty() ? 0 : coeffs.front().size();
  t.row_of_.assign(nvars, -1);
  t.basis_.assign(coeffs.size(), kNoVar);
  t.cells_.resize(coeffs.size());
  for (std::size_t r = 0; r < coeffs.size(); ++r) {
    if (coeffs[r].size() != nvars) throw std::invalid_argument("tableau: ragged rows");
    RationalVector row = coeffs[r];
    row.push_back(rhs[r]);
    const Rational factor{common_denominator(row)};
    t.cells_[r].reserve(nvars + 1);
    for (const auto& c : row) t.cells_[r].push_back((c * factor).numerator());
  }
  return t;
}

IntegerTableau IntegerTableau::from_rational(const RationalMatrix& coeffs, const RationalVector& rhs,
                                             const std::vector<std::size_t>& basis) {
  if (coeffs.size() != basis.size()) throw std::invalid_argument("tableau: row count mismatch");
  IntegerTableau t = scaled_identity_start(coeffs, rhs);
  for (std::size_t r = 0; r < basis.size(); ++r) t.pivot(r, basis[r]);
  return t;
}

IntegerTableau IntegerTableau::from_rational_set(const RationalMatrix& coeffs, const RationalVector& rhs,
                                                 const std::vector<std::size_t>& basic_vars) {
  if (coeffs.size() != basic_vars.size()) throw std::invalid_argument("tableau: row count mismatch");
  IntegerTableau t = scaled_identity_start(coeffs, rhs);
  std::vector<bool> taken(t.rows(), false);
  for (std::size_t v : basic_vars) {
    std::size_t r = 0;
    while (r < t.rows() && (taken[r] || t.cells_[r].at(v) == 0)) ++r;
    if (r == t.rows()) throw DomainError("tableau: requested basis is singular");
    t.pivot(r, v);
    taken[r] = true;
  }
  return t;
}

std::optional<std::size_t> IntegerTableau::row_of(std::size_t var) const {
  const long r = row_of_.at(var);
  if (r < 0) return std::nullopt;
  return static_cast<std::size_t>(r);
}

Rational IntegerTableau::value(std::size_t var) const {
  const long r = row_of_.at(var);
  if (r < 0) return Rational();
  return Rational(rhs(static_cast<std::size_t>(r)), scale_);
}

Rational IntegerTableau::ratio_entry(std::size_t row, std::size_t var) const {
  return Rational(cells_[row][var], scale_);
}

void IntegerTableau::pivot(std::size_t row, std::size_t entering) {
  if (row >= rows() || entering >= vars()) throw std::out_of_range("tableau: pivot out of range");
  const BigInt pivot_element = cells_[row][entering];
  if (pivot_element == 0) throw DomainError("tableau: zero pivot element");
  if (row_of_[entering] >= 0) {
    if (static_cast<std::size_t>(row_of_[entering]) == row) return;
    throw std::invalid_argument("tableau: entering variable is already basic");
  }

  const std::size_t width = vars() + 1;
  const std::vector<BigInt>& pivot_row = cells_[row];
  BigInt tmp;
  for (std::size_t i = 0; i < rows(); ++i) {
    if (i == row) continue;
    std::vector<BigInt>& target = cells_[i];
    const BigInt factor = target[entering];
    for (std::size_t j = 0; j < width; ++j) {
      // target[j] = (target[j] * p - factor * pivot_row[j]) / scale, exact.
      mpz_mul(tmp.get_mpz_t(), target[j].get_mpz_t(), pivot_element.get_mpz_t());
      if (factor != 0) mpz_submul(tmp.get_mpz_t(), factor.get_mpz_t(), pivot_row[j].get_mpz_t());
      mpz_divexact(target[j].get_mpz_t(), tmp.get_mpz_t(), scale_.get_mpz_t());
    }
  }

  if (pivot_element < 0) {
    for (auto& r : cells_) {
      for (auto& c : r) c = -c;
    }
    scale_ = -pivot_element;
  } else {
    scale_ = pivot_element;
  }
  if (basis_[row] != kNoVar) row_of_[basis_[row]] = -1;
  basis_[row] = entering;
  row_of_[entering] = static_cast<long>(row);
}

void IntegerTableau::pivot_vars(std::size_t leaving, std::size_t entering) {
  const auto r = row_of(leaving);
  if (!r) throw std::invalid_argument("tableau: leaving variable is not basic");
  pivot(*r, entering);
}

}  // namespace nash
