#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "k3orders/errors.hpp"

namespace k3orders {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

/// Exact fraction n/d with any sign of d (d == 0 throws).  The two-argument
/// cpp_rational constructor rejects negative denominators, so normalize here.
Rat make_rat(const Int& num, const Int& den);

bool is_integer(const Rat& q);

/// Floor division / remainder (operator/ on cpp_int truncates toward zero).
Int floor_div(const Int& a, const Int& b);
Int floor_mod(const Int& a, const Int& b);

// --- small dense integer matrices, row-major ---

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<IntVec>& rows);
  static IntMatrix from_columns(const std::vector<IntVec>& cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  IntVec row(std::size_t i) const;
  IntVec column(std::size_t j) const;

  bool is_square() const { return rows_ == cols_; }
  bool is_symmetric() const;
  bool is_zero() const;
  bool is_identity() const;

  IntMatrix transposed() const;

  // elementary operations, used by the normal-form routines
  void swap_rows(std::size_t i, std::size_t j);
  void swap_columns(std::size_t i, std::size_t j);
  void add_row_multiple(std::size_t dst, std::size_t src, const Int& c);
  void add_column_multiple(std::size_t dst, std::size_t src, const Int& c);
  void negate_row(std::size_t i);
  void negate_column(std::size_t j);

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  IntVec data_;
};

/// Like IntMatrix::from_columns but keeps the row count when cols is empty.
IntMatrix columns_matrix(std::size_t rows, const std::vector<IntVec>& cols);

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator-(const IntMatrix& a);
IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntVec operator*(const IntMatrix& a, const IntVec& v);

// --- vector helpers ---

IntVec operator+(const IntVec& a, const IntVec& b);
IntVec operator-(const IntVec& a, const IntVec& b);
IntVec operator-(const IntVec& a);
IntVec operator*(const Int& c, const IntVec& v);
bool is_zero(const IntVec& v);

/// Unit vector e_i of length n.
IntVec unit_vector(std::size_t n, std::size_t i);

std::string to_string(const IntVec& v);
std::string to_string(const IntMatrix& m);

// --- exact rational matrices, used for inverses and extension checks ---

class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols);
  explicit RatMatrix(const IntMatrix& m);

  static RatMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Rat& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rat& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  bool is_integral() const;
  /// Requires is_integral().
  IntMatrix to_integer() const;

  /// Exact inverse via Gauss-Jordan; throws DegenerateLatticeError if singular.
  RatMatrix inverse() const;

  friend bool operator==(const RatMatrix& a, const RatMatrix& b) = default;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  RatVec data_;
};

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
RatVec operator*(const RatMatrix& a, const RatVec& v);

}  // namespace k3orders
