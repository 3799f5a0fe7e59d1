/*
   Copyright 2026 The shotgun authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace shotgun {

// Column-major sparse design matrix (CSC). Row indices are strictly
// increasing within a column and no explicit zeros are stored.
// Immutable after construction; safe to share across threads.
class DesignMatrix {
  public:
    DesignMatrix() = default;
    DesignMatrix(std::int64_t n, std::int64_t d,
                 std::vector<std::int64_t> col_ptr,
                 std::vector<std::int32_t> row_idx,
                 std::vector<double> values);

    std::int64_t rows() const { return n_; }
    std::int64_t cols() const { return d_; }
    std::int64_t nnz() const { return static_cast<std::int64_t>(values_.size()); }

    std::span<const std::int32_t> col_rows(std::int64_t j) const {
        return {row_idx_.data() + col_ptr_[j],
                static_cast<std::size_t>(col_ptr_[j + 1] - col_ptr_[j])};
    }
    std::span<const double> col_values(std::int64_t j) const {
        return {values_.data() + col_ptr_[j],
                static_cast<std::size_t>(col_ptr_[j + 1] - col_ptr_[j])};
    }

    double col_norm(std::int64_t j) const;
    // Dot product of columns i and j (merge over sorted row indices).
    double col_dot(std::int64_t i, std::int64_t j) const;

    // out += scale * column j
    void add_column(std::int64_t j, double scale, std::span<double> out) const;
    // column j . v
    double col_dot_vec(std::int64_t j, std::span<const double> v) const;

    // y = A * x, allocated fresh.
    std::vector<double> multiply(std::span<const double> x) const;

  private:
    std::int64_t n_ = 0;
    std::int64_t d_ = 0;
    std::vector<std::int64_t> col_ptr_{0};
    std::vector<std::int32_t> row_idx_;
    std::vector<double> values_;
};

using Labels = std::vector<double>;

// Per-column L2 norms recorded by normalize_columns so that weights fitted
// on the normalized matrix can be mapped back to the original column
// scaling. Dropped all-zero columns are recorded by original index.
struct ColumnScales {
    std::int64_t original_cols = 0;
    std::vector<double> scale;               // per retained column
    std::vector<std::int64_t> original_index; // retained -> original column
    std::vector<std::int64_t> dropped;        // original indices of zero columns

    // Weight in original coordinates for retained column j.
    double to_original(std::int64_t j, double w_normalized) const {
        return w_normalized / scale[j];
    }
};

enum class InputFormat { svmlight, matrix_market, dense_csv };

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Dataset {
    DesignMatrix matrix;
    Labels labels;
};

// Loads an un-normalized matrix plus labels. For matrix_market the labels
// come from a one-value-per-line sidecar (labels_path, defaulting to
// path + ".labels"). svmlight feature indices are 1-based on disk and
// 0-based in memory. Duplicate (row, column) entries are an error.
Dataset load_dataset(const std::string& path, InputFormat format,
                     const std::string& labels_path = "");

// Rescales every column to unit L2 norm. All-zero columns are dropped and
// recorded rather than treated as an error.
std::pair<DesignMatrix, ColumnScales> normalize_columns(const DesignMatrix& m);

InputFormat parse_format(const std::string& name);

}  // namespace shotgun
