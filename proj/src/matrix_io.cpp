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

#include "shotgun/matrix_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

namespace shotgun {

DesignMatrix::DesignMatrix(std::int64_t n, std::int64_t d,
                           std::vector<std::int64_t> col_ptr,
                           std::vector<std::int32_t> row_idx,
                           std::vector<double> values)
    : n_(n), d_(d), col_ptr_(std::move(col_ptr)), row_idx_(std::move(row_idx)),
      values_(std::move(values)) {
    if (static_cast<std::int64_t>(col_ptr_.size()) != d_ + 1)
        throw std::invalid_argument("DesignMatrix: col_ptr size mismatch");
    if (row_idx_.size() != values_.size())
        throw std::invalid_argument("DesignMatrix: index/value size mismatch");
    for (std::int64_t j = 0; j < d_; ++j) {
        std::int32_t prev = -1;
        for (std::int64_t t = col_ptr_[j]; t < col_ptr_[j + 1]; ++t) {
            if (row_idx_[t] < 0 || row_idx_[t] >= n_)
                throw std::out_of_range("DesignMatrix: row index out of range");
            if (row_idx_[t] <= prev)
                throw std::invalid_argument(
                    "DesignMatrix: row indices not strictly increasing in column " +
                    std::to_string(j));
            prev = row_idx_[t];
        }
    }
}

double DesignMatrix::col_norm(std::int64_t j) const {
    double s = 0.0;
    for (double v : col_values(j)) s += v * v;
    return std::sqrt(s);
}

double DesignMatrix::col_dot(std::int64_t i, std::int64_t j) const {
    auto ri = col_rows(i), rj = col_rows(j);
    auto vi = col_values(i), vj = col_values(j);
    double s = 0.0;
    std::size_t a = 0, b = 0;
    while (a < ri.size() && b < rj.size()) {
        if (ri[a] == rj[b]) {
            s += vi[a] * vj[b];
            ++a; ++b;
        } else if (ri[a] < rj[b]) {
            ++a;
        } else {
            ++b;
        }
    }
    return s;
}

void DesignMatrix::add_column(std::int64_t j, double scale, std::span<double> out) const {
    auto rows = col_rows(j);
    auto vals = col_values(j);
    for (std::size_t t = 0; t < rows.size(); ++t) out[rows[t]] += scale * vals[t];
}

double DesignMatrix::col_dot_vec(std::int64_t j, std::span<const double> v) const {
    auto rows = col_rows(j);
    auto vals = col_values(j);
    double s = 0.0;
    for (std::size_t t = 0; t < rows.size(); ++t) s += vals[t] * v[rows[t]];
    return s;
}

std::vector<double> DesignMatrix::multiply(std::span<const double> x) const {
    std::vector<double> y(static_cast<std::size_t>(n_), 0.0);
    for (std::int64_t j = 0; j < d_; ++j)
        if (x[j] != 0.0) add_column(j, x[j], y);
    return y;
}

namespace {

struct Triplet {
    std::int32_t row;
    std::int64_t col;
    double value;
};

[[noreturn]] void fail(const std::string& path, std::int64_t line, const std::string& what) {
    throw ParseError(path + ":" + std::to_string(line) + ": " + what);
}

DesignMatrix assemble(const std::string& path, std::int64_t n, std::int64_t d,
                      std::vector<Triplet>& entries) {
    std::stable_sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
        return a.col != b.col ? a.col < b.col : a.row < b.row;
    });
    for (std::size_t t = 1; t < entries.size(); ++t)
        if (entries[t].col == entries[t - 1].col && entries[t].row == entries[t - 1].row)
            throw ParseError(path + ": duplicate entry at row " +
                             std::to_string(entries[t].row + 1) + ", column " +
                             std::to_string(entries[t].col + 1));

    std::vector<std::int64_t> col_ptr(static_cast<std::size_t>(d) + 1, 0);
    std::vector<std::int32_t> rows;
    std::vector<double> vals;
    rows.reserve(entries.size());
    vals.reserve(entries.size());
    for (const Triplet& e : entries) {
        if (e.value == 0.0) continue;  // no explicit zeros stored
        ++col_ptr[e.col + 1];
        rows.push_back(e.row);
        vals.push_back(e.value);
    }
    std::partial_sum(col_ptr.begin(), col_ptr.end(), col_ptr.begin());
    return DesignMatrix(n, d, std::move(col_ptr), std::move(rows), std::move(vals));
}

bool parse_double(std::string_view tok, double& out) {
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
    return ec == std::errc{} && p == tok.data() + tok.size();
}

bool parse_int(std::string_view tok, std::int64_t& out) {
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
    return ec == std::errc{} && p == tok.data() + tok.size();
}

Dataset load_svmlight(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");

    std::vector<Triplet> entries;
    Labels y;
    std::int64_t d = 0;
    std::string line;
    std::int64_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        // strip trailing comment
        if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;  // blank line
        double label;
        if (!parse_double(tok, label)) fail(path, lineno, "bad label '" + tok + "'");
        const std::int32_t row = static_cast<std::int32_t>(y.size());
        y.push_back(label);
        std::int64_t prev_idx = 0;
        while (ls >> tok) {
            auto colon = tok.find(':');
            if (colon == std::string::npos || colon == 0 || colon + 1 == tok.size())
                fail(path, lineno, "expected index:value, got '" + tok + "'");
            std::int64_t idx;
            double value;
            if (!parse_int(std::string_view(tok).substr(0, colon), idx))
                fail(path, lineno, "bad feature index in '" + tok + "'");
            if (!parse_double(std::string_view(tok).substr(colon + 1), value))
                fail(path, lineno, "bad feature value in '" + tok + "'");
            if (idx < 1) fail(path, lineno, "feature index must be >= 1");
            if (idx <= prev_idx)
                fail(path, lineno, "feature indices must be increasing within a sample");
            prev_idx = idx;
            d = std::max(d, idx);
            entries.push_back({row, idx - 1, value});
        }
    }
    if (y.empty()) throw ParseError(path + ": no samples");
    DesignMatrix m = assemble(path, static_cast<std::int64_t>(y.size()), d, entries);
    return {std::move(m), std::move(y)};
}

Labels load_label_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open label file");
    Labels y;
    std::string line;
    std::int64_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        double v;
        if (!parse_double(tok, v)) fail(path, lineno, "bad label '" + tok + "'");
        y.push_back(v);
    }
    return y;
}

Dataset load_matrix_market(const std::string& path, const std::string& labels_path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");
    std::string line;
    std::int64_t lineno = 0;

    if (!std::getline(in, line)) throw ParseError(path + ": no samples");
    ++lineno;
    if (line.rfind("%%MatrixMarket", 0) == 0) {
        if (line.find("coordinate") == std::string::npos)
            fail(path, lineno, "only coordinate format is supported");
    } else {
        fail(path, lineno, "missing MatrixMarket header");
    }
    // skip comments
    std::int64_t n = 0, d = 0, nnz = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line[0] == '%') continue;
        std::istringstream ls(line);
        if (!(ls >> n >> d >> nnz)) fail(path, lineno, "bad size line");
        break;
    }
    if (n <= 0 || d <= 0) fail(path, lineno, "empty matrix");

    std::vector<Triplet> entries;
    entries.reserve(static_cast<std::size_t>(nnz));
    std::int64_t seen = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '%') continue;
        std::istringstream ls(line);
        std::int64_t i, j;
        double v;
        if (!(ls >> i >> j >> v)) fail(path, lineno, "bad entry line");
        if (i < 1 || i > n) fail(path, lineno, "row index out of range");
        if (j < 1 || j > d) fail(path, lineno, "column index out of range");
        entries.push_back({static_cast<std::int32_t>(i - 1), j - 1, v});
        ++seen;
    }
    if (seen != nnz) throw ParseError(path + ": nnz count mismatch in entries");

    std::string lp = labels_path.empty() ? path + ".labels" : labels_path;
    Labels y = load_label_file(lp);
    if (static_cast<std::int64_t>(y.size()) != n)
        throw ParseError(lp + ": label count " + std::to_string(y.size()) +
                         " does not match sample count " + std::to_string(n));
    DesignMatrix m = assemble(path, n, d, entries);
    return {std::move(m), std::move(y)};
}

Dataset load_dense_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");
    std::vector<Triplet> entries;
    Labels y;
    std::int64_t d = -1;
    std::string line;
    std::int64_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::string field;
        std::istringstream ls(line);
        while (std::getline(ls, field, ',')) {
            // trim spaces
            auto b = field.find_first_not_of(" \t\r");
            auto e = field.find_last_not_of(" \t\r");
            fields.push_back(b == std::string::npos ? "" : field.substr(b, e - b + 1));
        }
        if (fields.size() < 2) fail(path, lineno, "need a label and at least one feature");
        if (d < 0) d = static_cast<std::int64_t>(fields.size()) - 1;
        if (static_cast<std::int64_t>(fields.size()) - 1 != d)
            fail(path, lineno, "inconsistent column count");
        double label;
        if (!parse_double(fields[0], label)) fail(path, lineno, "bad label '" + fields[0] + "'");
        const std::int32_t row = static_cast<std::int32_t>(y.size());
        y.push_back(label);
        for (std::int64_t j = 0; j < d; ++j) {
            double v;
            if (!parse_double(fields[j + 1], v))
                fail(path, lineno, "bad value '" + fields[j + 1] + "'");
            if (v != 0.0) entries.push_back({row, j, v});
        }
    }
    if (y.empty()) throw ParseError(path + ": no samples");
    DesignMatrix m = assemble(path, static_cast<std::int64_t>(y.size()), d, entries);
    return {std::move(m), std::move(y)};
}

}  // namespace

Dataset load_dataset(const std::string& path, InputFormat format,
                     const std::string& labels_path) {
    switch (format) {
        case InputFormat::svmlight: return load_svmlight(path);
        case InputFormat::matrix_market: return load_matrix_market(path, labels_path);
        case InputFormat::dense_csv: return load_dense_csv(path);
    }
    throw std::invalid_argument("unknown input format");
}

std::pair<DesignMatrix, ColumnScales> normalize_columns(const DesignMatrix& m) {
    ColumnScales scales;
    scales.original_cols = m.cols();

    std::vector<std::int64_t> col_ptr;
    std::vector<std::int32_t> rows;
    std::vector<double> vals;
    col_ptr.push_back(0);
    rows.reserve(static_cast<std::size_t>(m.nnz()));
    vals.reserve(static_cast<std::size_t>(m.nnz()));

    for (std::int64_t j = 0; j < m.cols(); ++j) {
        const double norm = m.col_norm(j);
        if (norm == 0.0) {
            scales.dropped.push_back(j);
            continue;
        }
        scales.scale.push_back(norm);
        scales.original_index.push_back(j);
        auto r = m.col_rows(j);
        auto v = m.col_values(j);
        for (std::size_t t = 0; t < r.size(); ++t) {
            rows.push_back(r[t]);
            vals.push_back(v[t] / norm);
        }
        col_ptr.push_back(static_cast<std::int64_t>(rows.size()));
    }
    DesignMatrix out(m.rows(), static_cast<std::int64_t>(scales.scale.size()),
                     std::move(col_ptr), std::move(rows), std::move(vals));
    return {std::move(out), std::move(scales)};
}

InputFormat parse_format(const std::string& name) {
    if (name == "svmlight" || name == "libsvm") return InputFormat::svmlight;
    if (name == "mm" || name == "matrix-market") return InputFormat::matrix_market;
    if (name == "csv" || name == "dense-csv") return InputFormat::dense_csv;
    throw std::invalid_argument("unknown format '" + name + "'");
}

}  // namespace shotgun
