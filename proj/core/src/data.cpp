// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dagdb Authors

#include "dagdb/data.hpp"

#include "dagdb/graphs.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace dagdb {

double standard_normal(Rng& rng) {
    double u1 = uniform01(rng);
    while (u1 <= 0.0) u1 = uniform01(rng);
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Lanm make_lanm(const BinaryAdjacency& dag, double sigma2, Rng& rng) {
    if (!(sigma2 > 0.0)) throw InvalidArgument("noise variance must be positive");
    if (!is_acyclic(dag)) throw NotADag();
    Lanm lanm{dag, LinearWeights::Zero(dag.d(), dag.d()), sigma2};
    for (const auto& [i, j] : dag.edges()) {
        const double magnitude = 0.5 + 1.5 * uniform01(rng);
        const bool negative = uniform01(rng) < 0.5;
        lanm.weights(i, j) = negative ? -magnitude : magnitude;
    }
    return lanm;
}

Dataset simulate(const Lanm& lanm, int n, Rng& rng) {
    if (n < 1) throw InvalidArgument("need at least one data point");
    const int d = lanm.dag.d();
    const NodeOrder order = topological_order(lanm.dag);
    const double sigma = std::sqrt(lanm.sigma2);
    Dataset data;
    data.x = Matrix::Zero(n, d);
    for (int r = 0; r < n; ++r)
        for (int j : order) {
            double value = sigma * standard_normal(rng);
            for (int i = 0; i < d; ++i)
                if (lanm.dag(i, j)) value += lanm.weights(i, j) * data.x(r, i);
            data.x(r, j) = value;
        }
    return data;
}

void center_columns(Matrix& x) {
    if (x.rows() == 0) return;
    const Eigen::RowVectorXd mean = x.colwise().mean();
    x.rowwise() -= mean;
}

namespace {

std::vector<std::string> split_fields(const std::string& line, char delim) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, delim)) out.push_back(field);
    if (!line.empty() && line.back() == delim) out.emplace_back();
    return out;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\"");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\"");
    return s.substr(b, e - b + 1);
}

}  // namespace

Dataset load_csv(const std::string& path, bool has_header, bool center) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidArgument("cannot read " + path);

    Dataset data;
    std::vector<std::vector<double>> rows;
    std::string line;
    int line_no = 0;
    char delim = 0;
    std::size_t width = 0;
    bool header_pending = has_header;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        if (delim == 0) delim = line.find(',') != std::string::npos ? ',' : (line.find('\t') != std::string::npos ? '\t' : ',');
        auto fields = split_fields(line, delim);
        if (header_pending) {
            header_pending = false;
            for (auto& f : fields) data.columns.push_back(trim(f));
            width = fields.size();
            continue;
        }
        if (width == 0) width = fields.size();
        if (fields.size() != width)
            throw InvalidArgument(path + ": row " + std::to_string(line_no) + " has " + std::to_string(fields.size()) +
                                  " fields, expected " + std::to_string(width));
        std::vector<double> values(width);
        for (std::size_t c = 0; c < width; ++c) {
            const std::string cell = trim(fields[c]);
            const char* first = cell.data();
            const char* last = cell.data() + cell.size();
            auto [ptr, ec] = std::from_chars(first, last, values[c]);
            if (cell.empty() || ec != std::errc() || ptr != last || !std::isfinite(values[c]))
                throw InvalidArgument(path + ": row " + std::to_string(line_no) + ", column " + std::to_string(c + 1) +
                                      ": not a finite number: '" + cell + "'");
        }
        rows.push_back(std::move(values));
    }
    if (rows.empty()) throw InvalidArgument(path + ": no data rows");

    data.x.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(width));
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < width; ++c) data.x(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
    if (center) center_columns(data.x);
    return data;
}

void save_csv(const std::string& path, const Matrix& x, const std::vector<std::string>& header) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidArgument("cannot write " + path);
    if (!header.empty()) {
        for (std::size_t c = 0; c < header.size(); ++c) out << (c ? "," : "") << header[c];
        out << '\n';
    }
    char buf[64];
    for (Eigen::Index r = 0; r < x.rows(); ++r) {
        for (Eigen::Index c = 0; c < x.cols(); ++c) {
            auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x(r, c));
            if (c) out << ',';
            out.write(buf, ptr - buf);
        }
        out << '\n';
    }
}

}  // namespace dagdb
