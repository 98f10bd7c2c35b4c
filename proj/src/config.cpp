// fadecs - sparse signal recovery over fading multiple-access channels
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fadecs/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fadecs::config {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(trim(item));
    return out;
}

}  // namespace

KeyValueFile KeyValueFile::parse_string(const std::string& text) {
    KeyValueFile kv;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            std::ostringstream msg;
            msg << "config: line " << lineno << " is not of the form key = value: '" << line << "'";
            throw std::invalid_argument(msg.str());
        }
        kv.entries_[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

KeyValueFile KeyValueFile::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_string(buffer.str());
}

bool KeyValueFile::has(const std::string& key) const { return entries_.count(key) > 0; }

std::string KeyValueFile::get_string(const std::string& key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) throw std::invalid_argument("config: missing key '" + key + "'");
    return it->second;
}

std::string KeyValueFile::get_string(const std::string& key,
                                     const std::string& fallback) const {
    const auto it = entries_.find(key);
    return it == entries_.end() ? fallback : it->second;
}

double KeyValueFile::get_double(const std::string& key) const {
    const std::string v = get_string(key);
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size())
        throw std::invalid_argument("config: key '" + key + "' is not a number: " + v);
    return x;
}

double KeyValueFile::get_double(const std::string& key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
}

int KeyValueFile::get_int(const std::string& key) const {
    const std::string v = get_string(key);
    std::size_t pos = 0;
    const long x = std::stol(v, &pos);
    if (pos != v.size())
        throw std::invalid_argument("config: key '" + key + "' is not an integer: " + v);
    return static_cast<int>(x);
}

int KeyValueFile::get_int(const std::string& key, int fallback) const {
    return has(key) ? get_int(key) : fallback;
}

std::uint64_t KeyValueFile::get_u64(const std::string& key, std::uint64_t fallback) const {
    if (!has(key)) return fallback;
    return std::stoull(get_string(key));
}

std::vector<double> KeyValueFile::get_doubles(const std::string& key) const {
    std::vector<double> out;
    for (const auto& tok : split(get_string(key), ','))
        if (!tok.empty()) out.push_back(std::stod(tok));
    if (out.empty()) throw std::invalid_argument("config: key '" + key + "' has no values");
    return out;
}

std::vector<int> KeyValueFile::get_ints(const std::string& key) const {
    std::vector<int> out;
    for (const auto& tok : split(get_string(key), ','))
        if (!tok.empty()) out.push_back(static_cast<int>(std::stol(tok)));
    if (out.empty()) throw std::invalid_argument("config: key '" + key + "' has no values");
    return out;
}

void KeyValueFile::set(const std::string& key, const std::string& value) {
    entries_[key] = value;
}

namespace {

Eigen::VectorXd node_vector(const KeyValueFile& kv, const std::string& key, int n,
                            double fallback) {
    if (!kv.has(key)) return Eigen::VectorXd::Constant(n, fallback);
    const auto vals = kv.get_doubles(key);
    if (vals.size() == 1) return Eigen::VectorXd::Constant(n, vals[0]);
    if (static_cast<int>(vals.size()) != n)
        throw std::invalid_argument("config: key '" + key + "' must have 1 or n entries");
    return Eigen::Map<const Eigen::VectorXd>(vals.data(), n);
}

}  // namespace

model::NetworkConfig network_from(const KeyValueFile& kv) {
    model::NetworkConfig cfg;
    cfg.n = kv.get_int("n");
    cfg.m = kv.get_int("m");
    cfg.gamma = node_vector(kv, "gamma", cfg.n, 1.0);
    cfg.sigma = node_vector(kv, "sigma", cfg.n, 1.0);
    cfg.nu = node_vector(kv, "nu", cfg.n, 1.0);
    cfg.sigma_v2 = kv.get_double("sigma_v2", 0.0);
    if (kv.has("energy_cap")) cfg.energy_cap = kv.get_double("energy_cap");
    if (kv.has("total_energy")) cfg.total_energy = kv.get_double("total_energy");
    cfg.validate();
    return cfg;
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& m) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) out << ',';
            out << format_double(m(i, j));
        }
        out << '\n';
    }
}

void write_vector_csv(const std::string& path, const Eigen::VectorXd& v) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    for (Eigen::Index i = 0; i < v.size(); ++i) out << format_double(v[i]) << '\n';
}

Eigen::MatrixXd read_matrix_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        std::vector<double> row;
        for (const auto& tok : split(line, ','))
            if (!tok.empty()) row.push_back(std::stod(tok));
        if (!rows.empty() && row.size() != rows.front().size())
            throw std::runtime_error("csv: ragged rows in " + path);
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::runtime_error("csv: empty file " + path);
    Eigen::MatrixXd m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows.front().size(); ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    return m;
}

Eigen::VectorXd read_vector_csv(const std::string& path) {
    const Eigen::MatrixXd m = read_matrix_csv(path);
    if (m.cols() == 1) return m.col(0);
    if (m.rows() == 1) return m.row(0).transpose();
    throw std::runtime_error("csv: expected a single row or column in " + path);
}

}  // namespace fadecs::config
