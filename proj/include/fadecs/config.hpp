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

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fadecs/model.hpp"

namespace fadecs::config {

/// Plain-text key=value configuration. Lines are `key = value`, '#' starts
/// a comment, vector values are comma separated.
class KeyValueFile {
  public:
    static KeyValueFile parse_file(const std::string& path);
    static KeyValueFile parse_string(const std::string& text);

    bool has(const std::string& key) const;
    std::string get_string(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key) const;
    int get_int(const std::string& key, int fallback) const;
    std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
    std::vector<double> get_doubles(const std::string& key) const;
    std::vector<int> get_ints(const std::string& key) const;

    void set(const std::string& key, const std::string& value);
    const std::map<std::string, std::string>& entries() const { return entries_; }

  private:
    std::map<std::string, std::string> entries_;
};

/// Builds a NetworkConfig from keys n, m, gamma, sigma, nu, sigma_v2,
/// energy_cap, total_energy. Scalar gamma/sigma/nu broadcast to all nodes;
/// comma lists must have length n.
model::NetworkConfig network_from(const KeyValueFile& kv);

/// Writes matrices/vectors as plain CSV (no header, comma separated rows).
void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& m);
void write_vector_csv(const std::string& path, const Eigen::VectorXd& v);
Eigen::MatrixXd read_matrix_csv(const std::string& path);
Eigen::VectorXd read_vector_csv(const std::string& path);

/// Fixed numeric formatting used in every emitted file so identical runs
/// produce identical bytes.
std::string format_double(double x);

}  // namespace fadecs::config
