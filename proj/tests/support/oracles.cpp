// Copyright 2026 The vsel Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "oracles.hpp"

#include "vsel/frontend/dataflow.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace vsel::oracle {

tensor::Matrix naive_matmul(const tensor::Matrix& a, const tensor::Matrix& b) {
  tensor::Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  return c;
}

tensor::Matrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, double lo, double hi) {
  tensor::Matrix m(rows, cols);
  for (double& v : m.values()) v = rng.uniform(lo, hi);
  return m;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::set<DefUseTriple> brute_force_reaching(const frontend::Ast& ast,
                                            const frontend::ControlEdges& icfg,
                                            std::size_t path_budget) {
  using frontend::NodeId;
  std::map<NodeId, std::vector<NodeId>> succ;
  for (const auto& e : icfg.edges) succ[e.src].push_back(e.dst);
  std::map<NodeId, frontend::DefUseFacts> facts;
  for (NodeId n = 0; n < ast.size(); ++n) {
    if (frontend::is_flow_node(ast, n)) facts[n] = frontend::collect_def_use(ast, n);
  }
  auto kills = [&](NodeId n, NodeId var) {
    for (const auto& d : facts[n].defs)
      if (d.variable == var && d.strong) return true;
    return false;
  };

  std::set<DefUseTriple> out;
  std::size_t steps = 0;
  for (const auto& [def_node, f] : facts) {
    for (const auto& d : f.defs) {
      const NodeId var = d.variable;
      std::vector<char> on_path(ast.size(), 0);
      on_path[def_node] = 1;
      std::function<void(NodeId)> walk = [&](NodeId cur) {
        for (NodeId s : succ[cur]) {
          if (++steps > path_budget) throw std::runtime_error("path budget exhausted");
          for (const auto& u : facts[s].uses)
            if (u.variable == var) out.emplace(def_node, u.use, var);
          if (on_path[s] || kills(s, var)) continue;
          on_path[s] = 1;
          walk(s);
          on_path[s] = 0;
        }
      };
      walk(def_node);
    }
  }
  return out;
}

tensor::Matrix naive_gat(const tensor::Matrix& h,
                         const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges,
                         const tensor::Matrix& w_in, const tensor::Matrix& w_out,
                         const tensor::Matrix& attn, double slope) {
  const std::size_t n = h.rows(), d = w_out.rows(), k = h.cols();
  auto transform = [&](const tensor::Matrix& w, std::size_t node) {
    std::vector<double> out(d, 0.0);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < k; ++c) out[r] += w(r, c) * h(node, c);
    return out;
  };
  tensor::Matrix out(n, d);
  for (std::size_t i = 0; i < n; ++i) {
    const auto wi = transform(w_in, i);
    std::vector<double> e;
    std::vector<std::vector<double>> msgs;
    for (const auto& [src, dst] : edges) {
      if (dst != i) continue;
      const auto wj = transform(w_out, src);
      double s = 0.0;
      for (std::size_t r = 0; r < d; ++r) s += attn[r] * wi[r] + attn[d + r] * wj[r];
      e.push_back(s > 0 ? s : slope * s);
      msgs.push_back(wj);
    }
    double z = 0.0;
    for (double v : e) z += std::exp(v);
    for (std::size_t m = 0; m < e.size(); ++m)
      for (std::size_t r = 0; r < d; ++r) out(i, r) += std::exp(e[m]) / z * msgs[m][r];
  }
  return out;
}

double brute_margin_loss(const std::vector<double>& scores, const std::vector<double>& labels,
                         double margin) {
  double total = 0.0;
  int count = 0;
  for (std::size_t a = 0; a < scores.size(); ++a)
    for (std::size_t b = 0; b < scores.size(); ++b)
      if (labels[a] > labels[b]) {
        total += std::max(0.0, margin - (scores[a] - scores[b]));
        ++count;
      }
  return count ? total / count : 0.0;
}

std::vector<double> counting_ranks(const std::vector<double>& x) {
  std::vector<double> r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    double less = 0, equal = 0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (x[j] < x[i]) less += 1;
      if (j != i && x[j] == x[i]) equal += 1;
    }
    r[i] = 1 + less + equal / 2;
  }
  return r;
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i] / n;
    my += y[i] / n;
  }
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

double mean_static_spearman(const std::vector<std::size_t>& ordering,
                            const std::vector<std::vector<double>>& labels) {
  std::vector<double> predicted(ordering.size());
  for (std::size_t p = 0; p < ordering.size(); ++p) predicted[ordering[p]] = -static_cast<double>(p);
  const auto pr = counting_ranks(predicted);
  double total = 0;
  for (const auto& l : labels) total += pearson(counting_ranks(l), pr);
  return total / static_cast<double>(labels.size());
}

}  // namespace vsel::oracle
