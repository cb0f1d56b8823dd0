// Copyright 2026 The qpirlab Authors
//
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

#include "qpirlab/qpir.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

#include "qpirlab/error.hpp"
#include "qpirlab/quantum_info.hpp"
#include "qpirlab/random.hpp"
#include "qpirlab/serialization.hpp"

namespace qpirlab {

namespace {

constexpr std::size_t kMaxDatabaseBits = 20;

using Index = Eigen::Index;

Index idx(std::size_t k) { return static_cast<Index>(k); }

Matrix zeros(std::size_t rows, std::size_t cols) { return Matrix::Zero(idx(rows), idx(cols)); }

// |k> -> |k>|k>
Matrix copy_matrix(std::size_t d) {
  Matrix v = zeros(d * d, d);
  for (std::size_t k = 0; k < d; ++k) v(idx(k * d + k), idx(k)) = 1.0;
  return v;
}

std::size_t database_dim(std::size_t n) {
  if (n == 0 || n > kMaxDatabaseBits) {
    throw DomainError("database size n must lie in 1.." + std::to_string(kMaxDatabaseBits));
  }
  return std::size_t{1} << n;
}

RegisterLayout layout1(const std::string& label, std::size_t dim) { return RegisterLayout{{label, dim}}; }

std::size_t ceil_log2(std::size_t n) {
  std::size_t q = 0;
  while ((std::size_t{1} << q) < n) ++q;
  return q;
}

ProtocolSpec trivial_spec(std::size_t n, Operation client) {
  const std::size_t d = database_dim(n);
  ProtocolSpec spec;
  spec.rounds = 1;
  spec.a_memory = {layout1("db", d), layout1("db", d)};
  spec.x_messages = {layout1("msg", d)};
  spec.b_memory = {layout1("idx", n), RegisterLayout{{"idx", n}, {"msg", d}}};
  spec.a_ops.emplace_back(Isometry(spec.a_memory[0], spec.op_output(Party::A, 1), copy_matrix(d)));
  spec.b_ops.push_back(std::move(client));
  spec.validate();
  return spec;
}

// X^a Z^b on dimension d.
Matrix weyl(std::size_t d, std::size_t a, std::size_t b) {
  Matrix w = zeros(d, d);
  for (std::size_t j = 0; j < d; ++j) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(b * j % d) / static_cast<double>(d);
    w(idx((j + a) % d), idx(j)) = std::polar(1.0, angle);
  }
  return w;
}

// Block-diagonal sum_x |x><x| (x) blocks[x].
Matrix controlled(const std::vector<Matrix>& blocks) {
  const Index r = blocks.front().rows(), c = blocks.front().cols();
  const auto count = static_cast<Index>(blocks.size());
  Matrix out = Matrix::Zero(r * count, c * count);
  for (Index x = 0; x < count; ++x) out.block(x * r, x * c, r, c) = blocks[static_cast<std::size_t>(x)];
  return out;
}

DensityOperator client_marginal(const StateVector& final_state, const RegisterLayout& client) {
  return partial_trace(final_state, client.labels()).permuted(client);
}

std::uint64_t parse_uint(const std::string& key, const std::string& value) {
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw DomainError("parameter " + key + " expects a non-negative integer, got '" + value + "'");
  }
  return out;
}

double parse_real(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used == value.size()) return v;
  } catch (const std::exception&) {
  }
  throw DomainError("parameter " + key + " expects a number, got '" + value + "'");
}

Matrix nonzero_columns(const Matrix& x) {
  std::vector<Index> keep;
  for (Index c = 0; c < x.cols(); ++c) {
    if (!x.col(c).isZero(0.0)) keep.push_back(c);
  }
  if (static_cast<Index>(keep.size()) == x.cols()) return x;
  Matrix out(x.rows(), idx(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k) out.col(idx(k)) = x.col(keep[k]);
  return out;
}

// Sum of X X^dagger over client-by-rest matricizations. Tall matrices are
// kept as low-rank factors, wide ones are summed densely.
class MarginalSum {
 public:
  explicit MarginalSum(std::size_t dim) : dim_(idx(dim)), dense_(Matrix::Zero(idx(dim), idx(dim))) {}

  void add(const Matrix& full) {
    const Matrix x = nonzero_columns(full);
    if (x.cols() >= x.rows()) {
      dense_.noalias() += x * x.adjoint();
      return;
    }
    Eigen::SelfAdjointEigenSolver<Matrix> gram(x.adjoint() * x);
    const RealVector& ev = gram.eigenvalues();
    const double cutoff = 1e-15 * std::max(1.0, ev.maxCoeff());
    for (Index k = 0; k < ev.size(); ++k) {
      if (ev(k) > cutoff) factors_.push_back(x * gram.eigenvectors().col(k));
    }
  }

  const Matrix& dense() const { return dense_; }

  Matrix factor_matrix(double scale) const {
    Matrix out(dim_, idx(factors_.size()));
    for (std::size_t k = 0; k < factors_.size(); ++k) out.col(idx(k)) = factors_[k] * scale;
    return out;
  }

 private:
  Index dim_;
  Matrix dense_;
  std::vector<Vector> factors_;
};

// Helstrom measurement for two class averages with priors 1/2. Low-rank
// classes are discriminated inside the span of their supports.
HelstromResult class_helstrom(const MarginalSum& zero, const MarginalSum& one, double count,
                              const RegisterLayout& layout) {
  if (!zero.dense().isZero(0.0) || !one.dense().isZero(0.0)) {
    const double scale = 1.0 / std::sqrt(count);
    Matrix rho[2];
    const MarginalSum* sums[2] = {&zero, &one};
    for (int b = 0; b < 2; ++b) {
      const Matrix f = sums[b]->factor_matrix(scale);
      rho[b] = sums[b]->dense() / count + f * f.adjoint();
    }
    return helstrom(DensityOperator::from_trusted(layout, rho[0]), DensityOperator::from_trusted(layout, rho[1]), 0.5);
  }
  const double scale = 1.0 / std::sqrt(count);
  const Matrix y0 = zero.factor_matrix(scale), y1 = one.factor_matrix(scale);
  Matrix z(y0.rows(), y0.cols() + y1.cols());
  z << y0, y1;
  Eigen::BDCSVD<Matrix> svd(z, Eigen::ComputeThinU);
  const RealVector& sv = svd.singularValues();
  const double cutoff = 1e-12 * std::max(1.0, sv.size() > 0 ? sv(0) : 0.0);
  const Index rank = std::max<Index>(1, (sv.array() > cutoff).count());
  const Matrix q = svd.matrixU().leftCols(rank);
  const Matrix p0 = q.adjoint() * y0, p1 = q.adjoint() * y1;
  const RegisterLayout support{{"support", static_cast<std::size_t>(rank)}};
  HelstromResult h = helstrom(DensityOperator::from_trusted(support, p0 * p0.adjoint()),
                              DensityOperator::from_trusted(support, p1 * p1.adjoint()), 0.5);
  h.projector = q * h.projector * q.adjoint();
  return h;
}

}  // namespace

QpirProtocol make_qpir(ProtocolSpec spec, std::optional<std::size_t> n, std::string name) {
  spec.validate();
  const std::size_t db = spec.b_memory.front().total_dim();
  const std::size_t bits = n.value_or(db);
  if (bits != db) {
    throw DomainError("client index space has dimension " + std::to_string(db) + ", expected n = " +
                      std::to_string(bits));
  }
  if (spec.a_memory.front().total_dim() != database_dim(bits)) {
    throw DomainError("server database space has dimension " + std::to_string(spec.a_memory.front().total_dim()) +
                      ", expected 2^" + std::to_string(bits));
  }
  return {bits, std::move(spec), std::move(name)};
}

StateVector qpir_input(const QpirProtocol& qpir, std::uint64_t x, std::size_t i) {
  if (i < 1 || i > qpir.n) throw DomainError("index " + std::to_string(i) + " outside 1.." + std::to_string(qpir.n));
  if (x >= (std::uint64_t{1} << qpir.n)) throw DomainError("database value exceeds n bits");
  return StateVector::basis(local_input_layout(qpir.spec), static_cast<std::size_t>(x) * qpir.n + (i - 1));
}

StateVector superposition_input(const QpirProtocol& qpir, std::size_t i) {
  if (i < 1 || i > qpir.n) throw DomainError("index " + std::to_string(i) + " outside 1.." + std::to_string(qpir.n));
  const RegisterLayout layout = local_input_layout(qpir.spec);
  const std::size_t d = std::size_t{1} << qpir.n;
  Vector v = Vector::Zero(idx(layout.total_dim()));
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t x = 0; x < d; ++x) v(idx(x * qpir.n + (i - 1))) = amp;
  return StateVector(layout, std::move(v));
}

QpirProtocol trivial_qpir(std::size_t n) {
  const std::size_t d = database_dim(n);
  const RegisterLayout client{{"idx", n}, {"msg", d}};
  return make_qpir(trivial_spec(n, Isometry::identity(client)), n, "trivial");
}

QpirProtocol index_in_clear_qpir(std::size_t n) {
  const std::size_t d = database_dim(n);
  const std::size_t q = std::size_t{1} << ceil_log2(n);
  ProtocolSpec spec;
  spec.rounds = 2;
  spec.a_memory = {layout1("db", d), layout1("db", d), RegisterLayout{{"db", d}, {"query", q}}};
  spec.x_messages = {layout1("ping", 1), layout1("ans", 2)};
  spec.y_messages = {layout1("query", q)};
  spec.b_memory = {layout1("idx", n), layout1("idx", n), RegisterLayout{{"idx", n}, {"ans", 2}}};

  spec.a_ops.emplace_back(Isometry::relabel(spec.op_input(Party::A, 1), spec.op_output(Party::A, 1)));
  Matrix answer = zeros(d * q * 2, d * q);
  for (std::size_t x = 0; x < d; ++x) {
    for (std::size_t k = 0; k < q; ++k) {
      const int bit = k < n ? database_bit(x, k + 1, n) : 0;
      answer(idx((x * q + k) * 2 + static_cast<std::size_t>(bit)), idx(x * q + k)) = 1.0;
    }
  }
  spec.a_ops.emplace_back(Isometry(spec.op_input(Party::A, 2), spec.op_output(Party::A, 2), std::move(answer)));

  Matrix query = zeros(n * q, n);
  for (std::size_t i = 0; i < n; ++i) query(idx(i * q + i), idx(i)) = 1.0;
  spec.b_ops.emplace_back(Isometry(spec.op_input(Party::B, 1), spec.op_output(Party::B, 1), std::move(query)));
  spec.b_ops.emplace_back(Isometry::identity(spec.op_input(Party::B, 2)));
  return make_qpir(std::move(spec), n, "index-in-clear");
}

QpirProtocol noisy_trivial_qpir(std::size_t n, double delta) {
  if (!(delta >= 0.0 && delta <= 0.5)) throw DomainError("noisy-trivial needs delta in [0, 1/2]");
  if (n > 4) throw DomainError("noisy-trivial supports n <= 4 (depolarizing Kraus rank grows as 4^n)");
  const std::size_t d = database_dim(n);
  // Global depolarizing (1-p) rho + p I/d on the message gives delta = p/2.
  const double p = 2.0 * delta;
  const RegisterLayout client{{"idx", n}, {"msg", d}};
  const Matrix id_n = Matrix::Identity(idx(n), idx(n));
  std::vector<Matrix> kraus;
  const double dd = static_cast<double>(d);
  kraus.push_back(std::sqrt(1.0 - p + p / (dd * dd)) * kron(id_n, weyl(d, 0, 0)));
  if (p > 0.0) {
    for (std::size_t a = 0; a < d; ++a) {
      for (std::size_t b = 0; b < d; ++b) {
        if (a == 0 && b == 0) continue;
        kraus.push_back((std::sqrt(p) / dd) * kron(id_n, weyl(d, a, b)));
      }
    }
  }
  return make_qpir(trivial_spec(n, KrausChannel(client, client, std::move(kraus))), n, "noisy-trivial");
}

QpirProtocol random_qpir(std::size_t n, std::uint64_t seed) {
  const std::size_t d = database_dim(n);
  Rng rng(seed);
  ProtocolSpec spec;
  spec.rounds = 2;
  spec.a_memory = {layout1("db", d), RegisterLayout{{"db", d}, {"wa", 2}}, RegisterLayout{{"db", d}, {"wb", 2}}};
  spec.x_messages = {layout1("m1", 2), layout1("m2", 4)};
  spec.y_messages = {layout1("q", 2)};
  spec.b_memory = {layout1("idx", n), layout1("cb", 2 * n), layout1("out", 8 * n)};

  // The server never alters the database register: every step is controlled on |x>.
  std::vector<Matrix> first, second;
  for (std::size_t x = 0; x < d; ++x) first.push_back(haar_isometry_matrix(4, 1, rng));
  for (std::size_t x = 0; x < d; ++x) second.push_back(haar_isometry_matrix(8, 4, rng));
  spec.a_ops.emplace_back(Isometry(spec.op_input(Party::A, 1), spec.op_output(Party::A, 1), controlled(first)));
  spec.a_ops.emplace_back(Isometry(spec.op_input(Party::A, 2), spec.op_output(Party::A, 2), controlled(second)));
  spec.b_ops.emplace_back(
      Isometry(spec.op_input(Party::B, 1), spec.op_output(Party::B, 1), haar_isometry_matrix(4 * n, 2 * n, rng)));
  spec.b_ops.emplace_back(
      Isometry(spec.op_input(Party::B, 2), spec.op_output(Party::B, 2), haar_unitary_matrix(8 * n, rng)));
  return make_qpir(std::move(spec), n, "random");
}

QpirProtocol builtin(const std::string& name, std::size_t n, const BuiltinParams& params) {
  if (name == "trivial" || name == "trivial-qpir") return trivial_qpir(n);
  if (name == "index-in-clear" || name == "index-in-clear-qpir") return index_in_clear_qpir(n);
  if (name == "noisy-trivial" || name == "noisy-trivial-qpir") return noisy_trivial_qpir(n, params.delta);
  if (name == "random" || name == "random-qpir") return random_qpir(n, params.seed);
  throw DomainError("unknown built-in protocol '" + name + "'");
}

QpirProtocol load_qpir(const std::string& source, std::optional<std::size_t> n, const BuiltinParams& fallback) {
  static const std::string prefix = "builtin:";
  if (source.rfind(prefix, 0) != 0) return make_qpir(load_protocol_file(source), n, source);

  const std::string body = source.substr(prefix.size());
  const std::size_t qmark = body.find('?');
  const std::string name = body.substr(0, qmark);
  BuiltinParams params = fallback;
  if (qmark != std::string::npos) {
    std::string query = body.substr(qmark + 1);
    std::size_t start = 0;
    while (start <= query.size()) {
      const std::size_t amp = std::min(query.find('&', start), query.size());
      const std::string item = query.substr(start, amp - start);
      start = amp + 1;
      if (item.empty()) continue;
      const std::size_t eq = item.find('=');
      if (eq == std::string::npos) throw DomainError("malformed parameter '" + item + "' in " + source);
      const std::string key = item.substr(0, eq), value = item.substr(eq + 1);
      if (key == "n") {
        n = static_cast<std::size_t>(parse_uint(key, value));
      } else if (key == "delta") {
        params.delta = parse_real(key, value);
      } else if (key == "seed") {
        params.seed = parse_uint(key, value);
      } else {
        throw DomainError("unknown parameter '" + key + "' in " + source);
      }
    }
  }
  if (!n) throw DomainError("built-in protocol " + name + " needs n");
  return builtin(name, *n, params);
}

ProtocolSpec fully_purified(const ProtocolSpec& spec) { return purify_party(purify_party(spec, Party::A), Party::B); }

CorrectnessReport correctness_delta(const QpirProtocol& qpir, const ExecutionOptions& options) {
  const ProtocolSpec pure = fully_purified(qpir.spec);
  const RegisterLayout client = qpir.spec.b_memory.back();
  const std::size_t d = std::size_t{1} << qpir.n;
  CorrectnessReport out;
  out.client_layout = client;
  for (std::size_t i = 1; i <= qpir.n; ++i) {
    MarginalSum sum[2] = {MarginalSum(client.total_dim()), MarginalSum(client.total_dim())};
    for (std::uint64_t x = 0; x < d; ++x) {
      const StateVector final_state = execute_pure(pure, qpir_input(qpir, x, i), options).final_state();
      sum[database_bit(x, i, qpir.n)].add(matricize(final_state, client.labels()));
    }
    const HelstromResult h = class_helstrom(sum[0], sum[1], static_cast<double>(d / 2), client);
    out.per_index.push_back(std::clamp(1.0 - h.probability, 0.0, 1.0));
    out.projectors.push_back(h.projector);
  }
  out.max = *std::max_element(out.per_index.begin(), out.per_index.end());
  double total = 0.0;
  for (double v : out.per_index) total += v;
  out.mean = total / static_cast<double>(qpir.n);
  return out;
}

std::vector<DensityOperator> server_marginals(const QpirProtocol& qpir, const ExecutionOptions& options) {
  const ProtocolSpec pure = fully_purified(qpir.spec);
  const RegisterLayout server = pure.a_memory.back();
  std::vector<DensityOperator> out;
  for (std::size_t i = 1; i <= qpir.n; ++i) {
    out.push_back(client_marginal(execute_pure(pure, superposition_input(qpir, i), options).final_state(), server));
  }
  return out;
}

PrivacyReport privacy_epsilon_purified(const QpirProtocol& qpir, const PrivacyOptions& privacy,
                                       const ExecutionOptions& options) {
  const std::size_t n = qpir.n;
  std::vector<std::vector<double>> pairwise(n, std::vector<double>(n, 0.0));
  auto absorb = [&](const std::vector<DensityOperator>& states) {
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        const double dist = trace_distance(states[a], states[b]);
        pairwise[a][b] = pairwise[b][a] = std::max(pairwise[a][b], dist);
      }
    }
  };
  absorb(server_marginals(qpir, options));
  if (privacy.include_basis_inputs) {
    const ProtocolSpec pure = fully_purified(qpir.spec);
    const RegisterLayout server = pure.a_memory.back();
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
      std::vector<DensityOperator> states;
      for (std::size_t i = 1; i <= n; ++i) {
        states.push_back(client_marginal(execute_pure(pure, qpir_input(qpir, x, i), options).final_state(), server));
      }
      absorb(states);
    }
  }
  PrivacyReport out;
  out.pairwise = pairwise;
  out.epsilon_hat = 2.0;
  for (std::size_t j = 0; j < n; ++j) {
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, pairwise[i][j]);
    if (j == 0) out.epsilon_ref1 = worst;
    if (worst < out.epsilon_hat) {
      out.epsilon_hat = worst;
      out.reference_index = j + 1;
    }
  }
  for (std::size_t i = 0; i < n; ++i) out.per_index.push_back(pairwise[i][out.reference_index - 1]);
  double widest = 0.0;
  for (const auto& row : pairwise) widest = std::max(widest, *std::max_element(row.begin(), row.end()));
  out.pairwise_lower = 0.5 * widest;
  return out;
}

}  // namespace qpirlab
