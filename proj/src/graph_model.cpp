#include "sll/graph_model.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <set>
#include <sstream>
#include <utility>

namespace sll {

SignedDigraph::SignedDigraph(int n, std::vector<Edge> edges, const std::vector<std::size_t>& lines)
    : n_(n), edges_(std::move(edges)) {
  if (n_ < 2) throw Error(ErrorKind::BadIndex, "graph needs at least 2 nodes, got " + std::to_string(n_));
  std::set<std::pair<int, int>> seen;
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    const Edge& e = edges_[k];
    const std::size_t line = k < lines.size() ? lines[k] : 0;
    if (e.src < 0 || e.src >= n_ || e.dst < 0 || e.dst >= n_) {
      throw Error(ErrorKind::BadIndex,
                  "edge " + std::to_string(e.src) + " -> " + std::to_string(e.dst) +
                      " outside [0, " + std::to_string(n_) + ")",
                  line);
    }
    if (e.src == e.dst) throw Error(ErrorKind::SelfLoop, "self-loop at node " + std::to_string(e.src), line);
    if (e.weight == 0.0 || !std::isfinite(e.weight)) {
      throw Error(ErrorKind::ZeroWeight, "weight must be finite and nonzero", line);
    }
    if (!seen.emplace(e.src, e.dst).second) {
      throw Error(ErrorKind::DuplicateEdge,
                  "duplicate edge " + std::to_string(e.src) + " -> " + std::to_string(e.dst), line);
    }
  }
}

Matrix SignedDigraph::adjacency() const {
  Matrix a = Matrix::Zero(n_, n_);
  for (const Edge& e : edges_) a(e.dst, e.src) = e.weight;
  return a;
}

std::vector<Edge> SignedDigraph::sorted_edges() const {
  auto out = edges_;
  std::sort(out.begin(), out.end(), [](const Edge& x, const Edge& y) {
    return std::tie(x.src, x.dst) < std::tie(y.src, y.dst);
  });
  return out;
}

// ---------------------------------------------------------------------------

namespace {

Matrix laplacian_from_adjacency(const Matrix& a) {
  Matrix l = -a;
  l.diagonal() = a.rowwise().sum();
  return l;
}

StructuralFlags compute_flags(const Matrix& l, const Tolerances& tol) {
  StructuralFlags f;
  f.weight_balanced = is_weight_balanced(l, tol.zero);
  f.normal = is_normal(l, tol.normal);
  f.ep = is_ep(l, tol.zero);
  f.strongly_connected = is_strongly_connected(l);
  return f;
}

}  // namespace

LaplacianMatrix::LaplacianMatrix(const SignedDigraph& g, const Tolerances& tol)
    : LaplacianMatrix(laplacian_from_adjacency(g.adjacency()), tol) {}

LaplacianMatrix::LaplacianMatrix(Matrix m, const Tolerances& tol)
    : entries_(std::move(m)), flags_(compute_flags(entries_, tol)) {}

LaplacianMatrix LaplacianMatrix::from_matrix(const Matrix& m, const Tolerances& tol) {
  require_square(m, "laplacian");
  if (m.rows() < 2) throw Error(ErrorKind::BadIndex, "laplacian needs at least 2 nodes");
  if (!m.allFinite()) throw Error(ErrorKind::MalformedLine, "laplacian has non-finite entries");
  const double bound = scaled(tol.zero, m);
  const double worst = m.rowwise().sum().cwiseAbs().maxCoeff();
  if (worst > bound) {
    throw Error(ErrorKind::PreconditionViolated,
                "matrix is not a Laplacian: max |row sum| = " + std::to_string(worst));
  }
  return LaplacianMatrix(m, tol);
}

LaplacianMatrix laplacian(const SignedDigraph& g, const Tolerances& tol) {
  return LaplacianMatrix(g, tol);
}

SignedDigraph graph_of(const Matrix& l, double drop_below) {
  require_square(l, "graph_of");
  std::vector<Edge> edges;
  for (int i = 0; i < l.rows(); ++i) {
    for (int j = 0; j < l.cols(); ++j) {
      if (i == j) continue;
      const double w = -l(i, j);
      if (w != 0.0 && std::abs(w) > drop_below) edges.push_back({j, i, w});
    }
  }
  return SignedDigraph(static_cast<int>(l.rows()), std::move(edges));
}

NodePartition::NodePartition(int n, std::vector<int> alpha) : n_(n), alpha_(std::move(alpha)) {
  std::sort(alpha_.begin(), alpha_.end());
  if (std::adjacent_find(alpha_.begin(), alpha_.end()) != alpha_.end()) {
    throw Error(ErrorKind::DegeneratePartition, "boundary set has repeated nodes");
  }
  for (int a : alpha_) {
    if (a < 0 || a >= n_) throw Error(ErrorKind::BadIndex, "boundary node " + std::to_string(a) + " out of range");
  }
  for (int i = 0; i < n_; ++i) {
    if (!std::binary_search(alpha_.begin(), alpha_.end(), i)) beta_.push_back(i);
  }
  if (alpha_.size() < 2 || beta_.empty()) {
    throw Error(ErrorKind::DegeneratePartition,
                "need |alpha| >= 2 and |beta| >= 1, got |alpha| = " + std::to_string(alpha_.size()) +
                    ", |beta| = " + std::to_string(beta_.size()));
  }
}

// ---------------------------------------------------------------------------
// Predicates

bool is_weight_balanced(const Matrix& l, double tol) {
  require_square(l, "is_weight_balanced");
  Matrix a = -l;
  a.diagonal().setZero();
  const double scale = std::max(1.0, a.cwiseAbs().rowwise().sum().maxCoeff());
  const double in_out = (a.rowwise().sum() - a.colwise().sum().transpose()).cwiseAbs().maxCoeff();
  const double col_sums = l.colwise().sum().cwiseAbs().maxCoeff();
  return in_out <= tol * scale && col_sums <= tol * scale;
}

namespace {

// Iterative Tarjan; returns the number of strongly connected components.
int count_scc(int n, const std::vector<std::vector<int>>& adj) {
  std::vector<int> index(n, -1), low(n, 0), stack;
  std::vector<bool> on_stack(n, false);
  std::vector<std::pair<int, std::size_t>> call;
  int next = 0, components = 0;
  for (int root = 0; root < n; ++root) {
    if (index[root] >= 0) continue;
    call.push_back({root, 0});
    index[root] = low[root] = next++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      auto& [v, pos] = call.back();
      if (pos < adj[v].size()) {
        const int w = adj[v][pos++];
        if (index[w] < 0) {
          index[w] = low[w] = next++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
        } while (w != v);
        ++components;
      }
      const int done = v;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
    }
  }
  return components;
}

}  // namespace

bool is_strongly_connected(const SignedDigraph& g) {
  std::vector<std::vector<int>> adj(g.size());
  for (const Edge& e : g.edges()) adj[e.src].push_back(e.dst);
  return count_scc(g.size(), adj) == 1;
}

bool is_strongly_connected(const Matrix& l) {
  require_square(l, "is_strongly_connected");
  const int n = static_cast<int>(l.rows());
  std::vector<std::vector<int>> adj(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && l(i, j) != 0.0) adj[j].push_back(i);
  return count_scc(n, adj) == 1;
}

Matrix symmetric_part(const Matrix& m) {
  require_square(m, "symmetric_part");
  Matrix s = 0.5 * (m + m.transpose());
  // exact symmetry in the output representation
  for (int i = 0; i < s.rows(); ++i)
    for (int j = i + 1; j < s.cols(); ++j) s(j, i) = s(i, j);
  return s;
}

bool is_normal(const Matrix& m, double tol) {
  require_square(m, "is_normal");
  const Matrix commutator = m * m.transpose() - m.transpose() * m;
  return commutator.norm() <= tol * std::max(1.0, m.squaredNorm());
}

bool is_ep(const Matrix& m, double tol) {
  require_square(m, "is_ep");
  const Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vector& s = svd.singularValues();
  const double cut = tol * std::max(s.size() > 0 ? s(0) : 0.0, 1e-300);
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) > cut) ++rank;
  const Eigen::Index k = m.rows() - rank;
  if (k == 0) return true;
  // ker M = trailing right singular vectors, ker M^T = trailing left ones.
  const Matrix ker = svd.matrixV().rightCols(k);
  const Matrix ker_t = svd.matrixU().rightCols(k);
  const Matrix residual = ker_t - ker * (ker.transpose() * ker_t);
  const double sine = Eigen::JacobiSVD<Matrix>(residual).singularValues()(0);
  return sine <= std::max(tol, 64 * std::numeric_limits<double>::epsilon());
}

bool is_nonnegative_graph(const Matrix& l) {
  for (int i = 0; i < l.rows(); ++i)
    for (int j = 0; j < l.cols(); ++j)
      if (i != j && l(i, j) > 0.0) return false;
  return true;
}

bool is_symmetric(const Matrix& m, double tol) {
  return m.rows() == m.cols() && (m - m.transpose()).cwiseAbs().maxCoeff() <= tol;
}

// ---------------------------------------------------------------------------
// Formats

namespace {

std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0, pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto tok = tokens(line);
    if (!tok.empty()) fn(line_no, tok);
    if (end == text.size()) break;
    pos = end + 1;
  }
}

bool parse_int(std::string_view s, long long& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

bool parse_double(std::string_view s, double& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace

SignedDigraph parse_graph(std::string_view text) {
  long long declared = -1;
  bool first = true;
  std::vector<Edge> edges;
  std::vector<std::size_t> lines;
  long long max_index = -1;
  for_each_line(text, [&](std::size_t line, const std::vector<std::string_view>& tok) {
    if (first && tok[0] == "n") {
      first = false;
      if (tok.size() != 2 || !parse_int(tok[1], declared) || declared < 2) {
        throw Error(ErrorKind::MalformedLine, "expected 'n <count>' with count >= 2", line);
      }
      return;
    }
    first = false;
    if (tok.size() != 3) throw Error(ErrorKind::MalformedLine, "expected 'src dst weight'", line);
    long long u = 0, v = 0;
    double w = 0.0;
    if (!parse_int(tok[0], u) || !parse_int(tok[1], v)) {
      throw Error(ErrorKind::MalformedLine, "node indices must be integers", line);
    }
    if (!parse_double(tok[2], w)) throw Error(ErrorKind::MalformedLine, "weight is not a number", line);
    if (u < 0 || v < 0 || (declared > 0 && (u >= declared || v >= declared)) || u > 1'000'000 ||
        v > 1'000'000) {
      throw Error(ErrorKind::BadIndex, "node index out of range", line);
    }
    if (u == v) throw Error(ErrorKind::SelfLoop, "self-loop at node " + std::to_string(u), line);
    if (w == 0.0) throw Error(ErrorKind::ZeroWeight, "zero weight", line);
    max_index = std::max({max_index, u, v});
    edges.push_back({static_cast<int>(u), static_cast<int>(v), w});
    lines.push_back(line);
  });
  if (declared < 0 && edges.empty()) throw Error(ErrorKind::MalformedLine, "empty graph document");
  const long long n = declared > 0 ? declared : max_index + 1;
  return SignedDigraph(static_cast<int>(n), std::move(edges), lines);
}

std::string serialize_graph(const SignedDigraph& g) {
  std::ostringstream os;
  os << "n " << g.size() << '\n';
  for (const Edge& e : g.edges()) os << e.src << ' ' << e.dst << ' ' << format_double(e.weight) << '\n';
  return os.str();
}

SignedDigraph parse_graph_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::MalformedLine, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc["n"].is_number_integer() || !doc.contains("edges") ||
      !doc["edges"].is_array()) {
    throw Error(ErrorKind::MalformedLine, "expected {\"n\": int, \"edges\": [[src,dst,weight],...]}");
  }
  std::vector<Edge> edges;
  std::vector<std::size_t> positions;
  std::size_t k = 0;
  for (const auto& item : doc["edges"]) {
    ++k;
    if (!item.is_array() || item.size() != 3 || !item[0].is_number_integer() ||
        !item[1].is_number_integer() || !item[2].is_number()) {
      throw Error(ErrorKind::MalformedLine, "edge " + std::to_string(k) + " is not [src,dst,weight]");
    }
    edges.push_back({item[0].get<int>(), item[1].get<int>(), item[2].get<double>()});
    positions.push_back(k);
  }
  return SignedDigraph(doc["n"].get<int>(), std::move(edges), positions);
}

std::string serialize_graph_json(const SignedDigraph& g) {
  nlohmann::json doc;
  doc["n"] = g.size();
  doc["edges"] = nlohmann::json::array();
  for (const Edge& e : g.edges()) doc["edges"].push_back({e.src, e.dst, e.weight});
  return doc.dump();
}

Matrix parse_matrix(std::string_view text) {
  std::vector<std::vector<double>> rows;
  for_each_line(text, [&](std::size_t line, const std::vector<std::string_view>& tok) {
    std::vector<double> row;
    for (auto t : tok) {
      double v = 0.0;
      if (!parse_double(t, v) || !std::isfinite(v)) {
        throw Error(ErrorKind::MalformedLine, "matrix entry is not a finite number", line);
      }
      row.push_back(v);
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw Error(ErrorKind::MalformedLine, "ragged matrix row", line);
    }
    rows.push_back(std::move(row));
  });
  if (rows.empty()) throw Error(ErrorKind::MalformedLine, "empty matrix document");
  Matrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

std::string serialize_matrix(const Matrix& m) {
  std::ostringstream os;
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) os << (j ? " " : "") << format_double(m(i, j));
    os << '\n';
  }
  return os.str();
}

}  // namespace sll
