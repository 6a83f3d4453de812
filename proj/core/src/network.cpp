#include "spinnet/network.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <thread>

#include "spinnet/error.hpp"
#include "spinnet/keyed_text.hpp"

namespace spinnet::su2rep {

namespace {

// Dense tensor whose axes are named by integer labels. A label shared by
// two tensors (or repeated inside one) is summed over on contraction.
struct LabeledTensor {
  std::vector<int> labels;
  std::vector<std::size_t> dims;
  std::vector<Complex> data;  // row-major

  std::size_t size() const {
    return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
  }
};

std::vector<std::size_t> strides_of(const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> s(dims.size(), 1);
  for (std::size_t i = dims.size(); i-- > 1;) s[i - 1] = s[i] * dims[i];
  return s;
}

// Advances a multi-index; returns false after the last one.
bool step(std::vector<std::size_t>& idx, const std::vector<std::size_t>& dims) {
  for (std::size_t i = idx.size(); i-- > 0;) {
    if (++idx[i] < dims[i]) return true;
    idx[i] = 0;
  }
  return false;
}

LabeledTensor from_intertwiner(const IntertwinerTensor& t, std::array<int, 3> labels) {
  const auto s = t.shape();
  LabeledTensor out{{labels.begin(), labels.end()}, {s[0], s[1], s[2]}, {}};
  out.data.assign(t.data().begin(), t.data().end());
  return out;
}

// T'[.., b, ..] = sum_a T[.., a, ..] * m(a, b) on axis `axis`.
template <class Matrix>
void absorb(LabeledTensor& t, std::size_t axis, const Matrix& m, int new_label) {
  const std::size_t n = t.dims[axis];
  const auto cols = static_cast<std::size_t>(m.cols());
  std::size_t outer = 1;
  std::size_t inner = 1;
  for (std::size_t i = 0; i < axis; ++i) outer *= t.dims[i];
  for (std::size_t i = axis + 1; i < t.dims.size(); ++i) inner *= t.dims[i];
  std::vector<Complex> out(outer * cols * inner, Complex(0, 0));
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t a = 0; a < n; ++a) {
      const Complex* src = &t.data[(o * n + a) * inner];
      for (std::size_t b = 0; b < cols; ++b) {
        const Complex mab = m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
        if (mab == Complex(0, 0)) continue;
        Complex* dst = &out[(o * cols + b) * inner];
        for (std::size_t i = 0; i < inner; ++i) dst[i] += src[i] * mab;
      }
    }
  }
  t.dims[axis] = cols;
  t.labels[axis] = new_label;
  t.data = std::move(out);
}

// Sums over every label that occurs twice within `t`.
void trace_repeated(LabeledTensor& t) {
  for (;;) {
    std::size_t p = 0;
    std::size_t q = 0;
    bool found = false;
    for (std::size_t i = 0; i < t.labels.size() && !found; ++i) {
      for (std::size_t j = i + 1; j < t.labels.size(); ++j) {
        if (t.labels[i] == t.labels[j]) {
          p = i;
          q = j;
          found = true;
          break;
        }
      }
    }
    if (!found) return;
    const auto strides = strides_of(t.dims);
    LabeledTensor out;
    for (std::size_t i = 0; i < t.labels.size(); ++i) {
      if (i == p || i == q) continue;
      out.labels.push_back(t.labels[i]);
      out.dims.push_back(t.dims[i]);
    }
    out.data.assign(out.size(), Complex(0, 0));
    std::vector<std::size_t> kept_strides;
    for (std::size_t i = 0; i < t.labels.size(); ++i) {
      if (i != p && i != q) kept_strides.push_back(strides[i]);
    }
    std::vector<std::size_t> idx(out.dims.size(), 0);
    std::size_t flat = 0;
    do {
      std::size_t base = 0;
      for (std::size_t i = 0; i < idx.size(); ++i) base += idx[i] * kept_strides[i];
      Complex acc(0, 0);
      for (std::size_t a = 0; a < t.dims[p]; ++a) acc += t.data[base + a * (strides[p] + strides[q])];
      out.data[flat++] = acc;
    } while (step(idx, out.dims));
    t = std::move(out);
  }
}

LabeledTensor contract(const LabeledTensor& a, const LabeledTensor& b) {
  const auto sa = strides_of(a.dims);
  const auto sb = strides_of(b.dims);
  LabeledTensor out;
  std::vector<std::size_t> out_a_stride, out_b_stride;
  std::vector<std::size_t> sum_dims, sum_a_stride, sum_b_stride;
  for (std::size_t i = 0; i < a.labels.size(); ++i) {
    auto it = std::find(b.labels.begin(), b.labels.end(), a.labels[i]);
    if (it == b.labels.end()) {
      out.labels.push_back(a.labels[i]);
      out.dims.push_back(a.dims[i]);
      out_a_stride.push_back(sa[i]);
      out_b_stride.push_back(0);
    } else {
      const auto j = static_cast<std::size_t>(it - b.labels.begin());
      if (a.dims[i] != b.dims[j]) throw NumericError("contracted dimensions differ");
      sum_dims.push_back(a.dims[i]);
      sum_a_stride.push_back(sa[i]);
      sum_b_stride.push_back(sb[j]);
    }
  }
  for (std::size_t j = 0; j < b.labels.size(); ++j) {
    if (std::find(a.labels.begin(), a.labels.end(), b.labels[j]) != a.labels.end()) continue;
    out.labels.push_back(b.labels[j]);
    out.dims.push_back(b.dims[j]);
    out_a_stride.push_back(0);
    out_b_stride.push_back(sb[j]);
  }
  out.data.assign(out.size(), Complex(0, 0));

  std::vector<std::size_t> idx(out.dims.size(), 0);
  std::vector<std::size_t> sidx(sum_dims.size(), 0);
  std::size_t flat = 0;
  do {
    std::size_t base_a = 0;
    std::size_t base_b = 0;
    for (std::size_t i = 0; i < idx.size(); ++i) {
      base_a += idx[i] * out_a_stride[i];
      base_b += idx[i] * out_b_stride[i];
    }
    Complex acc(0, 0);
    std::fill(sidx.begin(), sidx.end(), 0);
    do {
      std::size_t oa = base_a;
      std::size_t ob = base_b;
      for (std::size_t i = 0; i < sidx.size(); ++i) {
        oa += sidx[i] * sum_a_stride[i];
        ob += sidx[i] * sum_b_stride[i];
      }
      acc += a.data[oa] * b.data[ob];
    } while (step(sidx, sum_dims));
    out.data[flat++] = acc;
  } while (step(idx, out.dims));
  return out;
}

LabeledTensor contract_all(std::vector<LabeledTensor> parts, const std::vector<VertexIndex>& order) {
  LabeledTensor acc{{}, {}, {Complex(1, 0)}};
  for (VertexIndex v : order) {
    trace_repeated(parts[v]);
    acc = contract(acc, parts[v]);
  }
  return acc;
}

void check_assignment(const NetworkTensor& tensor, const EdgeAssignment& t) {
  if (t.size() != tensor.graph().edge_count()) {
    throw DomainError("edge assignment has " + std::to_string(t.size()) + " elements for " +
                      std::to_string(tensor.graph().edge_count()) + " edges");
  }
}

template <class Accumulator, class Sample>
std::vector<Accumulator> run_streams(const SamplingPlan& plan, const Accumulator& zero,
                                     const Sample& sample) {
  if (plan.samples == 0) throw DomainError("sample count must be positive");
  const unsigned workers = std::max(1u, plan.workers);
  std::vector<Accumulator> partial(workers, zero);
  auto work = [&](unsigned w) {
    std::seed_seq seq{static_cast<std::uint32_t>(plan.seed),
                      static_cast<std::uint32_t>(plan.seed >> 32), static_cast<std::uint32_t>(w)};
    Rng rng(seq);
    const std::uint64_t begin = plan.samples * w / workers;
    const std::uint64_t end = plan.samples * (w + 1) / workers;
    for (std::uint64_t i = begin; i < end; ++i) sample(rng, partial[w]);
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(work, w);
    for (auto& th : threads) th.join();
  }
  return partial;
}

}  // namespace

EdgeAssignment parse_assignment(std::string_view text, const Graph& g) {
  auto lines = keyed_by_edge(parse_keyed_lines(text), g, 4);
  EdgeAssignment out;
  out.reserve(lines.size());
  for (const auto& kl : lines) {
    const double w = parse_real(kl, 0);
    const double x = parse_real(kl, 1);
    const double y = parse_real(kl, 2);
    const double z = parse_real(kl, 3);
    const double n = std::sqrt(w * w + x * x + y * y + z * z);
    if (std::abs(n - 1) > 1e-6) {
      throw ParseError(kl.line, kl.value_column, "quaternion for '" + kl.key + "' is not unit");
    }
    out.emplace_back(w, x, y, z);
  }
  return out;
}

EdgeAssignment random_assignment(std::size_t edges, Rng& rng) {
  EdgeAssignment t;
  t.reserve(edges);
  for (std::size_t i = 0; i < edges; ++i) t.push_back(haar_sample(rng));
  return t;
}

GaugeAssignment random_gauge(std::size_t vertices, Rng& rng) { return random_assignment(vertices, rng); }

NetworkTensor::NetworkTensor(const coloring::SpinNetwork& network, Orientation orientation)
    : graph_(network.graph()), coloring_(network.coloring()), orientation_(std::move(orientation)) {
  if (orientation_.size() != graph_.edge_count()) {
    throw DomainError("orientation does not match the graph");
  }
  topology::validate(graph_, topology::Validation::closed_trivalent);

  vertices_.reserve(graph_.vertex_count());
  for (VertexIndex v = 0; v < graph_.vertex_count(); ++v) {
    const auto t = coloring::vertex_triple(graph_, coloring_, v);
    vertices_.push_back(intertwiner(t[0], t[1], t[2]));
  }

  pairings_.resize(graph_.edge_count());
  for (VertexIndex v = 0; v < graph_.vertex_count(); ++v) {
    const auto half = graph_.incident(v);
    for (std::size_t pos = 0; pos < half.size(); ++pos) {
      const auto& h = half[pos];
      auto& p = pairings_[h.edge];
      p.color = coloring_[h.edge];
      (h.slot == orientation_.head_slot(h.edge) ? p.head : p.tail) = SlotRef{v, pos};
    }
  }

  for (const auto& comp : topology::connected_components(graph_)) {
    // Breadth first from the component's smallest vertex keeps the number
    // of open labels small during contraction.
    std::vector<bool> seen(graph_.vertex_count(), false);
    std::queue<VertexIndex> pending;
    pending.push(comp.front());
    seen[comp.front()] = true;
    while (!pending.empty()) {
      const VertexIndex v = pending.front();
      pending.pop();
      order_.push_back(v);
      for (const auto& h : graph_.incident(v)) {
        const VertexIndex w = *graph_.ends(h.edge)[1 - h.slot];
        if (!seen[w]) {
          seen[w] = true;
          pending.push(w);
        }
      }
    }
  }
}

NetworkTensor network_tensor(const coloring::SpinNetwork& network, const Orientation& o) {
  return NetworkTensor(network, o);
}

Complex evaluate(const NetworkTensor& tensor, const EdgeAssignment& t) {
  check_assignment(tensor, t);
  const auto& g = tensor.graph();
  std::vector<LabeledTensor> parts;
  parts.reserve(g.vertex_count());
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    const auto half = g.incident(v);
    parts.push_back(from_intertwiner(tensor.vertex_tensors()[v],
                                     {static_cast<int>(half[0].edge), static_cast<int>(half[1].edge),
                                      static_cast<int>(half[2].edge)}));
  }
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    const auto& p = tensor.pairings()[e];
    const Eigen::MatrixXcd m = epsilon_tensor(p.color).cast<Complex>() * irrep_matrix(p.color, t[e]);
    absorb(parts[p.head.vertex], p.head.position, m, static_cast<int>(e));
  }
  const auto result = contract_all(std::move(parts), tensor.order());
  if (result.data.size() != 1) throw NumericError("network contraction left open indices");
  return result.data.front();
}

Complex evaluate(const coloring::SpinNetwork& network, const Orientation& o, const EdgeAssignment& t) {
  return evaluate(NetworkTensor(network, o), t);
}

EdgeAssignment gauge_act(const Graph& g, const Orientation& o, const GaugeAssignment& gauge,
                         const EdgeAssignment& t) {
  if (gauge.size() != g.vertex_count()) throw DomainError("gauge assignment is not total");
  if (t.size() != g.edge_count()) throw DomainError("edge assignment is not total");
  EdgeAssignment out;
  out.reserve(t.size());
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    const VertexIndex head = topology::head_vertex(g, o, e);
    const VertexIndex tail = topology::tail_vertex(g, o, e);
    out.push_back(gauge[head] * t[e] * gauge[tail].inverse());
  }
  return out;
}

std::size_t representation_dimension(const coloring::Coloring& c) {
  std::size_t d = 1;
  for (auto v : c.values()) d *= static_cast<std::size_t>(v + 1);
  return d;
}

Eigen::MatrixXcd tensor_representation(const coloring::Coloring& c, const EdgeAssignment& x) {
  if (x.size() != c.size()) throw DomainError("assignment and coloring sizes differ");
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Ones(1, 1);
  for (EdgeIndex e = 0; e < c.size(); ++e) {
    const Eigen::MatrixXcd m = irrep_matrix(c[e], x[e]);
    Eigen::MatrixXcd next(acc.rows() * m.rows(), acc.cols() * m.cols());
    for (Eigen::Index i = 0; i < acc.rows(); ++i) {
      for (Eigen::Index j = 0; j < acc.cols(); ++j) {
        next.block(i * m.rows(), j * m.cols(), m.rows(), m.cols()) = acc(i, j) * m;
      }
    }
    acc = std::move(next);
  }
  return acc;
}

Eigen::MatrixXcd network_endomorphism(const NetworkTensor& tensor) {
  const auto& g = tensor.graph();
  const int edges = static_cast<int>(g.edge_count());
  std::vector<LabeledTensor> parts;
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    const auto half = g.incident(v);
    std::array<int, 3> labels{};
    for (std::size_t pos = 0; pos < 3; ++pos) {
      const auto e = half[pos].edge;
      const bool head = half[pos].slot == tensor.orientation().head_slot(e);
      // Head slots become the row index a_e after eps, tail slots the column
      // index b_e.
      labels[pos] = static_cast<int>(e) + (head ? 0 : edges);
    }
    parts.push_back(from_intertwiner(tensor.vertex_tensors()[v], labels));
  }
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    const auto& p = tensor.pairings()[e];
    absorb(parts[p.head.vertex], p.head.position, epsilon_tensor(p.color), static_cast<int>(e));
  }
  const auto k = contract_all(std::move(parts), tensor.order());

  // K[a, b] with f = sum K[a,b] prod rho_e[a_e, b_e]; B = K^T.
  const std::size_t dim = representation_dimension(tensor.coloring());
  Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  const auto strides = strides_of(k.dims);
  std::vector<std::size_t> stride_of_label(static_cast<std::size_t>(2 * edges), 0);
  for (std::size_t i = 0; i < k.labels.size(); ++i) stride_of_label[static_cast<std::size_t>(k.labels[i])] = strides[i];
  std::vector<std::size_t> dims(static_cast<std::size_t>(edges));
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) dims[e] = static_cast<std::size_t>(tensor.coloring()[e] + 1);

  std::vector<std::size_t> ai(dims.size(), 0);
  std::size_t row_a = 0;
  do {
    std::vector<std::size_t> bi(dims.size(), 0);
    std::size_t col_b = 0;
    do {
      std::size_t off = 0;
      for (std::size_t e = 0; e < dims.size(); ++e) {
        off += ai[e] * stride_of_label[e] + bi[e] * stride_of_label[e + dims.size()];
      }
      b(static_cast<Eigen::Index>(col_b), static_cast<Eigen::Index>(row_a)) = k.data[off];
      ++col_b;
    } while (step(bi, dims));
    ++row_a;
  } while (step(ai, dims));
  return b;
}

CoefficientEstimate peter_weyl_coefficient(const NetworkTensor& tensor, const coloring::Coloring& probe,
                                           const SamplingPlan& plan) {
  coloring::check_total(tensor.graph(), probe);
  const auto dim = static_cast<Eigen::Index>(representation_dimension(probe));
  struct Acc {
    Eigen::MatrixXcd sum;
    Eigen::MatrixXd sum_sq;
  };
  const Acc zero{Eigen::MatrixXcd::Zero(dim, dim), Eigen::MatrixXd::Zero(dim, dim)};
  const std::size_t edges = tensor.graph().edge_count();
  auto partial = run_streams(plan, zero, [&](Rng& rng, Acc& acc) {
    const auto x = random_assignment(edges, rng);
    const Complex f = evaluate(tensor, x);
    // rho^-1 = rho^dagger for a unitary representation.
    const Eigen::MatrixXcd term = f * tensor_representation(probe, x).adjoint() / static_cast<double>(dim);
    acc.sum += term;
    acc.sum_sq += term.cwiseAbs2();
  });
  Acc total = zero;
  for (const auto& p : partial) {
    total.sum += p.sum;
    total.sum_sq += p.sum_sq;
  }
  const double n = static_cast<double>(plan.samples);
  CoefficientEstimate out{total.sum / n, 0.0};
  const Eigen::MatrixXd variance = (total.sum_sq / n - out.value.cwiseAbs2()).cwiseMax(0.0);
  out.standard_error = std::sqrt(variance.sum() / n);
  return out;
}

InnerProductEstimate state_inner_product(const NetworkTensor& first, const NetworkTensor& second,
                                         const SamplingPlan& plan) {
  const auto& g1 = first.graph();
  const auto& g2 = second.graph();
  if (g1.vertex_ids() != g2.vertex_ids() || g1.edge_specs().size() != g2.edge_specs().size() ||
      g1.renamed("") != g2.renamed("")) {
    throw DomainError("inner product needs two networks on the same graph");
  }
  struct Acc {
    Complex sum{0, 0};
    double sum_sq = 0;
  };
  const std::size_t edges = g1.edge_count();
  auto partial = run_streams(plan, Acc{}, [&](Rng& rng, Acc& acc) {
    const auto x = random_assignment(edges, rng);
    const Complex v = evaluate(first, x) * std::conj(evaluate(second, x));
    acc.sum += v;
    acc.sum_sq += std::norm(v);
  });
  Acc total;
  for (const auto& p : partial) {
    total.sum += p.sum;
    total.sum_sq += p.sum_sq;
  }
  const double n = static_cast<double>(plan.samples);
  const Complex mean = total.sum / n;
  const double variance = std::max(0.0, total.sum_sq / n - std::norm(mean));
  return {mean, std::sqrt(variance / n)};
}

InnerProductEstimate state_inner_product(const coloring::SpinNetwork& first,
                                         const coloring::SpinNetwork& second, const SamplingPlan& plan) {
  const auto o = topology::find_orientation(first.graph());
  return state_inner_product(NetworkTensor(first, o), NetworkTensor(second, o), plan);
}

}  // namespace spinnet::su2rep
