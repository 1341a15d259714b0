#include "asyncnoma/dof.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "asyncnoma/csv.hpp"
#include "asyncnoma/errors.hpp"
#include "quadrature.hpp"

namespace anoma {
namespace {

double sinc(double x) {
  if (std::abs(x) < 1e-15) return 1.0;
  const double a = std::numbers::pi * x;
  return std::sin(a) / a;
}

// Functions sampled on a shared node set; <f, g> = sum_j w_j f_j g_j.
struct SampledSpace {
  std::vector<double> nodes;
  Eigen::VectorXd weights;
  // Point tested for window membership: the node itself on the sampled grid,
  // the segment midpoint under Simpson (edge nodes appear once per segment).
  std::vector<double> probe;

  double inner(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const {
    return (weights.array() * a.array() * b.array()).sum();
  }
};

SampledSpace make_space(const TruncatedBasisSet& basis, const std::vector<double>& centers) {
  const double T = basis.symbol_interval();
  const double h = basis.step * T;
  const double half = basis.resolved_window() / 2.0;
  double lo = INFINITY, hi = -INFINITY;
  for (const double c : centers) {
    lo = std::min(lo, c - half);
    hi = std::max(hi, c + half);
  }
  SampledSpace s;
  if (basis.rule == InnerProductRule::SampledSum) {
    const auto j0 = static_cast<long>(std::floor(lo / h + 1e-9));
    const auto j1 = static_cast<long>(std::ceil(hi / h - 1e-9));
    for (long j = j0; j <= j1; ++j) s.nodes.push_back(static_cast<double>(j) * h);
    s.probe = s.nodes;
    s.weights = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(s.nodes.size()), h);
    return s;
  }
  std::vector<double> edges;
  for (const double c : centers) {
    edges.push_back(c - half);
    edges.push_back(c + half);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end(),
                          [&](double a, double b) { return std::abs(a - b) <= 1e-12 * (1.0 + std::abs(b)); }),
              edges.end());
  std::vector<double> w;
  for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
    const double a = edges[e], b = edges[e + 1];
    const auto n = static_cast<std::size_t>(std::max(2.0, std::ceil((b - a) / h - 1e-9)));
    const double hs = (b - a) / static_cast<double>(n);
    const double mid = 0.5 * (a + b);
    for (std::size_t i = 0; i <= n; ++i) {
      s.nodes.push_back(a + static_cast<double>(i) * hs);
      s.probe.push_back(mid);
      w.push_back(detail::simpson_weight(i, n, hs));
    }
  }
  s.weights = Eigen::Map<Eigen::VectorXd>(w.data(), static_cast<Eigen::Index>(w.size()));
  return s;
}

Eigen::VectorXd sample(const SampledSpace& s, double W, double center, double half, InnerProductRule rule) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(s.nodes.size()));
  const double amp = std::sqrt(2.0 * W);
  for (std::size_t j = 0; j < s.nodes.size(); ++j) {
    const double d = std::abs(s.probe[j] - center);
    // Grid nodes count the window endpoints as inside; segment midpoints lie
    // strictly inside or outside every window.
    const bool on = rule == InnerProductRule::SampledSum ? d <= half * (1.0 + 1e-12) : d < half;
    v[static_cast<Eigen::Index>(j)] = on ? amp * sinc(2.0 * W * (s.nodes[j] - center)) : 0.0;
  }
  return v;
}

std::vector<Eigen::VectorXd> sample_all(const TruncatedBasisSet& basis, const SampledSpace& s,
                                        const std::vector<double>& centers) {
  std::vector<Eigen::VectorXd> out;
  const double half = basis.resolved_window() / 2.0;
  for (const double c : centers) out.push_back(sample(s, basis.bandwidth, c, half, basis.rule));
  return out;
}

}  // namespace

double TruncatedBasisSet::resolved_window() const {
  return window_length > 0.0 ? window_length : static_cast<double>(block_length) * symbol_interval();
}

std::vector<double> TruncatedBasisSet::resolved_centers() const {
  if (!centers.empty()) return centers;
  std::vector<double> out(block_length);
  for (std::size_t n = 0; n < block_length; ++n) out[n] = static_cast<double>(n) * symbol_interval();
  return out;
}

void TruncatedBasisSet::validate() const {
  if (!(bandwidth > 0.0) || !std::isfinite(bandwidth)) throw ParameterError("bandwidth must be positive");
  if (block_length < 1) throw ParameterError("block length must be positive");
  if (!(window_length >= 0.0)) throw ParameterError("window length must be non-negative");
  if (!(step > 0.0 && step <= 0.5)) throw ParameterError("quadrature step must lie in (0, 0.5] T");
  for (const double c : centers) {
    if (!std::isfinite(c)) throw ParameterError("centers must be finite");
  }
}

Eigen::MatrixXd gram_matrix(const TruncatedBasisSet& basis) {
  basis.validate();
  const auto centers = basis.resolved_centers();
  const SampledSpace s = make_space(basis, centers);
  return gram_matrix(sample_all(basis, s, centers),
                     [&](const Eigen::VectorXd& a, const Eigen::VectorXd& b) { return s.inner(a, b); });
}

BasisExtension extend_basis(const TruncatedBasisSet& basis, double extra_shift) {
  basis.validate();
  if (!std::isfinite(extra_shift)) throw ParameterError("extra shift must be finite");
  BasisExtension out;
  out.centers = basis.resolved_centers();
  out.centers.push_back(extra_shift);
  const SampledSpace s = make_space(basis, out.centers);
  const auto inputs = sample_all(basis, s, out.centers);
  const InnerProduct inner = [&](const Eigen::VectorXd& a, const Eigen::VectorXd& b) { return s.inner(a, b); };
  out.gram = gram_matrix(inputs, inner);
  out.orthonormal = gram_schmidt(inputs, inner);
  out.output_gram = gram_matrix(out.orthonormal.basis, inner);

  const auto n = static_cast<Eigen::Index>(inputs.size());
  out.reconstruction_error.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    // v_i = norm_i e_i - sum_{j<i} c_ij e_j.
    Eigen::VectorXd r = out.orthonormal.norms[i] * out.orthonormal.basis[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < i; ++j) {
      r -= out.orthonormal.coefficients(i, j) * out.orthonormal.basis[static_cast<std::size_t>(j)];
    }
    r -= inputs[static_cast<std::size_t>(i)];
    out.reconstruction_error[i] = std::sqrt(std::max(0.0, s.inner(r, r)));
  }
  return out;
}

std::string to_csv(const BasisExtension& ext) {
  CsvTable t;
  const auto n = ext.gram.rows();
  std::string centers;
  for (std::size_t i = 0; i < ext.centers.size(); ++i) centers += (i ? " " : "") + format_number(ext.centers[i]);
  t.add_meta("centers", centers);
  t.header = {"kind", "row"};
  for (Eigen::Index j = 0; j < n; ++j) t.header.push_back("c" + std::to_string(j + 1));
  t.header.push_back("norm");
  for (Eigen::Index i = 0; i < n; ++i) {
    std::vector<std::string> row{"gram", std::to_string(i + 1)};
    for (Eigen::Index j = 0; j < n; ++j) row.push_back(format_number(ext.gram(i, j)));
    row.emplace_back("");
    t.rows.push_back(std::move(row));
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    std::vector<std::string> row{"coefficient", std::to_string(i + 1)};
    for (Eigen::Index j = 0; j < n; ++j) row.push_back(format_number(ext.orthonormal.coefficients(i, j)));
    row.push_back(format_number(ext.orthonormal.norms[i]));
    t.rows.push_back(std::move(row));
  }
  return write_csv(t);
}

}  // namespace anoma
