#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "cmkit/errors.hpp"
#include "cmkit/majorization.hpp"

namespace cmkit {

/// Smallest 1-based k with q_{k+1} <= p_1. Requires length >= 3.
inline std::size_t find_k(const MajorizationPair& pair) {
  const std::size_t m = pair.size();
  if (m < 3) throw precondition_error("find_k: pair length must be >= 3");
  const double tol = pair.tolerance();
  const double p1 = pair.p()[0];
  for (std::size_t k = 1; k < m; ++k)
    if (pair.q()[k] <= p1 + tol) return k;
  // q_m <= p_m <= p_1 for every majorized pair, so this is unreachable.
  throw std::logic_error("find_k: no admissible k; input is not a valid pair");
}

struct ReductionResult {
  MajorizationPair star;   // length m-1
  MajorizationPair prime;  // length 2
};

/// One reduction step. star = (p_2..p_m ; q_1..q_{k-1}, q_k+q_{k+1}-p_1, q_{k+2}..q_m),
/// prime = (sorted{p_1, q*_k} ; q_k, q_{k+1}). Either output may be a
/// trivial-equal pair; any other failure of the majorization postcondition is a
/// bug and raises std::logic_error.
inline ReductionResult reduce_once(const MajorizationPair& pair, std::size_t k) {
  const std::size_t m = pair.size();
  const auto& p = pair.p();
  const auto& q = pair.q();
  const double tol = pair.tolerance();
  if (m < 3) throw precondition_error("reduce_once: pair length must be >= 3");
  if (k < 1 || k >= m) {
    std::ostringstream os;
    os << "reduce_once: k must satisfy 1 <= k <= " << m - 1 << " (got " << k << ")";
    throw precondition_error(os.str());
  }
  // 1-based q_k is q[k-1].
  if (q[k - 1] + tol < p[0]) {
    std::ostringstream os;
    os.precision(17);
    os << "reduce_once: ordering hypothesis q_k >= p_1 fails (q_" << k << " = " << q[k - 1]
       << ", p_1 = " << p[0] << ")";
    throw precondition_error(os.str());
  }
  if (q[k] > p[0] + tol) {
    std::ostringstream os;
    os.precision(17);
    os << "reduce_once: hypothesis q_{k+1} <= p_1 fails (q_" << k + 1 << " = " << q[k]
       << ", p_1 = " << p[0] << ")";
    throw precondition_error(os.str());
  }

  const double qk_star = q[k - 1] + q[k] - p[0];
  std::vector<double> ps(p.begin() + 1, p.end());
  std::vector<double> qs;
  qs.reserve(m - 1);
  for (std::size_t j = 0; j + 1 < k; ++j) qs.push_back(q[j]);
  qs.push_back(qk_star);
  for (std::size_t j = k + 1; j < m; ++j) qs.push_back(q[j]);

  try {
    auto star = MajorizationPair::strict_or_trivial(RTuple(std::move(ps)), RTuple(std::move(qs)));
    auto prime = MajorizationPair::strict_or_trivial(RTuple::sorted({p[0], qk_star}),
                                                     RTuple({q[k - 1], q[k]}));
    return {std::move(star), std::move(prime)};
  } catch (const precondition_error& e) {
    throw std::logic_error(std::string("reduce_once: postcondition failed: ") + e.what());
  }
}

/// One node of the recursive reduction of an n-pair into 2-pairs.
struct DecompositionNode {
  enum class Kind { leaf_2tuple, reduction, trivial_equal };

  explicit DecompositionNode(MajorizationPair pr) : pair(std::move(pr)) {}

  MajorizationPair pair;
  Kind kind = Kind::leaf_2tuple;
  // Populated for reductions only.
  std::size_t k_index = 0;
  double multiplier_left = 0.0;
  std::vector<double> multiplier_right;
  std::shared_ptr<const DecompositionNode> star;
  std::shared_ptr<const DecompositionNode> prime;

  const MajorizationPair& star_pair() const { return star->pair; }
  const MajorizationPair& prime_pair() const { return prime->pair; }
};

inline const char* kind_name(DecompositionNode::Kind k) {
  switch (k) {
    case DecompositionNode::Kind::leaf_2tuple: return "leaf-2tuple";
    case DecompositionNode::Kind::reduction: return "reduction";
    case DecompositionNode::Kind::trivial_equal: return "trivial-equal";
  }
  return "?";
}

/// Recursive decomposition. k is recomputed from the current pair at every
/// level; the star branch shrinks by one each step, so recursion terminates.
inline std::shared_ptr<const DecompositionNode> decompose(const MajorizationPair& pair) {
  auto node = std::make_shared<DecompositionNode>(pair);
  if (pair.trivial()) {
    node->kind = DecompositionNode::Kind::trivial_equal;
    return node;
  }
  if (pair.size() == 2) {
    node->kind = DecompositionNode::Kind::leaf_2tuple;
    return node;
  }
  const std::size_t k = find_k(pair);
  auto [star, prime] = reduce_once(pair, k);
  node->kind = DecompositionNode::Kind::reduction;
  node->k_index = k;
  node->multiplier_left = pair.p()[0];
  for (std::size_t j = 0; j < pair.size(); ++j)
    if (j + 1 != k && j + 1 != k + 1) node->multiplier_right.push_back(pair.q()[j]);
  node->star = decompose(star);
  node->prime = decompose(prime);
  return node;
}

/// Per-index evaluator Phi(index, x).
using PhiFn = std::function<double(double index, double x)>;

namespace detail {

inline double product_phi(const PhiFn& phi, const RTuple& t, double x) {
  double prod = 1.0;
  for (double v : t) prod *= phi(v, x);
  return prod;
}

}  // namespace detail

/// Delta_{p,q}(x) = prod Phi_{p_j}(x) - prod Phi_{q_j}(x).
inline double delta_pq(const PhiFn& phi, const MajorizationPair& pair, double x) {
  return detail::product_phi(phi, pair.p(), x) - detail::product_phi(phi, pair.q(), x);
}

/// Relative residual of Delta_{p,q} = Phi_{p_1} Delta_{p*,q*} + (prod over
/// multiplier_right) Delta_{p',q'} at a reduction node. The identity is
/// algebraic, so it holds to rounding for any Phi. The residual is scaled by
/// the largest of the six products the identity combines, since the two
/// middle products can dwarf the outer ones and rounding scales with them.
inline double verify_decomposition_identity(const DecompositionNode& node, const PhiFn& phi,
                                            double x) {
  if (node.kind != DecompositionNode::Kind::reduction)
    throw precondition_error("verify_decomposition_identity: node is not a reduction");
  const double pp = detail::product_phi(phi, node.pair.p(), x);
  const double pq = detail::product_phi(phi, node.pair.q(), x);
  double right = 1.0;
  for (double v : node.multiplier_right) right *= phi(v, x);
  const double left = phi(node.multiplier_left, x);
  const double s_p = left * detail::product_phi(phi, node.star_pair().p(), x);
  const double s_q = left * detail::product_phi(phi, node.star_pair().q(), x);
  const double r_p = right * detail::product_phi(phi, node.prime_pair().p(), x);
  const double r_q = right * detail::product_phi(phi, node.prime_pair().q(), x);
  const double lhs = pp - pq;
  const double rhs = (s_p - s_q) + (r_p - r_q);
  const double scale = std::max({std::fabs(pp), std::fabs(pq), std::fabs(s_p), std::fabs(s_q),
                                 std::fabs(r_p), std::fabs(r_q)});
  if (scale == 0.0) return std::fabs(lhs - rhs);
  return std::fabs(lhs - rhs) / scale;
}

/// Largest identity residual over every reduction node of the tree.
inline double max_decomposition_residual(const DecompositionNode& node, const PhiFn& phi,
                                         double x) {
  if (node.kind != DecompositionNode::Kind::reduction) return 0.0;
  double r = verify_decomposition_identity(node, phi, x);
  r = std::max(r, max_decomposition_residual(*node.star, phi, x));
  r = std::max(r, max_decomposition_residual(*node.prime, phi, x));
  return r;
}

struct TreeSummary {
  std::size_t reductions = 0;
  std::size_t leaves = 0;
  std::size_t trivial_leaves = 0;
  std::size_t spine_length = 0;  // reductions along the star chain from the root
  bool all_valid = true;         // every non-trivial pair strictly majorized
};

inline TreeSummary summarize(const DecompositionNode& root) {
  TreeSummary s;
  std::function<void(const DecompositionNode&)> walk = [&](const DecompositionNode& n) {
    if (!n.pair.trivial() && !is_majorized(n.pair.p(), n.pair.q())) s.all_valid = false;
    switch (n.kind) {
      case DecompositionNode::Kind::reduction:
        ++s.reductions;
        walk(*n.star);
        walk(*n.prime);
        break;
      case DecompositionNode::Kind::trivial_equal:
        ++s.trivial_leaves;
        ++s.leaves;
        break;
      case DecompositionNode::Kind::leaf_2tuple:
        ++s.leaves;
        break;
    }
  };
  walk(root);
  for (const DecompositionNode* n = &root; n->kind == DecompositionNode::Kind::reduction;
       n = n->star.get())
    ++s.spine_length;
  return s;
}

/// The additive analogue of the product identity: sum phi(q) - sum phi(p)
/// equals the sum of the same quantity over the 2-tuple leaves.
inline double hlp_delta_via_tree(const std::function<double(double)>& phi,
                                 const DecompositionNode& node) {
  switch (node.kind) {
    case DecompositionNode::Kind::trivial_equal: return 0.0;
    case DecompositionNode::Kind::leaf_2tuple: return hlp_delta(phi, node.pair);
    case DecompositionNode::Kind::reduction:
      return hlp_delta_via_tree(phi, *node.star) + hlp_delta_via_tree(phi, *node.prime);
  }
  return 0.0;
}

}  // namespace cmkit
