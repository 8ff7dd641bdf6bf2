#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include <json.hpp>

#include "lexistat/distance.hpp"
#include "lexistat/error.hpp"
#include "lexistat/format.hpp"

namespace lexistat {

/// Description of the distance → time rule, recorded in tree metadata.
inline constexpr std::string_view kSeparationTimeRule = "T = -scale * ln(1 - D)";

/// Pairwise separation times in years. Same shape as the distance matrix it
/// was derived from.
class SeparationTimeMatrix : public SymmetricMatrix {
 public:
  SeparationTimeMatrix(SymmetricMatrix times, double scale) : SymmetricMatrix(std::move(times)), scale_(scale) {}
  double scale() const noexcept { return scale_; }

 private:
  double scale_;
};

/// Glottochronological inverse of exponential lexical decay.
inline SeparationTimeMatrix to_separation_times(const DistanceMatrix& m, double scale) {
  if (!(scale > 0.0) || !std::isfinite(scale)) fail(ErrorKind::ContractViolation, "scale must be positive");
  SymmetricMatrix times(m.labels());
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      const double d = m.at(i, j);
      if (d >= 1.0) {
        fail(ErrorKind::Saturation, "distance between \"" + m.label(i) + "\" and \"" + m.label(j) +
                                        "\" is 1; separation time is infinite");
      }
      times.set(i, j, d == 0.0 ? 0.0 : -scale * std::log1p(-d));
    }
  }
  return {std::move(times), scale};
}

struct Calibration {
  int collection_year = 2010;
  int root_year = 650;
};

struct TreeNode {
  std::string label;  // leaves only
  int left = -1;
  int right = -1;
  double height = 0.0;

  bool is_leaf() const noexcept { return left < 0; }
};

/// Rooted, strictly binary tree with node heights. Heights are half the
/// merge distance in the units of the input matrix. After `calibrate` each
/// node also has a date.
class PhyloTree {
 public:
  PhyloTree(std::vector<TreeNode> nodes, int root) : nodes_(std::move(nodes)), root_(root) {
    const int n = static_cast<int>(nodes_.size());
    if (n == 0 || root_ < 0 || root_ >= n) fail(ErrorKind::ContractViolation, "tree has no valid root");
    parent_.assign(nodes_.size(), -1);
    for (int id = 0; id < n; ++id) {
      const auto& node = nodes_[static_cast<std::size_t>(id)];
      if ((node.left < 0) != (node.right < 0)) fail(ErrorKind::ContractViolation, "tree is not strictly binary");
      if (node.is_leaf()) {
        if (node.label.empty()) fail(ErrorKind::ContractViolation, "leaf without label");
        continue;
      }
      for (int child : {node.left, node.right}) {
        if (child < 0 || child >= n || parent_[static_cast<std::size_t>(child)] != -1 || child == root_) {
          fail(ErrorKind::ContractViolation, "malformed tree topology");
        }
        parent_[static_cast<std::size_t>(child)] = id;
      }
    }
    for (int id = 0; id < n; ++id) {
      if (id != root_ && parent_[static_cast<std::size_t>(id)] < 0) {
        fail(ErrorKind::ContractViolation, "tree has unreachable nodes");
      }
    }
  }

  const std::vector<TreeNode>& nodes() const noexcept { return nodes_; }
  const TreeNode& node(int id) const { return nodes_.at(static_cast<std::size_t>(id)); }
  int root() const noexcept { return root_; }
  int parent(int id) const { return parent_.at(static_cast<std::size_t>(id)); }
  double root_height() const { return node(root_).height; }

  std::vector<int> leaves() const { return leaves_under(root_); }
  std::size_t leaf_count() const { return (nodes_.size() + 1) / 2; }

  std::vector<std::string> leaf_labels() const {
    std::vector<std::string> out;
    for (int id : leaves()) out.push_back(node(id).label);
    return out;
  }

  /// Leaf ids under `id`, left subtree first.
  std::vector<int> leaves_under(int id) const {
    std::vector<int> out, stack{id};
    while (!stack.empty()) {
      const int cur = stack.back();
      stack.pop_back();
      const auto& nd = node(cur);
      if (nd.is_leaf()) {
        out.push_back(cur);
      } else {
        stack.push_back(nd.right);
        stack.push_back(nd.left);
      }
    }
    return out;
  }

  /// Lexicographically smallest leaf label under `id`.
  std::string min_label(int id) const {
    std::string best;
    for (int leaf : leaves_under(id)) {
      if (best.empty() || node(leaf).label < best) best = node(leaf).label;
    }
    return best;
  }

  int lowest_common_ancestor(int a, int b) const {
    std::vector<int> path;
    for (int x = a; x >= 0; x = parent(x)) path.push_back(x);
    for (int y = b; y >= 0; y = parent(y)) {
      if (std::find(path.begin(), path.end(), y) != path.end()) return y;
    }
    return root_;
  }

  /// 2 × height of the lowest common ancestor, with rows in `labels` order
  /// (defaults to leaf order).
  SymmetricMatrix cophenetic(std::vector<std::string> labels = {}) const {
    const auto leaf_ids = leaves();
    if (labels.empty()) labels = leaf_labels();
    if (labels.size() != leaf_ids.size()) fail(ErrorKind::ContractViolation, "label set does not match tree");
    std::vector<int> ids;
    for (const auto& l : labels) {
      auto it = std::find_if(leaf_ids.begin(), leaf_ids.end(), [&](int id) { return node(id).label == l; });
      if (it == leaf_ids.end()) fail(ErrorKind::ContractViolation, "label \"" + l + "\" is not a leaf");
      ids.push_back(*it);
    }
    SymmetricMatrix out(std::move(labels));
    for (std::size_t i = 0; i < ids.size(); ++i) {
      for (std::size_t j = i + 1; j < ids.size(); ++j) {
        out.set(i, j, 2.0 * node(lowest_common_ancestor(ids[i], ids[j])).height);
      }
    }
    return out;
  }

  // Calibration

  const std::optional<Calibration>& calibration() const noexcept { return calibration_; }

  /// Affine map from height to calendar year; leaves get the collection year,
  /// the root gets the root year.
  std::optional<double> date(int id) const {
    if (!calibration_) return std::nullopt;
    const double h = node(id).height;
    const double span = static_cast<double>(calibration_->collection_year - calibration_->root_year);
    return static_cast<double>(calibration_->collection_year) - span * (h / root_height());
  }

 private:
  friend PhyloTree calibrate(const PhyloTree&, const Calibration&);

  std::vector<TreeNode> nodes_;
  std::vector<int> parent_;
  int root_;
  std::optional<Calibration> calibration_;
};

inline PhyloTree calibrate(const PhyloTree& tree, const Calibration& c) {
  if (!(c.root_year < c.collection_year)) {
    fail(ErrorKind::Validation, "root year " + std::to_string(c.root_year) +
                                    " must be earlier than collection year " +
                                    std::to_string(c.collection_year));
  }
  if (!(tree.root_height() > 0.0)) fail(ErrorKind::DegenerateTree, "root height is zero; nothing to calibrate");
  PhyloTree out = tree;
  out.calibration_ = c;
  return out;
}

/// Average-linkage (UPGMA) clustering. Leaves are nodes 0..N-1 in label
/// order; internal nodes follow in merge order, so the root is 2N-2.
///
/// Cluster distance is the mean over all cross pairs, kept as a running sum
/// of original entries so that exact ties stay exact for integer inputs.
/// Ties on the minimum merge the pair with the smaller (lowest member index,
/// then second lowest member index) key.
inline PhyloTree upgma(const SymmetricMatrix& m) {
  const std::size_t n = m.size();
  if (n < 2) fail(ErrorKind::ContractViolation, "UPGMA needs at least two leaves");
  const std::size_t total = 2 * n - 1;

  std::vector<TreeNode> nodes(total);
  std::vector<std::size_t> size(total, 0), min_member(total, 0);
  std::vector<double> sum(total * total, 0.0);
  std::vector<int> active;
  for (std::size_t i = 0; i < n; ++i) {
    nodes[i].label = m.label(i);
    size[i] = 1;
    min_member[i] = i;
    active.push_back(static_cast<int>(i));
    for (std::size_t j = 0; j < n; ++j) sum[i * total + j] = m.at(i, j);
  }

  for (std::size_t next = n; next < total; ++next) {
    double best = std::numeric_limits<double>::infinity();
    std::pair<std::size_t, std::size_t> best_key{};
    int best_a = -1, best_b = -1;
    for (std::size_t x = 0; x < active.size(); ++x) {
      for (std::size_t y = x + 1; y < active.size(); ++y) {
        const auto a = static_cast<std::size_t>(active[x]);
        const auto b = static_cast<std::size_t>(active[y]);
        const double avg = sum[a * total + b] / static_cast<double>(size[a] * size[b]);
        const std::pair<std::size_t, std::size_t> key{std::min(min_member[a], min_member[b]),
                                                     std::max(min_member[a], min_member[b])};
        if (avg < best || (avg == best && key < best_key)) {
          best = avg;
          best_key = key;
          best_a = active[x];
          best_b = active[y];
        }
      }
    }
    const auto a = static_cast<std::size_t>(best_a);
    const auto b = static_cast<std::size_t>(best_b);
    auto& merged = nodes[next];
    merged.left = min_member[a] < min_member[b] ? best_a : best_b;
    merged.right = merged.left == best_a ? best_b : best_a;
    merged.height = std::max({best / 2.0, nodes[a].height, nodes[b].height});
    size[next] = size[a] + size[b];
    min_member[next] = std::min(min_member[a], min_member[b]);

    std::erase(active, best_a);
    std::erase(active, best_b);
    for (int c : active) {
      const auto cc = static_cast<std::size_t>(c);
      const double s = sum[a * total + cc] + sum[b * total + cc];
      sum[next * total + cc] = s;
      sum[cc * total + next] = s;
    }
    active.push_back(static_cast<int>(next));
  }
  return PhyloTree(std::move(nodes), static_cast<int>(total - 1));
}

// ---------------------------------------------------------------------------
// Newick

namespace detail {

inline std::string newick_label(const std::string& label) {
  if (label.find_first_of(" \t()[]':;,") == std::string::npos) return label;
  std::string out = "'";
  for (char c : label) {
    if (c == '\'') out += '\'';
    out += c;
  }
  return out + "'";
}

inline void emit_newick_node(const PhyloTree& t, int id, std::string& out) {
  const auto& nd = t.node(id);
  if (nd.is_leaf()) {
    out += newick_label(nd.label);
  } else {
    int first = nd.left, second = nd.right;
    if (t.min_label(second) < t.min_label(first)) std::swap(first, second);
    out += '(';
    emit_newick_node(t, first, out);
    out += ',';
    emit_newick_node(t, second, out);
    out += ')';
  }
  if (id != t.root()) {
    const int p = t.parent(id);
    const double length = t.calibration() ? *t.date(id) - *t.date(p) : t.node(p).height - nd.height;
    out += ':';
    out += fmt::shortest(length);
  }
}

}  // namespace detail

/// Newick text with branch lengths (years when calibrated, height units
/// otherwise). Children are ordered by their smallest leaf label.
inline std::string emit_newick(const PhyloTree& t) {
  std::string out;
  detail::emit_newick_node(t, t.root(), out);
  return out + ';';
}

namespace detail {

class NewickParser {
 public:
  explicit NewickParser(std::string_view text) : text_(text) {}

  PhyloTree parse() {
    const int root = subtree();
    skip_ws();
    if (peek() != ';') error("expected ';'");
    ++pos_;
    skip_ws();
    if (pos_ != text_.size()) error("trailing characters after ';'");
    for (std::size_t id = 0; id < nodes_.size(); ++id) compute_height(static_cast<int>(id));
    return PhyloTree(std::move(nodes_), root);
  }

 private:
  int subtree() {
    skip_ws();
    TreeNode nd;
    if (peek() == '(') {
      ++pos_;
      const int left = subtree();
      expect(',');
      const int right = subtree();
      skip_ws();
      if (peek() == ',') error("only binary trees are supported");
      expect(')');
      nd.left = left;
      nd.right = right;
      skip_ws();
      if (peek() != ':' && peek() != ';' && peek() != ',' && peek() != ')') label();  // ignore internal labels
    } else {
      nd.label = label();
      if (nd.label.empty()) error("leaf without label");
    }
    skip_ws();
    double length = 0.0;
    if (peek() == ':') {
      ++pos_;
      skip_ws();
      const auto start = pos_;
      while (pos_ < text_.size() && std::string_view("0123456789.eE+-").find(text_[pos_]) != std::string_view::npos) ++pos_;
      const auto v = fmt::parse_double(text_.substr(start, pos_ - start));
      if (!v || *v < 0.0) error("bad branch length");
      length = *v;
    }
    nodes_.push_back(nd);
    lengths_.push_back(length);
    return static_cast<int>(nodes_.size() - 1);
  }

  std::string label() {
    skip_ws();
    std::string out;
    if (peek() == '\'') {
      ++pos_;
      for (;;) {
        if (pos_ >= text_.size()) error("unterminated quoted label");
        const char c = text_[pos_++];
        if (c == '\'') {
          if (peek() == '\'') {
            out += '\'';
            ++pos_;
            continue;
          }
          break;
        }
        out += c;
      }
      return out;
    }
    while (pos_ < text_.size() && std::string_view(" \t\r\n()[]':;,").find(text_[pos_]) == std::string_view::npos) {
      out += text_[pos_++];
    }
    return out;
  }

  double compute_height(int id) {
    auto& nd = nodes_[static_cast<std::size_t>(id)];
    if (nd.is_leaf()) return 0.0;
    const double l = compute_height(nd.left) + lengths_[static_cast<std::size_t>(nd.left)];
    const double r = compute_height(nd.right) + lengths_[static_cast<std::size_t>(nd.right)];
    nd.height = std::max(l, r);
    return nd.height;
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void skip_ws() {
    while (pos_ < text_.size() && std::string_view(" \t\r\n").find(text_[pos_]) != std::string_view::npos) ++pos_;
  }
  void expect(char c) {
    skip_ws();
    if (peek() != c) error(std::string("expected '") + c + "'");
    ++pos_;
  }
  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorKind::Parse, "Newick: " + what + " at offset " + std::to_string(pos_));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::vector<TreeNode> nodes_;
  std::vector<double> lengths_;
};

}  // namespace detail

/// Parses a binary Newick tree with branch lengths; node heights are
/// reconstructed from the leaves upward.
inline PhyloTree parse_newick(std::string_view text) { return detail::NewickParser(text).parse(); }

// ---------------------------------------------------------------------------
// JSON dump: {metadata, topology, heights, dates, newick}

struct TreeMetadata {
  double scale = 1000.0;
  std::string input;
};

inline nlohmann::json tree_to_json(const PhyloTree& t, const TreeMetadata& meta = {}) {
  nlohmann::json topology = nlohmann::json::array();
  nlohmann::json heights = nlohmann::json::array();
  nlohmann::json dates = nlohmann::json::array();
  for (std::size_t id = 0; id < t.nodes().size(); ++id) {
    const auto& nd = t.nodes()[id];
    nlohmann::json entry = {{"id", id}};
    if (nd.is_leaf()) {
      entry["label"] = nd.label;
    } else {
      entry["children"] = {nd.left, nd.right};
    }
    topology.push_back(std::move(entry));
    heights.push_back(nd.height);
    if (auto d = t.date(static_cast<int>(id))) {
      dates.push_back(*d);
    } else {
      dates.push_back(nullptr);
    }
  }
  nlohmann::json metadata = {
      {"method", "UPGMA"},
      {"separation_time_rule", kSeparationTimeRule},
      {"scale", meta.scale},
  };
  if (!meta.input.empty()) metadata["input"] = meta.input;
  if (const auto& c = t.calibration()) {
    metadata["collection_year"] = c->collection_year;
    metadata["root_year"] = c->root_year;
    metadata["calibration_anchor"] = "root";
  }
  return {{"metadata", std::move(metadata)}, {"root", t.root()},      {"topology", std::move(topology)},
          {"heights", std::move(heights)},   {"dates", std::move(dates)}, {"newick", emit_newick(t)}};
}

}  // namespace lexistat
