#pragma once

#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include "polar/code.hpp"

namespace polar {

enum class NodeKind { Rate0, Rate1, Rep, Spc, Internal };

inline const char* node_kind_name(NodeKind k) {
  switch (k) {
    case NodeKind::Rate0: return "Rate0";
    case NodeKind::Rate1: return "Rate1";
    case NodeKind::Rep: return "REP";
    case NodeKind::Spc: return "SPC";
    default: return "Internal";
  }
}

struct ConstituentNode {
  std::size_t start = 0;
  std::size_t len = 0;
  NodeKind kind = NodeKind::Internal;
  std::vector<ConstituentNode> children;  // empty for leaves
};

struct ConstituentTree {
  ConstituentNode root;
  std::size_t S = 0;  // leaf count

  std::vector<const ConstituentNode*> leaves() const {
    std::vector<const ConstituentNode*> out;
    collect(&root, out);
    return out;
  }

 private:
  static void collect(const ConstituentNode* node,
                      std::vector<const ConstituentNode*>& out) {
    if (node->children.empty()) {
      out.push_back(node);
      return;
    }
    for (const auto& c : node->children) collect(&c, out);
  }
};

namespace detail {

// Leaf classification over frozen[start, start+len). REP takes precedence
// over SPC for the length-2 span that matches both.
inline NodeKind classify_span(const Bits& frozen, std::size_t start, std::size_t len) {
  std::size_t nfrozen = 0;
  for (std::size_t i = start; i < start + len; ++i) nfrozen += (frozen[i] != 0);
  if (nfrozen == len) return NodeKind::Rate0;
  if (nfrozen == 0) return NodeKind::Rate1;
  if (nfrozen == len - 1 && !frozen[start + len - 1]) return NodeKind::Rep;
  if (nfrozen == 1 && frozen[start]) return NodeKind::Spc;
  return NodeKind::Internal;
}

inline ConstituentNode build_node(const Bits& frozen, std::size_t start, std::size_t len,
                                  std::size_t max_leaf_size, std::size_t& leaf_count) {
  ConstituentNode node{start, len, NodeKind::Internal, {}};
  NodeKind kind = classify_span(frozen, start, len);
  if (kind != NodeKind::Internal && len <= max_leaf_size) {
    node.kind = kind;
    ++leaf_count;
    return node;
  }
  if (len == 1) throw ConfigError("single-bit span failed to classify");  // unreachable
  node.children.push_back(build_node(frozen, start, len / 2, max_leaf_size, leaf_count));
  node.children.push_back(
      build_node(frozen, start + len / 2, len / 2, max_leaf_size, leaf_count));
  return node;
}

}  // namespace detail

/// Top-down decomposition of a frozen mask into constituent codes. A span
/// becomes a leaf when it matches Rate0/Rate1/REP/SPC and is no longer than
/// max_leaf_size, otherwise it splits in half.
inline ConstituentTree decompose(const Bits& frozen_mask,
                                 std::size_t max_leaf_size = SIZE_MAX) {
  if (!is_power_of_two(frozen_mask.size()))
    throw ConfigError("mask length must be a power of two");
  ConstituentTree tree;
  tree.S = 0;
  tree.root = detail::build_node(frozen_mask, 0, frozen_mask.size(), max_leaf_size, tree.S);
  return tree;
}

inline std::size_t count_S(const CodeConfig& config, std::size_t max_leaf_size = SIZE_MAX) {
  return decompose(config.frozen, max_leaf_size).S;
}

inline std::string tree_to_text(const ConstituentTree& tree) {
  std::ostringstream os;
  struct Walker {
    std::ostringstream& os;
    void walk(const ConstituentNode& n, int depth) {
      for (int i = 0; i < depth; ++i) os << "  ";
      os << '[' << n.start << ", " << n.start + n.len << ") " << node_kind_name(n.kind)
         << '\n';
      for (const auto& c : n.children) walk(c, depth + 1);
    }
  } w{os};
  w.walk(tree.root, 0);
  return os.str();
}

/// CSV rows (span_start,span_len,kind), leaves in bit order.
inline std::string tree_to_csv(const ConstituentTree& tree) {
  std::ostringstream os;
  os << "span_start,span_len,kind\n";
  for (const auto* leaf : tree.leaves())
    os << leaf->start << ',' << leaf->len << ',' << node_kind_name(leaf->kind) << '\n';
  return os.str();
}

}  // namespace polar
