#pragma once

// Invariant descriptors: named evaluation trees over the Jordan primitives
// det, n (adjugate), ×, f and the trace form, with slot references as leaves.

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "jinv/jordan.hpp"

namespace jinv {

enum class Op { Slot, Adj, Cross, Det, F, Trace, Entry };

using MultiDegree = std::vector<int>;

inline int total_degree(const MultiDegree& d) {
  int s = 0;
  for (int v : d) s += v;
  return s;
}

/// Conventional slot names x, y, z, t, u; further slots are x6, x7, ...
inline std::string slot_name(int s) {
  static const char* names[] = {"x", "y", "z", "t", "u"};
  return s < 5 ? names[s] : "x" + std::to_string(s + 1);
}

inline int slot_from_name(const std::string& n) {
  static const char* names[] = {"x", "y", "z", "t", "u"};
  for (int s = 0; s < 5; ++s)
    if (n == names[s]) return s;
  if (n.size() > 1 && n[0] == 'x') {
    const int v = std::stoi(n.substr(1));
    if (v >= 6) return v - 1;
  }
  throw std::invalid_argument("unknown slot name: " + n);
}

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
  Op op;
  int slot = -1;       // Slot
  int row = 0, col = 0;  // Entry
  std::vector<NodePtr> args;
  MultiDegree degree;  // indexed by slot, trailing zeros trimmed
  std::string key;     // canonical prefix form

  bool is_matrix() const { return op == Op::Slot || op == Op::Adj || op == Op::Cross; }
};

namespace detail {

inline MultiDegree add_degrees(const MultiDegree& a, const MultiDegree& b, int scale_b = 1) {
  MultiDegree r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += scale_b * b[i];
  return r;
}

inline MultiDegree scale_degree(const MultiDegree& a, int k) {
  MultiDegree r = a;
  for (int& v : r) v *= k;
  return r;
}

inline const char* op_name(Op op) {
  switch (op) {
    case Op::Slot: return "slot";
    case Op::Adj: return "n";
    case Op::Cross: return "cross";
    case Op::Det: return "det";
    case Op::F: return "f";
    case Op::Trace: return "tr";
    case Op::Entry: return "entry";
  }
  return "?";
}

inline NodePtr make_node(Op op, std::vector<NodePtr> args, int slot = -1, int row = 0, int col = 0) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->slot = slot;
  n->row = row;
  n->col = col;
  n->args = std::move(args);
  auto need = [&](std::size_t k, bool matrices) {
    if (n->args.size() != k) throw std::invalid_argument(std::string(op_name(op)) + ": wrong number of arguments");
    for (const auto& a : n->args)
      if (!a || a->is_matrix() != matrices) throw std::invalid_argument(std::string(op_name(op)) + ": argument type");
  };
  switch (op) {
    case Op::Slot:
      need(0, true);
      if (slot < 0) throw std::invalid_argument("slot index must be >= 0");
      n->degree.assign(slot + 1, 0);
      n->degree[slot] = 1;
      n->key = slot_name(slot);
      return n;
    case Op::Adj:
    case Op::Det:
      need(1, true);
      n->degree = scale_degree(n->args[0]->degree, op == Op::Adj ? 2 : 3);
      break;
    case Op::Cross:
    case Op::Trace:
      need(2, true);
      n->degree = add_degrees(n->args[0]->degree, n->args[1]->degree);
      break;
    case Op::F:
      need(3, true);
      n->degree = add_degrees(add_degrees(n->args[0]->degree, n->args[1]->degree), n->args[2]->degree);
      break;
    case Op::Entry:
      need(1, true);
      if (row < 0 || row > 2 || col < 0 || col > 2) throw std::out_of_range("entry index");
      n->degree = n->args[0]->degree;
      break;
  }
  n->key = op_name(op);
  n->key += '(';
  for (std::size_t i = 0; i < n->args.size(); ++i) {
    if (i) n->key += ',';
    n->key += n->args[i]->key;
  }
  if (op == Op::Entry) n->key += "," + std::to_string(row + 1) + "," + std::to_string(col + 1);
  n->key += ')';
  return n;
}

}  // namespace detail

/// Builds trees, sharing structurally identical subtrees so evaluation memos hit.
class TreeBuilder {
 public:
  NodePtr slot(int s) { return intern(detail::make_node(Op::Slot, {}, s)); }
  NodePtr adj(NodePtr a) { return intern(detail::make_node(Op::Adj, {std::move(a)})); }
  NodePtr cross(NodePtr a, NodePtr b) { return intern(detail::make_node(Op::Cross, {std::move(a), std::move(b)})); }
  NodePtr det(NodePtr a) { return intern(detail::make_node(Op::Det, {std::move(a)})); }
  NodePtr f(NodePtr a, NodePtr b, NodePtr c) {
    return intern(detail::make_node(Op::F, {std::move(a), std::move(b), std::move(c)}));
  }
  NodePtr trace(NodePtr a, NodePtr b) { return intern(detail::make_node(Op::Trace, {std::move(a), std::move(b)})); }
  /// Coordinate probe x_{ij} of a matrix node; not an invariant.
  NodePtr entry(NodePtr a, int i, int j) { return intern(detail::make_node(Op::Entry, {std::move(a)}, -1, i, j)); }

  std::size_t size() const { return pool_.size(); }

 private:
  NodePtr intern(NodePtr n) {
    auto [it, inserted] = pool_.try_emplace(n->key, n);
    return it->second;
  }
  std::unordered_map<std::string, NodePtr> pool_;
};

/// A named multihomogeneous polynomial function on p-tuples of symmetric matrices.
class InvariantDescriptor {
 public:
  InvariantDescriptor(std::string name, int arity, NodePtr tree, std::string note = {})
      : name_(std::move(name)), arity_(arity), tree_(std::move(tree)), note_(std::move(note)) {
    if (!tree_ || tree_->is_matrix()) throw std::invalid_argument("descriptor tree must be scalar-valued");
    if (static_cast<int>(tree_->degree.size()) > arity_)
      throw std::invalid_argument("descriptor '" + name_ + "' references a slot beyond its arity");
    degree_ = tree_->degree;
    degree_.resize(arity_, 0);
  }

  const std::string& name() const { return name_; }
  int arity() const { return arity_; }
  const MultiDegree& multidegree() const { return degree_; }
  int total_degree() const { return jinv::total_degree(degree_); }
  const NodePtr& tree() const { return tree_; }
  const std::string& note() const { return note_; }
  std::string formula() const { return tree_->key; }

 private:
  std::string name_;
  int arity_;
  NodePtr tree_;
  std::string note_;
  MultiDegree degree_;
};

/// Evaluates trees at one fixed point, memoizing every subtree by node identity.
template <class T>
class Evaluator {
 public:
  explicit Evaluator(std::span<const SymMat3<T>> point) : point_(point) {}

  T operator()(const InvariantDescriptor& d) { return scalar(*d.tree()); }

  T scalar(const Node& n) {
    if (auto it = scalars_.find(&n); it != scalars_.end()) return it->second;
    T v;
    switch (n.op) {
      case Op::Det: v = det3(matrix(*n.args[0])); break;
      case Op::F: v = trilinear_f(matrix(*n.args[0]), matrix(*n.args[1]), matrix(*n.args[2])); break;
      case Op::Trace: v = trace_form(matrix(*n.args[0]), matrix(*n.args[1])); break;
      case Op::Entry: v = matrix(*n.args[0]).at(n.row, n.col); break;
      default: throw std::logic_error("scalar evaluation of a matrix node");
    }
    return scalars_.emplace(&n, std::move(v)).first->second;
  }

  const SymMat3<T>& matrix(const Node& n) {
    if (auto it = matrices_.find(&n); it != matrices_.end()) return it->second;
    SymMat3<T> v;
    switch (n.op) {
      case Op::Slot:
        if (n.slot >= static_cast<int>(point_.size())) throw std::out_of_range("evaluation point has too few slots");
        v = point_[n.slot];
        break;
      case Op::Adj: v = adjugate(matrix(*n.args[0])); break;
      case Op::Cross: v = cross(matrix(*n.args[0]), matrix(*n.args[1])); break;
      default: throw std::logic_error("matrix evaluation of a scalar node");
    }
    return matrices_.emplace(&n, std::move(v)).first->second;
  }

 private:
  std::span<const SymMat3<T>> point_;
  std::unordered_map<const Node*, SymMat3<T>> matrices_;
  std::unordered_map<const Node*, T> scalars_;
};

template <class T>
T evaluate(const InvariantDescriptor& d, std::span<const SymMat3<T>> point) {
  Evaluator<T> ev(point);
  return ev(d);
}

// ---------------------------------------------------------------------------
// JSON: {name, arity, multidegree, tree} with the tree in nested prefix form,
// e.g. ["f", ["slot", 0], ["cross", ["slot", 1], ["slot", 2]], ["slot", 0]].

inline nlohmann::json tree_to_json(const Node& n) {
  using nlohmann::json;
  if (n.op == Op::Slot) return json::array({"slot", n.slot});
  json a = json::array({detail::op_name(n.op)});
  for (const auto& c : n.args) a.push_back(tree_to_json(*c));
  if (n.op == Op::Entry) {
    a.push_back(n.row);
    a.push_back(n.col);
  }
  return a;
}

inline NodePtr tree_from_json(const nlohmann::json& j, TreeBuilder& b) {
  if (!j.is_array() || j.empty() || !j[0].is_string()) throw std::invalid_argument("tree node must be [op, ...]");
  const std::string op = j[0];
  auto arg = [&](std::size_t i) { return tree_from_json(j.at(i), b); };
  auto arity = [&](std::size_t k) {
    if (j.size() != k + 1) throw std::invalid_argument("tree node '" + op + "' has wrong arity");
  };
  if (op == "slot") {
    arity(1);
    return b.slot(j[1].get<int>());
  }
  if (op == "n") {
    arity(1);
    return b.adj(arg(1));
  }
  if (op == "det") {
    arity(1);
    return b.det(arg(1));
  }
  if (op == "cross") {
    arity(2);
    return b.cross(arg(1), arg(2));
  }
  if (op == "tr") {
    arity(2);
    return b.trace(arg(1), arg(2));
  }
  if (op == "f") {
    arity(3);
    return b.f(arg(1), arg(2), arg(3));
  }
  if (op == "entry") {
    arity(3);
    return b.entry(arg(1), j[2].get<int>(), j[3].get<int>());
  }
  throw std::invalid_argument("unknown tree op: " + op);
}

inline nlohmann::json to_json(const InvariantDescriptor& d) {
  nlohmann::json j{{"name", d.name()},
                   {"arity", d.arity()},
                   {"multidegree", d.multidegree()},
                   {"formula", d.formula()},
                   {"tree", tree_to_json(*d.tree())}};
  if (!d.note().empty()) j["note"] = d.note();
  return j;
}

/// Parses a descriptor; the recorded multidegree must match the tree.
inline InvariantDescriptor descriptor_from_json(const nlohmann::json& j, TreeBuilder& b) {
  InvariantDescriptor d(j.at("name").get<std::string>(), j.at("arity").get<int>(), tree_from_json(j.at("tree"), b),
                        j.value("note", std::string{}));
  if (j.contains("multidegree") && j.at("multidegree").get<MultiDegree>() != d.multidegree())
    throw std::invalid_argument("descriptor '" + d.name() + "': recorded multidegree disagrees with its tree");
  return d;
}

}  // namespace jinv
