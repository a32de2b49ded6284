#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sdc/errors.hpp"

namespace sdc {

using SortId = uint32_t;
using OpId = uint32_t;

// A word over the generating objects; the empty word is the monoidal unit.
using Word = std::vector<SortId>;

inline Word concat(const Word& a, const Word& b) {
  Word w = a;
  w.insert(w.end(), b.begin(), b.end());
  return w;
}

struct ObjectSort {
  std::string name;
};

struct OperationDecl {
  std::string name;
  Word arity;
  Word coarity;
};

inline bool valid_identifier(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
              (c >= '0' && c <= '9') || c == '_';
    if (!ok) return false;
  }
  return !(s[0] >= '0' && s[0] <= '9');
}

// A monoidal signature: generating objects plus typed operations. Immutable
// once built; extensions (e.g. adding Frobenius generators) append to a copy
// so sort/op ids of the base remain valid in the extension.
class Signature {
 public:
  Signature() = default;

  static std::shared_ptr<const Signature> make(
      const std::vector<std::string>& objects,
      const std::vector<std::tuple<std::string, std::vector<std::string>,
                                   std::vector<std::string>>>& operations) {
    Signature sig;
    for (const auto& name : objects) sig.add_object(name);
    for (const auto& [name, ar, coar] : operations)
      sig.add_operation(name, ar, coar);
    return std::make_shared<const Signature>(std::move(sig));
  }

  void add_object(const std::string& name) {
    if (!valid_identifier(name))
      fail(ErrorKind::SyntaxError, "bad object name '" + name + "'");
    if (sort_index_.count(name))
      fail(ErrorKind::DuplicateName, "object '" + name + "' declared twice");
    sort_index_[name] = static_cast<SortId>(objects_.size());
    objects_.push_back({name});
  }

  void add_operation(const std::string& name,
                     const std::vector<std::string>& arity,
                     const std::vector<std::string>& coarity) {
    if (!valid_identifier(name))
      fail(ErrorKind::SyntaxError, "bad operation name '" + name + "'");
    if (op_index_.count(name) || sort_index_.count(name))
      fail(ErrorKind::DuplicateName, "name '" + name + "' declared twice");
    OperationDecl d;
    d.name = name;
    d.arity = word(arity);
    d.coarity = word(coarity);
    op_index_[name] = static_cast<OpId>(operations_.size());
    operations_.push_back(std::move(d));
  }

  size_t object_count() const { return objects_.size(); }
  size_t operation_count() const { return operations_.size(); }

  const ObjectSort& object(SortId s) const { return objects_.at(s); }
  const OperationDecl& operation(OpId o) const { return operations_.at(o); }

  std::optional<SortId> find_sort(const std::string& name) const {
    auto it = sort_index_.find(name);
    if (it == sort_index_.end()) return std::nullopt;
    return it->second;
  }

  std::optional<OpId> find_op(const std::string& name) const {
    auto it = op_index_.find(name);
    if (it == op_index_.end()) return std::nullopt;
    return it->second;
  }

  SortId sort(const std::string& name) const {
    auto s = find_sort(name);
    if (!s) fail(ErrorKind::UnknownSort, "no object named '" + name + "'");
    return *s;
  }

  OpId op(const std::string& name) const {
    auto o = find_op(name);
    if (!o) fail(ErrorKind::UnknownName, "no operation named '" + name + "'");
    return *o;
  }

  Word word(const std::vector<std::string>& names) const {
    Word w;
    w.reserve(names.size());
    for (const auto& n : names) w.push_back(sort(n));
    return w;
  }

  std::string word_str(const Word& w) const {
    if (w.empty()) return "eps";
    std::string s;
    for (size_t i = 0; i < w.size(); ++i) {
      if (i) s += ".";
      s += objects_.at(w[i]).name;
    }
    return s;
  }

  std::string op_type_str(OpId o) const {
    const auto& d = operations_.at(o);
    return d.name + " : " + word_str(d.arity) + " -> " + word_str(d.coarity);
  }

  // True when `other` declares a prefix of this signature's objects and
  // operations. Used to let terms over a base signature mix with terms over
  // an extension of it.
  bool extends(const Signature& other) const {
    if (other.objects_.size() > objects_.size()) return false;
    if (other.operations_.size() > operations_.size()) return false;
    for (size_t i = 0; i < other.objects_.size(); ++i)
      if (objects_[i].name != other.objects_[i].name) return false;
    for (size_t i = 0; i < other.operations_.size(); ++i)
      if (operations_[i].name != other.operations_[i].name) return false;
    return true;
  }

 private:
  std::vector<ObjectSort> objects_;
  std::vector<OperationDecl> operations_;
  std::map<std::string, SortId> sort_index_;
  std::map<std::string, OpId> op_index_;
};

using SigPtr = std::shared_ptr<const Signature>;

// Picks the richer of two compatible signatures; complains about unrelated ones.
inline SigPtr merge_sigs(const SigPtr& a, const SigPtr& b) {
  if (!a) return b;
  if (!b || a == b) return a;
  if (a->extends(*b)) return a;
  if (b->extends(*a)) return b;
  fail(ErrorKind::TypeMismatch, "terms built over unrelated signatures");
}

} // namespace sdc
