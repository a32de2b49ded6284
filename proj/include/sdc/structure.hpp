#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sdc/signature.hpp"

namespace sdc {

// Distinguished structural generators a theory can attach to a sort. The
// first four form the Frobenius / (co)monoid quadruple; cup and cap are the
// self-dual compact pair.
enum class StructRole { Comult, Counit, Mult, Unit, Cup, Cap };

inline const char* struct_role_base_name(StructRole r) {
  switch (r) {
    case StructRole::Comult: return "comult";
    case StructRole::Counit: return "counit";
    case StructRole::Mult: return "mult";
    case StructRole::Unit: return "unit";
    case StructRole::Cup: return "cup";
    case StructRole::Cap: return "cap";
  }
  return "?";
}

// Records which operations of a signature play which structural role on
// which sort. Shared by the graph interpreter (node-merging generators), the
// rewrite theories, and the semantic models.
struct StructureMap {
  std::map<std::pair<SortId, StructRole>, OpId> op_for_;
  std::map<OpId, std::pair<SortId, StructRole>> role_of_;

  void mark(SortId sort, StructRole role, OpId op) {
    op_for_[{sort, role}] = op;
    role_of_[op] = {sort, role};
  }

  std::optional<OpId> op_for(SortId sort, StructRole role) const {
    auto it = op_for_.find({sort, role});
    if (it == op_for_.end()) return std::nullopt;
    return it->second;
  }

  std::optional<std::pair<SortId, StructRole>> role_of(OpId op) const {
    auto it = role_of_.find(op);
    if (it == role_of_.end()) return std::nullopt;
    return it->second;
  }

  bool is_frobenius_role(OpId op) const {
    auto r = role_of(op);
    if (!r) return false;
    switch (r->second) {
      case StructRole::Comult:
      case StructRole::Counit:
      case StructRole::Mult:
      case StructRole::Unit:
        return true;
      default:
        return false;
    }
  }

  bool empty() const { return role_of_.empty(); }
};

// Appends structural generators for the given sorts to a copy of `base`.
// Names are the bare role names when the base has a single object and
// role_<sort> otherwise, so hand-written files stay readable.
inline std::pair<SigPtr, StructureMap> extend_with_structure(
    const SigPtr& base, const std::vector<SortId>& sorts,
    const std::vector<StructRole>& roles, StructureMap existing = {}) {
  Signature ext = *base;
  StructureMap marking = std::move(existing);
  bool suffix = base->object_count() > 1;
  for (SortId s : sorts) {
    const std::string& sort_name = base->object(s).name;
    for (StructRole r : roles) {
      if (marking.op_for(s, r)) continue;
      std::string name = struct_role_base_name(r);
      if (suffix) name += "_" + sort_name;
      std::vector<std::string> one = {sort_name};
      std::vector<std::string> two = {sort_name, sort_name};
      std::vector<std::string> none = {};
      switch (r) {
        case StructRole::Comult: ext.add_operation(name, one, two); break;
        case StructRole::Counit: ext.add_operation(name, one, none); break;
        case StructRole::Mult: ext.add_operation(name, two, one); break;
        case StructRole::Unit: ext.add_operation(name, none, one); break;
        case StructRole::Cup: ext.add_operation(name, none, two); break;
        case StructRole::Cap: ext.add_operation(name, two, none); break;
      }
      marking.mark(s, r, *ext.find_op(name));
    }
  }
  return {std::make_shared<const Signature>(std::move(ext)), marking};
}

inline std::vector<StructRole> frobenius_roles() {
  return {StructRole::Comult, StructRole::Counit, StructRole::Mult, StructRole::Unit};
}

inline std::vector<StructRole> comonoid_roles() {
  return {StructRole::Comult, StructRole::Counit};
}

inline std::vector<StructRole> monoid_roles() {
  return {StructRole::Mult, StructRole::Unit};
}

inline std::vector<StructRole> compact_roles() {
  return {StructRole::Cup, StructRole::Cap};
}

} // namespace sdc
