#include "logic_forge/model/decode.hpp"

#include <algorithm>
#include <numeric>

namespace logic_forge::model {

namespace {

Cell to_cell(const Var& var, Value v) {
  if (!var.domain.contains(v)) {
    throw DecodeError("value " + std::to_string(v) + " is outside the domain of " + var.name);
  }
  if (var.domain.kind == VarDomain::Kind::Enum) return var.domain.labels[static_cast<std::size_t>(v)];
  return v;
}

Value from_cell(const Var& var, const Cell& cell) {
  if (var.domain.kind == VarDomain::Kind::Enum) {
    const auto* s = std::get_if<std::string>(&cell);
    if (s == nullptr) throw DecodeError(var.name + " expects a string value");
    const auto code = var.domain.code_of(*s);
    if (!code) throw DecodeError("\"" + *s + "\" is outside the domain of " + var.name);
    return *code;
  }
  const auto* i = std::get_if<std::int64_t>(&cell);
  if (i == nullptr) throw DecodeError(var.name + " expects an integer value");
  if (!var.domain.contains(*i)) {
    throw DecodeError(std::to_string(*i) + " is outside the domain of " + var.name);
  }
  return *i;
}

}  // namespace

SolutionTable decode_group(const ConstraintModel& model, std::size_t group,
                           const Assignment& assignment) {
  if (assignment.vars.size() != model.vars.size()) {
    throw DecodeError("assignment covers " + std::to_string(assignment.vars.size()) + " of " +
                      std::to_string(model.vars.size()) + " vars");
  }
  if (group >= model.groups.size()) throw DecodeError("model has no instance group to decode");
  const InstanceGroup& g = model.groups[group];
  SolutionTable table;
  table.columns = g.fields;
  std::vector<std::size_t> order(g.instance_count());
  std::iota(order.begin(), order.end(), 0);
  if (g.position_field) {
    const std::size_t pf = *g.position_field;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return assignment.vars[g.vars[a][pf]] < assignment.vars[g.vars[b][pf]];
    });
    table.key_column = pf;
  }
  for (std::size_t inst : order) {
    std::vector<Cell> row;
    for (VarId v : g.vars[inst]) row.push_back(to_cell(model.vars[v], assignment.vars[v]));
    table.rows.push_back(std::move(row));
  }
  return table;
}

SolutionTable decode(const ConstraintModel& model, const Assignment& assignment) {
  return decode_group(model, model.primary_group, assignment);
}

Assignment encode(const ConstraintModel& model, const SolutionTable& table) {
  if (model.groups.empty()) throw DecodeError("model has no instance group to encode");
  const InstanceGroup& g = model.groups[model.primary_group];
  if (table.columns != g.fields) throw DecodeError("table columns do not match the model fields");
  if (table.rows.size() != g.instance_count()) {
    throw DecodeError("table has " + std::to_string(table.rows.size()) + " rows, model has " +
                      std::to_string(g.instance_count()) + " instances");
  }
  Assignment a;
  a.vars.reserve(model.vars.size());
  for (const Var& v : model.vars) a.vars.push_back(v.domain.min());
  a.selectors.assign(model.selectors.size(), 0);
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    if (table.rows[r].size() != g.fields.size()) throw DecodeError("ragged table row");
    for (std::size_t f = 0; f < g.fields.size(); ++f) {
      const VarId v = g.vars[r][f];
      a.vars[v] = from_cell(model.vars[v], table.rows[r][f]);
    }
  }
  return a;
}

}  // namespace logic_forge::model
