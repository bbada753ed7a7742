#include "paraidem/pipeline.hpp"

#include <functional>
#include <set>

namespace paraidem {

using nlohmann::json;

Ring parse_ring(const json& j) {
  if (j.is_object()) return Ring::from_json(j);
  if (!j.is_string()) throw Error(ErrorCode::ParseError, "ring must be an object or a string");
  const std::string s = j.get<std::string>();
  if (s == "rational" || s == "Q") return Ring::rational();
  const auto colon = s.find(':');
  if (colon != std::string::npos) {
    const std::string kind = s.substr(0, colon);
    std::int64_t m = 0;
    try {
      m = std::stoll(s.substr(colon + 1));
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "bad ring '" + s + "'");
    }
    if (kind == "cyclotomic") return Ring::cyclotomic(m);
    if (kind == "prime") return Ring::prime_field(m);
  }
  throw Error(ErrorCode::ParseError, "bad ring '" + s + "'");
}

std::string value_kind(const Value& v) {
  static const char* names[] = {"matrix", "set", "cleared", "hadamard", "report", "poly", "ranks"};
  return names[v.index()];
}

json value_to_json(const Value& v) {
  return std::visit(
      [](const auto& x) -> json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, ClearedForm>) {
          return {{"q", x.q.to_json()}, {"m", x.m.to_string()}, {"p", x.p.to_string()}, {"cleared", x.cleared.to_string()}};
        } else if constexpr (std::is_same_v<T, LaurentPoly>) {
          return x.to_string();
        } else if constexpr (std::is_same_v<T, std::vector<std::size_t>>) {
          return x;
        } else {
          return x.to_json();
        }
      },
      v);
}

const Value& PipelineResult::at(const std::string& name) const {
  auto it = env.find(name);
  if (it == env.end()) throw Error(ErrorCode::UnknownBinding, "no binding named '" + name + "'");
  return it->second;
}

bool PipelineResult::all_checks_ok() const {
  for (const auto& s : steps) {
    for (const auto& [name, ok] : s.checks.items()) {
      if (!ok.get<bool>()) return false;
    }
  }
  return true;
}

json PipelineResult::to_json() const {
  json steps_json = json::array();
  for (const auto& s : steps) {
    steps_json.push_back({{"bind", s.bind}, {"op", s.op}, {"kind", value_kind(s.value)}, {"value", value_to_json(s.value)}, {"checks", s.checks}});
  }
  return {{"ring", ring.to_json()}, {"ok", all_checks_ok()}, {"steps", steps_json}};
}

namespace {

class Executor {
 public:
  Executor(const json& pipeline, bool verify) : verify_(verify) {
    if (!pipeline.is_object()) throw Error(ErrorCode::InvalidPipeline, "pipeline must be a JSON object");
    result_.ring = pipeline.contains("ring") ? parse_ring(pipeline["ring"]) : Ring::rational();
    if (pipeline.contains("steps") && !pipeline["steps"].is_array()) throw Error(ErrorCode::InvalidPipeline, "steps must be an array");
  }

  PipelineResult run(const json& pipeline) {
    const json steps = pipeline.value("steps", json::array());
    for (std::size_t i = 0; i < steps.size(); ++i) {
      const json& step = steps[i];
      if (!step.is_object() || !step.contains("op")) throw Error(ErrorCode::InvalidPipeline, "step " + std::to_string(i + 1) + " has no op");
      const std::string op = step["op"].get<std::string>();
      const std::string bind = step.value("bind", "_" + std::to_string(i + 1));
      ring_ = step.contains("ring") ? parse_ring(step["ring"]) : result_.ring;
      args_ = step.value("args", json::object());
      StepResult sr{bind, op, PolyMatrix(), json::object()};
      try {
        sr.value = dispatch(op);
        if (verify_) record_checks(op, sr);
      } catch (const Error& e) {
        const std::string prefix = std::string(to_string(e.code())) + ": ";
        std::string msg = e.what();
        if (msg.rfind(prefix, 0) == 0) msg.erase(0, prefix.size());
        throw Error(e.code(), "step " + std::to_string(i + 1) + " (" + op + "): " + msg);
      } catch (const json::exception& e) {
        throw Error(ErrorCode::InvalidPipeline, "step " + std::to_string(i + 1) + " (" + op + "): " + e.what());
      }
      result_.env[bind] = sr.value;
      result_.steps.push_back(std::move(sr));
    }
    return std::move(result_);
  }

  static std::vector<std::string> ops() {
    return {"matrix",      "set",          "group_set",         "basis_set",  "rows_set",       "diagonal_set", "merge",
            "realify",     "tensor_sets",  "conjugate_set",     "member",     "monomial_sum",   "belevitch",    "spectral_unitary",
            "block_arrangement", "tangle", "pseudo_from_rows",  "monomial_clear", "specialize_hadamard", "compose", "adjoint",
            "transpose",   "embed",        "linear_combination", "determinant", "rank",          "ranks",        "factor_rank1",
            "verify"};
  }

 private:
  // ---- argument helpers
  const json& arg(const std::string& key) const {
    if (!args_.contains(key)) throw Error(ErrorCode::InvalidPipeline, "missing argument '" + key + "'");
    return args_[key];
  }

  const Value& lookup(const std::string& ref) const {
    auto it = result_.env.find(ref);
    if (it != result_.env.end()) return it->second;
    throw Error(ErrorCode::UnknownBinding, "no binding named '" + ref + "'");
  }

  PolyMatrix literal_matrix(const json& j) const {
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : j.at("rows")) {
      std::vector<std::string> row;
      for (const auto& c : r) row.push_back(c.is_string() ? c.get<std::string>() : c.dump());
      rows.push_back(std::move(row));
    }
    PolyMatrix m = PolyMatrix::parse(ring_, rows);
    if (j.contains("scale")) m = m * Scalar::parse(ring_, j["scale"].get<std::string>());
    return m;
  }

  PolyMatrix matrix(const json& j) const {
    if (j.is_object()) return literal_matrix(j);
    const std::string ref = j.get<std::string>();
    const auto dot = ref.find('.');
    if (dot != std::string::npos) {
      const Value& base = lookup(ref.substr(0, dot));
      const std::string part = ref.substr(dot + 1);
      if (const auto* c = std::get_if<ClearedForm>(&base)) {
        if (part == "q") return c->q;
      } else if (const auto* h = std::get_if<HadamardReport>(&base)) {
        if (part == "h") return h->h;
        if (part == "h_int") return h->h_int;
      }
      throw Error(ErrorCode::UnknownBinding, "'" + ref + "' does not name a matrix");
    }
    const Value& v = lookup(ref);
    if (const auto* m = std::get_if<PolyMatrix>(&v)) return *m;
    throw Error(ErrorCode::InvalidPipeline, "'" + ref + "' is a " + value_kind(v) + ", not a matrix");
  }

  PolyMatrix matrix_arg(const std::string& key) const { return matrix(arg(key)); }

  IdempotentSet set_arg(const std::string& key) const {
    const std::string ref = arg(key).get<std::string>();
    const Value& v = lookup(ref);
    if (const auto* s = std::get_if<IdempotentSet>(&v)) return *s;
    throw Error(ErrorCode::InvalidPipeline, "'" + ref + "' is a " + value_kind(v) + ", not a set");
  }

  std::vector<LaurentPoly> polys_arg(const std::string& key) const {
    std::vector<LaurentPoly> out;
    for (const auto& s : arg(key)) out.push_back(LaurentPoly::parse(ring_, s.is_string() ? s.get<std::string>() : s.dump()));
    return out;
  }

  Partition groups_arg(const std::string& key) const {
    Partition out;
    for (const auto& g : arg(key)) {
      std::vector<std::size_t> group;
      for (const auto& i : g) {
        const auto k = i.get<long>();
        if (k < 1) throw Error(ErrorCode::InvalidPipeline, "group indices are 1-based");
        group.push_back(static_cast<std::size_t>(k - 1));
      }
      out.push_back(std::move(group));
    }
    return out;
  }

  GroupTable group_arg(const json& g) const {
    const std::string family = g.at("family").get<std::string>();
    if (family == "cyclic") return GroupTable::cyclic(g.at("n").get<std::size_t>());
    if (family == "elementary_abelian_2") return GroupTable::elementary_abelian_2(g.at("k").get<std::size_t>());
    if (family == "dihedral") return GroupTable::dihedral(g.at("order").get<std::size_t>());
    if (family == "s3") return GroupTable::symmetric_3();
    if (family == "custom") return GroupTable::from_json(g.at("table"));
    throw Error(ErrorCode::InvalidPipeline, "unknown group family '" + family + "'");
  }

  // ---- operations
  Value dispatch(const std::string& op) {
    if (op == "matrix") return literal_matrix(args_);
    if (op == "set") {
      IdempotentSet s{ring_, 0, {}, args_.value("labels", std::vector<std::string>{})};
      for (const auto& m : arg("members")) s.members.push_back(matrix(m));
      if (s.members.empty()) throw Error(ErrorCode::InvalidPipeline, "set without members");
      s.n = s.members.front().rows();
      return s;
    }
    if (op == "group_set") return group_set(group_arg(args_), ring_, args_.value("real", false));
    if (op == "basis_set") {
      const PolyMatrix rows = matrix_arg("rows");
      const std::string method = args_.value("method", std::string("orthonormal"));
      if (method == "orthogonal") return from_orthogonal_basis(rows);
      if (method != "orthonormal") throw Error(ErrorCode::InvalidPipeline, "unknown basis method '" + method + "'");
      return from_orthonormal_basis(rows, args_.contains("groups") ? groups_arg("groups") : Partition{});
    }
    if (op == "rows_set") return from_matrix_rows(matrix_arg("matrix"));
    if (op == "diagonal_set") return diagonal_set(ring_, arg("n").get<std::size_t>());
    if (op == "merge") return merge(set_arg("set"), groups_arg("groups"));
    if (op == "realify") return realify(set_arg("set"));
    if (op == "tensor_sets") return tensor_sets(set_arg("a"), set_arg("b"));
    if (op == "conjugate_set") return conjugate_set(set_arg("set"), matrix_arg("by"));
    if (op == "member") {
      const IdempotentSet s = set_arg("set");
      const auto k = arg("index").get<std::size_t>();
      if (k < 1 || k > s.size()) throw Error(ErrorCode::InvalidPipeline, "member index out of range (1-based)");
      return s.members[k - 1];
    }
    if (op == "monomial_sum") return monomial_sum(set_arg("set"), polys_arg("weights"));
    if (op == "belevitch") return belevitch_block(matrix_arg("v"), args_.value("var", std::string("z")));
    if (op == "spectral_unitary") {
      std::vector<Scalar> units;
      for (const auto& u : arg("units")) units.push_back(Scalar::parse(ring_, u.get<std::string>()));
      return spectral_unitary(matrix_arg("rows"), units);
    }
    if (op == "block_arrangement") return arrangement();
    if (op == "tangle") {
      return tangle(matrix_arg("a"), matrix_arg("b"), TangleVariant::parse(args_.value("variant", std::string("rows"))));
    }
    if (op == "pseudo_from_rows") return pseudo_from_rows(matrix_arg("matrix"), polys_arg("weights"));
    if (op == "monomial_clear") return monomial_clear(matrix_arg("matrix"));
    if (op == "specialize_hadamard") {
      const PolyMatrix w = matrix_arg("matrix");
      Assignment a;
      if (args_.contains("all")) {
        const Scalar v = Scalar::parse(w.ring(), args_["all"].get<std::string>());
        for (const auto& name : w.compact().vars().names()) a.set(name, v);
      }
      const json values = args_.value("values", json::object());
      for (const auto& [name, val] : values.items()) a.set(name, Scalar::parse(w.ring(), val.get<std::string>()));
      return specialize_hadamard(w, a);
    }
    if (op == "compose") {
      std::vector<PolyMatrix> parts;
      for (const auto& p : arg("parts")) parts.push_back(matrix(p));
      const std::string mode = args_.value("mode", std::string("product"));
      if (mode != "product" && mode != "tensor") throw Error(ErrorCode::InvalidPipeline, "mode must be product or tensor");
      return compose(parts, mode == "product" ? ComposeMode::product : ComposeMode::tensor);
    }
    if (op == "adjoint") return adjoint(matrix_arg("matrix"));
    if (op == "transpose") return matrix_arg("matrix").transpose();
    if (op == "embed") {
      const Value& v = lookup(arg("value").get<std::string>());
      if (const auto* m = std::get_if<PolyMatrix>(&v)) return map_entries(*m, ring_);
      if (const auto* s = std::get_if<IdempotentSet>(&v)) {
        IdempotentSet out{ring_, s->n, {}, s->labels};
        for (const auto& m : s->members) out.members.push_back(map_entries(m, ring_));
        return out;
      }
      throw Error(ErrorCode::InvalidPipeline, "embed needs a matrix or a set");
    }
    if (op == "linear_combination") return linear_combination(polys_arg("coeffs"), set_arg("set"));
    if (op == "determinant") return determinant(matrix_arg("matrix"));
    if (op == "rank") return std::vector<std::size_t>{rank(matrix_arg("matrix"))};
    if (op == "ranks") return rank_profile(set_arg("set"));
    if (op == "factor_rank1") return factor_rank1(matrix_arg("matrix"));
    if (op == "verify") {
      const std::string mode = args_.value("mode", std::string("paraunitary"));
      const std::string ref = arg("target").get<std::string>();
      if (mode == "idemset") {
        const Value& v = lookup(ref);
        if (const auto* s = std::get_if<IdempotentSet>(&v)) return verify_set(*s);
        throw Error(ErrorCode::InvalidPipeline, "idemset mode needs a set");
      }
      const PolyMatrix m = matrix(arg("target"));
      if (mode == "paraunitary") return is_paraunitary(m);
      if (mode == "pseudo") {
        VerificationReport r;
        const auto p = is_pseudo_paraunitary(m);
        if (!p) r.fail("W W^* is not a monomial multiple of I");
        return r;
      }
      if (mode == "hadamard") {
        VerificationReport r;
        const auto h = specialize_hadamard(m, Assignment{});
        if (!h.hadamard) r.fail("not a Hadamard matrix");
        return r;
      }
      throw Error(ErrorCode::InvalidPipeline, "unknown verify mode '" + mode + "'");
    }
    throw Error(ErrorCode::InvalidPipeline, "unknown op '" + op + "'");
  }

  Value arrangement() const {
    const IdempotentSet s = set_arg("set");
    ArrangementPlan plan;
    const json& grid = arg("grid");
    if (grid.is_string()) {
      const std::string g = grid.get<std::string>();
      if (g == "circulant") plan.grid = ArrangementPlan::circulant_grid(s.size());
      else if (g == "xor") {
        std::size_t k = 0;
        while ((std::size_t{1} << k) < s.size()) ++k;
        if ((std::size_t{1} << k) != s.size()) throw Error(ErrorCode::NotLatinSquare, "xor grid needs a power-of-two member count");
        plan.grid = ArrangementPlan::group_grid(GroupTable::elementary_abelian_2(k));
      } else throw Error(ErrorCode::InvalidPipeline, "unknown grid '" + g + "'");
    } else if (grid.is_object()) {
      plan.grid = ArrangementPlan::group_grid(group_arg(grid));
    } else {
      plan.grid = grid.get<std::vector<std::vector<std::size_t>>>();
    }
    if (args_.contains("per_member")) {
      plan.cells = ArrangementPlan::cells_by_member(plan.grid, polys_arg("per_member"));
    } else {
      for (const auto& row : arg("cells")) {
        std::vector<LaurentPoly> cells;
        for (const auto& c : row) cells.push_back(LaurentPoly::parse(ring_, c.get<std::string>()));
        plan.cells.push_back(std::move(cells));
      }
    }
    return block_arrangement(s, plan);
  }

  void record_checks(const std::string& op, StepResult& sr) const {
    static const std::set<std::string> paraunitary_ops = {"monomial_sum", "belevitch", "spectral_unitary", "block_arrangement", "tangle"};
    static const std::set<std::string> set_ops = {"set", "group_set", "basis_set", "rows_set", "diagonal_set", "merge", "realify", "tensor_sets", "conjugate_set", "embed"};
    if (const auto* m = std::get_if<PolyMatrix>(&sr.value)) {
      if (paraunitary_ops.count(op)) sr.checks["paraunitary"] = is_paraunitary(*m).ok;
      if (op == "compose") {
        bool parts_ok = true;
        for (const auto& p : arg("parts")) {
          const PolyMatrix pm = matrix(p);
          parts_ok = parts_ok && pm.is_square() && is_paraunitary(pm).ok;
        }
        if (parts_ok) sr.checks["paraunitary"] = is_paraunitary(*m).ok;
      }
      if (op == "pseudo_from_rows") {
        const auto p = is_pseudo_paraunitary(*m);
        sr.checks["pseudo"] = p.has_value() && p->is_one();
      }
    } else if (const auto* s = std::get_if<IdempotentSet>(&sr.value)) {
      if (set_ops.count(op)) sr.checks["idemset"] = verify_set(*s).ok;
    } else if (const auto* c = std::get_if<ClearedForm>(&sr.value)) {
      sr.checks["polynomial"] = !c->q.to_string().empty() && clearing_monomial(c->q).is_one();
      sr.checks["pseudo"] = is_unit_monomial(c->cleared).has_value();
    } else if (const auto* h = std::get_if<HadamardReport>(&sr.value)) {
      sr.checks["hadamard"] = h->hadamard;
    } else if (const auto* r = std::get_if<VerificationReport>(&sr.value)) {
      sr.checks["verify"] = r->ok;
    }
  }

  bool verify_;
  Ring ring_;
  json args_;
  PipelineResult result_;
};

}  // namespace

std::vector<std::string> pipeline_ops() { return Executor::ops(); }

PipelineResult run_pipeline(const json& pipeline, bool verify) {
  Executor ex(pipeline, verify);
  return ex.run(pipeline);
}

}  // namespace paraidem
