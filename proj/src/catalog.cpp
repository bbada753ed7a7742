#include "paraidem/catalog.hpp"

#include <algorithm>
#include <future>

#include "catalog_data.hpp"

namespace paraidem {

using nlohmann::json;

json EntryOutcome::to_json() const {
  json mm = json::array();
  for (const auto& m : mismatches) mm.push_back({{"where", m.where}, {"expected", m.expected}, {"actual", m.actual}});
  return {{"id", id}, {"ok", ok}, {"compared", compared}, {"checks", checks}, {"mismatches", mm}};
}

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = [] {
    std::vector<CatalogEntry> out;
    for (const auto& j : json::parse(detail::catalog_json)) {
      CatalogEntry e;
      e.id = j.at("id").get<std::string>();
      e.title = j.value("title", "");
      e.pipeline = j.at("pipeline");
      if (j.contains("expect")) e.expect = j["expect"];
      if (j.contains("error")) e.error = j["error"];
      out.push_back(std::move(e));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    return out;
  }();
  return entries;
}

const CatalogEntry& catalog_entry(const std::string& id) {
  for (const auto& e : catalog()) {
    if (e.id == id) return e;
  }
  throw Error(ErrorCode::UnknownBinding, "no catalog entry '" + id + "'");
}

namespace {

std::string show(const PolyMatrix& m) { return m.to_string(); }

PolyMatrix expected_matrix(const Ring& ring, const json& spec) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : spec.at("rows")) rows.push_back(r.get<std::vector<std::string>>());
  PolyMatrix m = PolyMatrix::parse(ring, rows);
  if (spec.contains("scale")) m = m * Scalar::parse(ring, spec["scale"].get<std::string>());
  return m;
}

class Comparator {
 public:
  Comparator(const PipelineResult& result, EntryOutcome& out) : result_(result), out_(out) {}

  void binding(const std::string& name, const json& spec) {
    const Value& v = result_.at(name);
    if (const auto* m = std::get_if<PolyMatrix>(&v)) {
      matrix(name, spec, *m);
    } else if (const auto* s = std::get_if<IdempotentSet>(&v)) {
      set(name, spec, *s);
    } else if (const auto* p = std::get_if<LaurentPoly>(&v)) {
      poly(name, spec.at("poly"), *p);
    } else if (const auto* r = std::get_if<std::vector<std::size_t>>(&v)) {
      same(name + ".ranks", spec.at("ranks").dump(), json(*r).dump());
    } else if (const auto* c = std::get_if<ClearedForm>(&v)) {
      if (spec.contains("q")) matrix(name + ".q", spec["q"], c->q);
      if (spec.contains("m")) poly(name + ".m", spec["m"], c->m);
      if (spec.contains("p")) poly(name + ".p", spec["p"], c->p);
      if (spec.contains("cleared")) poly(name + ".cleared", spec["cleared"], c->cleared);
    } else if (const auto* h = std::get_if<HadamardReport>(&v)) {
      if (spec.contains("h")) matrix(name + ".h", spec["h"], h->h);
      if (spec.contains("h_int")) matrix(name + ".h_int", spec["h_int"], h->h_int);
      if (spec.contains("hadamard")) same(name + ".hadamard", spec["hadamard"].dump(), json(h->hadamard).dump());
      if (spec.contains("butson_q")) same(name + ".butson_q", spec["butson_q"].dump(), h->butson_q ? std::to_string(*h->butson_q) : "null");
      if (spec.contains("scale")) {
        const Scalar want = Scalar::parse(h->scale.ring(), spec["scale"].get<std::string>());
        same(name + ".scale", want.to_string(), h->scale.to_string());
      }
    } else if (const auto* r = std::get_if<VerificationReport>(&v)) {
      same(name + ".ok", spec.at("ok").dump(), json(r->ok).dump());
    }
  }

 private:
  void same(const std::string& where, const std::string& want, const std::string& got) {
    ++out_.compared;
    if (want != got) out_.mismatches.push_back({where, want, got});
  }

  void poly(const std::string& where, const json& spec, const LaurentPoly& p) {
    const LaurentPoly want = LaurentPoly::parse(p.ring(), spec.get<std::string>());
    ++out_.compared;
    if (!(want == p)) out_.mismatches.push_back({where, want.to_string(), p.to_string()});
  }

  void matrix(const std::string& where, const json& spec, const PolyMatrix& m) {
    if (spec.contains("size")) same(where + ".size", spec["size"].dump(), json({m.rows(), m.cols()}).dump());
    if (spec.contains("var_count")) same(where + ".var_count", spec["var_count"].dump(), std::to_string(m.compact().vars().size()));
    if (spec.contains("equals")) {
      const std::string other = spec["equals"].get<std::string>();
      const auto* o = std::get_if<PolyMatrix>(&result_.at(other));
      ++out_.compared;
      if (!o || !(*o == m)) out_.mismatches.push_back({where, "equal to " + other, o ? show(*o) + " vs " + show(m) : "not a matrix"});
    }
    if (!spec.contains("rows")) return;
    const PolyMatrix want = expected_matrix(m.ring(), spec);
    ++out_.compared;
    if (want.rows() != m.rows() || want.cols() != m.cols()) {
      out_.mismatches.push_back({where, show(want), show(m)});
      return;
    }
    const auto ws = want.entry_strings();
    const auto gs = m.entry_strings();
    for (std::size_t i = 0; i < m.rows(); ++i) {
      for (std::size_t j = 0; j < m.cols(); ++j) {
        if (!(want.at(i, j) == m.at(i, j))) {
          out_.mismatches.push_back({where + "[" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "]", ws[i][j], gs[i][j]});
        }
      }
    }
  }

  void set(const std::string& where, const json& spec, const IdempotentSet& s) {
    if (spec.contains("labels")) same(where + ".labels", spec["labels"].dump(), json(s.labels).dump());
    if (spec.contains("ranks")) same(where + ".ranks", spec["ranks"].dump(), json(rank_profile(s)).dump());
    if (!spec.contains("members")) return;
    const json& members = spec["members"];
    if (members.size() > s.size()) {
      same(where + ".size", std::to_string(members.size()), std::to_string(s.size()));
      return;
    }
    for (std::size_t k = 0; k < members.size(); ++k) {
      if (!members[k].is_null()) matrix(where + "." + s.labels.at(k), members[k], s.members[k]);
    }
  }

  const PipelineResult& result_;
  EntryOutcome& out_;
};

}  // namespace

EntryOutcome run_entry(const CatalogEntry& entry) {
  EntryOutcome out;
  out.id = entry.id;
  try {
    const PipelineResult result = run_pipeline(entry.pipeline, true);
    for (const auto& s : result.steps) {
      if (!s.checks.empty()) out.checks[s.bind] = s.checks;
      for (const auto& [name, ok] : s.checks.items()) {
        if (!ok.get<bool>()) out.mismatches.push_back({s.bind + "." + name, "true", "false"});
      }
    }
    if (!entry.error.is_null()) {
      out.mismatches.push_back({"error", entry.error.at("code").get<std::string>(), "no error"});
    } else {
      Comparator cmp(result, out);
      for (const auto& [name, spec] : entry.expect.items()) cmp.binding(name, spec);
    }
  } catch (const Error& e) {
    const std::string want = entry.error.is_null() ? "no error" : entry.error.at("code").get<std::string>();
    const std::string got(to_string(e.code()));
    ++out.compared;
    if (want != got) {
      out.mismatches.push_back({"error", want, e.what()});
    } else if (entry.error.contains("step")) {
      const std::string tag = "step " + std::to_string(entry.error["step"].get<int>()) + " ";
      if (std::string(e.what()).find(tag) == std::string::npos) out.mismatches.push_back({"error.step", tag, e.what()});
    }
  }
  out.ok = out.mismatches.empty();
  return out;
}

std::vector<EntryOutcome> run_catalog(const std::vector<std::string>& ids) {
  std::vector<const CatalogEntry*> chosen;
  if (ids.empty()) {
    for (const auto& e : catalog()) chosen.push_back(&e);
  } else {
    for (const auto& id : ids) chosen.push_back(&catalog_entry(id));
    std::sort(chosen.begin(), chosen.end(), [](const auto* a, const auto* b) { return a->id < b->id; });
  }
  std::vector<std::future<EntryOutcome>> jobs;
  for (const auto* e : chosen) jobs.push_back(std::async(std::launch::async, [e] { return run_entry(*e); }));
  std::vector<EntryOutcome> out;
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

}  // namespace paraidem
