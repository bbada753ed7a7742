// paraidem: construct, verify and specialise paraunitary matrices.
// Exit codes: 0 verified, 1 verification failed, 2 input error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "paraidem/catalog.hpp"

using namespace paraidem;
using nlohmann::json;

namespace {

constexpr int kVerified = 0;
constexpr int kFailed = 1;
constexpr int kInputError = 2;

struct Options {
  std::string ring;
  std::int64_t conductor = 0;
  std::int64_t prime = 0;
  std::string out;
  std::string format = "text";
  std::uint64_t seed = 20240611;
};

Ring resolve_ring(const Options& o) {
  if (o.ring.empty()) {
    if (o.conductor) return Ring::cyclotomic(o.conductor);
    if (o.prime) return Ring::prime_field(o.prime);
    return Ring::rational();
  }
  if (o.ring == "cyclotomic") {
    if (!o.conductor) throw Error(ErrorCode::ParseError, "--ring cyclotomic needs --conductor");
    return Ring::cyclotomic(o.conductor);
  }
  if (o.ring == "prime" || o.ring == "prime_field") {
    if (!o.prime) throw Error(ErrorCode::ParseError, "--ring prime needs --prime");
    return Ring::prime_field(o.prime);
  }
  return parse_ring(o.ring);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Comma-separated entries, one row per line; '#' starts a comment.
std::vector<std::vector<std::string>> text_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    line = line.substr(0, line.find('#'));
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<std::string> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) row.push_back(cell);
    rows.push_back(std::move(row));
  }
  return rows;
}

// Matrix JSON, a {"rows", "scale"} literal, or comma-separated text.
PolyMatrix read_matrix(const std::string& path, const Ring& ring) {
  const std::string text = slurp(path);
  const json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) return PolyMatrix::parse(ring, text_rows(text));
  if (j.contains("entries")) return PolyMatrix::from_json(j);
  if (!j.contains("rows")) throw Error(ErrorCode::ParseError, "'" + path + "' is not a matrix file");
  const Ring r = j.contains("ring") ? parse_ring(j["ring"]) : ring;
  std::vector<std::vector<std::string>> rows;
  for (const auto& row : j["rows"]) {
    std::vector<std::string> cells;
    for (const auto& c : row) cells.push_back(c.is_string() ? c.get<std::string>() : c.dump());
    rows.push_back(std::move(cells));
  }
  PolyMatrix m = PolyMatrix::parse(r, rows);
  if (j.contains("scale")) m = m * Scalar::parse(r, j["scale"].get<std::string>());
  return m;
}

IdempotentSet read_set(const std::string& path) {
  const json j = json::parse(slurp(path), nullptr, false);
  if (j.is_discarded() || !j.contains("members")) throw Error(ErrorCode::ParseError, "'" + path + "' is not a set file");
  return IdempotentSet::from_json(j);
}

// "1/2,3" -> {{0}, {1, 2}}
Partition parse_groups(const std::string& spec) {
  Partition out;
  std::istringstream groups(spec);
  std::string g;
  while (std::getline(groups, g, '/')) {
    std::vector<std::size_t> members;
    std::istringstream items(g);
    std::string item;
    while (std::getline(items, item, ',')) {
      std::size_t k = 0;
      try {
        k = std::stoul(item);
      } catch (const std::exception&) {
        throw Error(ErrorCode::ParseError, "bad group spec '" + spec + "'");
      }
      if (k == 0) throw Error(ErrorCode::ParseError, "group indices are 1-based");
      members.push_back(k - 1);
    }
    out.push_back(std::move(members));
  }
  return out;
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw Error(ErrorCode::ParseError, "cannot write '" + o.out + "'");
  f << text << '\n';
}

std::string set_text(const IdempotentSet& s) {
  std::ostringstream os;
  const auto ranks = rank_profile(s);
  for (std::size_t k = 0; k < s.size(); ++k) {
    os << s.labels[k] << " (rank " << ranks[k] << ")\n" << s.members[k].to_string() << "\n";
  }
  return os.str();
}

std::string report_text(const VerificationReport& r) {
  std::ostringstream os;
  os << (r.ok ? "verified" : "FAILED") << "\n";
  for (const auto& f : r.failures) os << "  " << f << "\n";
  for (const auto& [i, j] : r.offending) os << "  offending (" << i + 1 << "," << j + 1 << ")\n";
  if (!r.ok && r.residual) os << "residual:\n" << r.residual->to_string() << "\n";
  return os.str();
}

int finish_set(const Options& o, const IdempotentSet& s) {
  const VerificationReport r = verify_set(s);
  if (!o.out.empty()) {
    emit(o, s.to_json().dump(2));
    std::cout << (o.format == "json" ? r.to_json().dump(2) + "\n" : report_text(r));
  } else if (o.format == "json") {
    emit(o, json{{"set", s.to_json()}, {"verification", r.to_json()}}.dump(2));
  } else {
    emit(o, set_text(s) + report_text(r));
  }
  return r.ok ? kVerified : kFailed;
}

GroupTable group_for(const std::string& family, std::size_t order) {
  if (family == "cyclic") return GroupTable::cyclic(order);
  if (family == "dihedral") return GroupTable::dihedral(order);
  if (family == "s3") return GroupTable::symmetric_3();
  if (family == "elementary_abelian_2") {
    std::size_t k = 0;
    while ((std::size_t{1} << k) < order) ++k;
    if ((std::size_t{1} << k) != order) throw Error(ErrorCode::InvalidGroup, "C2^k needs a power-of-two order");
    return GroupTable::elementary_abelian_2(k);
  }
  throw Error(ErrorCode::InvalidGroup, "unknown family '" + family + "'");
}

// A random signed permutation conjugating the diagonal set, merged into `parts` groups.
IdempotentSet random_set(const Ring& ring, std::size_t n, std::size_t parts, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::vector<Scalar>> rows(n, std::vector<Scalar>(n, Scalar::zero(ring)));
  for (std::size_t i = 0; i < n; ++i) rows[i][perm[i]] = (rng() & 1) ? Scalar::one(ring) : -Scalar::one(ring);
  const IdempotentSet base = conjugate_set(diagonal_set(ring, n), PolyMatrix::from_scalars(ring, rows));
  parts = std::clamp<std::size_t>(parts, 1, n);
  Partition groups(parts);
  for (std::size_t i = 0; i < n; ++i) groups[i < parts ? i : rng() % parts].push_back(i);
  return merge(base, groups);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"paraidem: paraunitary matrices from complete orthogonal sets of idempotents"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--ring", o.ring, "rational | cyclotomic | prime, or a shorthand like cyclotomic:8, prime:7");
  app.add_option("--conductor", o.conductor, "conductor N of Q(zeta_N)");
  app.add_option("--prime", o.prime, "characteristic p of F_p");
  app.add_option("--out", o.out, "write the main output to this file");
  app.add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--seed", o.seed, "seed for randomised constructions");

  int status = kVerified;

  // idem
  auto* idem = app.add_subcommand("idem", "build a complete orthogonal set of idempotents");
  idem->require_subcommand(1);
  std::string family;
  std::size_t order = 0;
  bool real = false;
  auto* idem_group = idem->add_subcommand("group", "group-ring idempotents of a built-in group");
  idem_group->add_option("--family", family, "cyclic | elementary_abelian_2 | dihedral | s3")->required();
  idem_group->add_option("--order", order, "group order");
  idem_group->add_flag("--real", real, "merge complex-conjugate pairs");
  idem_group->callback([&] {
    if (family != "s3" && order == 0) throw Error(ErrorCode::ParseError, "--order is required");
    status = finish_set(o, group_set(group_for(family, family == "s3" ? 6 : order), resolve_ring(o), real));
  });

  std::string vectors, groups, method = "orthonormal";
  auto* idem_basis = idem->add_subcommand("basis", "projections v_i^* v_i of basis rows");
  idem_basis->add_option("--vectors", vectors, "matrix file whose rows form the basis")->required();
  idem_basis->add_option("--groups", groups, "merge groups, e.g. 1/2,3");
  idem_basis->add_option("--method", method, "orthonormal | orthogonal")->check(CLI::IsMember({"orthonormal", "orthogonal"}));
  idem_basis->callback([&] {
    const PolyMatrix rows = read_matrix(vectors, resolve_ring(o));
    IdempotentSet s = method == "orthogonal" ? from_orthogonal_basis(rows) : from_orthonormal_basis(rows);
    if (!groups.empty()) s = merge(s, parse_groups(groups));
    status = finish_set(o, s);
  });

  std::size_t n = 0;
  auto* idem_diag = idem->add_subcommand("diagonal", "the matrix units E_11 .. E_nn");
  idem_diag->add_option("--n", n, "size")->required();
  idem_diag->callback([&] { status = finish_set(o, diagonal_set(resolve_ring(o), n)); });

  std::string matrix_file;
  auto* idem_rows = idem->add_subcommand("rows", "rank-1 projections from the rows of a paraunitary matrix");
  idem_rows->add_option("--matrix", matrix_file, "matrix file")->required();
  idem_rows->callback([&] { status = finish_set(o, from_matrix_rows(read_matrix(matrix_file, resolve_ring(o)))); });

  std::string set_file;
  auto* idem_merge = idem->add_subcommand("merge", "sum members within groups");
  idem_merge->add_option("--set", set_file, "set file")->required();
  idem_merge->add_option("--groups", groups, "e.g. 1/2,3")->required();
  idem_merge->callback([&] { status = finish_set(o, merge(read_set(set_file), parse_groups(groups))); });

  auto* idem_real = idem->add_subcommand("realify", "merge complex-conjugate members");
  idem_real->add_option("--set", set_file, "set file")->required();
  idem_real->callback([&] { status = finish_set(o, realify(read_set(set_file))); });

  std::size_t parts = 2;
  auto* idem_random = idem->add_subcommand("random", "a seeded random set (signed permutation conjugate of the diagonal set)");
  idem_random->add_option("--n", n, "size")->required();
  idem_random->add_option("--parts", parts, "number of members");
  idem_random->callback([&] { status = finish_set(o, random_set(resolve_ring(o), n, parts, o.seed)); });

  // build
  std::string pipeline_file;
  auto* build = app.add_subcommand("build", "run a construction pipeline");
  build->add_option("pipeline", pipeline_file, "pipeline JSON file")->required();
  build->callback([&] {
    const json p = json::parse(slurp(pipeline_file), nullptr, false);
    if (p.is_discarded()) throw Error(ErrorCode::ParseError, "'" + pipeline_file + "' is not JSON");
    const PipelineResult r = run_pipeline(p, true);
    if (o.format == "json") {
      emit(o, r.to_json().dump(2));
    } else {
      std::ostringstream os;
      for (const auto& s : r.steps) {
        os << s.bind << " = " << s.op << " [" << value_kind(s.value) << "]";
        for (const auto& [name, ok] : s.checks.items()) os << " " << name << "=" << (ok.get<bool>() ? "ok" : "FAILED");
        os << "\n";
        if (const auto* m = std::get_if<PolyMatrix>(&s.value)) os << m->to_string() << "\n";
        if (const auto* st = std::get_if<IdempotentSet>(&s.value)) os << set_text(*st);
        if (const auto* pl = std::get_if<LaurentPoly>(&s.value)) os << pl->to_string() << "\n";
        if (std::holds_alternative<ClearedForm>(s.value) || std::holds_alternative<HadamardReport>(s.value) ||
            std::holds_alternative<VerificationReport>(s.value) || std::holds_alternative<std::vector<std::size_t>>(s.value)) {
          os << value_to_json(s.value).dump() << "\n";
        }
      }
      os << (r.all_checks_ok() ? "all checks passed" : "some checks FAILED") << "\n";
      emit(o, os.str());
    }
    status = r.all_checks_ok() ? kVerified : kFailed;
  });

  // verify
  std::string mode = "paraunitary", input;
  auto* verify = app.add_subcommand("verify", "check a matrix or set file");
  verify->add_option("file", input, "matrix or set file")->required();
  verify->add_option("--mode", mode, "paraunitary | pseudo | hadamard | idemset")
      ->check(CLI::IsMember({"paraunitary", "pseudo", "hadamard", "idemset"}));
  verify->callback([&] {
    json out;
    bool ok = false;
    if (mode == "idemset") {
      const VerificationReport r = verify_set(read_set(input));
      ok = r.ok;
      out = r.to_json();
      if (o.format == "text") out = report_text(r);
    } else {
      const PolyMatrix m = read_matrix(input, resolve_ring(o));
      if (mode == "paraunitary") {
        const VerificationReport r = is_paraunitary(m);
        ok = r.ok;
        out = o.format == "json" ? r.to_json() : json(report_text(r));
      } else if (mode == "pseudo") {
        const auto p = is_pseudo_paraunitary(m);
        ok = p.has_value();
        out = o.format == "json" ? json{{"ok", ok}, {"multiple", p ? json(p->to_string()) : json(nullptr)}}
                                 : json(ok ? "verified: W W^* = (" + p->to_string() + ") I\n" : std::string("FAILED: W W^* is not a monomial times I\n"));
      } else {
        const HadamardReport h = specialize_hadamard(m, Assignment{});
        ok = h.hadamard;
        out = o.format == "json" ? h.to_json() : json(std::string(ok ? "verified" : "FAILED") + "\n" + h.to_json().dump(2) + "\n");
      }
    }
    emit(o, out.is_string() ? out.get<std::string>() : out.dump(2));
    status = ok ? kVerified : kFailed;
  });

  // specialize
  std::vector<std::string> values;
  std::string all;
  auto* spec = app.add_subcommand("specialize", "substitute unit-modulus values and test for a Hadamard matrix");
  spec->add_option("file", input, "matrix file")->required();
  spec->add_option("--value", values, "var=value (repeatable)");
  spec->add_option("--all", all, "value for every variable");
  spec->callback([&] {
    const PolyMatrix m = read_matrix(input, resolve_ring(o));
    Assignment a;
    if (!all.empty()) {
      for (const auto& v : m.compact().vars().names()) a.set(v, Scalar::parse(m.ring(), all));
    }
    for (const auto& kv : values) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw Error(ErrorCode::ParseError, "expected var=value, got '" + kv + "'");
      a.set(kv.substr(0, eq), Scalar::parse(m.ring(), kv.substr(eq + 1)));
    }
    const HadamardReport h = specialize_hadamard(m, a);
    if (o.format == "json") {
      emit(o, h.to_json().dump(2));
    } else {
      std::ostringstream os;
      os << "H =\n" << h.h.to_string() << "\nH' = (" << h.scale.to_string() << ") H =\n" << h.h_int.to_string() << "\n";
      os << "unitary: " << (h.unitary ? "yes" : "no") << "\nhadamard: " << (h.hadamard ? "yes" : "no") << "\n";
      os << "butson: " << (h.butson_q ? "H(" + std::to_string(*h.butson_q) + "," + std::to_string(m.rows()) + ")" : std::string("none")) << "\n";
      emit(o, os.str());
    }
    status = h.hadamard ? kVerified : kFailed;
  });

  // det, rank
  auto* det = app.add_subcommand("det", "determinant of a square matrix");
  det->add_option("file", input, "matrix file")->required();
  det->callback([&] {
    const LaurentPoly d = determinant(read_matrix(input, resolve_ring(o)));
    emit(o, o.format == "json" ? json{{"determinant", d.to_string()}}.dump(2) : d.to_string());
  });
  auto* rnk = app.add_subcommand("rank", "rank of a scalar matrix, or the rank profile of a set file");
  rnk->add_option("file", input, "matrix or set file")->required();
  rnk->callback([&] {
    const json j = json::parse(slurp(input), nullptr, false);
    if (!j.is_discarded() && j.contains("members")) {
      const auto ranks = rank_profile(IdempotentSet::from_json(j));
      std::ostringstream os;
      for (std::size_t k = 0; k < ranks.size(); ++k) os << (k ? " " : "") << ranks[k];
      emit(o, o.format == "json" ? json{{"ranks", ranks}}.dump(2) : os.str());
    } else {
      const std::size_t r = rank(read_matrix(input, resolve_ring(o)));
      emit(o, o.format == "json" ? json{{"rank", r}}.dump(2) : std::to_string(r));
    }
  });

  // catalog
  std::vector<std::string> ids;
  auto* cat = app.add_subcommand("catalog", "worked examples with stored expectations");
  cat->require_subcommand(1);
  auto* cat_list = cat->add_subcommand("list", "list entries");
  cat_list->callback([&] {
    if (o.format == "json") {
      json out = json::array();
      for (const auto& e : catalog()) out.push_back({{"id", e.id}, {"title", e.title}});
      emit(o, out.dump(2));
    } else {
      std::ostringstream os;
      for (const auto& e : catalog()) os << e.id << "  " << e.title << "\n";
      emit(o, os.str());
    }
  });
  const auto run_or_diff = [&](bool diff) {
    const auto outcomes = run_catalog(ids);
    bool ok = true;
    std::ostringstream os;
    json arr = json::array();
    for (const auto& r : outcomes) {
      ok = ok && r.ok;
      arr.push_back(r.to_json());
      if (diff) {
        for (const auto& m : r.mismatches) os << r.id << " " << m.where << "\n  - " << m.expected << "\n  + " << m.actual << "\n";
      } else {
        os << (r.ok ? "PASS " : "FAIL ") << r.id << " (" << r.compared << " compared)\n";
      }
    }
    if (diff && ok) os << "no differences\n";
    emit(o, o.format == "json" ? arr.dump(2) : os.str());
    status = ok ? kVerified : kFailed;
  };
  auto* cat_run = cat->add_subcommand("run", "run entries and compare with stored values");
  cat_run->add_option("--id", ids, "entry id (repeatable); default all");
  cat_run->callback([&] { run_or_diff(false); });
  auto* cat_diff = cat->add_subcommand("diff", "show differences from stored values");
  cat_diff->add_option("--id", ids, "entry id (repeatable); default all");
  cat_diff->callback([&] { run_or_diff(true); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return status;
}
