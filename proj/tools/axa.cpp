#include "axa/gen.hpp"
#include "axa/io.hpp"
#include "axa/manifold.hpp"

#include "CLI11.hpp"

#include <cstdint>
#include <iostream>
#include <string>

namespace {

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitUsage = 3;

int status_exit(axa::Status s) {
  switch (s) {
    case axa::Status::Yes: return kExitYes;
    case axa::Status::No: return kExitNo;
    case axa::Status::Unknown: return kExitUnknown;
  }
  return kExitUsage;
}

void print_matrix(const std::string& label, const axa::IntMatrix& m) {
  std::cout << label << ":\n";
  std::string s = m.str();
  size_t start = 0;
  while (start <= s.size()) {
    size_t end = s.find('\n', start);
    std::cout << "  " << s.substr(start, end == std::string::npos ? end : end - start) << "\n";
    if (end == std::string::npos) break;
    start = end + 1;
  }
}

int cmd_validate(const std::string& path) {
  axa::InvariantFile f = axa::parse_invariant_file(path);
  std::cout << "class: " << f.cls << "\n";
  if (f.cls == 'S') {
    const axa::SInvariant& s = f.s();
    std::cout << "n: " << s.tube.dim() << "\nk: " << s.tube.k() << "\nt_u: " << axa::t_u(s.tube)
              << "\n";
    axa::SValidation v = axa::validate_s(s);
    for (const auto& msg : v.failures) std::cout << "fail: " << msg << "\n";
    std::cout << (v.ok ? "valid\n" : "invalid\n");
    return v.ok ? kExitYes : kExitNo;
  }
  if (f.cls == 'P' || f.cls == 'M') {
    const axa::ClassGraph& g = f.graph();
    std::cout << "n: " << g.n << "\nk: " << g.k() << "\nedges: " << g.edges.size() << "\n";
    axa::ValidationReport r = axa::validate_graph(g);
    for (const auto& item : r.items)
      std::cout << "condition " << item.condition << ": " << (item.pass ? "pass" : "fail")
                << (item.pass || item.message.empty() ? "" : " (" + item.message + ")") << "\n";
    std::cout << (r.ok ? "valid\n" : "invalid\n");
    return r.ok ? kExitYes : kExitNo;
  }
  if (f.cls == 'A') {
    const axa::Triple& t = f.triple();
    std::cout << "n: " << t.dim() << "\nepsilon: " << t.epsilon()
              << "\npoints: " << t.points.size() << "\nvalid\n";
    return kExitYes;
  }
  // realized system
  axa::check_realized(f.realized());
  std::cout << "system: " << f.realized().cls << "\nblocks: " << f.realized().blocks.size()
            << "\nconnectors: " << f.realized().connectors.size() << "\nvalid\n";
  return kExitYes;
}

int cmd_equiv(const std::string& p1, const std::string& p2, long bound) {
  axa::InvariantFile f1 = axa::parse_invariant_file(p1);
  axa::InvariantFile f2 = axa::parse_invariant_file(p2);
  if (f1.cls != f2.cls) {
    std::cerr << "error: cannot compare class " << f1.cls << " with class " << f2.cls << "\n";
    return kExitUsage;
  }
  if (f1.cls == 'S') {
    axa::TubeVerdict v = axa::decide_tube_equivalence(f1.s(), f2.s(), bound);
    std::cout << "status: " << axa::status_name(v.status) << "\n";
    if (v.status == axa::Status::No) std::cout << "certificate: " << v.certificate << "\n";
    if (v.status == axa::Status::Yes) {
      std::cout << "sign: " << (v.common_sign > 0 ? "+1" : "-1") << "\npermutation:";
      for (int p : v.permutation) std::cout << " " << p;
      std::cout << "\n";
      for (size_t i = 0; i < v.witnesses.size(); ++i)
        print_matrix("witness[" + std::to_string(i) + "]", v.witnesses[i]);
    }
    return status_exit(v.status);
  }
  if (f1.cls == 'P' || f1.cls == 'M') {
    axa::CommensurabilityVerdict v = axa::decide_commensurable(f1.graph(), f2.graph(), bound);
    std::cout << "status: " << axa::status_name(v.status) << "\n";
    if (v.status == axa::Status::No) std::cout << "certificate: " << v.certificate << "\n";
    if (v.status == axa::Status::Yes) {
      std::cout << "sign: " << (v.common_sign > 0 ? "+1" : "-1") << "\ngroup-bijection:";
      for (int p : v.group_bijection) std::cout << " " << p;
      std::cout << "\n";
      for (size_t i = 0; i < v.group_witnesses.size(); ++i) {
        std::cout << "vertex-map[" << i << "]:";
        for (int m : v.group_witnesses[i].vertex_map) std::cout << " " << m;
        std::cout << "\n";
        print_matrix("witness[" + std::to_string(i) + "]", v.group_witnesses[i].zeta);
      }
    }
    return status_exit(v.status);
  }
  if (f1.cls == 'A') {
    axa::ConjugacyVerdict v = axa::decide_triple_equivalence(f1.triple(), f2.triple(),
                                                            axa::SignConstraint::any(), bound);
    std::cout << "status: " << axa::status_name(v.status) << "\n";
    if (v.status == axa::Status::No)
      std::cout << "certificate: " << axa::certificate_name(v.certificate) << "\n";
    if (v.witness) print_matrix("witness", *v.witness);
    return status_exit(v.status);
  }
  std::cerr << "error: equiv does not apply to realized systems\n";
  return kExitUsage;
}

int cmd_manifold(const std::string& path) {
  axa::InvariantFile f = axa::parse_invariant_file(path);
  axa::ManifoldDescription m;
  if (f.cls == 'S') {
    axa::SValidation v = axa::validate_s(f.s());
    if (!v.ok) {
      std::cout << "invalid: " << v.failures.front() << "\n";
      return kExitNo;
    }
    m = axa::manifold_of_s(f.s());
  } else if (f.cls == 'P' || f.cls == 'M') {
    axa::ValidationReport r = axa::validate_graph(f.graph());
    if (!r.ok) {
      for (const auto& item : r.items)
        if (!item.pass) {
          std::cout << "invalid: " << item.condition << "\n";
          return kExitNo;
        }
    }
    m = axa::manifold_of_graph(f.graph());
  } else {
    std::cerr << "error: manifold applies to classes S, P and M\n";
    return kExitUsage;
  }
  std::cout << "n: " << m.n << "\nk: " << m.torus_count << "\ng: " << m.handle_count << "\n";
  std::cout << "manifold: " << m.str() << "\n";
  return kExitYes;
}

int cmd_realize(const std::string& path) {
  axa::InvariantFile f = axa::parse_invariant_file(path);
  axa::RealizedSystem sys;
  if (f.cls == 'S')
    sys = axa::realize(f.s());
  else if (f.cls == 'P' || f.cls == 'M')
    sys = axa::realize(f.graph());
  else {
    std::cerr << "error: realize applies to classes S, P and M\n";
    return kExitUsage;
  }
  std::cout << axa::dump(axa::serialize(sys));
  return kExitYes;
}

int cmd_extract(const std::string& path) {
  axa::InvariantFile f = axa::parse_invariant_file(path);
  if (f.cls != 'R') {
    std::cerr << "error: extract applies to realized-system files\n";
    return kExitUsage;
  }
  auto inv = axa::extract_invariant(f.realized());
  if (std::holds_alternative<axa::SInvariant>(inv))
    std::cout << axa::dump(axa::serialize(std::get<axa::SInvariant>(inv)));
  else
    std::cout << axa::dump(axa::serialize(std::get<axa::ClassGraph>(inv)));
  return kExitYes;
}

int cmd_fixed_points(const std::string& matrix_text, long power) {
  axa::Json jm;
  try {
    jm = axa::Json::parse(matrix_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw axa::ParseError(std::string("--matrix: ") + e.what());
  }
  axa::IntMatrix m = axa::io_detail::get_matrix(jm, "matrix");
  char eps = 'a';
  axa::AnosovCheck c = axa::check_anosov(m, 'a');
  if (!c.ok() && c.reject == axa::AnosovReject::EpsilonMismatch) {
    eps = 'r';
    c = axa::check_anosov(m, 'r');
  }
  if (!c.ok())
    throw axa::InvalidInvariant(std::string(axa::reject_name(c.reject)) + " (" + c.detail + ")");
  axa::PointSet ps = axa::periodic_points(*c.value, power);
  std::cout << "n: " << m.dim() << "\nepsilon: " << eps << "\npower: " << power
            << "\ncount: " << ps.size() << "\n";
  for (size_t i = 0; i < ps.points.size(); ++i)
    std::cout << "point: " << axa::point_to_string(ps.points[i]) << " period " << ps.periods[i]
              << "\n";
  return kExitYes;
}

int cmd_conjugate(const std::string& p1, const std::string& p2, const std::string& sign,
                  long bound) {
  axa::InvariantFile f1 = axa::parse_invariant_file(p1);
  axa::InvariantFile f2 = axa::parse_invariant_file(p2);
  if (f1.cls != 'A' || f2.cls != 'A') {
    std::cerr << "error: conjugate expects class A (single triple) files\n";
    return kExitUsage;
  }
  axa::SignConstraint sc = axa::sign_constraint_from_string(sign);
  if (sc.mode == axa::SignMode::SameAsPartner) sc = axa::SignConstraint::any();
  axa::ConjugacyVerdict v = axa::decide_triple_equivalence(f1.triple(), f2.triple(), sc, bound);
  std::cout << "status: " << axa::status_name(v.status) << "\n";
  if (v.status == axa::Status::No)
    std::cout << "certificate: " << axa::certificate_name(v.certificate) << "\n";
  if (v.status == axa::Status::Yes) {
    std::cout << "signs:" << (v.plus_achievable ? " +1" : "") << (v.minus_achievable ? " -1" : "")
              << "\n";
    print_matrix("witness", *v.witness);
  }
  if (v.status == axa::Status::Unknown) std::cout << "bound: " << v.search_bound << "\n";
  return status_exit(v.status);
}

int cmd_gen(const std::string& cls, int n, int k, std::uint64_t seed) {
  if (cls == "S") {
    std::cout << axa::dump(axa::serialize(axa::gen_s(n, k, seed)));
  } else if (cls == "P") {
    std::cout << axa::dump(axa::serialize(axa::gen_p(n, k, seed)));
  } else if (cls == "M") {
    std::cout << axa::dump(axa::serialize(axa::gen_m(n, k, seed)));
  } else {
    std::cerr << "error: --class must be S, P or M\n";
    return kExitUsage;
  }
  return kExitYes;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"decision tools for codimension one toral invariants"};
  app.require_subcommand(1);

  std::string file1, file2, sign = "any", gen_class, matrix_text;
  long bound = 10, power = 1;
  int gen_n = 2, gen_k = 2;
  std::uint64_t gen_seed = 0;

  auto* validate = app.add_subcommand("validate", "check an invariant file");
  validate->add_option("file", file1)->required();

  auto* equiv = app.add_subcommand("equiv", "decide equivalence of two invariants");
  equiv->add_option("file1", file1)->required();
  equiv->add_option("file2", file2)->required();
  equiv->add_option("--bound", bound, "search bound");

  auto* manifold = app.add_subcommand("manifold", "print the supporting manifold");
  manifold->add_option("file", file1)->required();

  auto* realize = app.add_subcommand("realize", "build a realized system from an invariant");
  realize->add_option("file", file1)->required();

  auto* extract = app.add_subcommand("extract", "read an invariant back from a realized system");
  extract->add_option("file", file1)->required();

  auto* fixed = app.add_subcommand("fixed-points", "periodic points of a toral automorphism");
  fixed->add_option("--matrix", matrix_text, "matrix as a JSON array of rows")->required();
  fixed->add_option("--power", power, "report fixed points of the m-th power");

  auto* conjugate = app.add_subcommand("conjugate", "decide triple conjugacy");
  conjugate->add_option("file1", file1)->required();
  conjugate->add_option("file2", file2)->required();
  conjugate->add_option("--sign", sign, "any|positive|negative|same");
  conjugate->add_option("--bound", bound, "search bound");

  auto* gen = app.add_subcommand("gen", "generate a pseudorandom valid invariant");
  gen->add_option("--class", gen_class, "S|P|M")->required();
  gen->add_option("--n", gen_n, "torus dimension")->required();
  gen->add_option("--k", gen_k, "number of basic sets")->required();
  gen->add_option("--seed", gen_seed, "generator seed")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (validate->parsed()) return cmd_validate(file1);
    if (equiv->parsed()) return cmd_equiv(file1, file2, bound);
    if (manifold->parsed()) return cmd_manifold(file1);
    if (realize->parsed()) return cmd_realize(file1);
    if (extract->parsed()) return cmd_extract(file1);
    if (fixed->parsed()) return cmd_fixed_points(matrix_text, power);
    if (conjugate->parsed()) return cmd_conjugate(file1, file2, sign, bound);
    if (gen->parsed()) return cmd_gen(gen_class, gen_n, gen_k, gen_seed);
  } catch (const axa::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const axa::InvalidInvariant& e) {
    std::cerr << "invalid: " << e.what() << "\n";
    return kExitNo;
  } catch (const axa::RealizeError& e) {
    std::cerr << "invalid: " << e.what() << "\n";
    return kExitNo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
