#include <openssl/evp.h>

#include <CLI11.hpp>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "latkit/auto_type.hpp"
#include "latkit/bounds.hpp"
#include "latkit/cyclotomic.hpp"
#include "latkit/enumeration.hpp"
#include "latkit/glue.hpp"
#include "latkit/gram_io.hpp"
#include "latkit/isometry.hpp"
#include "latkit/reduction.hpp"

using namespace latkit;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string subcommand;
  std::vector<std::string> inputs;
  std::uint64_t seed = 1;
  long precision_bits = 64;
  std::size_t enum_cap = 5'000'000;
  std::size_t backtrack_cap = 16;
  std::string threshold = "6";
  std::size_t loops = 1000;
  std::size_t phases = 2;
  std::string rules_path;
  std::string bounds_path;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return out.str();
}

mpq_class parse_rational(const std::string& s) {
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw UsageError("not a rational number: " + s);
  q.canonicalize();
  return q;
}

IntVector parse_vector(const std::string& s) {
  std::istringstream in(s);
  IntVector v;
  std::string tok;
  while (in >> tok) {
    mpz_class z;
    if (z.set_str(tok, 10) != 0) throw UsageError("not an integer: " + tok);
    v.push_back(z);
  }
  return v;
}

EnumConfig enum_config(const RunConfig& rc) {
  EnumConfig e;
  e.max_vectors = rc.enum_cap;
  return e;
}

IsometryConfig iso_config(const RunConfig& rc) {
  IsometryConfig c;
  c.backtrack_cap = rc.backtrack_cap;
  c.enum_cfg = enum_config(rc);
  return c;
}

BoundsConfig bounds_config(const RunConfig& rc) {
  BoundsConfig b;
  b.start_prec = static_cast<mpfr_prec_t>(rc.precision_bits);
  return b;
}

void print_header(std::ostream& out, const RunConfig& rc) {
  out << "version " << LATKIT_VERSION << "\n";
  out << "subcommand " << rc.subcommand << "\n";
  out << "seed " << rc.seed << "\n";
  for (const auto& p : rc.inputs) out << "input " << p << " sha256 " << sha256_hex(read_file(p)) << "\n";
}

void print_gram_block(std::ostream& out, const RatMatrix& g) { out << format_gram(g); }

mpq_class min_norm(const RatMatrix& g, const RunConfig& rc) { return minimum(g, enum_config(rc)).min; }

void print_class(std::ostream& out, const std::string& tag, std::size_t i, const Lattice& l, const RunConfig& rc) {
  Fingerprint fp = fingerprint(l.gram(), min_norm(l.gram(), rc), enum_config(rc));
  out << "# " << tag << " " << i << " " << fp.to_string() << "\n";
  print_gram_block(out, l.gram());
}

int cmd_reduce(const RunConfig& rc, std::ostream& out) {
  RatMatrix g = read_gram_file(rc.inputs[0]).matrix;
  RedLoopConfig cfg;
  cfg.threshold = parse_rational(rc.threshold);
  cfg.loops_per_phase = rc.loops;
  cfg.phases = rc.phases;
  cfg.seed = rc.seed;
  ReductionReport r = red_loop(g, cfg);
  out << "conclusive " << (r.conclusive ? "yes" : "no") << "\n";
  out << "loops " << r.loops_used << "\n";
  if (r.witness) {
    out << "witness";
    for (const auto& c : r.witness->coords) out << ' ' << c.get_str();
    out << "\nwitness_norm " << r.witness->norm.get_str() << "\n";
  }
  print_gram_block(out, r.final_gram);
  return 0;
}

int cmd_minimum(const RunConfig& rc, std::ostream& out) {
  MinimumResult m = minimum(read_gram_file(rc.inputs[0]).matrix, enum_config(rc));
  out << "min " << m.min.get_str() << " pairs " << m.pairs << "\n";
  return 0;
}

int cmd_shortvec(const RunConfig& rc, const std::string& bound, std::ostream& out) {
  RatMatrix g = read_gram_file(rc.inputs[0]).matrix;
  ShortVectorSet s = short_vectors(g, parse_rational(bound), enum_config(rc));
  print_gram_block(out, g);
  for (std::size_t i = 0; i < s.vectors.size(); ++i) {
    out << "v";
    for (auto c : s.vectors[i]) out << ' ' << c;
    out << ' ' << s.norms[i].get_str() << "\n";
  }
  return 0;
}

int cmd_type(const RunConfig& rc, std::ostream& out) {
  Lattice l(read_gram_file(rc.inputs[0]).matrix);
  IntMatrix sigma = read_int_matrix_file(rc.inputs[1]);
  TypeResult t = compute_type(l, sigma);
  bool unimodular = is_unimodular(l);
  out << "type " << t.type.to_string() << "\n";
  out << "det_fixed " << determinant(t.split.fixed).get_str() << "\n";
  out << "det_image " << determinant(t.split.image).get_str() << "\n";
  for (const auto& v : check_constraints(t.type, unimodular)) out << "violated " << v << "\n";
  for (const auto& n : constraint_notes(t.type, unimodular)) out << "note " << n << "\n";
  return 0;
}

int cmd_types(const RunConfig& rc, long m, bool all, std::ostream& out) {
  BoundTable table = BoundTable::known_exact();
  if (!rc.bounds_path.empty()) table.merge(BoundTable::load(rc.bounds_path, bounds_config(rc)));
  RuleSet rules = rc.rules_path.empty() ? RuleSet{} : RuleSet::load(rc.rules_path);
  auto cands = enumerate_types(m, table, rules, bounds_config(rc));
  out << "m " << m << " dim " << 24 * m << "\n";
  std::size_t kept = 0;
  for (const auto& c : cands) {
    if (c.survives_bounds) ++kept;
    if (!all && !c.survives_bounds) continue;
    out << (c.survives_bounds ? "type " : "excluded ") << c.type.to_string();
    for (const auto& r : c.exclusion_reasons) out << ' ' << r;
    for (const auto& a : c.annotations) out << ' ' << a;
    out << "\n";
  }
  out << "candidates " << cands.size() << " survivors " << kept << "\n";
  return 0;
}

int cmd_ideal(const RunConfig& rc, long m, const std::string& ideal_path, const std::string& alpha_text,
              bool search, std::ostream& out) {
  FracIdeal j = ideal_path.empty() ? FracIdeal::unit(m) : FracIdeal::load(ideal_path);
  if (j.modulus() != m) throw UsageError("ideal file modulus does not match --m");
  std::optional<CycloElement> alpha;
  if (search) {
    AlphaSearchConfig cfg;
    cfg.bounds = bounds_config(rc);
    alpha = find_unimodular_alpha(j, cyclotomic_units(m), cfg);
    if (!alpha) {
      out << "alpha none\n";
      return 1;
    }
  } else if (!alpha_text.empty()) {
    std::vector<mpq_class> c;
    std::istringstream in(alpha_text);
    std::string tok;
    while (in >> tok) c.push_back(parse_rational(tok));
    alpha = CycloElement(m, c);
  } else {
    throw UsageError("ideal-lattice needs --alpha or --alpha-search");
  }
  TraceFormLattice t = trace_form_gram(j, *alpha, bounds_config(rc));
  Lattice l = t.lattice();
  out << "alpha " << alpha->to_string() << "\n";
  out << "unimodular " << (is_unimodular_pair(j, *alpha, bounds_config(rc)) ? "yes" : "no") << "\n";
  print_class(out, "lattice", 0, l, rc);
  return 0;
}

int cmd_glue(const RunConfig& rc, long p, std::size_t dim, std::ostream& out) {
  Lattice l(read_gram_file(rc.inputs[0]).matrix);
  DiscGroup d = disc_group(l, p);
  out << "disc_rank " << d.rank << "\n";
  auto codes = isotropic_submodules(d, dim);
  out << "codes " << codes.size() << "\n";
  for (std::size_t i = 0; i < codes.size(); ++i) print_class(out, "overlattice", i, overlattice(l, codes[i]), rc);
  return 0;
}

int cmd_neighbor(const RunConfig& rc, long p, const std::string& vec, std::ostream& out) {
  Lattice l(read_gram_file(rc.inputs[0]).matrix);
  IntVector x = parse_vector(vec);
  if (x.size() != l.dim()) throw UsageError("vector length does not match the dimension");
  IntVector v = lift_to_admissible(l, p, x);
  out << "lifted";
  for (const auto& c : v) out << ' ' << c.get_str();
  out << "\n";
  print_class(out, "neighbor", 0, neighbor(l, p, v), rc);
  return 0;
}

int cmd_genus(const RunConfig& rc, long p, std::size_t max_classes, std::size_t per_class, std::ostream& out) {
  Lattice l(read_gram_file(rc.inputs[0]).matrix);
  GenusWalkConfig cfg;
  cfg.iso = iso_config(rc);
  cfg.neighbors_per_class = per_class;
  GenusWalkResult r = genus_walk(l, p, max_classes, rc.seed, cfg);
  out << "classes " << r.classes.size() << " complete " << (r.complete ? "yes" : "no") << " neighbors_tried "
      << r.neighbors_tried << "\n";
  for (std::size_t i = 0; i < r.classes.size(); ++i) {
    out << "# class " << i << " " << r.classes[i].fingerprint.to_string() << "\n";
    print_gram_block(out, r.classes[i].lattice.gram());
  }
  return 0;
}

int cmd_isometry(const RunConfig& rc, std::ostream& out) {
  RatMatrix a = read_gram_file(rc.inputs[0]).matrix, b = read_gram_file(rc.inputs[1]).matrix;
  auto t = is_isometric(a, b, iso_config(rc));
  out << "isometric " << (t ? "yes" : "no") << "\n";
  if (t) out << "transform\n" << to_string(*t);
  return 0;
}

int cmd_fingerprint(const RunConfig& rc, const std::string& cap, std::ostream& out) {
  RatMatrix g = read_gram_file(rc.inputs[0]).matrix;
  mpq_class c = cap.empty() ? min_norm(g, rc) : parse_rational(cap);
  out << fingerprint(g, c, enum_config(rc)).to_string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"latkit: exact integral lattice toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig rc;
  app.add_option("--seed", rc.seed, "random seed");
  app.add_option("--precision-bits", rc.precision_bits, "starting interval precision")->check(CLI::PositiveNumber);
  app.add_option("--enum-cap", rc.enum_cap, "stored short vector cap")->check(CLI::PositiveNumber);
  app.add_option("--backtrack-cap", rc.backtrack_cap, "isometry dimension cap")->check(CLI::PositiveNumber);
  app.add_option("--threshold", rc.threshold, "reduction witness threshold");
  app.add_option("--loops", rc.loops, "reduction loops per phase")->check(CLI::PositiveNumber);
  app.add_option("--phases", rc.phases, "reduction phases")->check(CLI::PositiveNumber);
  app.add_option("--rules", rc.rules_path, "rule file")->check(CLI::ExistingFile);
  app.add_option("--bounds", rc.bounds_path, "bound table file")->check(CLI::ExistingFile);

  std::string gram1, gram2, bound = "2", cap, ideal_path, alpha_text, vec;
  long m = 3, p = 2;
  std::size_t dim = 1, max_classes = 8, per_class = 40;
  bool all = false, search = false;

  auto with_gram = [&](CLI::App* s) { s->add_option("gram", gram1, "Gram file")->required()->check(CLI::ExistingFile); };
  auto* reduce = app.add_subcommand("reduce", "reduction loop with a short-vector witness");
  with_gram(reduce);
  auto* mini = app.add_subcommand("minimum", "minimum and number of minimal pairs");
  with_gram(mini);
  auto* sv = app.add_subcommand("shortvec", "vectors up to a norm bound");
  with_gram(sv);
  sv->add_option("--bound", bound, "norm bound");
  auto* type = app.add_subcommand("type", "type of a prime-order automorphism");
  with_gram(type);
  type->add_option("sigma", gram2, "automorphism matrix file")->required()->check(CLI::ExistingFile);
  auto* types = app.add_subcommand("types", "candidate types in dimension 24m");
  types->add_option("--m", m, "dimension / 24")->required()->check(CLI::PositiveNumber);
  types->add_flag("--all", all, "also list excluded candidates");
  auto* ideal = app.add_subcommand("ideal-lattice", "trace form lattice of an ideal");
  ideal->add_option("--m", m, "cyclotomic modulus")->required()->check(CLI::PositiveNumber);
  ideal->add_option("--ideal", ideal_path, "ideal file (default: ring of integers)")->check(CLI::ExistingFile);
  ideal->add_option("--alpha", alpha_text, "alpha coefficients in powers of zeta");
  ideal->add_flag("--alpha-search", search, "search alpha among unit products");
  auto* glue = app.add_subcommand("glue", "overlattices from isotropic codes");
  with_gram(glue);
  glue->add_option("--p", p, "prime")->check(CLI::PositiveNumber);
  glue->add_option("--dim", dim, "code dimension")->check(CLI::PositiveNumber);
  auto* nb = app.add_subcommand("neighbor", "Kneser neighbor of a vector");
  with_gram(nb);
  nb->add_option("--p", p, "prime")->check(CLI::PositiveNumber);
  nb->add_option("--vector", vec, "coordinates")->required();
  auto* genus = app.add_subcommand("genus", "neighbor walk through the genus");
  with_gram(genus);
  genus->add_option("--p", p, "prime")->check(CLI::PositiveNumber);
  genus->add_option("--max-classes", max_classes, "class cap")->check(CLI::PositiveNumber);
  genus->add_option("--neighbors", per_class, "neighbors per class")->check(CLI::PositiveNumber);
  auto* iso = app.add_subcommand("isometry", "backtrack isometry test");
  with_gram(iso);
  iso->add_option("gram2", gram2, "second Gram file")->required()->check(CLI::ExistingFile);
  auto* fp = app.add_subcommand("fingerprint", "isometry invariants");
  with_gram(fp);
  fp->add_option("--cap", cap, "theta norm cap (default: minimum)");

  if (argc <= 1) {
    std::cout << app.help();
    return 2;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n" << app.help();
    return 2;
  }

  rc.subcommand = app.get_subcommands().front()->get_name();
  if (!gram1.empty()) rc.inputs.push_back(gram1);
  if (!gram2.empty()) rc.inputs.push_back(gram2);
  if (!ideal_path.empty()) rc.inputs.push_back(ideal_path);
  if (!rc.rules_path.empty()) rc.inputs.push_back(rc.rules_path);
  if (!rc.bounds_path.empty()) rc.inputs.push_back(rc.bounds_path);

  std::ostringstream out;
  try {
    print_header(out, rc);
    const std::string& s = rc.subcommand;
    int code = 0;
    if (s == "reduce") code = cmd_reduce(rc, out);
    else if (s == "minimum") code = cmd_minimum(rc, out);
    else if (s == "shortvec") code = cmd_shortvec(rc, bound, out);
    else if (s == "type") code = cmd_type(rc, out);
    else if (s == "types") code = cmd_types(rc, m, all, out);
    else if (s == "ideal-lattice") code = cmd_ideal(rc, m, ideal_path, alpha_text, search, out);
    else if (s == "glue") code = cmd_glue(rc, p, dim, out);
    else if (s == "neighbor") code = cmd_neighbor(rc, p, vec, out);
    else if (s == "genus") code = cmd_genus(rc, p, max_classes, per_class, out);
    else if (s == "isometry") code = cmd_isometry(rc, out);
    else code = cmd_fingerprint(rc, cap, out);
    std::cout << out.str();
    return code;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cout << out.str();
    std::cout << "error " << to_string(e.code()) << "\n";
    std::cerr << e.what() << "\n";
    return 1;
  }
}
