// swk: batch frontend. Reads a JSON job, writes a JSON document.
//
// Exit codes: 0 ok, 2 input error, 3 oracle/check mismatch, 4 ring lacks a
// required capability, 5 dimension error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "swk/io.hpp"
#include "swk/selfcheck.hpp"

namespace {

using swk::io::Json;

struct Options {
  std::string job_file;
  std::string ring_file;
  std::string out_file;
  bool oracle = false;
  bool check = false;
  unsigned threads = 1;
  std::string n, q, ell;  // banal only
};

/// Raised when --oracle or --check finds a disagreement; the document is
/// still written.
struct Mismatch {
  std::string what;
};

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw swk::InputError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw swk::InputError(path + ": " + e.what());
  }
}

Json load_job(const Options& opt) {
  Json job = opt.job_file.empty() ? Json::object() : read_json_file(opt.job_file);
  if (!job.is_object()) throw swk::InputError("job must be a JSON object");
  if (!opt.ring_file.empty()) job["ring"] = read_json_file(opt.ring_file);
  if (!job.contains("ring")) throw swk::InputError("no ring: pass --ring FILE or a 'ring' field in the job");
  return job;
}

std::size_t max_dim() {
  const char* env = std::getenv("SWK_MAX_DIM");
  if (!env || !*env) return 120;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(env, &used);
    if (used != std::string(env).size()) throw std::invalid_argument(env);
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw swk::InputError("SWK_MAX_DIM must be a non-negative integer");
  }
}

template <class R>
swk::HeckeChar<R> character_from(const R& ring, const Json& job) {
  if (!job.contains("lambda")) return swk::HeckeChar<R>::generic(ring);
  auto values = swk::io::decode_vector(ring, job.at("lambda"));
  if (static_cast<int>(values.size()) != ring.n()) throw swk::DimensionError("lambda needs exactly n values");
  return swk::HeckeChar<R>(ring, std::move(values));
}

template <class R>
Json encode_values(const R& ring, const std::vector<typename R::Elem>& values) {
  Json out = Json::array();
  for (const auto& v : values) out.push_back(swk::io::encode_elem(ring, v));
  return out;
}

// ---- whittaker ---------------------------------------------------------------

constexpr int kMaxBound = 32;

template <class R>
Json run_whittaker(const R& ring, const Json& job, const Options& opt, std::optional<Mismatch>& mismatch) {
  const int bound = swk::io::parse_int(swk::io::field(job, "bound"), "bound");
  if (bound < 0) throw swk::InputError("bound must be non-negative");
  if (bound > kMaxBound) throw swk::DimensionError("bound exceeds " + std::to_string(kMaxBound));
  const auto ch = character_from(ring, job);
  const auto table = swk::whittaker_table(ch, bound, opt.threads);
  Json out;
  out["command"] = "whittaker";
  out["ring"] = swk::io::encode_ring(ring.descriptor());
  out["n"] = ring.n();
  out["bound"] = bound;
  out["lambda"] = encode_values(ring, ch.values());
  out["entries"] = swk::io::encode_table(table);
  if (opt.oracle) {
    const bool agree = swk::recursion_solve(ch, bound) == table;
    out["oracle"] = Json{{"method", "recursion"}, {"agree", agree}};
    if (!agree) mismatch = Mismatch{"closed form and recursion disagree"};
  }
  if (opt.check) {
    bool ok = true;
    if (bound >= 1)
      for (int j = 1; j <= ring.n(); ++j) ok = ok && swk::hecke_apply(j, table) == table.restricted(bound - 1).scaled(ch.value(j));
    ok = ok && ring.is_zero(swk::ev1(table) - ring.one());
    out["check"] = Json{{"eigen_equations", ok}};
    if (!ok) mismatch = Mismatch{"eigen-equation check failed"};
  }
  return out;
}

// ---- hecke -------------------------------------------------------------------

template <class R>
struct AnyElement {
  std::optional<swk::HeckeIM<typename R::Elem>> im;
  std::optional<swk::HeckeB<typename R::Elem>> bern;
};

template <class R>
AnyElement<R> decode_element(const swk::AffineHecke<R>& h, const Json& j) {
  AnyElement<R> out;
  if (swk::io::element_basis(j) == "im")
    out.im = swk::io::decode_im(h, j);
  else
    out.bern = swk::io::decode_bern(h, j);
  return out;
}

template <class R>
swk::HeckeB<typename R::Elem> as_bern(const swk::AffineHecke<R>& h, const AnyElement<R>& a) {
  return a.bern ? *a.bern : h.im_to_bern(*a.im);
}

template <class R>
swk::HeckeIM<typename R::Elem> as_im(const swk::AffineHecke<R>& h, const AnyElement<R>& a) {
  return a.im ? *a.im : h.bern_to_im(*a.bern);
}

template <class R>
bool relations_hold(const swk::AffineHecke<R>& h) {
  const int n = h.n();
  const auto one = h.im_one();
  const auto q = h.ring().q();
  for (int i = 0; i < n && n > 1; ++i) {
    const auto s = h.im_simple(i);
    if (!h.im_mul(s - one.scaled(q), s + one).is_zero()) return false;
  }
  const auto t = h.im_shift(1);
  for (int i = 1; i < n; ++i)
    if (!(h.im_mul(t, h.im_simple(i)) == h.im_mul(h.im_simple(i - 1), t))) return false;
  for (int i = 1; i < n; ++i) {
    const auto s = h.im_to_bern(h.im_simple(i));
    if (!(h.bern_to_im(s) == h.im_simple(i))) return false;
  }
  return h.bern_to_im(h.shift_image()) == t;
}

template <class R>
Json run_hecke(const R& ring, const Json& job, const Options& opt, std::optional<Mismatch>& mismatch) {
  const int n = ring.n();
  const swk::AffineHecke<R> h(ring, n);
  const Json& op_json = swk::io::field(job, "operation");
  const std::string op = op_json.is_string() ? op_json.get<std::string>() : "";
  std::vector<AnyElement<R>> elements;
  if (job.contains("elements")) {
    if (!job.at("elements").is_array()) throw swk::InputError("elements must be an array");
    for (const auto& e : job.at("elements")) elements.push_back(decode_element(h, e));
  }
  auto need = [&](std::size_t k) {
    if (elements.size() < k) throw swk::InputError("operation '" + op + "' needs " + std::to_string(k) + " element(s)");
  };

  Json out;
  out["command"] = "hecke";
  out["ring"] = swk::io::encode_ring(ring.descriptor());
  out["operation"] = op;
  auto emit_im = [&](const swk::HeckeIM<typename R::Elem>& a) {
    out["result"] = swk::io::encode_im(ring, a);
    out["zero"] = a.is_zero();
  };
  auto emit_bern = [&](const swk::HeckeB<typename R::Elem>& a) {
    out["result"] = swk::io::encode_bern(ring, a);
    out["zero"] = a.is_zero();
  };
  std::optional<bool> oracle_agree;

  if (op == "mul") {
    need(1);
    const bool bern = elements.front().bern.has_value();
    for (const auto& e : elements)
      if (e.bern.has_value() != bern) throw swk::InputError("mul: all elements must use the same basis");
    if (bern) {
      auto acc = *elements.front().bern;
      for (std::size_t k = 1; k < elements.size(); ++k) acc = h.bern_mul(acc, *elements[k].bern);
      emit_bern(acc);
      if (opt.oracle) {
        auto other = h.bern_to_im(*elements.front().bern);
        for (std::size_t k = 1; k < elements.size(); ++k) other = h.im_mul(other, h.bern_to_im(*elements[k].bern));
        oracle_agree = h.bern_to_im(acc) == other;
      }
    } else {
      auto acc = *elements.front().im;
      for (std::size_t k = 1; k < elements.size(); ++k) acc = h.im_mul(acc, *elements[k].im);
      emit_im(acc);
      if (opt.oracle) {
        auto other = h.im_to_bern(*elements.front().im);
        for (std::size_t k = 1; k < elements.size(); ++k) other = h.bern_mul(other, h.im_to_bern(*elements[k].im));
        oracle_agree = h.bern_to_im(other) == acc;
      }
    }
  } else if (op == "to_bernstein") {
    need(1);
    const auto b = as_bern(h, elements.front());
    emit_bern(b);
    if (opt.oracle) oracle_agree = h.bern_to_im(b) == as_im(h, elements.front());
  } else if (op == "to_im") {
    need(1);
    const auto a = as_im(h, elements.front());
    emit_im(a);
    if (opt.oracle) oracle_agree = h.im_to_bern(a) == as_bern(h, elements.front());
  } else if (op == "is_central") {
    need(1);
    out["central"] = h.is_central(as_bern(h, elements.front()));
  } else if (op == "trivial_char") {
    need(1);
    out["value"] = swk::io::encode_elem(ring, h.trivial_char(as_bern(h, elements.front())));
  } else if (op == "x_monomial") {
    const auto mu = swk::io::parse_int_list(swk::io::field(job, "weight"), "weight");
    if (static_cast<int>(mu.size()) != n) throw swk::DimensionError("weight length differs from rank");
    const auto a = h.x_monomial(mu);
    emit_im(a);
    if (opt.oracle) oracle_agree = h.im_to_bern(a) == h.bern_x(mu);
  } else if (op == "satake") {
    const int j = swk::io::parse_int(swk::io::field(job, "j"), "j");
    const auto b = h.bern_poly(h.satake_spherical(j));
    emit_bern(b);
    if (opt.oracle) oracle_agree = h.is_central(b);
  } else {
    throw swk::InputError("unknown hecke operation '" + op +
                          "' (mul, to_bernstein, to_im, is_central, trivial_char, x_monomial, satake)");
  }

  if (oracle_agree) {
    out["oracle"] = Json{{"agree", *oracle_agree}};
    if (!*oracle_agree) mismatch = Mismatch{"IM and Bernstein computations disagree"};
  }
  if (opt.check) {
    const bool ok = relations_hold(h);
    out["check"] = Json{{"relations", ok}};
    if (!ok) mismatch = Mismatch{"Hecke relation check failed"};
  }
  return out;
}

// ---- module / ihara ----------------------------------------------------------

template <class R>
std::string model_label(const R& ring) {
  if constexpr (R::is_symbolic) {
    return "generic";
  } else {
    const auto d = ring.descriptor();
    try {
      switch (swk::banal_class(ring.n(), d.q, swk::Integer(static_cast<unsigned long>(d.ell)))) {
        case swk::BanalClass::banal: return "banal";
        case swk::BanalClass::quasi_banal_limit: return "quasi-banal";
        case swk::BanalClass::neither: break;
      }
    } catch (const swk::InputError&) {
    }
    return "formal model, outside quasi-banal hypotheses";
  }
}

template <class R>
Json module_header(const R& ring, const swk::UnramifiedModule<R>& m, const std::string& command) {
  Json out;
  out["command"] = command;
  out["ring"] = swk::io::encode_ring(ring.descriptor());
  out["n"] = ring.n();
  out["dim"] = m.dim();
  const std::string label = model_label(ring);
  out["model"] = label;
  if (label.rfind("formal", 0) == 0) std::cerr << "warning: " << label << "\n";
  return out;
}

template <class R>
Json run_module(const R& ring, const Json& job, const Options& opt, std::optional<Mismatch>& mismatch) {
  const auto m = swk::build_module(character_from(ring, job), max_dim());
  Json out = module_header(ring, m, "module");
  Json basis = Json::array();
  for (const auto& mu : m.basis()) basis.push_back(swk::io::int_list(mu));
  out["basis"] = basis;
  out["xmat"] = swk::io::encode_matrices(ring, m.xmat());
  out["xinv"] = swk::io::encode_matrices(ring, m.xinv());
  out["smat"] = swk::io::encode_matrices(ring, m.smat());
  if (opt.check) {
    bool ok = true;
    try {
      m.verify();
    } catch (const swk::InvariantViolation&) {
      ok = false;
    }
    ok = ok && swk::a_span_dim(m, m.unit_vector()) == m.dim();
    out["check"] = Json{{"relations", ok}};
    if (!ok) mismatch = Mismatch{"module invariant check failed"};
  }
  return out;
}

template <class R>
Json run_ihara(const R& ring, const Json& job, const Options& opt, std::optional<Mismatch>& mismatch) {
  const auto m = swk::build_module(character_from(ring, job), max_dim());
  const Json& vj = swk::io::field(job, "vector");
  std::vector<typename R::Elem> f;
  if (vj == "unit")
    f = m.unit_vector();
  else if (vj == "zero")
    f.assign(m.dim(), ring.zero());
  else
    f = swk::io::decode_vector(ring, vj);
  if (f.size() != m.dim()) throw swk::DimensionError("vector length " + std::to_string(f.size()) + " differs from module dimension " + std::to_string(m.dim()));
  const auto verdict = swk::ihara_criterion(m, f);
  Json out = module_header(ring, m, "ihara");
  out["span_dim"] = verdict.span_dim;
  out["n_factorial"] = verdict.n_factorial;
  out["verdict"] = verdict.label();
  if (opt.check) {
    // Closure under X_j alone must give the same span for invertible X_j.
    const bool ok = swk::a_span_dim(ring, m.xmat(), f) == verdict.span_dim;
    out["check"] = Json{{"forward_closure_agrees", ok}};
    if (!ok) mismatch = Mismatch{"span dimension check failed"};
  }
  return out;
}

// ---- banal -------------------------------------------------------------------

Json run_banal(const Options& opt, std::optional<Mismatch>& mismatch) {
  Json job = opt.job_file.empty() ? Json::object() : read_json_file(opt.job_file);
  if (!opt.n.empty()) job["n"] = opt.n;
  if (!opt.q.empty()) job["q"] = opt.q;
  if (!opt.ell.empty()) job["ell"] = opt.ell;
  const int n = swk::io::parse_int(swk::io::field(job, "n"), "n");
  const swk::Integer q = swk::io::parse_integer(swk::io::field(job, "q"), "q");
  const swk::Integer ell = swk::io::parse_integer(swk::io::field(job, "ell"), "ell");
  const auto verdict = swk::banal_class(n, q, ell);
  Json out;
  out["command"] = "banal";
  out["n"] = n;
  out["q"] = q.get_str();
  out["ell"] = ell.get_str();
  out["class"] = swk::to_string(verdict);
  if (opt.check) {
    swk::Integer order = 1;
    for (int i = 1; i <= n; ++i) {
      swk::Integer qi;
      mpz_pow_ui(qi.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(i));
      order *= qi - 1;
      if (i < n) order *= qi;
    }
    const bool divides = mpz_divisible_p(order.get_mpz_t(), ell.get_mpz_t()) != 0;
    const bool ok = divides == (verdict != swk::BanalClass::banal);
    out["group_order"] = order.get_str();
    out["check"] = Json{{"order_formula", ok}};
    if (!ok) mismatch = Mismatch{"banality disagrees with the group order"};
  }
  return out;
}

// ---- driver ------------------------------------------------------------------

void write_output(const Options& opt, const std::string& text) {
  if (opt.out_file.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(opt.out_file);
  if (!out) throw swk::InputError("cannot write " + opt.out_file);
  out << text;
}

template <class Fn>
Json with_ring(const Json& job, Fn fn) {
  const swk::AnyRing ring = swk::ring_make(swk::io::parse_ring(job.at("ring")));
  return std::visit(fn, ring);
}

int run(const std::string& command, const Options& opt) {
  std::optional<Mismatch> mismatch;
  if (command == "selfcheck") {
    bool all = true;
    std::ostringstream text;
    for (const auto& r : swk::run_selfcheck()) {
      all = all && r.pass;
      text << (r.pass ? "PASS" : "FAIL") << " " << r.id << " " << r.name;
      if (!r.pass) text << ": " << r.detail;
      text << "\n";
    }
    write_output(opt, text.str());
    return all ? 0 : 3;
  }
  Json out;
  if (command == "banal") {
    out = run_banal(opt, mismatch);
  } else {
    const Json job = load_job(opt);
    out = with_ring(job, [&](const auto& ring) -> Json {
      if (command == "whittaker") return run_whittaker(ring, job, opt, mismatch);
      if (command == "hecke") return run_hecke(ring, job, opt, mismatch);
      if (command == "module") return run_module(ring, job, opt, mismatch);
      return run_ihara(ring, job, opt, mismatch);
    });
  }
  write_output(opt, out.dump(2) + "\n");
  if (mismatch) {
    std::cerr << "swk: " << mismatch->what << "\n";
    return 3;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations for spherical Whittaker functions, affine Hecke algebras of GL(n) and the unramified module"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub, bool takes_ring) {
    sub->add_option("job", opt.job_file, "JSON job file")->check(CLI::ExistingFile);
    if (takes_ring) sub->add_option("--ring", opt.ring_file, "JSON ring descriptor (overrides the job's ring)")->check(CLI::ExistingFile);
    sub->add_flag("--oracle", opt.oracle, "cross-check with an independent algorithm");
    sub->add_flag("--check", opt.check, "run the command's invariant suite");
    sub->add_option("--threads", opt.threads, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--out", opt.out_file, "write output to FILE instead of stdout");
  };
  add_common(app.add_subcommand("whittaker", "table of the spherical Whittaker function"), true);
  add_common(app.add_subcommand("hecke", "arithmetic in the Iwahori-Hecke algebra"), true);
  add_common(app.add_subcommand("module", "matrices of the unramified module"), true);
  add_common(app.add_subcommand("ihara", "span dimension of a vector under the lattice operators"), true);
  auto* banal = app.add_subcommand("banal", "banality class of (n, q, ell)");
  add_common(banal, false);
  banal->add_option("--n", opt.n, "rank");
  banal->add_option("--q", opt.q, "residue field size");
  banal->add_option("--ell", opt.ell, "coefficient characteristic");
  auto* self = app.add_subcommand("selfcheck", "run the built-in consistency suite");
  self->add_option("--out", opt.out_file, "write output to FILE instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return run(command, opt);
  } catch (const swk::CapabilityError& e) {
    std::cerr << "swk: " << e.what() << "\n";
    return 4;
  } catch (const swk::DimensionError& e) {
    std::cerr << "swk: " << e.what() << "\n";
    return 5;
  } catch (const swk::InvariantViolation& e) {
    std::cerr << "swk: invariant violation: " << e.what() << "\n";
    return 3;
  } catch (const swk::InputError& e) {
    std::cerr << "swk: " << e.what() << "\n";
    return 2;
  } catch (const Json::exception& e) {
    std::cerr << "swk: malformed job: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "swk: " << e.what() << "\n";
    return 1;
  }
}
