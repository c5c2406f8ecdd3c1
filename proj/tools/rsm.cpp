// rsm: instance ingestion, invariants, expectations, identity verification.
//
// Exit codes: 0 success, 2 input error, 3 verification failure.

#include <cctype>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "rsm/expectation.hpp"
#include "rsm/geometry.hpp"
#include "rsm/identities.hpp"
#include "rsm/instance.hpp"
#include "rsm/invariants.hpp"

#ifndef RSM_CORPUS_DIR
#define RSM_CORPUS_DIR "corpus"
#endif

using namespace rsm;

namespace {

constexpr int kInputError = 2;
constexpr int kVerifyFailed = 3;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

// "1/2" broadcasts to every element, "1/2,1/3,1" lists them by index.
ProbabilityAssignment parse_probabilities(const std::string& text, std::size_t n) {
  const auto parts = split(text, ',');
  ProbabilityAssignment p;
  for (const auto& s : parts) p.push_back(parse_rational(s));
  if (p.size() == 1) p.assign(n, p.front());
  if (p.size() != n) throw InputError("--p needs 1 or " + std::to_string(n) + " values");
  for (const auto& q : p)
    if (q < 0 || q > 1) throw InputError("probabilities must lie in [0, 1]");
  return p;
}

std::vector<double> parse_float_probabilities(const std::string& text, std::size_t n) {
  std::vector<double> p;
  for (const auto& s : split(text, ',')) {
    try {
      std::size_t used = 0;
      p.push_back(std::stod(s, &used));
      if (used != s.size()) throw InputError("bad probability '" + s + "'");
    } catch (const std::logic_error&) {
      throw InputError("bad probability '" + s + "'");
    }
  }
  if (p.size() == 1) p.assign(n, p.front());
  if (p.size() != n) throw InputError("--p needs 1 or " + std::to_string(n) + " values");
  return p;
}

// name=value pairs; a value may be a comma list for per-element families.
std::map<std::string, std::vector<Rational>> parse_at(const std::vector<std::string>& items) {
  std::map<std::string, std::vector<Rational>> out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw InputError("--at expects var=value, got '" + item + "'");
    std::vector<Rational> values;
    for (const auto& s : split(item.substr(eq + 1), ',')) values.push_back(parse_rational(s));
    out[item.substr(0, eq)] = std::move(values);
  }
  return out;
}

// Binds every variable of p: exact names first, then per-element families
// (v3 takes v's value, or its entry 3 when v is a list).
std::map<std::string, Rational> bind_all(const Poly& p, const std::map<std::string, std::vector<Rational>>& at) {
  std::map<std::string, Rational> out;
  for (VarId id : p.variables()) {
    const std::string name = p.registry().name(id);
    if (auto it = at.find(name); it != at.end()) {
      if (it->second.size() != 1) throw InputError("variable " + name + " takes a single value");
      out[name] = it->second.front();
      continue;
    }
    std::size_t split_at = name.size();
    while (split_at > 0 && std::isdigit(static_cast<unsigned char>(name[split_at - 1]))) --split_at;
    const std::string family = name.substr(0, split_at);
    auto it = at.find(family);
    if (split_at == name.size() || it == at.end()) throw InputError("no value for variable " + name + " (use --at)");
    const std::size_t index = std::stoul(name.substr(split_at));
    if (it->second.size() == 1) {
      out[name] = it->second.front();
    } else if (index < it->second.size()) {
      out[name] = it->second[index];
    } else {
      throw InputError("no value for variable " + name);
    }
  }
  return out;
}

Params params_from_at(const IdentityRecord& rec, const Rsm& m, const std::map<std::string, std::vector<Rational>>& at) {
  Params out;
  for (const auto& spec : rec.params) {
    auto it = at.find(spec.name);
    if (it == at.end()) throw InputError(rec.id + " needs --at " + spec.name + "=...");
    const auto& vals = it->second;
    switch (spec.kind) {
      case ParamKind::Scalar:
        if (vals.size() != 1) throw InputError(spec.name + " takes a single value");
        out.scalar[spec.name] = vals.front();
        break;
      case ParamKind::ElementVector:
        out.vector[spec.name] = vals.size() == 1 ? std::vector<Rational>(m.size(), vals.front()) : vals;
        if (out.vector[spec.name].size() != m.size()) throw InputError(spec.name + " needs one value per element");
        break;
      case ParamKind::PositiveIntVector: {
        std::vector<long> k;
        for (const auto& v : vals) {
          if (!is_integer(v) || v < 1) throw InputError(spec.name + " takes positive integers");
          k.push_back(v.get_num().get_si());
        }
        if (k.size() == 1) k.assign(m.size(), k.front());
        if (k.size() != m.size()) throw InputError(spec.name + " needs one value per element");
        out.ints[spec.name] = std::move(k);
        break;
      }
      case ParamKind::SubsetTable:
        if (vals.size() != (std::size_t{1} << m.size()))
          throw InputError(spec.name + " needs one value per subset, in mask order");
        out.table[spec.name] = vals;
        break;
    }
  }
  return out;
}

std::vector<long> parse_ks(const std::string& text, std::size_t n) {
  std::vector<long> k;
  for (const auto& s : split(text, ',')) {
    const Rational v = parse_rational(s);
    if (!is_integer(v)) throw InputError("--k takes integers");
    k.push_back(v.get_num().get_si());
  }
  if (k.size() == 1 && n != 1) k.assign(n, k.front());
  if (k.size() != n) throw InputError("--k needs 1 or " + std::to_string(n) + " values");
  return k;
}

int cmd_poly(const std::string& file, const std::string& which, bool uniform_vars) {
  const Instance inst = parse_instance(file);
  Poly p = compute_invariant(parse_invariant(which), inst.rsm);
  if (uniform_vars) {
    p = uniformize(p, inst.rsm, "v", "v");
    p = uniformize(p, inst.rsm, "t", "t");
  }
  std::cout << canonical_string(p) << "\n";
  return 0;
}

int cmd_expect(const std::string& file, const std::string& model, const std::string& id, const std::string& p_text,
               const std::vector<std::string>& at) {
  const Instance inst = parse_instance(file);
  const IdentityRecord& rec = find_identity(id);
  if (rec.kind != IdentityKind::Expectation && !rec.uses_probabilities)
    throw InputError(id + " is not an expectation identity");
  if (!model.empty() && rec.kind == IdentityKind::Expectation && parse_model(model) != rec.model)
    throw InputError(id + " is stated for the " + std::string(rec.model == Model::Restriction ? "restriction" : "contraction") +
                     " model");
  ProbabilityAssignment p;
  if (!p_text.empty()) {
    p = parse_probabilities(p_text, inst.rsm.size());
  } else if (inst.probabilities) {
    p = *inst.probabilities;
  } else {
    throw InputError("no probabilities: pass --p or put them in the instance");
  }
  const Params params = params_from_at(rec, inst.rsm, parse_at(at));
  std::cout << to_string(closed_form(rec, inst.rsm, p, params)) << "\n";
  return 0;
}

int cmd_verify(const std::vector<std::string>& files, bool corpus, const std::string& corpus_dir, bool all,
               const std::vector<std::string>& ids, std::size_t trials, std::uint64_t seed) {
  std::vector<NamedRsm> instances;
  if (corpus)
    for (auto& inst : load_corpus(corpus_dir)) instances.push_back({inst.name, inst.rsm});
  for (const auto& f : files) {
    if (std::filesystem::is_directory(f)) {
      for (auto& inst : load_corpus(f)) instances.push_back({inst.name, inst.rsm});
    } else {
      auto inst = parse_instance(f);
      instances.push_back({inst.name, inst.rsm});
    }
  }
  if (instances.empty()) throw InputError("nothing to verify: pass instance files or --corpus");
  std::vector<const IdentityRecord*> recs;
  if (all || ids.empty()) {
    for (const auto& r : identity_registry()) recs.push_back(&r);
  }
  for (const auto& id : ids) recs.push_back(&find_identity(id));

  const auto lines = verify_all(recs, instances, trials, seed);
  std::size_t failed = 0;
  for (const auto& line : lines) {
    std::cout << format_line(line) << "\n";
    if (!line.pass) {
      ++failed;
      std::cerr << format_line(line) << ": " << line.detail << "\n";
    }
  }
  std::cerr << lines.size() - failed << " passed, " << failed << " failed\n";
  return failed == 0 ? 0 : kVerifyFailed;
}

int cmd_sample(const std::string& file, const std::string& model, const std::string& which, const std::string& p_text,
               std::uint64_t n, std::uint64_t seed, const std::vector<std::string>& at_items) {
  const Instance inst = parse_instance(file);
  const InvariantKind kind = parse_invariant(which);
  const auto at = parse_at(at_items);
  const auto p = parse_float_probabilities(p_text, inst.rsm.size());
  const auto f = [&](const Rsm& minor) -> Rational {
    const Poly poly = compute_invariant(kind, minor);
    return evaluate(poly, bind_all(poly, at));
  };
  const SampleReport r = monte_carlo(inst.rsm, parse_model(model), f, p, n, seed);
  std::printf("estimate %.12g\nstderr %.12g\nn %llu\nseed %llu\n", r.estimate, r.stderr_,
              static_cast<unsigned long long>(r.n), static_cast<unsigned long long>(r.seed));
  return 0;
}

int cmd_ehrhart(const std::string& file, const std::string& k_text, bool half_open, bool closed) {
  const Instance inst = parse_instance(file);
  if (half_open) {
    std::cout << lattice_points_half_open(inst.rsm, parse_ks(k_text, inst.rsm.size())) << "\n";
    return 0;
  }
  const auto ks = parse_ks(k_text, 1);
  if (closed) {
    std::cout << to_string(ehrhart_closed(inst.rsm, Rational(ks.front()))) << "\n";
  } else {
    std::cout << lattice_points_zonotope(zonotope_of(inst.rsm), ks.front()) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tutte-type invariants of ranked sets with multiplicity"};
  app.require_subcommand(1);

  std::string file, which, model, id, p_text, k_text, corpus_dir = RSM_CORPUS_DIR;
  std::vector<std::string> at, files, ids;
  bool uniform_vars = false, corpus = false, all = false, half_open = false, closed = false;
  std::size_t trials = 3;
  std::uint64_t seed = 7, n = 100000;

  auto* poly = app.add_subcommand("poly", "print an invariant as a canonical polynomial string");
  poly->add_option("file", file, "instance file")->required();
  poly->add_option("--which", which, "Z|SC|W|T|F|P|chi|X|Y|ehr|potts")->required();
  poly->add_flag("--uniform", uniform_vars, "collapse per-element variables");

  auto* expect = app.add_subcommand("expect", "closed-form expectation of an identity");
  expect->add_option("file", file, "instance file")->required();
  expect->add_option("--model", model, "restriction|contraction");
  expect->add_option("--id", id, "identity id")->required();
  expect->add_option("--p", p_text, "probability (num/den) or comma list");
  expect->add_option("--at", at, "parameter values var=value");

  auto* verify = app.add_subcommand("verify", "check identities against brute force");
  verify->add_option("files", files, "instance files or directories");
  verify->add_flag("--corpus", corpus, "use the bundled corpus");
  verify->add_option("--corpus-dir", corpus_dir, "corpus directory");
  verify->add_flag("--all", all, "every registered identity");
  verify->add_option("--id", ids, "identity id (repeatable)");
  verify->add_option("--trials", trials, "random points per probability vector");
  verify->add_option("--seed", seed, "base seed");

  auto* sample = app.add_subcommand("sample", "Monte Carlo estimate of an expected invariant");
  sample->add_option("file", file, "instance file")->required();
  sample->add_option("--f", which, "invariant")->required();
  sample->add_option("--model", model, "restriction|contraction")->default_val("restriction");
  sample->add_option("--p", p_text, "probability (float) or comma list")->required();
  sample->add_option("--n", n, "sample count");
  sample->add_option("--seed", seed, "seed");
  sample->add_option("--at", at, "variable values var=value");

  auto* ehrhart = app.add_subcommand("ehrhart", "lattice points of a zonotope");
  ehrhart->add_option("file", file, "instance file")->required();
  ehrhart->add_option("--k", k_text, "dilation, or per-generator scalings with --half-open")->required();
  ehrhart->add_flag("--half-open", half_open, "half-open zonotope of k_e e");
  ehrhart->add_flag("--closed", closed, "use the Tutte closed form instead of counting");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*poly) return cmd_poly(file, which, uniform_vars);
    if (*expect) return cmd_expect(file, model, id, p_text, at);
    if (*verify) return cmd_verify(files, corpus, corpus_dir, all, ids, trials, seed);
    if (*sample) return cmd_sample(file, model, which, p_text, n, seed, at);
    if (*ehrhart) return cmd_ehrhart(file, k_text, half_open, closed);
  } catch (const PoleError& e) {
    std::cerr << "pole: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
