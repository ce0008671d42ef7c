#include "garside/cli.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <sstream>

#include "CLI11.hpp"
#include "garside/category.hpp"
#include "garside/conjugacy.hpp"
#include "garside/coxeter.hpp"
#include "garside/decomposition.hpp"
#include "garside/garside_structure.hpp"
#include "garside/germ.hpp"
#include "garside/germ_io.hpp"
#include "garside/ribbon.hpp"

namespace garside::cli {

namespace {

  // Raised for anything the user can fix by changing the input.
  class InputError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  GermTable load(std::string const& path) {
    try {
      return GermTable::build(read_germ_file(path));
    } catch (GermFileError const& e) {
      throw InputError(path + ": " + e.what());
    } catch (GermError const& e) {
      throw InputError(path + ": " + e.what());
    }
  }

  Morphism word(GermTable const& germ, std::string const& text) {
    try {
      return parse_morphism(germ, text);
    } catch (CategoryError const& e) {
      throw InputError("'" + text + "': " + e.what());
    }
  }

  CoxeterSystem coxeter_input(std::string const& type, std::string const& matrix) {
    try {
      if (matrix.empty()) {
        return CoxeterSystem::preset(type);
      }
      // Rows separated by ';', entries by spaces; 0 stands for infinity.
      std::vector<std::vector<unsigned>> m;
      std::istringstream                 rows(matrix);
      for (std::string row; std::getline(rows, row, ';');) {
        std::istringstream entries(row);
        auto&              r = m.emplace_back();
        for (long long x = 0; entries >> x;) {
          if (x < 0) {
            throw InputError("negative Coxeter matrix entry");
          }
          r.push_back(static_cast<unsigned>(x));
        }
        if (!entries.eof()) {
          throw InputError("Coxeter matrix entries must be integers");
        }
      }
      return CoxeterSystem::from_matrix(std::move(m));
    } catch (CoxeterError const& e) {
      throw InputError(e.what());
    }
  }

  char const* verdict_name(Verdict v) {
    switch (v) {
      case Verdict::pass: return "pass";
      case Verdict::fail: return "fail";
      case Verdict::unchecked: return "unchecked";
    }
    return "?";
  }

  void print_axiom(std::ostream& out, GermTable const& germ, char const* name,
                   AxiomResult const& r, bool assumed = false) {
    out << name << ' ';
    if (assumed) {
      out << r.detail << '\n';
      return;
    }
    out << verdict_name(r.verdict);
    if (!r.detail.empty()) {
      out << ": " << r.detail;
    }
    if (r.verdict == Verdict::fail && !r.witness.empty()) {
      out << " witness " << format_elements(germ, r.witness);
    }
    out << '\n';
  }

  G4Strategy parse_g4(std::string const& text) {
    if (text == "assume") {
      return G4Strategy::assume("not verified; use --g4 search=L");
    }
    if (text.starts_with("search=")) {
      auto digits = text.substr(7);
      if (!digits.empty() && std::all_of(digits.begin(), digits.end(), ::isdigit)
          && digits.size() < 6) {
        return G4Strategy::bounded_search(std::stoul(digits));
      }
    }
    throw InputError("--g4 takes 'assume' or 'search=L'");
  }

  // Pairs of atoms whose common multiples ending at some object have several
  // minimal elements and no least one.
  void report_lcm_failures(std::ostream& out, GermTable const& germ) {
    constexpr std::size_t probe_length = 3;
    constexpr std::size_t max_elements = 200;
    if (germ.element_count() > max_elements) {
      return;
    }
    auto atoms = germ_atoms(germ);
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      for (std::size_t j = i + 1; j < atoms.size(); ++j) {
        if (germ.source(atoms[i]) != germ.source(atoms[j])) {
          continue;
        }
        auto x = from_element(germ, atoms[i]);
        auto y = from_element(germ, atoms[j]);
        for (std::uint32_t t = 0; t < germ.object_count(); ++t) {
          auto probe = probe_common_multiples(germ, x, y, ObjectId{t}, probe_length);
          if (probe.least || probe.minimal.size() < 2) {
            continue;
          }
          out << "note: " << germ.label(atoms[i]) << " and " << germ.label(atoms[j])
              << " have no right lcm ending at " << germ.object_name(ObjectId{t})
              << "; shortest common right multiples there:";
          for (std::size_t k = 0; k < probe.shortest.size(); ++k) {
            out << (k ? ", " : " ") << format(germ, probe.shortest[k]);
          }
          out << '\n';
        }
      }
    }
  }

  int cmd_check(std::ostream& out, std::string const& file, std::string const& g4) {
    auto germ   = load(file);
    auto report = check_locally_garside(germ, parse_g4(g4));
    print_axiom(out, germ, "G1", report.g1);
    print_axiom(out, germ, "G2", report.g2);
    print_axiom(out, germ, "G3", report.g3);
    print_axiom(out, germ, "G2'", report.g2_atoms);
    print_axiom(out, germ, "G3'", report.g3_atoms);
    print_axiom(out, germ, "G4", report.g4,
                report.g4_strategy.kind == G4Strategy::Kind::assume);
    for (auto const& w : report.warnings) {
      out << "warning: " << w << '\n';
    }
    bool const good = report.locally_garside();
    out << "locally Garside: " << (good ? "yes" : "no") << '\n';
    if (good) {
      report_lcm_failures(out, germ);
    }
    return good ? ok : negative_verdict;
  }

  std::vector<Morphism> words(GermTable const& germ, std::vector<std::string> const& in) {
    std::vector<Morphism> out;
    for (auto const& w : in) {
      out.push_back(word(germ, w));
    }
    return out;
  }

  int cmd_lcm(std::ostream& out, std::string const& file,
              std::vector<std::string> const& in) {
    auto germ = load(file);
    auto ms   = words(germ, in);
    auto l    = lcm(germ, ms);
    out << (l ? format(germ, *l) : "no common multiple") << '\n';
    return ok;
  }

  int cmd_gcd(std::ostream& out, std::string const& file,
              std::vector<std::string> const& in) {
    auto germ = load(file);
    auto ms   = words(germ, in);
    for (auto const& m : ms) {
      if (m.source != ms[0].source) {
        throw InputError("gcd needs morphisms with a common source");
      }
    }
    out << format(germ, gcd(germ, ms)) << '\n';
    return ok;
  }

  int cmd_coxeter(std::ostream& out, std::string const& type, std::string const& matrix,
                  std::optional<std::size_t> max_length, bool emit_germ) {
    auto cox = coxeter_input(type, matrix);
    if (!cox.is_finite() && !max_length) {
      throw InputError("W is infinite; give --max-length");
    }
    auto lift = lift_germ(cox, max_length);
    if (emit_germ) {
      out << serialize_germ(lift.germ.to_spec());
      return ok;
    }
    out << "rank=" << cox.rank() << " finite=" << (cox.is_finite() ? "true" : "false")
        << '\n';
    out << "generators:";
    for (std::size_t s = 0; s < cox.rank(); ++s) {
      out << ' ' << cox.label(s);
    }
    out << '\n';
    out << "elements=" << lift.elements.size();
    if (lift.truncated) {
      out << " (truncated at length " << *max_length << ")";
    }
    out << '\n';
    if (cox.is_finite()) {
      out << "longest=" << cox.format(w_parabolic_longest(cox, cox.all())) << '\n';
    }
    return ok;
  }

  int cmd_ribbon(std::ostream& out, std::string const& type, std::string const& matrix,
                 std::string const& I0_text) {
    auto         cox = coxeter_input(type, matrix);
    GeneratorSet I0;
    try {
      I0 = cox.parse_set(I0_text);
    } catch (CoxeterError const& e) {
      throw InputError(e.what());
    }
    auto rg = build_ribbon_germ(cox, I0);
    out << "orbit:";
    for (auto I : rg.objects) {
      out << ' ' << cox.format(I);
    }
    out << '\n' << "elements=" << rg.elements.size() << '\n';
    out << "atoms:";
    for (auto a : ribbon_atoms(rg)) {
      out << ' ' << ribbon_label(cox, rg.elements[a.index]);
    }
    out << '\n';
    auto report = check_ribbon_germ(rg);
    out << "axioms: G1 " << verdict_name(report.g1.verdict) << ", G2 "
        << verdict_name(report.g2.verdict) << ", G3 " << verdict_name(report.g3.verdict)
        << ", G4 " << report.g4.detail << '\n';
    auto gs = spherical_garside(rg);
    for (std::size_t o = 0; o < rg.objects.size(); ++o) {
      out << "delta " << cox.format(rg.objects[o]) << ": "
          << ribbon_label(cox, rg.elements[gs.delta[o].index]) << '\n';
    }
    return report.locally_garside() ? ok : negative_verdict;
  }

  int cmd_conj(std::ostream& out, std::string const& file, std::string const& family_text,
               std::string const& x_text) {
    auto   germ = load(file);
    Family family;
    std::istringstream parts(family_text);
    for (std::string w; std::getline(parts, w, ',');) {
      family.push_back(word(germ, w));
    }
    try {
      validate_family(family);
    } catch (ConjugacyError const& e) {
      throw InputError(e.what());
    }
    auto x = word(germ, x_text);
    if (x.source != family[0].source) {
      throw InputError("x must start where the family lives");
    }
    if (!is_conjugating(germ, family, x)) {
      out << "conjugating: no\n";
      return negative_verdict;
    }
    auto target = conj_apply(germ, family, x);
    out << "conjugating: yes\n";
    out << "target:";
    for (auto const& w : target) {
      out << ' ' << format(germ, w);
    }
    out << '\n' << "nf: " << format(germ, conj_normal_form(germ, family, x)) << '\n';
    return ok;
  }

  int cmd_eposet(std::ostream& out, std::string const& file, std::string const& g_text,
                 bool h1, bool pi1, bool export_it) {
    auto germ = load(file);
    auto g    = word(germ, g_text);
    auto e    = build_Eg(germ, g);
    SimplyConnectedOptions opts;
    opts.cone_shortcut = !(h1 || pi1);
    opts.pi1_attempt   = pi1;
    auto r             = check_simply_connected(e, opts);
    out << "vertices=" << e.vertices.size() << " connected=" << (r.connected ? "true" : "false");
    if (h1) {
      out << " h1=" << r.h1_rank;
      for (auto t : r.h1_torsion) {
        out << "+Z/" << t;
      }
    }
    if (pi1) {
      out << " pi1=" << (!r.pi1_trivial ? "unknown" : *r.pi1_trivial ? "trivial" : "nontrivial");
    }
    out << '\n';
    if (export_it) {
      out << export_poset(germ, e);
    }
    bool const bad = !r.connected || (h1 && !r.h1_trivial()) || (pi1 && r.pi1_trivial == false);
    return bad ? negative_verdict : ok;
  }

  int cmd_fixed(std::ostream& out, std::string const& file, std::string const& map_text) {
    auto germ = load(file);
    // "a=b,b=a": images of atoms.
    std::vector<std::pair<ElementId, ElementId>> images;
    std::istringstream                           parts(map_text);
    for (std::string item; std::getline(parts, item, ',');) {
      auto eq = item.find('=');
      if (eq == std::string::npos) {
        throw InputError("automorphisms are written as 'a=b,b=a'");
      }
      auto from = germ.find(item.substr(0, eq));
      auto to   = germ.find(item.substr(eq + 1));
      if (!from || !to) {
        throw InputError("unknown element in '" + item + "'");
      }
      images.emplace_back(*from, *to);
    }
    GermAutomorphism sigma;
    try {
      sigma = automorphism_from_atoms(germ, images);
    } catch (GermError const& e) {
      throw InputError(e.what());
    }
    auto fixed = fixed_subgerm(germ, sigma);
    std::vector<ElementId> members;
    for (std::uint32_t i = 0; i < fixed.germ.element_count(); ++i) {
      members.push_back(ElementId{i});
    }
    out << "fixed elements: " << format_elements(fixed.germ, members) << '\n';
    out << "atoms: " << format_elements(fixed.germ, germ_atoms(fixed.germ)) << '\n';
    out << "orbit lcm atoms: " << format_elements(germ, orbit_lcm_atoms(germ, sigma)) << '\n';
    return ok;
  }

}  // namespace

int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computation in locally Garside categories given by finite germs",
               "garside"};
  app.require_subcommand(1);
  bool timing = false;
  app.add_flag("--timing", timing, "Print the elapsed time on the error stream");

  std::function<int()> action;
  std::string          file, g4 = "assume", w, matrix, type, family, extra;
  std::vector<std::string> many;
  std::size_t          max_length = 0;
  bool                 h1 = false, pi1 = false, export_it = false, emit_germ = false;

  auto* check = app.add_subcommand("check", "Verify the germ axioms");
  check->add_option("file", file, "Germ file")->required();
  check->add_option("--g4", g4, "assume | search=L");
  check->callback([&] { action = [&] { return cmd_check(out, file, g4); }; });

  auto* nf = app.add_subcommand("nf", "Greedy normal form of a word");
  nf->add_option("file", file)->required();
  nf->add_option("word", w, "Whitespace-separated element names")->required();
  nf->callback([&] {
    action = [&] {
      auto germ = load(file);
      out << format(germ, word(germ, w)) << '\n';
      return ok;
    };
  });

  auto* lcm_cmd = app.add_subcommand("lcm", "Right lcm of words");
  lcm_cmd->add_option("file", file)->required();
  lcm_cmd->add_option("words", many)->required()->expected(1, -1);
  lcm_cmd->callback([&] { action = [&] { return cmd_lcm(out, file, many); }; });

  auto* gcd_cmd = app.add_subcommand("gcd", "Left gcd of words");
  gcd_cmd->add_option("file", file)->required();
  gcd_cmd->add_option("words", many)->required()->expected(1, -1);
  gcd_cmd->callback([&] { action = [&] { return cmd_gcd(out, file, many); }; });

  auto* atoms = app.add_subcommand("atoms", "Atoms of the germ");
  atoms->add_option("file", file)->required();
  atoms->callback([&] {
    action = [&] {
      auto germ = load(file);
      out << format_elements(germ, germ_atoms(germ)) << '\n';
      return ok;
    };
  });

  auto* cox = app.add_subcommand("coxeter", "Canonical lift germ of a Coxeter group");
  cox->add_option("type", type, "Preset such as A3, B3, D4, I2(5), A~2");
  cox->add_option("--matrix", matrix, "Rows separated by ';', 0 for infinity");
  auto* cox_len = cox->add_option("--max-length", max_length, "Truncate the carrier");
  cox->add_flag("--germ", emit_germ, "Print the lift as a germ file");
  cox->callback([&] {
    action = [&] {
      if (type.empty() == matrix.empty()) {
        throw InputError("give either a type or --matrix");
      }
      return cmd_coxeter(out, type, matrix,
                         cox_len->count() ? std::optional<std::size_t>(max_length)
                                          : std::nullopt,
                         emit_germ);
    };
  });

  auto* ribbon = app.add_subcommand("ribbon", "Ribbon germ of a finite Coxeter group");
  ribbon->add_option("type", type)->required();
  ribbon->add_option("I0", extra, "Generator subset such as {s1}")->required();
  ribbon->callback([&] { action = [&] { return cmd_ribbon(out, type, "", extra); }; });

  auto* conj = app.add_subcommand("conj", "Conjugation of a family by a morphism");
  conj->add_option("file", file)->required();
  conj->add_option("family", family, "Comma-separated words")->required();
  conj->add_option("x", w)->required();
  conj->callback([&] { action = [&] { return cmd_conj(out, file, family, w); }; });

  auto* eposet = app.add_subcommand("eposet", "Poset of decompositions of a morphism");
  eposet->add_option("file", file)->required();
  eposet->add_option("word", w)->required();
  eposet->add_flag("--h1", h1, "Compute H_1 of the order complex");
  eposet->add_flag("--pi1", pi1, "Attempt a certificate that pi_1 is trivial");
  eposet->add_flag("--export", export_it, "Print the poset");
  eposet->callback(
      [&] { action = [&] { return cmd_eposet(out, file, w, h1, pi1, export_it); }; });

  auto* fixed = app.add_subcommand("fixed", "Fixed subgerm under an automorphism");
  fixed->add_option("file", file)->required();
  fixed->add_option("map", extra, "Atom images such as s1=s3,s2=s2,s3=s1")->required();
  fixed->callback([&] { action = [&] { return cmd_fixed(out, file, extra); }; });

  auto* fmt = app.add_subcommand("format", "Re-serialize a germ file canonically");
  fmt->add_option("file", file)->required();
  fmt->callback([&] {
    action = [&] {
      out << serialize_germ(load(file).to_spec());
      return ok;
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (CLI::ParseError const& e) {
    auto code = app.exit(e, out, err);
    return code == 0 ? ok : bad_input;
  }

  auto const start = std::chrono::steady_clock::now();
  int        code  = ok;
  try {
    code = action();
  } catch (InputError const& e) {
    err << "error: " << e.what() << '\n';
    code = bad_input;
  } catch (std::exception const& e) {
    err << "error: " << e.what() << '\n';
    code = computation;
  }
  if (timing) {
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - start);
    err << "time_ms=" << ms.count() << '\n';
  }
  return code;
}

}  // namespace garside::cli
