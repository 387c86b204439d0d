#pragma once

// Command-line front end. Exit codes: 0 success, 1 domain failure (invalid
// complex, failed precondition), 2 input, parse or usage error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "iotahat.hpp"

namespace iotahat::cli {

/// Parameter string, preset name (X:<i>, selfdual, brieskorn:<i>) or JSON file.
inline AlmostIotaComplex load_input(const std::string& input) {
  auto index_after = [&](const std::string& prefix) {
    const std::string rest = input.substr(prefix.size());
    std::size_t used = 0;
    int i = 0;
    try {
      i = std::stoi(rest, &used);
    } catch (const std::exception&) {
      throw ParseError("bad preset index in '" + input + "'");
    }
    if (used != rest.size() || i < 1) throw ParseError("bad preset index in '" + input + "'");
    return i;
  };
  if (!input.empty() && input.front() == '(') return build(parse_params(input));
  if (input == "selfdual") return self_dual_complex();
  if (input.rfind("X:", 0) == 0) return x_complex(index_after("X:"));
  if (input.rfind("brieskorn:", 0) == 0) return x_complex(index_after("brieskorn:"));
  std::ifstream in(input);
  if (!in) throw ParseError("cannot open input '" + input + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ParseError("malformed JSON in '" + input + "': " + e.what());
  }
  return complex_from_json(doc);
}

inline std::string format_fvec(const std::map<int, int>& v) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& [n, c] : v) {
    if (!first) os << ", ";
    os << n << ": " << c;
    first = false;
  }
  os << '}';
  return os.str();
}

inline json towers_json(const std::vector<Tower>& towers) {
  json out = json::array();
  for (const auto& t : towers) {
    json e{{"grading", t.top_grading}};
    e["height"] = t.height ? json(*t.height) : json("inf");
    out.push_back(e);
  }
  return out;
}

inline int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Almost iota-complexes: representatives, order and invariants"};
  app.require_subcommand(1);
  std::string format = "text";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));

  std::string in_a, in_b, preset;
  int n = 1;
  bool witness = false;

  auto* validate_cmd = app.add_subcommand("validate", "Check the almost iota-complex axioms");
  validate_cmd->add_option("input", in_a)->required();
  auto* reduce_cmd = app.add_subcommand("reduce", "Print a reduced, normalized model");
  reduce_cmd->add_option("input", in_a)->required();
  auto* rep_cmd = app.add_subcommand("rep", "Standard-complex representative");
  rep_cmd->add_option("input", in_a)->required();
  rep_cmd->add_flag("--witness", witness, "Also print local maps in both directions");
  auto* sum_cmd = app.add_subcommand("sum", "Class of the tensor product");
  sum_cmd->add_option("a", in_a)->required();
  sum_cmd->add_option("b", in_b)->required();
  auto* neg_cmd = app.add_subcommand("neg", "Class of the dual");
  neg_cmd->add_option("input", in_a)->required();
  auto* cmp_cmd = app.add_subcommand("compare", "Compare two classes in the total order");
  cmp_cmd->add_option("a", in_a)->required();
  cmp_cmd->add_option("b", in_b)->required();
  auto* phi_cmd = app.add_subcommand("phi", "phi_n of the class");
  phi_cmd->add_option("input", in_a)->required();
  phi_cmd->add_option("--n", n, "Index n >= 1")->required()->check(CLI::PositiveNumber);
  auto* pivot_cmd = app.add_subcommand("pivot", "Pivotal invariant P of the class");
  pivot_cmd->add_option("input", in_a)->required();
  auto* shift_cmd = app.add_subcommand("shift", "sh_n of the class");
  shift_cmd->add_option("input", in_a)->required();
  shift_cmd->add_option("--n", n, "Index n >= 1")->required()->check(CLI::PositiveNumber);
  auto* fvec_cmd = app.add_subcommand("fvec", "All nonzero phi_n of the class");
  fvec_cmd->add_option("input", in_a)->required();
  auto* catalog_cmd = app.add_subcommand("catalog", "List presets, or print one as JSON");
  catalog_cmd->add_option("preset", preset);
  catalog_cmd->add_option("--n", n, "Number of Brieskorn entries to list")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  const bool as_json = format == "json";

  auto print_params = [&](const char* key, const Params& p) {
    if (as_json)
      out << json{{key, format_params(p)}, {"symbols", params_to_json(p)}}.dump() << "\n";
    else
      out << format_params(p) << "\n";
  };
  auto print_int = [&](const char* key, int v) {
    if (as_json)
      out << json{{key, v}}.dump() << "\n";
    else
      out << v << "\n";
  };

  try {
    if (*validate_cmd) {
      const ValidationReport r = validate(load_input(in_a));
      if (as_json) {
        out << json{{"valid", r.ok()}, {"failures", r.failures}, {"normalized", r.normalized},
                    {"towers", towers_json(r.towers)}}
                   .dump()
            << "\n";
      } else {
        out << (r.ok() ? "valid" : "invalid") << "\n";
        for (const auto& f : r.failures) out << "  " << f << "\n";
      }
      return r.ok() ? 0 : 1;
    }
    if (*reduce_cmd) {
      const AlmostIotaComplex c = load_input(in_a);
      if (!validate(c).ok()) throw Error("input is not a valid almost iota-complex");
      out << complex_to_json(reduced_model(c)).dump(as_json ? -1 : 2) << "\n";
      return 0;
    }
    if (*rep_cmd) {
      const AlmostIotaComplex c = load_input(in_a);
      if (!validate(c).ok()) throw Error("input is not a valid almost iota-complex");
      const LocalEquivalence eq = representative_with_witness(c);
      if (as_json) {
        json doc{{"representative", format_params(eq.params)}, {"symbols", params_to_json(eq.params)}};
        if (witness)
          doc["witness"] = {{"to", morphism_to_json(eq.to_complex.map)},
                            {"from", morphism_to_json(eq.from_complex.map)}};
        out << doc.dump() << "\n";
      } else {
        out << format_params(eq.params) << "\n";
        if (witness) {
          out << "standard -> complex: " << to_string(eq.to_complex.map) << "\n";
          out << "complex -> standard: " << to_string(eq.from_complex.map) << "\n";
        }
      }
      return 0;
    }

    auto class_of = [&](const std::string& input) {
      const AlmostIotaComplex c = load_input(input);
      if (!validate(c).ok()) throw Error("input '" + input + "' is not a valid almost iota-complex");
      return representative(c);
    };
    if (*sum_cmd) {
      print_params("sum", group_sum(class_of(in_a), class_of(in_b)));
      return 0;
    }
    if (*neg_cmd) {
      print_params("neg", group_neg(class_of(in_a)));
      return 0;
    }
    if (*cmp_cmd) {
      const int c = order_compare(class_of(in_a), class_of(in_b));
      const char* sym = c < 0 ? "<" : (c > 0 ? ">" : "=");
      if (as_json)
        out << json{{"compare", sym}}.dump() << "\n";
      else
        out << sym << "\n";
      return 0;
    }
    if (*phi_cmd) {
      print_int("phi", phi(n, class_of(in_a)));
      return 0;
    }
    if (*pivot_cmd) {
      print_int("pivot", pivot(class_of(in_a)));
      return 0;
    }
    if (*shift_cmd) {
      print_params("shift", shift(n, class_of(in_a)));
      return 0;
    }
    if (*fvec_cmd) {
      const auto v = phi_vector(class_of(in_a));
      if (as_json) {
        json obj = json::object();
        for (const auto& [k, c] : v) obj[std::to_string(k)] = c;
        out << json{{"fvec", obj}}.dump() << "\n";
      } else {
        out << format_fvec(v) << "\n";
      }
      return 0;
    }
    if (*catalog_cmd) {
      if (!preset.empty()) {
        out << complex_to_json(load_input(preset)).dump(as_json ? -1 : 2) << "\n";
        return 0;
      }
      const int count = catalog_cmd->count("--n") ? n : 6;
      json list = json::array();
      for (int i = 1; i <= count; ++i) {
        const BrieskornEntry e = brieskorn(i);
        if (as_json)
          list.push_back({{"preset", "X:" + std::to_string(i)}, {"manifold", e.label}, {"class", format_params(e.params)}});
        else
          out << "X:" << i << "  " << e.label << "  " << format_params(e.params) << "\n";
      }
      if (as_json) {
        list.push_back({{"preset", "selfdual"}, {"class", "()"}});
        out << list.dump() << "\n";
      } else {
        out << "selfdual  " << "()" << "\n";
      }
      return 0;
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace iotahat::cli
