#ifndef PERIODICA_CLI_HPP
#define PERIODICA_CLI_HPP

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "periodica/periodica.hpp"

/// Command-line surface.  Everything is deterministic: identical
/// invocations print identical bytes.  Exit codes: 0 success, 2 usage
/// or input errors, 3 resource-limit errors, 4 outcomes that stay
/// Unknown within fuel.
namespace periodica::cli {

inline ConstantId parse_constant_name(const std::string& name) {
  if (name == "e") return ConstantId::e();
  if (name == "pi") return ConstantId::pi();
  if (name == "catalan") return ConstantId::catalan();
  if (name == "gamma") return ConstantId::euler_gamma();
  if (name == "liouville") return ConstantId::liouville();
  if (name == "lnpi") return ConstantId::ln_pi();
  if (name.rfind("ln:", 0) == 0)
    return ConstantId::ln_n(std::stoul(name.substr(3)));
  if (name.rfind("zeta:", 0) == 0)
    return ConstantId::zeta(std::stoul(name.substr(5)));
  throw DomainError("unknown constant '" + name +
                    "' (use e|pi|ln:N|catalan|gamma|liouville|zeta:K|lnpi)");
}

inline Rat parse_rat_text(const std::string& text) {
  size_t slash = text.find('/');
  if (slash == std::string::npos) return Rat(Int(text));
  return make_rat(Int(text.substr(0, slash)), Int(text.substr(slash + 1)));
}

/// "-1,1;-1,1" -> box sides.
inline Box parse_domain(const std::string& text, unsigned nvars) {
  Box box;
  std::stringstream ss(text);
  std::string side;
  while (std::getline(ss, side, ';')) {
    size_t comma = side.find(',');
    if (comma == std::string::npos)
      throw DomainError("domain: each side needs 'lo,hi'");
    box.sides.emplace_back(parse_rat_text(side.substr(0, comma)),
                           parse_rat_text(side.substr(comma + 1)));
  }
  if (box.nvars() != nvars)
    throw DomainError("domain: expected " + std::to_string(nvars) +
                      " sides, got " + std::to_string(box.nvars()));
  return box;
}

namespace detail {

inline std::string result_line(const DecimalResult& dr, const ClassTag& cls,
                               const std::string& derivation) {
  return dr.text() + " [" + cls.name() + "; " + derivation + "]";
}

inline std::string result_json(const DecimalResult& dr, const ClassTag& cls,
                               const std::string& derivation) {
  nlohmann::json j;
  j["value"] = dr.digits_text;
  j["bound_num"] = num(dr.error_bound).get_str();
  j["bound_den"] = den(dr.error_bound).get_str();
  j["class"] = cls.name();
  j["ref"] = derivation;
  return j.dump();
}

inline std::string read_term_source(const std::string& arg) {
  std::ifstream in(arg);
  if (in.good()) {
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  return arg;
}

}  // namespace detail

/// Run the tool on argv-style arguments (program name excluded).
/// Output goes to `out`; the return value is the exit status.
inline int run(const std::vector<std::string>& args, std::ostream& out) {
  CLI::App app{"exact real arithmetic workbench"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  unsigned long fuel_arg = 10000;
  unsigned long max_depth = 16;
  app.add_option("--fuel", fuel_arg,
                 "index budget for semi-decidable comparisons");
  app.add_option("--max-depth", max_depth, "subdivision depth limit");

  std::string const_name, term_arg, term_args_csv, poly_text, bracket_text;
  std::string set_file, domain_text, ratio_text;
  unsigned digits = 6;
  unsigned long base = 10, positions = 6;
  bool as_json = false;

  CLI::App* digits_cmd =
      app.add_subcommand("digits", "certified decimal digits of a constant");
  digits_cmd->add_option("constant", const_name)->required();
  digits_cmd->add_option("--digits", digits);
  digits_cmd->add_flag("--json", as_json);

  CLI::App* eval_cmd =
      app.add_subcommand("eval-term", "evaluate a function term");
  eval_cmd->add_option("term", term_arg, "term literal or file")->required();
  eval_cmd->add_option("--args", term_args_csv)->required();

  CLI::App* root_cmd =
      app.add_subcommand("root", "isolate and evaluate a polynomial root");
  root_cmd->add_option("--poly", poly_text)->required();
  root_cmd->add_option("--bracket", bracket_text)->required();
  root_cmd->add_option("--digits", digits);
  root_cmd->add_flag("--json", as_json);

  CLI::App* volume_cmd =
      app.add_subcommand("volume", "certified volume of a semialgebraic set");
  volume_cmd->add_option("file", set_file)->required();
  volume_cmd->add_option("--domain", domain_text)->required();
  volume_cmd->add_option("--digits", digits);
  volume_cmd->add_flag("--json", as_json);

  CLI::App* badic_cmd =
      app.add_subcommand("badic", "base-b digits by certified comparison");
  badic_cmd->add_option("constant", const_name)->required();
  badic_cmd->add_option("--base", base);
  badic_cmd->add_option("--positions", positions);

  CLI::App* sum_cmd =
      app.add_subcommand("sum-series", "sum a geometric series with certified tail");
  sum_cmd->add_option("--ratio", ratio_text)->required();
  sum_cmd->add_option("--digits", digits);
  sum_cmd->add_flag("--json", as_json);

  std::vector<std::string> argv_copy = args;
  try {
    std::vector<const char*> argv;
    argv.push_back("periodica");
    for (const auto& a : argv_copy) argv.push_back(a.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    std::stringstream msg;
    int code = app.exit(e, msg, msg);
    out << msg.str();
    return code == 0 ? 0 : 2;
  }

  try {
    if (digits_cmd->parsed()) {
      CReal c = constant(parse_constant_name(const_name));
      DecimalResult dr = to_decimal(c, digits);
      out << (as_json ? detail::result_json(dr, c.cls(), c.provenance())
                      : detail::result_line(dr, c.cls(), c.provenance()))
          << "\n";
      return 0;
    }
    if (eval_cmd->parsed()) {
      TermPtr t = parse_term(detail::read_term_source(term_arg));
      std::vector<Nat> term_args;
      std::stringstream ss(term_args_csv);
      std::string tok;
      while (std::getline(ss, tok, ',')) term_args.emplace_back(tok);
      out << eval_term(t, term_args).get_str() << "\n";
      return 0;
    }
    if (root_cmd->parsed()) {
      MPoly p = parse_mpoly(poly_text, 1);
      RatPoly coeffs;
      for (const auto& [e, c] : p.terms) {
        if (coeffs.size() <= e[0]) coeffs.resize(e[0] + 1, Rat(0));
        coeffs[e[0]] = c;
      }
      size_t comma = bracket_text.find(',');
      if (comma == std::string::npos)
        throw DomainError("bracket: expected 'lo,hi'");
      std::pair<Rat, Rat> bracket{parse_rat_text(bracket_text.substr(0, comma)),
                                  parse_rat_text(bracket_text.substr(comma + 1))};
      CReal root = poly_root(coeffs, bracket, Fuel(Nat(fuel_arg)));
      DecimalResult dr = to_decimal(root, digits);
      out << (as_json ? detail::result_json(dr, root.cls(), root.provenance())
                      : detail::result_line(dr, root.cls(), root.provenance()))
          << "\n";
      return 0;
    }
    if (volume_cmd->parsed()) {
      std::ifstream in(set_file);
      if (!in.good()) throw DomainError("cannot read set file " + set_file);
      std::stringstream ss;
      ss << in.rdbuf();
      SemialgSet s = parse_semialg(ss.str());
      Box dom = parse_domain(domain_text, s.nvars);
      // Refine until the bound width certifies the requested digits.
      Rat target = make_rat(1, pow_int(10, digits));
      VolumeResult vb;
      for (unsigned long d = 0;; ++d) {
        vb = volume_bounds(s, dom, d);
        if (vb.upper - vb.lower <= target) break;
        if (d >= max_depth)
          throw ResourceLimitError(
              "volume: depth limit reached before the bounds certified " +
              std::to_string(digits) + " digits; raise --max-depth");
      }
      Rat mid = (vb.upper + vb.lower) / 2;
      DecimalResult dr{to_decimal_string(mid, digits),
                       mid,
                       (vb.upper - vb.lower) / 2 + make_rat(1, 2 * pow_int(10, digits)),
                       digits};
      ClassTag vol_cls = ClassTag::lower_elementary();
      std::string vol_ref = "volume";
      if (as_json) {
        nlohmann::json j =
            nlohmann::json::parse(detail::result_json(dr, vol_cls, vol_ref));
        j["lower"] = to_decimal_string(vb.lower, digits + 2, RoundMode::TowardNegInf);
        j["upper"] = to_decimal_string(vb.upper, digits + 2, RoundMode::TowardPosInf);
        out << j.dump() << "\n";
      } else {
        out << detail::result_line(dr, vol_cls, vol_ref) << "\n";
        out << "bounds [" << to_decimal_string(vb.lower, digits + 2, RoundMode::TowardNegInf)
            << ", " << to_decimal_string(vb.upper, digits + 2, RoundMode::TowardPosInf)
            << "] at depth " << vb.depth << " (" << vb.cells_classified
            << " cells)\n";
      }
      return 0;
    }
    if (badic_cmd->parsed()) {
      CReal c = constant(parse_constant_name(const_name));
      DigitExtraction ext = extract_digits(c, Nat(base), Nat(positions),
                                           Fuel(Nat(fuel_arg)));
      out << ext.integer_part.get_str() << " .";
      for (const auto& d : ext.digits) out << " " << d.get_str();
      if (!ext.complete()) {
        out << " ?\n";
        out << "undecided at position " << ext.unknown_at->get_str()
            << ": value may sit on a digit boundary; raise --fuel to retry\n";
        return 4;
      }
      out << "\n";
      return 0;
    }
    if (sum_cmd->parsed()) {
      SeriesSpec spec = geometric_spec(parse_rat_text(ratio_text));
      CReal c = skordev_sum(spec);
      DecimalResult dr = to_decimal(c, digits);
      out << (as_json ? detail::result_json(dr, c.cls(), c.provenance())
                      : detail::result_line(dr, c.cls(), c.provenance()))
          << "\n";
      return 0;
    }
  } catch (const ResourceLimitError& e) {
    out << "resource limit: " << e.what() << "\n";
    return 3;
  } catch (const FuelExhaustedError& e) {
    out << "undecided within fuel: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    out << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace periodica::cli

#endif  // PERIODICA_CLI_HPP
