#include "chebknot/cli.hpp"

#include <ostream>
#include <string>

#include "CLI11.hpp"
#include "chebknot/chebyshev.hpp"
#include "chebknot/errors.hpp"

namespace chebknot {

namespace {

void cmd_poly(const std::string& family, unsigned long n, std::ostream& out) {
  IntPolynomial p;
  if (family == "T") {
    p = cheb_T(n);
  } else if (family == "V") {
    p = cheb_V(n);
  } else if (family == "M") {
    p = minimal_cos_poly(n);
  } else if (family == "Pi") {
    p = pi_poly(n);
  } else {
    throw input_error("poly: family must be one of T, V, M, Pi");
  }
  out << p.str_coeffs() << "\n";
}

void cmd_factor(const std::string& family, unsigned long n,
                std::ostream& out) {
  if (family == "T") {
    for (const IntPolynomial& f : factor_T(n)) out << f.str_coeffs() << "\n";
  } else if (family == "V") {
    FactorV fv = factor_V(n);
    out << "content: " << fv.content.get_str() << "\n";
    for (const IntPolynomial& f : fv.factors) out << f.str_coeffs() << "\n";
  } else {
    throw input_error("factor: family must be T or V");
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Exact critical sets and certified knot diagrams of Chebyshev "
               "space curves C(a,b,c,phi) = (T_a(t), T_b(t), T_c(t+phi))"};
  app.require_subcommand(1);

  std::string poly_family;
  unsigned long poly_n = 0;
  CLI::App* poly = app.add_subcommand(
      "poly", "Print T_n, V_n, M_n or Pi_n, decimal coefficients, lowest "
              "degree first");
  poly->add_option("family", poly_family, "T, V, M or Pi")->required();
  poly->add_option("n", poly_n, "index")->required();

  std::string factor_family;
  unsigned long factor_n = 0;
  CLI::App* factor = app.add_subcommand(
      "factor", "Print the minimal-polynomial factors of T_n or V_n, one per "
                "line (V first prints its integer content)");
  factor->add_option("family", factor_family, "T or V")->required();
  factor->add_option("n", factor_n, "index")->required();

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("chebknot");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    if (poly->parsed()) cmd_poly(poly_family, poly_n, out);
    if (factor->parsed()) cmd_factor(factor_family, factor_n, out);
    return 0;
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const input_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const cutoff_exceeded& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const certification_error& e) {
    err << "certification failure: " << e.what() << "\n";
    return 4;
  }
}

}  // namespace chebknot
