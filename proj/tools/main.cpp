// Command-line front end: fixture validation, constant computation, counting
// runs, and the verification suite.
#include "CLI11.hpp"
#include "json.hpp"

#include "counting.hpp"
#include "verify.hpp"

#include <fstream>
#include <iostream>

using namespace hc;
using nlohmann::json;

namespace {

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case Errc::BudgetExceeded:
      return 3;
    case Errc::UndecidableComparison:
    case Errc::UndecidableMembership:
    case Errc::PrecisionUnreachable:
      return 4;
    default:
      return 2;
  }
}

json interval_json(const Interval& v) {
  auto dec = [](const Rat& r) {
    std::ostringstream os;
    os.precision(15);
    os << r.get_d();
    return os.str();
  };
  return json{{"lo", rat_to_string(v.lo)},
              {"hi", rat_to_string(v.hi)},
              {"lo_dec", dec(v.lo)},
              {"hi_dec", dec(v.hi)}};
}

void emit(const json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream out(out_path);
    out << j.dump(2) << "\n";
  }
}

void emit_text(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    out << text;
  }
}

// "sqrt5", "-3/2", or a comma-separated coordinate vector "1,0/2,3"
Elem parse_theta(const std::string& text, const OrderPtr& field) {
  if (text.rfind("sqrt", 0) == 0) {
    long m = std::stol(text.substr(4));
    // needs the field to contain sqrt m via its power basis x^2 - m
    if (field->degree() == 2 && field->min_poly()[0] == -m && field->min_poly()[1] == 0)
      return Elem{field, field->from_power({Rat(0), Rat(1)})};
    fail(Errc::BadFixture, "theta 'sqrt" + std::to_string(m) + "' needs the matching field");
  }
  if (text.find(',') == std::string::npos)
    return Elem::rational(field, rat_from_string(text));
  QVec c;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) c.push_back(rat_from_string(tok));
  if ((long)c.size() != field->degree()) fail(Errc::BadFixture, "coordinate arity mismatch");
  return Elem{field, c};
}

std::vector<Rat> parse_x_list(const std::string& text) {
  std::vector<Rat> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(rat_from_string(tok));
  if (out.empty()) fail(Errc::BadFixture, "empty X list");
  return out;
}

std::string csv_row(const CountResult& c) {
  std::ostringstream os;
  os << rat_to_string(c.x) << "," << c.count << "," << c.undecided << ","
     << rat_to_string(c.predicted.lo) << "," << rat_to_string(c.predicted.hi) << ","
     << rat_to_string(c.ratio.lo) << "," << rat_to_string(c.ratio.hi) << "\n";
  return os.str();
}

LipschitzSystem system_from_file(const std::string& path, OrderPtr& top_out) {
  std::ifstream in(path);
  if (!in) fail(Errc::BadFixture, "cannot open system fixture " + path);
  json j = json::parse(in);
  OrderPtr top = fixture_order(j.at("field_ref").get<std::string>());
  top_out = top;
  long n = j.at("n").get<long>();
  std::string variant = j.at("variant").get<std::string>();
  auto elem_of = [&](const json& coords) {
    QVec c;
    for (auto& x : coords) c.push_back(rat_from_string(x.get<std::string>()));
    return Elem{top, c};
  };
  if (variant == "max") return LipschitzSystem::max_norm(top, n);
  if (variant == "theta") return LipschitzSystem::theta(top, n, elem_of(j.at("theta")));
  if (variant == "linear_forms") {
    std::vector<std::vector<Elem>> rows;
    for (auto& row : j.at("forms")) {
      std::vector<Elem> r;
      for (auto& e : row) r.push_back(elem_of(e));
      rows.push_back(r);
    }
    return LipschitzSystem::linear_forms(top, n, rows);
  }
  fail(Errc::BadFixture, "unknown system variant " + variant);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"counting constants and brute-force height counts for algebraic numbers"};
  app.require_subcommand(1);

  std::string field = "q", ext_top = "", system_path = "", theta_spec = "1";
  std::string out_path = "", format = "json", xlist = "10";
  long ndim = 1;
  long mc_samples = 2000000;
  uint64_t seed = 1;
  std::string precision = "1e-10";
  bool fast = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--field", field, "field fixture name or path");
    cmd->add_option("--ext", ext_top, "top field fixture for the extension");
    cmd->add_option("--system", system_path, "system fixture path");
    cmd->add_option("--theta", theta_spec, "theta: rational, coords, or sqrtN");
    cmd->add_option("-n", ndim, "dimension");
    cmd->add_option("-X", xlist, "comma-separated height bounds");
    cmd->add_option("--precision", precision, "target precision");
    cmd->add_option("--mc-samples", mc_samples, "Monte Carlo sample count");
    cmd->add_option("--seed", seed, "random seed");
    cmd->add_option("--out", out_path, "output file (stdout when empty)");
    cmd->add_option("--format", format, "csv|json");
    cmd->add_flag("--fast", fast, "skip the slow checks");
  };

  auto* validate = app.add_subcommand("field-validate", "run fixture invariants");
  std::string validate_target;
  validate->add_option("fixture", validate_target, "fixture name or path")->required();

  auto* constant = app.add_subcommand("constant", "compute a constant");
  std::string constant_kind;
  constant->add_option("kind", constant_kind, "schanuel|theta|zeta|volume|general")->required();
  add_common(constant);

  auto* count = app.add_subcommand("count", "run a brute-force count");
  std::string count_kind;
  count->add_option("kind", count_kind, "theta|lipschitz|sqrtp|squareclass")->required();
  std::string gamma = "1";
  count->add_option("--gamma", gamma, "square-class representative");
  add_common(count);

  auto* verify = app.add_subcommand("verify", "run the acceptance checks");
  std::string suite = "all";
  verify->add_option("suite", suite, "all|identities|counts|lattices");
  add_common(verify);

  CLI11_PARSE(app, argc, argv);

  try {
    Rat prec = rat_from_string(precision == "1e-10" ? std::string("1/10000000000") : precision);
    if (precision.find('e') != std::string::npos && precision != "1e-10") {
      // crude scientific form: 1e-k
      auto pos = precision.find("e-");
      if (pos != std::string::npos) {
        long k = std::stol(precision.substr(pos + 2));
        prec = rat(1, pow_int(10, k));
      }
    }

    if (validate->parsed()) {
      OrderPtr o = fixture_order(validate_target);
      std::string report = validate_order_report(o);
      emit_text(report + "\n", out_path);
      return 0;
    }

    if (constant->parsed()) {
      OrderPtr base = fixture_order(field);
      json j;
      if (constant_kind == "schanuel") {
        Interval v = schanuel_constant(base, ndim, prec);
        j["value"] = interval_json(v);
      } else if (constant_kind == "zeta") {
        Interval v = dedekind_zeta(base, ndim + 1, prec);
        j["s"] = ndim + 1;
        j["value"] = interval_json(v);
      } else if (constant_kind == "theta" || constant_kind == "volume") {
        OrderPtr top = ext_top.empty() ? base : fixture_order(ext_top);
        auto ext = extension_between(base, top);
        Elem th = parse_theta(theta_spec, top);
        if (constant_kind == "volume") {
          VolumeResult v = archimedean_volume(th, ext, ndim, prec, mc_samples, seed);
          j["value"] = interval_json(v.value);
          j["mode"] = v.mode == VolumeResult::Mode::ClosedForm  ? "closed_form"
                      : v.mode == VolumeResult::Mode::Exact2d   ? "exact_2d"
                                                                : "monte_carlo";
          j["rigorous"] = v.rigorous;
          if (v.mode == VolumeResult::Mode::MonteCarlo) {
            j["mc_samples"] = v.mc_samples;
            j["seed"] = v.mc_seed;
          }
        } else {
          GConstant g =
              g_theta(th, ext, ndim, GConstant::Method::Both, prec, mc_samples, seed);
          j["value"] = interval_json(g.value);
          j["finite_part"] = g.finite.str();
          j["volume"] = interval_json(g.volume.value);
          j["volume_rigorous"] = g.volume.rigorous;
          j["sharp"] = sharpness_predicate(th, ext);
        }
      } else if (constant_kind == "general") {
        OrderPtr top;
        LipschitzSystem sys = system_from_file(system_path, top);
        auto ext = extension_between(base, top);
        auto cfg = default_config(sys, ext);
        validate_config(sys, ext, cfg, 40, seed);
        GConstant g = general_constant(sys, ext, cfg, prec);
        j["value"] = interval_json(g.value);
        j["finite_part"] = g.finite.str();
      } else {
        fail(Errc::BadFixture, "unknown constant kind " + constant_kind);
      }
      emit(j, out_path);
      return 0;
    }

    if (count->parsed()) {
      OrderPtr base = fixture_order(field);
      auto xs = parse_x_list(xlist);
      std::ostringstream csv;
      csv << "X,count,undecided,main_lo,main_hi,ratio_lo,ratio_hi\n";
      json rows = json::array();
      for (auto& x : xs) {
        CountResult c;
        if (count_kind == "theta") {
          OrderPtr top = ext_top.empty() ? base : fixture_order(ext_top);
          auto ext = extension_between(base, top);
          Elem th = parse_theta(theta_spec, top);
          c = count_theta(th, ext, ndim, x, 80000000, true);
        } else if (count_kind == "lipschitz") {
          OrderPtr top;
          LipschitzSystem sys = system_from_file(system_path, top);
          auto ext = extension_between(base, top);
          c = count_lipschitz(sys, ext, x, 80000000, true, mc_samples, seed);
        } else if (count_kind == "sqrtp") {
          SqrtPResult sp = count_sqrtp(base, x, 80000000);
          c = sp.total;
          json per = json::array();
          for (auto& [p, inner] : sp.per_prime)
            per.push_back(json{{"p", p}, {"count", inner}});
          rows.push_back(json{{"X", rat_to_string(x)}, {"per_prime", per}});
        } else if (count_kind == "squareclass") {
          long cnt = square_class_count(rat_from_string(gamma), x, 80000000);
          c.x = x;
          c.count = cnt;
        } else {
          fail(Errc::BadFixture, "unknown count kind " + count_kind);
        }
        csv << csv_row(c);
        rows.push_back(json{{"X", rat_to_string(c.x)},
                            {"count", c.count},
                            {"undecided", c.undecided},
                            {"main", interval_json(c.predicted)},
                            {"ratio", interval_json(c.ratio)}});
      }
      if (format == "csv")
        emit_text(csv.str(), out_path);
      else
        emit(rows, out_path);
      return 0;
    }

    if (verify->parsed()) {
      VerifyOptions opt;
      opt.fast = fast;
      opt.seed = seed;
      opt.mc_samples = mc_samples;
      auto results = run_verification(suite, opt);
      emit_text(format_report(results), out_path);
      for (auto& r : results)
        if (!r.pass) return 1;
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
