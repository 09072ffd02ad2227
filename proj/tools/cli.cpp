#include "cli.hpp"

#include <unistd.h>

#include <CLI11.hpp>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "binzeros/errors.hpp"
#include "binzeros/exactpoly.hpp"
#include "binzeros/geometry.hpp"
#include "binzeros/solver.hpp"
#include "binzeros/verify.hpp"

namespace binzeros::cli {

namespace {

namespace fs = std::filesystem;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  long r = 0;
  long n = 0;
  std::string alpha;
  std::vector<long> ns;
  Precision precision_bits = 0;
  std::size_t points = 512;
  std::string format = "json";
  std::string out;
  std::string branch = "inner";
  int figure = 0;
};

constexpr Precision kCurvePrecision = 128;

// "0.3333", "1/3" or "2.5e-1" as an exact rational.
mpq_class parse_ratio(const std::string& text) {
  mpq_class q;
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    if (q.set_str(text, 10) != 0 || q.get_den() == 0) throw DomainError("bad ratio '" + text + "'");
    q.canonicalize();
    return q;
  }
  std::string mantissa = text;
  long exponent = 0;
  if (const auto e = text.find_first_of("eE"); e != std::string::npos) {
    mantissa = text.substr(0, e);
    try {
      exponent = std::stol(text.substr(e + 1));
    } catch (const std::exception&) {
      throw DomainError("bad ratio '" + text + "'");
    }
  }
  std::string digits;
  bool seen_point = false;
  for (char c : mantissa) {
    if (c == '.' && !seen_point) {
      seen_point = true;
    } else if (std::isdigit(static_cast<unsigned char>(c)) || ((c == '-' || c == '+') && digits.empty())) {
      digits += c;
      if (seen_point && c != '-' && c != '+') --exponent;
    } else {
      throw DomainError("bad ratio '" + text + "'");
    }
  }
  mpz_class num;
  if (digits.empty() || num.set_str(digits, 10) != 0) throw DomainError("bad ratio '" + text + "'");
  mpz_class ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  q = exponent < 0 ? mpq_class(num, ten_pow) : mpq_class(num * ten_pow);
  q.canonicalize();
  return q;
}

Alpha parse_alpha(const std::string& text, Precision prec) { return Alpha(parse_ratio(text), prec); }

Precision resolve_precision(const Options& o, long n) {
  if (o.precision_bits == 0) return default_precision(n);
  if (o.precision_bits < 53) throw DomainError("--precision-bits must be at least 53");
  return o.precision_bits;
}

Precision curve_precision(const Options& o) {
  if (o.precision_bits == 0) return kCurvePrecision;
  if (o.precision_bits < 53) throw DomainError("--precision-bits must be at least 53");
  return o.precision_bits;
}

void atomic_write(const fs::path& path, const std::string& content) {
  const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
  const fs::path tmp = dir / ("." + path.filename().string() + ".tmp-" + std::to_string(::getpid()));
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot write " + tmp.string());
    f << content;
    f.close();
    if (!f) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw IoError("cannot write " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot move output into place at " + path.string());
  }
}

void emit(const Options& o, const std::string& content, std::ostream& out) {
  if (o.out.empty()) {
    out << content;
  } else {
    atomic_write(o.out, content);
  }
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

BigFloat worst_of(const std::vector<BigFloat>& v, Precision prec) {
  BigFloat w = BigFloat::zero(prec);
  for (const auto& x : v) w = max(w, x);
  return w;
}

bool curve_ok(const CurveSample& s) {
  return worst_of(s.residuals, s.precision()) < pow2(-static_cast<long>(s.precision() / 2), s.precision());
}

std::string circle_csv(const BigFloat& center, const BigFloat& radius, std::size_t m) {
  const Precision prec = radius.precision();
  const BigFloat full = ldexp(BigFloat::pi(prec), 1);
  std::string s = "theta,re,im\n";
  for (std::size_t j = 0; j < m; ++j) {
    const BigFloat theta = full * static_cast<long>(j) / static_cast<long>(m);
    const BigComplex z = BigComplex::polar(radius, theta) + center;
    s += theta.to_string() + ',' + z.re().to_string() + ',' + z.im().to_string() + '\n';
  }
  return s;
}

// ---------------------------------------------------------------------------

int cmd_zeros(const Options& o, std::ostream& out, std::ostream& err) {
  const SectionParams p(o.r, o.n);
  const Precision prec = resolve_precision(o, p.n());
  const ZeroSet zs = find_zeros(p, prec);
  const ResidualCheck check = verify_residuals(zs);
  emit(o, o.format == "csv" ? to_csv(zs) : dump(to_json(zs)), out);
  for (const auto& w : zs.warnings) err << "warning: " << w << '\n';
  if (!check.ok) {
    err << "residual verification failed: worst " << check.worst.to_string(6) << '\n';
    return kCheckFailed;
  }
  return kPass;
}

int cmd_curve(const Options& o, std::ostream& out, std::ostream& err) {
  const Precision prec = curve_precision(o);
  const Alpha alpha = parse_alpha(o.alpha, prec);
  const CurveSample s = sample_curve(alpha, o.branch == "outer" ? Branch::outer : Branch::inner, o.points);
  emit(o, o.format == "csv" ? to_csv(s) : dump(to_json(s)), out);
  if (!curve_ok(s)) {
    err << "curve residual above 2^-" << prec / 2 << '\n';
    return kCheckFailed;
  }
  return kPass;
}

void require_region_hypothesis(const SectionParams& p) {
  if (p.r() >= p.n() - 1) {
    throw HypothesisError("the bounding region requires 1 <= r < n-1 (r = n-1 and r = n are the exact cases); got r=" +
                          std::to_string(p.r()) + ", n=" + std::to_string(p.n()));
  }
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  const SectionParams p(o.r, o.n);
  require_region_hypothesis(p);
  const Precision prec = resolve_precision(o, p.n());
  const ZeroSet zs = find_zeros(p, prec);
  const RegionReport region = check_region(zs);
  const ResidualCheck residuals = verify_residuals(zs);
  const VietaReport vieta = vieta_check(zs);
  const bool passed = region.passed() && residuals.ok;

  if (o.format == "csv") {
    std::string s = "re,im,margin_outer,margin_circle,margin_halfplane,margin_curve\n";
    for (const auto& rec : region.records) {
      s += rec.zero.re().to_string() + ',' + rec.zero.im().to_string() + ',' + rec.margin_outer.to_string() + ',' +
           rec.margin_circle.to_string() + ',' + rec.margin_halfplane.to_string() + ',' + rec.margin_curve.to_string() +
           '\n';
    }
    emit(o, s, out);
  } else {
    nlohmann::json j = {{"passed", passed},
                        {"region", to_json(region)},
                        {"residuals", {{"ok", residuals.ok}, {"worst", residuals.worst.to_string()}}},
                        {"vieta",
                         {{"sum_error", vieta.sum_error.to_string()}, {"product_error", vieta.product_error.to_string()}}}};
    emit(o, dump(j), out);
  }
  if (!region.passed()) err << "a zero falls outside the bounding region\n";
  if (!residuals.ok) err << "residual verification failed: worst " << residuals.worst.to_string(6) << '\n';
  return passed ? kPass : kCheckFailed;
}

int cmd_sweep(const Options& o, std::ostream& out, std::ostream& err) {
  const mpq_class alpha = parse_ratio(o.alpha);
  for (long n : o.ns) nearest_section(alpha, n);
  SweepOptions opts;
  if (o.precision_bits != 0) opts.precision_bits = resolve_precision(o, 0);
  opts.curve_points = o.points;
  const auto records = convergence_sweep(alpha, o.ns, opts);
  const auto inversions = sweep_inversions(records);
  const bool passed = inversions.size() <= 1;

  if (o.format == "csv") {
    emit(o, sweep_csv(records), out);
  } else {
    nlohmann::json recs = nlohmann::json::array();
    for (const auto& rec : records) recs.push_back(to_json(rec));
    nlohmann::json inv = nlohmann::json::array();
    for (auto i : inversions) inv.push_back(records[i].params.n());
    emit(o, dump({{"alpha", alpha.get_str()}, {"passed", passed}, {"inversions", inv}, {"records", recs}}), out);
  }
  for (auto i : inversions) {
    err << (passed ? "note" : "error") << ": sup_distance did not decrease at n=" << records[i].params.n() << '\n';
  }
  return passed ? kPass : kCheckFailed;
}

int cmd_szego(const Options& o, std::ostream& out, std::ostream& err) {
  const SectionParams p(o.r, o.n);
  if (p.r() >= p.n()) throw DomainError("szego needs r < n");
  const ZeroSet zs = find_zeros(p, resolve_precision(o, p.n()));
  const SzegoReport report = szego_check(zs, o.points);
  const BigFloat limit = BigFloat(1L, report.max_modulus.precision()) + BigFloat(1e-10, report.max_modulus.precision());
  const bool passed = report.max_modulus <= limit && report.min_modulus > 0L;
  if (o.format == "csv") {
    std::string s = "re,im\n";
    for (const auto& w : report.rescaled) s += w.re().to_string() + ',' + w.im().to_string() + '\n';
    emit(o, s, out);
  } else {
    nlohmann::json j = to_json(report);
    j["passed"] = passed;
    emit(o, dump(j), out);
  }
  if (!passed) err << "rescaled zeros leave the unit disk or reach 0\n";
  return passed ? kPass : kCheckFailed;
}

int cmd_halfline(const Options& o, std::ostream& out, std::ostream& err) {
  constexpr long offset = 3;
  for (long n : o.ns) {
    if (n - offset < 1) throw DomainError("halfline needs every n > 3, got " + std::to_string(n));
  }
  Precision prec = 0;
  if (o.precision_bits != 0) prec = resolve_precision(o, 0);
  const auto records = halfline_check(o.ns, offset, prec);
  bool decreasing = true;
  bool strict = true;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (!(records[i].min_margin > 0L)) strict = false;
    if (i > 0 && !(records[i].max_deviation < records[i - 1].max_deviation)) decreasing = false;
  }
  const bool passed = decreasing && strict;
  if (o.format == "csv") {
    std::string s = "n,r,max_deviation,min_margin,window_deviation\n";
    for (const auto& rec : records) {
      s += std::to_string(rec.params.n()) + ',' + std::to_string(rec.params.r()) + ',' + rec.max_deviation.to_string() +
           ',' + rec.min_margin.to_string() + ',' + rec.window_deviation.to_string() + '\n';
    }
    emit(o, s, out);
  } else {
    nlohmann::json recs = nlohmann::json::array();
    for (const auto& rec : records) recs.push_back(to_json(rec));
    emit(o, dump({{"passed", passed}, {"decreasing", decreasing}, {"strict_halfplane", strict}, {"records", recs}}),
         out);
  }
  if (!decreasing) err << "max |Re z + 1/2| does not decrease along the sequence\n";
  if (!strict) err << "a zero has Re z <= -1/2\n";
  return passed ? kPass : kCheckFailed;
}

struct FigureSpec {
  long r;
  long n;
  mpq_class alpha;
  bool circles;
};

int cmd_figure(const Options& o, std::ostream& out, std::ostream& err) {
  static const std::map<int, FigureSpec> specs = {
      {1, {10, 30, mpq_class(1, 3), true}},
      {2, {30, 90, mpq_class(1, 3), true}},
      {3, {40, 80, mpq_class(1, 2), false}},
  };
  const FigureSpec& spec = specs.at(o.figure);
  const SectionParams p(spec.r, spec.n);
  const Precision cprec = curve_precision(o);
  const ZeroSet zs = find_zeros(p, o.precision_bits == 0 ? default_precision(p.n()) : cprec);
  const ResidualCheck residuals = verify_residuals(zs);
  const Alpha alpha(spec.alpha, cprec);
  const CurveSample curve = sample_curve(alpha, Branch::inner, o.points);

  const std::string stem = "fig" + std::to_string(o.figure) + "_";
  std::vector<std::pair<std::string, std::string>> layers;
  layers.emplace_back(stem + "zeros.csv", to_csv(zs));
  layers.emplace_back(stem + "curve.csv", to_csv(curve));
  if (spec.circles) {
    const mpq_class gamma = p.gamma();
    const mpq_class denom = 1 - gamma * gamma;
    layers.emplace_back(stem + "circle_outer.csv", circle_csv(BigFloat::zero(cprec),
                                                              BigFloat(mpq_class(spec.r, spec.n + 1 - spec.r), cprec),
                                                              o.points));
    layers.emplace_back(stem + "circle_gamma.csv", circle_csv(BigFloat(mpq_class(gamma * gamma / denom), cprec),
                                                              BigFloat(mpq_class(gamma / denom), cprec), o.points));
  } else {
    std::string s = "p,theta,re,im\n";
    for (const auto& cp : curve_points(alpha, spec.n)) {
      s += std::to_string(cp.p) + ',' + cp.theta.to_string() + ',' + cp.zeta.re().to_string() + ',' +
           cp.zeta.im().to_string() + '\n';
    }
    layers.emplace_back(stem + "points.csv", s);
  }

  const fs::path dir = o.out.empty() ? fs::path(".") : fs::path(o.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string());
  for (const auto& [name, content] : layers) atomic_write(dir / name, content);
  for (const auto& [name, content] : layers) out << (dir / name).string() << '\n';

  const bool passed = residuals.ok && curve_ok(curve);
  if (!residuals.ok) err << "zero residual verification failed\n";
  if (!curve_ok(curve)) err << "curve residual above 2^-" << cprec / 2 << '\n';
  return passed ? kPass : kCheckFailed;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Zeros of sections of the binomial expansion B_{r,n}(z) = sum_{k<=r} C(n,k) z^k", "binzeros"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--precision-bits", o.precision_bits, "Working precision in bits")->envname("BINZEROS_PRECISION");
    sub->add_option("--out", o.out, "Output file (directory for figure)");
  };
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  };
  auto add_rn = [&](CLI::App* sub) {
    sub->add_option("--r", o.r, "Section index r")->required();
    sub->add_option("--n", o.n, "Binomial exponent n")->required();
  };
  auto add_points = [&](CLI::App* sub) {
    sub->add_option("--points", o.points, "Curve sample density")->check(CLI::Range(16, 1 << 20));
  };

  auto* zeros = app.add_subcommand("zeros", "All zeros of B_{r,n}");
  add_rn(zeros);
  add_common(zeros);
  add_format(zeros);

  auto* curve = app.add_subcommand("curve", "Sample the limit curve for a ratio alpha");
  curve->add_option("--alpha", o.alpha, "Ratio in (0,1), decimal or p/q")->required();
  curve->add_option("--branch", o.branch, "inner or outer")->check(CLI::IsMember({"inner", "outer"}));
  add_points(curve);
  add_common(curve);
  add_format(curve);

  auto* verify = app.add_subcommand("verify", "Bounding-region report for B_{r,n}");
  add_rn(verify);
  add_common(verify);
  add_format(verify);

  auto* sweep = app.add_subcommand("sweep", "Convergence to the limit curve along r = round(alpha n)");
  sweep->add_option("--alpha", o.alpha, "Ratio in (0,1), decimal or p/q")->required();
  sweep->add_option("--ns", o.ns, "Comma-separated n values")->required()->delimiter(',');
  add_points(sweep);
  add_common(sweep);
  add_format(sweep);

  auto* szego = app.add_subcommand("szego", "Rescaled zeros against |z e^(1-z)| = 1");
  add_rn(szego);
  add_points(szego);
  add_common(szego);
  add_format(szego);

  auto* halfline = app.add_subcommand("halfline", "Zeros of B_{n-3,n} against Re z = -1/2");
  halfline->add_option("--ns", o.ns, "Comma-separated n values")->required()->delimiter(',');
  add_common(halfline);
  add_format(halfline);

  auto* figure = app.add_subcommand("figure", "Layered CSV data for figure 1, 2 or 3");
  figure->add_option("which", o.figure, "1, 2 or 3")->required()->check(CLI::IsMember({1, 2, 3}));
  add_points(figure);
  add_common(figure);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err) == 0 ? kPass : kUsage;
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err) == 0 ? kPass : kUsage;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (zeros->parsed()) return cmd_zeros(o, out, err);
    if (curve->parsed()) return cmd_curve(o, out, err);
    if (verify->parsed()) return cmd_verify(o, out, err);
    if (sweep->parsed()) return cmd_sweep(o, out, err);
    if (szego->parsed()) return cmd_szego(o, out, err);
    if (halfline->parsed()) return cmd_halfline(o, out, err);
    if (figure->parsed()) return cmd_figure(o, out, err);
  } catch (const HypothesisError& e) {
    err << "hypothesis violated: " << e.what() << '\n';
    return kUsage;
  } catch (const DensityError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  }
  return kUsage;
}

}  // namespace binzeros::cli
