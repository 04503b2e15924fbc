#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "pg3/extremal.hpp"
#include "pg3/verify.hpp"

using ordered_json = nlohmann::ordered_json;

namespace {

struct CommonOpts {
  std::uint32_t q = 0;
  std::uint32_t p = 0;
  std::uint32_t e = 1;
  std::string surface_text;
  std::string kind;
  std::string format = "json";
  std::uint32_t smooth_depth = 0;  // 0: per-command default
  unsigned jobs = 1;
  std::uint64_t budget = 2'000'000;
};

void add_field_options(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--q", o.q, "field order (prime power)");
  cmd->add_option("--p", o.p, "characteristic (with --e)");
  cmd->add_option("--e", o.e, "extension degree (with --p)");
}

void add_surface_options(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--surface", o.surface_text,
                  "surface equation, e.g. \"X0*X1 - X2*X3\"");
  cmd->add_option("--kind", o.kind,
                  "extremal surface kind: quadric, hermitian, qplusone");
}

void add_format_option(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--format", o.format, "output format: json, table, csv")
      ->check(CLI::IsMember({"json", "table", "csv"}));
}

pg3::FieldPtr resolve_field(const CommonOpts& o) {
  if (o.q != 0) return pg3::Field::from_order(o.q);
  if (o.p != 0) return pg3::Field::make(o.p, o.e);
  throw std::invalid_argument("no field given: use --q or --p/--e");
}

pg3::Surface resolve_surface(const CommonOpts& o, const pg3::FieldPtr& field) {
  if (!o.surface_text.empty() && !o.kind.empty()) {
    throw std::invalid_argument("give either --surface or --kind, not both");
  }
  if (!o.surface_text.empty()) {
    return pg3::Surface(pg3::Form::parse(o.surface_text, field));
  }
  if (!o.kind.empty()) {
    return pg3::construct_extremal(pg3::extremal_kind_from_name(o.kind), field);
  }
  throw std::invalid_argument("no surface given: use --surface or --kind");
}

void emit(const ordered_json& j, const std::string& format) {
  if (format == "json") {
    std::cout << j.dump() << "\n";
    return;
  }
  // table/csv: flat key/value view; nested objects are inlined as JSON
  if (format == "table") {
    for (const auto& [k, v] : j.items()) {
      std::cout << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump())
                << "\n";
    }
    return;
  }
  std::string header, row;
  for (const auto& [k, v] : j.items()) {
    if (!header.empty()) {
      header += ",";
      row += ",";
    }
    header += k;
    std::string cell = v.is_string() ? v.get<std::string>() : v.dump();
    if (cell.find_first_of(",\"") != std::string::npos) {
      std::string quoted = "\"";
      for (const char ch : cell) quoted += ch == '"' ? std::string("\"\"") : std::string(1, ch);
      cell = quoted + "\"";
    }
    row += cell;
  }
  std::cout << header << "\n" << row << "\n";
}

ordered_json bound_report_json(const pg3::BoundReport& r) {
  ordered_json j;
  j["q"] = r.q;
  j["d"] = r.d;
  j["N"] = r.N;
  j["nu"] = r.nu;
  j["mid"] = ordered_json{{"num", r.mid.num}, {"den", r.mid.den}};
  j["cap_lines"] = r.cap_lines;
  j["cap_points"] = r.cap_points;
  j["eq_lines"] = r.eq_lines;
  j["eq_points"] = r.eq_points;
  ordered_json flags;
  flags["plane_component_found"] = r.flags.plane_component_found;
  flags["rational_singularity_found"] = r.flags.rational_singularity_found;
  flags["smoothness_checked_to_m"] = r.flags.smoothness_checked_to_m;
  j["hypothesis_flags"] = flags;
  return j;
}

int cmd_info(const CommonOpts& o) {
  const auto field = resolve_field(o);
  ordered_json j;
  j["q"] = field->q();
  j["p"] = field->p();
  j["e"] = field->e();
  j["modulus"] = field->modulus();
  j["square_order"] = field->is_square_order();
  j["points_p3"] = pg3::num_points_p3(field->q());
  j["lines_p3"] = pg3::num_lines_p3(field->q());
  emit(j, o.format);
  return 0;
}

int cmd_construct(const CommonOpts& o) {
  const auto field = resolve_field(o);
  if (o.kind.empty()) throw std::invalid_argument("construct needs --kind");
  const auto S =
      pg3::construct_extremal(pg3::extremal_kind_from_name(o.kind), field);
  if (o.format == "table" || o.format == "csv") {
    std::cout << S.form().to_string() << "\n";
    return 0;
  }
  ordered_json j;
  j["q"] = field->q();
  j["kind"] = o.kind;
  j["d"] = S.degree();
  j["form"] = S.form().to_string();
  emit(j, o.format);
  return 0;
}

int cmd_count(const CommonOpts& o) {
  const auto field = resolve_field(o);
  const auto S = resolve_surface(o, field);
  ordered_json j;
  j["q"] = field->q();
  j["d"] = S.degree();
  j["N"] = pg3::count_points(S);
  j["nu"] = pg3::count_lines(S);
  ordered_json hist = ordered_json::object();
  std::map<std::uint32_t, std::uint64_t> fibers;
  for (const auto& P : pg3::points_on(S)) {
    ++fibers[static_cast<std::uint32_t>(pg3::lines_through_point(S, P).size())];
  }
  for (const auto& [k, v] : fibers) hist[std::to_string(k)] = v;
  j["per_point_histogram"] = hist;
  emit(j, o.format);
  return 0;
}

int cmd_lines(const CommonOpts& o) {
  const auto field = resolve_field(o);
  const auto S = resolve_surface(o, field);
  const auto lines = pg3::lines_on_surface(S);
  if (o.format == "csv") {
    std::cout << "r00,r01,r02,r03,r10,r11,r12,r13,"
                 "p01,p02,p03,p12,p13,p23\n";
    for (const auto& L : lines) {
      std::string row;
      for (const auto v : L.rref) row += std::to_string(v) + ",";
      for (std::size_t i = 0; i < 6; ++i) {
        row += std::to_string(L.pluecker[i]);
        if (i + 1 < 6) row += ",";
      }
      std::cout << row << "\n";
    }
    return 0;
  }
  ordered_json j;
  j["q"] = field->q();
  j["d"] = S.degree();
  j["nu"] = lines.size();
  ordered_json arr = ordered_json::array();
  for (const auto& L : lines) {
    ordered_json lj;
    lj["rref"] = L.rref;
    lj["pluecker"] = L.pluecker;
    arr.push_back(lj);
  }
  j["lines"] = arr;
  if (o.format == "table") {
    std::cout << "q: " << field->q() << "\nd: " << S.degree()
              << "\nnu: " << lines.size() << "\n";
    for (const auto& L : lines) {
      std::cout << "[";
      for (int i = 0; i < 8; ++i)
        std::cout << L.rref[static_cast<std::size_t>(i)] << (i == 3 ? " | " : i < 7 ? " " : "");
      std::cout << "]\n";
    }
    return 0;
  }
  emit(j, o.format);
  return 0;
}

int cmd_verify_lines(const CommonOpts& o) {
  const auto field = resolve_field(o);
  const auto S = resolve_surface(o, field);
  pg3::VerifyOptions vo;
  if (o.smooth_depth != 0) vo.smooth_depth = o.smooth_depth;
  const auto report = pg3::verify_line_bound(S, vo);
  emit(bound_report_json(report), o.format);
  if (report.flags.plane_component_found ||
      report.flags.rational_singularity_found) {
    std::cerr << "refused: hypothesis flags set, the chain was not asserted\n";
    return 2;
  }
  return 0;
}

int cmd_verify_points(const CommonOpts& o) {
  const auto field = resolve_field(o);
  const auto S = resolve_surface(o, field);
  pg3::VerifyOptions vo;
  if (o.smooth_depth != 0) vo.smooth_depth = o.smooth_depth;
  const auto report = pg3::verify_point_bound(S, vo);
  emit(bound_report_json(report), o.format);
  return 0;
}

int cmd_audit(const CommonOpts& o) {
  const auto field = resolve_field(o);
  const auto S = resolve_surface(o, field);
  const auto a = pg3::incidence_audit(S);
  ordered_json j;
  j["q"] = a.q;
  j["d"] = a.d;
  j["N"] = a.N;
  j["nu"] = a.nu;
  j["pairs_from_lines"] = a.pairs_from_lines;
  j["pairs_from_points"] = a.pairs_from_points;
  j["identity_holds"] = a.identity_holds;
  ordered_json hist = ordered_json::object();
  for (const auto& [k, v] : a.fiber_histogram) hist[std::to_string(k)] = v;
  j["fiber_histogram"] = hist;
  j["max_fiber"] = a.max_fiber;
  j["smooth_m1"] = a.smooth_m1;
  j["plane_component"] = a.plane_component;
  j["fiber_bound_applies"] = a.fiber_bound_applies;
  j["fiber_bound_holds"] = a.fiber_bound_holds;
  emit(j, o.format);
  const bool bad =
      !a.identity_holds || (a.fiber_bound_applies && !a.fiber_bound_holds);
  return bad ? 2 : 0;
}

int cmd_census(const CommonOpts& o, std::uint32_t degree, bool no_histogram,
               std::uint64_t max_attaining, const std::string& attaining_csv) {
  const auto field = resolve_field(o);
  pg3::CensusOptions co;
  co.candidate_budget = o.budget;
  co.jobs = o.jobs;
  co.histogram = !no_histogram;
  co.max_attaining_kept = max_attaining;
  if (o.smooth_depth != 0) co.deep_smooth_max_m = o.smooth_depth;
  const auto summary = pg3::census(field, degree, co);

  ordered_json j;
  j["q"] = summary.q;
  j["d"] = summary.d;
  j["total_forms"] = summary.total_forms;
  j["filtered_smooth"] = summary.filtered_smooth;
  j["max_nu"] = summary.max_nu;
  j["cap_lines"] = summary.cap_lines;
  j["attaining_count"] = summary.attaining_count;
  ordered_json hist = ordered_json::object();
  for (const auto& [k, v] : summary.nu_histogram) hist[std::to_string(k)] = v;
  j["nu_histogram"] = hist;
  ordered_json viol = ordered_json::array();
  for (const auto& v : summary.violations) {
    ordered_json vj;
    vj["candidate_index"] = v.candidate_index;
    vj["form"] = v.form_text;
    vj["N"] = v.N;
    vj["nu"] = v.nu;
    vj["smooth_checked_to_m"] = v.smooth_checked_to_m;
    viol.push_back(vj);
  }
  j["violations"] = viol;
  ordered_json att = ordered_json::array();
  for (const auto& a : summary.attaining) {
    ordered_json aj;
    aj["form"] = a.form_text;
    aj["N"] = a.N;
    aj["nu"] = a.nu;
    att.push_back(aj);
  }
  j["attaining"] = att;
  emit(j, o.format);

  if (!attaining_csv.empty()) {
    std::ofstream f(attaining_csv);
    if (!f) throw std::invalid_argument("cannot write " + attaining_csv);
    f << "form,N,nu\n";
    for (const auto& a : summary.attaining) {
      f << "\"" << a.form_text << "\"," << a.N << "," << a.nu << "\n";
    }
  }
  return summary.violations.empty() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact point/line counts and bound checks for surfaces in "
               "P^3(F_q)"};
  app.require_subcommand(1);

  CommonOpts o;
  std::uint32_t census_degree = 2;
  bool census_no_histogram = false;
  std::uint64_t census_max_attaining = 4096;
  std::string census_attaining_csv;

  auto* info = app.add_subcommand("info", "field and ambient-space figures");
  add_field_options(info, o);
  add_format_option(info, o);

  auto* construct =
      app.add_subcommand("construct", "print one of the extremal surfaces");
  add_field_options(construct, o);
  construct->add_option("--kind", o.kind, "quadric, hermitian or qplusone")
      ->required();
  add_format_option(construct, o);

  auto* count = app.add_subcommand("count", "count points and lines on a surface");
  add_field_options(count, o);
  add_surface_options(count, o);
  add_format_option(count, o);

  auto* lines = app.add_subcommand("lines", "list the F_q-lines on a surface");
  add_field_options(lines, o);
  add_surface_options(lines, o);
  add_format_option(lines, o);

  auto* vlines = app.add_subcommand(
      "verify-lines", "check nu <= d*N/(q+1) <= ((d-1)q+1)d");
  add_field_options(vlines, o);
  add_surface_options(vlines, o);
  add_format_option(vlines, o);
  vlines->add_option("--smooth-depth", o.smooth_depth,
                     "extension depth for the singularity scan (default 2)");

  auto* vpoints = app.add_subcommand("verify-points",
                                     "check N <= ((d-1)q+1)(q+1)");
  add_field_options(vpoints, o);
  add_surface_options(vpoints, o);
  add_format_option(vpoints, o);
  vpoints->add_option("--smooth-depth", o.smooth_depth,
                      "extension depth for the singularity scan (default 2)");

  auto* audit = app.add_subcommand(
      "audit", "audit the incidence correspondence of a surface");
  add_field_options(audit, o);
  add_surface_options(audit, o);
  add_format_option(audit, o);

  auto* cen = app.add_subcommand(
      "census", "sweep all degree-d surfaces over F_q up to scalar");
  add_field_options(cen, o);
  cen->add_option("--degree", census_degree, "form degree")->required();
  add_format_option(cen, o);
  cen->add_option("--jobs", o.jobs, "worker threads (default 1)");
  cen->add_option("--budget", o.budget,
                  "max candidate count (default 2000000)");
  cen->add_flag("--no-histogram", census_no_histogram,
                "skip the nu histogram and enable max-only pruning");
  cen->add_option("--max-attaining", census_max_attaining,
                  "cap on stored attaining surfaces");
  cen->add_option("--attaining-csv", census_attaining_csv,
                  "also write attaining surfaces to this CSV file");
  cen->add_option("--smooth-depth", o.smooth_depth,
                  "deepest extension for the violation re-check (default 6)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (info->parsed()) return cmd_info(o);
    if (construct->parsed()) return cmd_construct(o);
    if (count->parsed()) return cmd_count(o);
    if (lines->parsed()) return cmd_lines(o);
    if (vlines->parsed()) return cmd_verify_lines(o);
    if (vpoints->parsed()) return cmd_verify_points(o);
    if (audit->parsed()) return cmd_audit(o);
    if (cen->parsed())
      return cmd_census(o, census_degree, census_no_histogram,
                        census_max_attaining, census_attaining_csv);
  } catch (const pg3::hypothesis_error& err) {
    std::cerr << "refused: " << err.what() << "\n";
    return 2;
  } catch (const pg3::bound_violation& err) {
    std::cerr << "bound violation: " << err.what() << "\n";
    return 2;
  } catch (const pg3::budget_error& err) {
    std::cerr << "budget: " << err.what() << "\n";
    return 1;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 1;
}
