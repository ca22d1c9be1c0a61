#include "fgeom/report.hpp"

#include <chrono>
#include <cinttypes>
#include <cstdio>

namespace fgeom {
namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_u64(std::uint64_t v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%" PRIu64, v);
  return buf;
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 8);
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  return out;
}

void validate(const RunConfig& c) {
  if (c.example != "flat" && c.example != "sphere")
    throw UsageError("unknown example tag: " + c.example);
  if (c.example == "flat" && (c.m < 1 || c.t < 1))
    throw UsageError("flat example needs m >= 1 and t >= 1");
  if (c.example == "sphere" && (c.n < 1 || c.s < 2))
    throw UsageError("sphere example needs n >= 1 and s >= 2");
  if (c.connection != "riemannian" && c.connection != "ssm" && c.connection != "ssnm" &&
      c.connection != "all")
    throw UsageError("unknown connection selector: " + c.connection);
  if (c.points < 1) throw UsageError("points must be >= 1");
  if (c.planes < 1) throw UsageError("planes must be >= 1");
  if (!(c.tol > 0)) throw UsageError("tol must be positive");
}

}  // namespace

Report run(const RunConfig& config) {
  validate(config);
  const auto t0 = std::chrono::steady_clock::now();

  const NamedExample ex = config.example == "flat" ? flat_example(config.m, config.t)
                                                   : sphere_example(config.n, config.s);
  SuiteOptions opt;
  opt.points = config.points;
  opt.planes_per_point = config.planes;
  opt.seed = config.seed;
  opt.tol = config.tol;
  opt.run_riemannian = config.connection == "riemannian" || config.connection == "all";
  opt.run_ssm = config.connection == "ssm" || config.connection == "all";
  opt.run_ssnm = config.connection == "ssnm" || config.connection == "all";

  const TheoremReport suite = theorem_suite(ex, opt);

  Report rep;
  rep.config = config;
  rep.checks = suite.checks;
  rep.overall_pass = suite.overall_pass;
  rep.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

std::string emit_json(const Report& report) {
  if (report.checks.empty())
    throw std::logic_error("emit_json: a report must carry at least one check");
  const RunConfig& c = report.config;
  std::string out;
  out += "{\n";
  out += "  \"schema_version\": \"1\",\n";
  out += "  \"config\": {\n";
  out += "    \"example\": \"" + json_escape(c.example) + "\",\n";
  if (c.example == "flat") {
    out += "    \"m\": " + std::to_string(c.m) + ",\n";
    out += "    \"t\": " + std::to_string(c.t) + ",\n";
  } else {
    out += "    \"n\": " + std::to_string(c.n) + ",\n";
    out += "    \"s\": " + std::to_string(c.s) + ",\n";
  }
  out += "    \"connection\": \"" + json_escape(c.connection) + "\",\n";
  out += "    \"points\": " + std::to_string(c.points) + ",\n";
  out += "    \"planes_per_point\": " + std::to_string(c.planes) + ",\n";
  out += "    \"seed\": " + fmt_u64(c.seed) + ",\n";
  out += "    \"tol\": " + fmt_double(c.tol) + "\n";
  out += "  },\n";
  out += "  \"checks\": [\n";
  for (std::size_t i = 0; i < report.checks.size(); ++i) {
    const CheckRecord& ch = report.checks[i];
    out += "    {\"name\": \"" + json_escape(ch.name) + "\", ";
    out += "\"connection\": \"" + json_escape(ch.connection) + "\", ";
    out += "\"anchor\": \"" + json_escape(ch.anchor) + "\", ";
    out += "\"max_residual\": " + fmt_double(ch.max_residual) + ", ";
    out += "\"tol\": " + fmt_double(ch.tol) + ", ";
    out += "\"comparison\": \"" + std::string(ch.expect_exceed ? "gt" : "lt") + "\", ";
    out += "\"directional\": " + std::string(ch.directional ? "true" : "false") + ", ";
    out += "\"pass\": " + std::string(ch.pass ? "true" : "false") + "}";
    out += (i + 1 < report.checks.size()) ? ",\n" : "\n";
  }
  out += "  ],\n";
  out += "  \"overall_pass\": " + std::string(report.overall_pass ? "true" : "false") + ",\n";
  out += "  \"wall_time_ms\": " + fmt_double(report.wall_time_ms) + "\n";
  out += "}\n";
  return out;
}

}  // namespace fgeom
