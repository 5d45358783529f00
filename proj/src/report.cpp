#include "gausschain/report.hpp"

#include <cerrno>
#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace gausschain {

namespace {

std::string num15(double x) {
  if (x == 0.0) x = 0.0;  // no "-0" in the output
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 15);
  return std::string(buf, res.ptr);
}

std::string pair_name(ModePair p) { return std::to_string(p.a) + "-" + std::to_string(p.b); }

nlohmann::ordered_json matrix_json(const Eigen::MatrixXd& m) {
  auto rows = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    auto row = nlohmann::ordered_json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::string records_to_csv(const std::vector<SweepRecord>& records) {
  const bool blocks = !records.empty() && !records.front().entries.empty() && records.front().entries.front().block.has_value();
  const bool diag = !records.empty() && records.front().diagnostics.has_value();

  std::string out = "tau,pair,log_negativity";
  if (blocks) out += ",c11,c12,c21,c22";
  if (diag) out += ",symplectic_error,purity_error,engine_gap";
  out += "\n";

  for (const SweepRecord& r : records) {
    for (const SweepEntry& e : r.entries) {
      out += num15(r.tau) + "," + pair_name(e.pair) + "," + num15(e.log_negativity);
      if (blocks) {
        const Eigen::Matrix2d c = e.block.value_or(Eigen::Matrix2d::Constant(std::nan("")));
        out += "," + num15(c(0, 0)) + "," + num15(c(0, 1)) + "," + num15(c(1, 0)) + "," + num15(c(1, 1));
      }
      if (diag) {
        const SweepDiagnostics d = r.diagnostics.value_or(SweepDiagnostics{});
        out += "," + num15(d.symplectic_error) + "," + num15(d.purity_error) + "," + num15(d.engine_gap);
      }
      out += "\n";
    }
  }
  return out;
}

std::string records_to_json(const std::vector<SweepRecord>& records) {
  auto arr = nlohmann::ordered_json::array();
  for (const SweepRecord& r : records) {
    nlohmann::ordered_json rec;
    rec["tau"] = r.tau;
    auto entries = nlohmann::ordered_json::array();
    for (const SweepEntry& e : r.entries) {
      nlohmann::ordered_json j;
      j["pair"] = {e.pair.a, e.pair.b};
      j["log_negativity"] = e.log_negativity;
      if (e.block) j["block"] = matrix_json(*e.block);
      entries.push_back(std::move(j));
    }
    rec["entries"] = std::move(entries);
    if (r.diagnostics) {
      rec["diagnostics"] = {{"symplectic_error", r.diagnostics->symplectic_error},
                            {"purity_error", r.diagnostics->purity_error},
                            {"engine_gap", r.diagnostics->engine_gap}};
    }
    arr.push_back(std::move(rec));
  }
  return arr.dump(1) + "\n";
}

std::string format_records(const std::vector<SweepRecord>& records, OutputFormat format) {
  return format == OutputFormat::Csv ? records_to_csv(records) : records_to_json(records);
}

std::string state_to_json(double tau, const Covariance& v) {
  const int n = static_cast<int>(v.modes());
  nlohmann::ordered_json j;
  j["tau"] = tau;
  j["modes"] = n;
  j["covariance"] = matrix_json(v.matrix());
  auto pairs = nlohmann::ordered_json::array();
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b) pairs.push_back({{"pair", {a, b}}, {"log_negativity", log_negativity(v, a, b)}});
  j["pairs"] = std::move(pairs);
  return j.dump(1) + "\n";
}

std::string state_to_csv(double tau, const Covariance& v) {
  const int n = static_cast<int>(v.modes());
  SweepRecord rec;
  rec.tau = tau;
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b) rec.entries.push_back({{a, b}, log_negativity(v, a, b), v.block(a, b)});
  return records_to_csv({rec});
}

void write_output(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    out.flush();
    if (!out) throw IoError("<stdout>", "write failed");
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError(path, std::string("cannot open for writing: ") + std::strerror(errno));
  f << text;
  f.close();
  if (!f) throw IoError(path, "write failed");
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError(path, std::string("cannot open: ") + std::strerror(errno));
  std::ostringstream ss;
  ss << f.rdbuf();
  if (f.bad()) throw IoError(path, "read failed");
  return ss.str();
}

}  // namespace gausschain
