#include "pr/sim/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace pr {

namespace {

void append_num(std::string* out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  *out += buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

}  // namespace

std::string log_to_csv(const SimLog& log) {
  std::string out;
  out += "t";
  for (int i = 1; i <= log.n; ++i) out += ",x" + std::to_string(i);
  for (int i = 1; i <= log.n; ++i) out += ",xd" + std::to_string(i);
  for (int i = 1; i <= log.n; ++i) out += ",e" + std::to_string(i);
  for (int i = 1; i <= log.n; ++i) out += ",s" + std::to_string(i);
  for (int i = 1; i <= log.m; ++i) out += ",tau" + std::to_string(i);
  out += ",V,That\n";
  for (const auto& row : log.rows) {
    append_num(&out, row.t);
    for (const Vec* v : {&row.X, &row.Xd, &row.e, &row.S, &row.tau})
      for (int i = 0; i < v->size(); ++i) {
        out += ',';
        append_num(&out, (*v)(i));
      }
    out += ',';
    append_num(&out, row.V);
    out += ',';
    append_num(&out, row.That);
    out += '\n';
  }
  return out;
}

void write_csv(const SimLog& log, const std::string& path) {
  std::ofstream f(path, std::ios::binary);  // binary: keep LF on all platforms
  if (!f) throw ConfigError("cannot open '" + path + "' for writing");
  f << log_to_csv(log);
}

SimLog read_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open '" + path + "'");
  std::string header;
  if (!std::getline(f, header) || header.empty())
    throw ConfigError("'" + path + "' is empty or missing its header");
  const auto cols = split(header, ',');
  SimLog log;
  int n = 0, m = 0;
  for (const auto& c : cols) {
    if (c.size() > 1 && c[0] == 'x' && c[1] != 'd') ++n;
    if (c.rfind("tau", 0) == 0) ++m;
  }
  log.n = n;
  log.m = m;
  const std::size_t expect = 1 + 4 * n + m + 2;
  if (cols.size() != expect || cols[0] != "t")
    throw ConfigError("'" + path + "' does not match the simulation schema");
  std::string line;
  int line_no = 1;
  while (std::getline(f, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto items = split(line, ',');
    if (items.size() != expect)
      throw ConfigError(path + ":" + std::to_string(line_no) +
                        ": wrong column count");
    std::vector<double> v(expect);
    for (std::size_t i = 0; i < expect; ++i) {
      try {
        v[i] = std::stod(items[i]);
      } catch (const std::exception&) {
        throw ConfigError(path + ":" + std::to_string(line_no) +
                          ": bad number '" + items[i] + "'");
      }
    }
    SimRow row;
    row.t = v[0];
    auto take = [&](int off, int len) {
      Vec x(len);
      for (int i = 0; i < len; ++i) x(i) = v[off + i];
      return x;
    };
    row.X = take(1, n);
    row.Xd = take(1 + n, n);
    row.e = take(1 + 2 * n, n);
    row.S = take(1 + 3 * n, n);
    row.tau = take(1 + 4 * n, m);
    row.V = v[1 + 4 * n + m];
    row.That = v[2 + 4 * n + m];
    log.rows.push_back(std::move(row));
  }
  return log;
}

}  // namespace pr
