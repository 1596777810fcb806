#include "statelift/sdpa.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace statelift {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::string export_sdpa(const ConicProgram& p) {
  p.validate();
  std::ostringstream os;
  const int m = p.num_vars();
  const int neq = static_cast<int>(p.rows().size());
  const int npsd = static_cast<int>(p.blocks().size());
  const int nblk = npsd + (neq > 0 ? 1 : 0);

  os << "*statelift sdpa export\n";
  if (p.objective_constant() != 0.0) os << "*c0 " << fmt(p.objective_constant()) << "\n";
  if (neq > 0) os << "*eqblock " << npsd + 1 << " " << neq << "\n";
  for (int b = 0; b < npsd; ++b)
    if (!p.blocks()[b].label.empty()) os << "*blk " << b + 1 << " " << p.blocks()[b].label << "\n";

  os << m << "\n" << nblk << "\n";
  for (int b = 0; b < npsd; ++b) os << p.blocks()[b].dim << (b + 1 < nblk ? " " : "");
  if (neq > 0) os << -2 * neq;
  os << "\n";
  std::vector<double> c(m, 0.0);
  for (auto& [v, a] : p.objective()) c[v] += a;
  for (int j = 0; j < m; ++j) os << fmt(c[j]) << (j + 1 < m ? " " : "");
  os << "\n";

  // PSD blocks: merge repeated contributions per (matno, i, j) first.
  for (int b = 0; b < npsd; ++b) {
    std::map<std::tuple<int, int, int>, double> merged;  // (matno, i, j)
    for (auto& e : p.blocks()[b].entries)
      merged[{e.var + 1, e.row, e.col}] += e.coeff;  // var -1 -> matno 0 holds -C
    for (auto& [k, v] : merged) {
      auto [matno, i, j] = k;
      double val = matno == 0 ? -v : v;  // F_0 = -C
      if (val != 0.0)
        os << matno << " " << b + 1 << " " << i + 1 << " " << j + 1 << " " << fmt(val) << "\n";
    }
  }
  for (int i = 0; i < neq; ++i) {
    const LinearRow& r = p.rows()[i];
    for (auto& [v, a] : r.coeffs) {
      os << v + 1 << " " << nblk << " " << i + 1 << " " << i + 1 << " " << fmt(a) << "\n";
      os << v + 1 << " " << nblk << " " << neq + i + 1 << " " << neq + i + 1 << " " << fmt(-a)
         << "\n";
    }
    if (r.rhs != 0.0) {
      os << 0 << " " << nblk << " " << i + 1 << " " << i + 1 << " " << fmt(r.rhs) << "\n";
      os << 0 << " " << nblk << " " << neq + i + 1 << " " << neq + i + 1 << " " << fmt(-r.rhs)
         << "\n";
    }
  }
  return os.str();
}

void write_sdpa_file(const ConicProgram& p, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << export_sdpa(p);
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

ConicProgram import_sdpa(const std::string& text) {
  double c0 = 0.0;
  int eq_block = -1, neq = 0;
  std::map<int, std::string> labels;
  std::ostringstream data;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && (line[0] == '*' || line[0] == '"')) {
      std::istringstream ls(line.substr(1));
      std::string tag;
      ls >> tag;
      if (tag == "c0") ls >> c0;
      else if (tag == "eqblock") ls >> eq_block >> neq;
      else if (tag == "blk") {
        int b = 0;
        ls >> b;
        std::string rest;
        std::getline(ls, rest);
        if (!rest.empty() && rest[0] == ' ') rest.erase(0, 1);
        labels[b] = rest;
      }
      continue;
    }
    // SDPA permits ,{}() as separators in the header lines.
    for (char& ch : line)
      if (ch == ',' || ch == '{' || ch == '}' || ch == '(' || ch == ')') ch = ' ';
    data << line << "\n";
  }

  std::istringstream ds(data.str());
  int m = 0, nblk = 0;
  if (!(ds >> m >> nblk)) throw std::runtime_error("sdpa: malformed header");
  std::vector<int> dims(nblk);
  for (int& d : dims)
    if (!(ds >> d)) throw std::runtime_error("sdpa: malformed block sizes");

  ConicProgram p;
  std::vector<std::pair<int, double>> obj;
  for (int j = 0; j < m; ++j) {
    double cj = 0.0;
    if (!(ds >> cj)) throw std::runtime_error("sdpa: malformed objective line");
    p.new_var();
    if (cj != 0.0) obj.emplace_back(j, cj);
  }
  p.set_objective(std::move(obj), c0);

  std::vector<int> block_index(nblk + 1, -1);  // 1-based file block -> program block
  for (int b = 1; b <= nblk; ++b) {
    if (b == eq_block) continue;
    block_index[b] = p.add_block(std::abs(dims[b - 1]), labels.count(b) ? labels[b] : "");
  }

  std::vector<LinearRow> rows(neq);
  int matno, blk, i, j;
  double val;
  while (ds >> matno >> blk >> i >> j >> val) {
    if (matno < 0 || matno > m || blk < 1 || blk > nblk)
      throw std::runtime_error("sdpa: entry out of range");
    if (blk == eq_block) {
      if (i != j) throw std::runtime_error("sdpa: equality block entry off the diagonal");
      if (i > neq) continue;  // mirrored half of the pair
      if (matno == 0)
        rows[i - 1].rhs = val;
      else
        rows[i - 1].coeffs.emplace_back(matno - 1, val);
    } else {
      // F_0 holds -C.
      p.add_entry(block_index[blk], i - 1, j - 1, matno - 1, matno == 0 ? -val : val);
    }
  }
  for (auto& r : rows) p.add_row(std::move(r));
  p.validate();
  return p;
}

ConicProgram read_sdpa_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return import_sdpa(ss.str());
}

}  // namespace statelift
