#include "fmclp/canonical.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

namespace fmclp::canonical {

namespace {

constexpr const char* kMagic = "fmclp";
constexpr int kVersion = 1;

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Next non-blank line split into fields. Returns false at end of input.
  bool next(std::vector<std::string>& fields) {
    std::string line;
    while (std::getline(in_, line)) {
      ++lineno_;
      std::istringstream ss(line);
      fields.clear();
      std::string tok;
      while (ss >> tok) fields.push_back(tok);
      if (!fields.empty()) return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(lineno_, what);
  }

  [[nodiscard]] int line() const { return lineno_; }

 private:
  std::istream& in_;
  int lineno_ = 0;
};

double to_double(const LineReader& r, const std::string& tok) {
  double v{};
  auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size()) {
    throw ParseError(r.line(), "bad number '" + tok + "'");
  }
  return v;
}

long to_long(const LineReader& r, const std::string& tok) {
  long v{};
  auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size()) {
    throw ParseError(r.line(), "bad integer '" + tok + "'");
  }
  return v;
}

std::uint64_t to_u64(const LineReader& r, const std::string& tok) {
  std::uint64_t v{};
  auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size()) {
    throw ParseError(r.line(), "bad seed '" + tok + "'");
  }
  return v;
}

void write_header(std::ostream& out, const char* kind) {
  out << kMagic << ' ' << kind << ' ' << kVersion << '\n';
}

void write_meta(std::ostream& out, const Meta& meta) {
  for (const auto& [key, value] : meta) {
    out << "meta " << key << ' ' << value << '\n';
  }
}

void write_center(std::ostream& out, const CrispInstance& inst) {
  out << "points " << inst.points.size() << '\n';
  for (const auto& p : inst.points) {
    out << "p " << p.id << ' ' << format_double(p.x) << ' '
        << format_double(p.y) << ' ' << format_double(p.demand) << '\n';
  }
  out << "facilities " << inst.facilities.size() << '\n';
  for (const auto& f : inst.facilities) {
    out << "f " << f.id << ' ' << format_double(f.x) << ' '
        << format_double(f.y) << ' ' << format_double(f.radius) << ' '
        << format_double(f.cost) << '\n';
  }
  out << "budget " << format_double(inst.budget) << '\n';
}

// Reads header and returns the kind token ("crisp" or "fuzzy").
std::string read_header(LineReader& r) {
  std::vector<std::string> f;
  if (!r.next(f)) throw ParseError(1, "empty canonical file");
  if (f.size() != 3 || f[0] != kMagic) r.fail("not a canonical instance file");
  if (to_long(r, f[2]) != kVersion) r.fail("unsupported format version");
  if (f[1] != "crisp" && f[1] != "fuzzy") r.fail("unknown kind '" + f[1] + "'");
  return f[1];
}

// Consumes meta lines; leaves `fields` holding the first non-meta line.
void read_meta(LineReader& r, std::vector<std::string>& fields, Meta* meta) {
  while (true) {
    if (!r.next(fields)) r.fail("unexpected end of file");
    if (fields[0] != "meta") return;
    if (fields.size() < 2) r.fail("meta line without key");
    std::string value;
    for (std::size_t i = 2; i < fields.size(); ++i) {
      if (i > 2) value += ' ';
      value += fields[i];
    }
    if (meta) meta->emplace_back(fields[1], value);
  }
}

CrispInstance read_center(LineReader& r, std::vector<std::string>& f) {
  CrispInstance inst;
  if (f.size() != 2 || f[0] != "points") r.fail("expected 'points <n>'");
  const long n = to_long(r, f[1]);
  for (long i = 0; i < n; ++i) {
    if (!r.next(f) || f.size() != 5 || f[0] != "p") {
      r.fail("expected point line 'p <id> <x> <y> <w>'");
    }
    DemandPoint p;
    p.id = static_cast<int>(to_long(r, f[1]));
    p.x = to_double(r, f[2]);
    p.y = to_double(r, f[3]);
    p.demand = to_double(r, f[4]);
    inst.points.push_back(p);
  }
  if (!r.next(f) || f.size() != 2 || f[0] != "facilities") {
    r.fail("expected 'facilities <m>'");
  }
  const long m = to_long(r, f[1]);
  for (long j = 0; j < m; ++j) {
    if (!r.next(f) || f.size() != 6 || f[0] != "f") {
      r.fail("expected facility line 'f <id> <x> <y> <radius> <cost>'");
    }
    Facility fac;
    fac.id = static_cast<int>(to_long(r, f[1]));
    fac.x = to_double(r, f[2]);
    fac.y = to_double(r, f[3]);
    fac.radius = to_double(r, f[4]);
    fac.cost = to_double(r, f[5]);
    inst.facilities.push_back(fac);
  }
  if (!r.next(f) || f.size() != 2 || f[0] != "budget") {
    r.fail("expected 'budget <B>'");
  }
  inst.budget = to_double(r, f[1]);
  return inst;
}

Tfn read_tfn(LineReader& r, const std::vector<std::string>& f,
             std::size_t first) {
  const double lo = to_double(r, f[first]);
  const double mid = to_double(r, f[first + 1]);
  const double hi = to_double(r, f[first + 2]);
  return Tfn(lo, mid, hi);
}

void write_tfn(std::ostream& out, const Tfn& t) {
  out << format_double(t.lo) << ' ' << format_double(t.mid) << ' '
      << format_double(t.hi);
}

}  // namespace

void write_crisp(std::ostream& out, const CrispInstance& inst,
                 const Meta& meta) {
  write_header(out, "crisp");
  write_meta(out, meta);
  write_center(out, inst);
  out << "end\n";
}

CrispInstance read_crisp(std::istream& in, Meta* meta) {
  LineReader r(in);
  if (read_header(r) != "crisp") r.fail("expected a crisp instance file");
  std::vector<std::string> f;
  read_meta(r, f, meta);
  CrispInstance inst = read_center(r, f);
  if (!r.next(f) || f[0] != "end") r.fail("expected 'end'");
  return inst;
}

void write_fuzzy(std::ostream& out, const FuzzyInstance& finst,
                 const Meta& meta) {
  write_header(out, "fuzzy");
  out << "seed " << finst.seed << '\n';
  out << "spread " << format_double(finst.spread) << '\n';
  write_meta(out, meta);
  write_center(out, finst.center);
  for (std::size_t i = 0; i < finst.demands.size(); ++i) {
    out << "wtfn " << i << ' ';
    write_tfn(out, finst.demands[i]);
    out << '\n';
  }
  for (std::size_t j = 0; j < finst.radii.size(); ++j) {
    out << "rtfn " << j << ' ';
    write_tfn(out, finst.radii[j]);
    out << '\n';
  }
  for (std::size_t j = 0; j < finst.costs.size(); ++j) {
    out << "ctfn " << j << ' ';
    write_tfn(out, finst.costs[j]);
    out << '\n';
  }
  out << "btfn ";
  write_tfn(out, finst.budget);
  out << '\n';
  for (std::size_t i = 0; i < finst.distances.size(); ++i) {
    for (std::size_t j = 0; j < finst.distances[i].size(); ++j) {
      out << "dtfn " << i << ' ' << j << ' ';
      write_tfn(out, finst.distances[i][j]);
      out << '\n';
    }
  }
  out << "end\n";
}

FuzzyInstance read_fuzzy(std::istream& in, Meta* meta) {
  LineReader r(in);
  if (read_header(r) != "fuzzy") r.fail("expected a fuzzy instance file");
  std::vector<std::string> f;

  FuzzyInstance finst;
  if (!r.next(f) || f.size() != 2 || f[0] != "seed") {
    r.fail("expected 'seed <value>'");
  }
  finst.seed = to_u64(r, f[1]);
  if (!r.next(f) || f.size() != 2 || f[0] != "spread") {
    r.fail("expected 'spread <value>'");
  }
  finst.spread = to_double(r, f[1]);

  read_meta(r, f, meta);
  finst.center = read_center(r, f);

  const std::size_t n = finst.center.points.size();
  const std::size_t m = finst.center.facilities.size();
  finst.demands.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!r.next(f) || f.size() != 5 || f[0] != "wtfn") {
      r.fail("expected demand TFN line");
    }
    finst.demands[static_cast<std::size_t>(to_long(r, f[1]))] =
        read_tfn(r, f, 2);
  }
  finst.radii.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    if (!r.next(f) || f.size() != 5 || f[0] != "rtfn") {
      r.fail("expected radius TFN line");
    }
    finst.radii[static_cast<std::size_t>(to_long(r, f[1]))] =
        read_tfn(r, f, 2);
  }
  finst.costs.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    if (!r.next(f) || f.size() != 5 || f[0] != "ctfn") {
      r.fail("expected cost TFN line");
    }
    finst.costs[static_cast<std::size_t>(to_long(r, f[1]))] =
        read_tfn(r, f, 2);
  }
  if (!r.next(f) || f.size() != 4 || f[0] != "btfn") {
    r.fail("expected budget TFN line");
  }
  finst.budget = read_tfn(r, f, 1);
  finst.distances.assign(n, std::vector<Tfn>(m));
  for (std::size_t k = 0; k < n * m; ++k) {
    if (!r.next(f) || f.size() != 6 || f[0] != "dtfn") {
      r.fail("expected distance TFN line");
    }
    const auto i = static_cast<std::size_t>(to_long(r, f[1]));
    const auto j = static_cast<std::size_t>(to_long(r, f[2]));
    if (i >= n || j >= m) r.fail("distance TFN index out of range");
    finst.distances[i][j] = read_tfn(r, f, 3);
  }
  if (!r.next(f) || f[0] != "end") r.fail("expected 'end'");
  return finst;
}

CrispInstance read_points(std::istream& in) {
  // Buffer the stream so we can dispatch on the header kind.
  std::stringstream buffer;
  buffer << in.rdbuf();
  std::string text = buffer.str();
  std::istringstream probe(text);
  LineReader r(probe);
  const std::string kind = read_header(r);
  std::istringstream again(text);
  CrispInstance inst;
  if (kind == "crisp") {
    inst = read_crisp(again);
  } else {
    inst = read_fuzzy(again).center;
  }
  inst.facilities.clear();
  inst.budget = 0.0;
  return inst;
}

}  // namespace fmclp::canonical
