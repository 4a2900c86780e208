#include "sdlab/classifier.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "sdlab/errors.hpp"

namespace sdlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// a / b with a non-positive denominator read as +infinity.
double bound(double a, double b) { return b > 0.0 ? a / b : kInf; }

class Trace {
 public:
  bool check(const std::string& label, bool value) {
    os_ << label << " -> " << (value ? "true" : "false") << '\n';
    return value;
  }
  void note(const std::string& text) { os_ << text << '\n'; }
  std::string str() const { return os_.str(); }

 private:
  std::ostringstream os_;
};

std::string fmt(double x) {
  if (std::isinf(x)) return "inf";
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

bool local_wp(int n, double a, double s, Trace& tr) {
  if (n == 1) {
    const bool c1 = tr.check("A: alpha == 2 && s >= 0", a == 2.0 && s >= 0.0);
    const bool c2 = tr.check("A: s > 0 && alpha <= 4", s > 0.0 && a <= 4.0);
    const bool c3 = tr.check("A: alpha > 6 && s > (1 - 4/alpha)/2 = " + fmt((1.0 - 4.0 / a) / 2.0),
                             a > 6.0 && s > (1.0 - 4.0 / a) / 2.0);
    return c1 || c2 || c3;
  }
  if (n == 2) {
    const double hi = bound(2.0, 1.0 - s);
    if (std::isinf(hi)) tr.note("B: 2/(1 - s) read as +inf for s >= 1");
    const bool c1 = tr.check("B: alpha == 2 && s > 0", a == 2.0 && s > 0.0);
    const bool c2 = tr.check("B: 2 <= alpha < 2/(1 - s) = " + fmt(hi), a >= 2.0 && a < hi);
    return c1 || c2;
  }
  if (n == 3) {
    const double hi = bound(4.0, 3.0 - 2.0 * s);
    if (std::isinf(hi)) tr.note("C: 4/(3 - 2s) read as +inf for s >= 3/2");
    const bool c1 = tr.check("C: alpha == 2 && s >= 1", a == 2.0 && s >= 1.0);
    const bool c2 = tr.check("C: 2 <= alpha < 4/(3 - 2s) = " + fmt(hi), a >= 2.0 && a < hi);
    return c1 || c2;
  }
  const double hi = bound(4.0, n - 2.0 * s);
  if (std::isinf(hi)) tr.note("D: 4/(n - 2s) read as +inf for s >= n/2");
  return tr.check("D: 2 <= alpha < 4/(n - 2s) = " + fmt(hi), a >= 2.0 && a < hi);
}

bool global_wp(int n, double a, double s, Trace& tr) {
  if (n == 1) {
    const bool c1 = tr.check("E: alpha == 2 && s >= 0", a == 2.0 && s >= 0.0);
    const bool c2 = tr.check("E: s == 1 && alpha >= 1", s == 1.0 && a >= 1.0);
    return c1 || c2;
  }
  if (n == 2) {
    const bool c1 = tr.check("F: alpha == 2 && s >= 1", a == 2.0 && s >= 1.0);
    const bool c2 = tr.check("F: s == 1 && alpha >= 2", s == 1.0 && a >= 2.0);
    return c1 || c2;
  }
  if (n == 3) {
    const bool c1 = tr.check("G: alpha == 2 && s >= 1", a == 2.0 && s >= 1.0);
    const bool c2 = tr.check("G: s == 1 && 2 <= alpha < 3", s == 1.0 && a >= 2.0 && a < 3.0);
    return c1 || c2;
  }
  tr.note("no global statement for n >= 4");
  return false;
}

}  // namespace

Verdict classify_wellposedness(int n, double alpha, double s) {
  if (n < 1) throw InvalidArgument("dimension must be positive");
  if (!(alpha > 0.0)) throw InvalidArgument("alpha must be positive");
  if (!std::isfinite(s)) throw InvalidArgument("s must be finite");
  const int bucket = n >= 4 ? 4 : n;
  static constexpr char kLocal[] = {'A', 'B', 'C', 'D'};
  static constexpr char kGlobal[] = {'E', 'F', 'G'};

  Trace tr;
  const bool local = local_wp(bucket, alpha, s, tr);
  const bool global = global_wp(bucket, alpha, s, tr);

  std::vector<std::string> tags;
  if (local) tags.emplace_back(1, kLocal[bucket - 1]);
  if (global) tags.emplace_back(1, kGlobal[bucket - 1]);

  Verdict v;
  v.kind = global ? VerdictKind::GlobalWP : local ? VerdictKind::LocalWP : VerdictKind::NotCovered;
  v.theorem_tag = tags.empty() ? "-" : tags.front();
  for (std::size_t i = 1; i < tags.size(); ++i) v.theorem_tag += "+" + tags[i];
  v.constraint_trace = tr.str();
  return v;
}

std::string to_string(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::LocalWP: return "LocalWP";
    case VerdictKind::GlobalWP: return "GlobalWP";
    case VerdictKind::NotCovered: return "NotCovered";
  }
  return "NotCovered";
}

}  // namespace sdlab
