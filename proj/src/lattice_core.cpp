#include "tileforge/lattice_core.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace tileforge {

Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer overflow in addition");
  return r;
}

Int checked_sub(Int a, Int b) {
  Int r;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("integer overflow in subtraction");
  return r;
}

Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer overflow in multiplication");
  return r;
}

Int checked_neg(Int a) { return checked_sub(0, a); }

Int narrow(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw OverflowError("value exceeds 64-bit range");
  return static_cast<Int>(v);
}

// ---------------------------------------------------------------- IntVector

IntVector::IntVector(std::size_t dim) {
  if (dim == 0 || dim > kMaxDim) throw InputError("unsupported dimension " + std::to_string(dim));
  n_ = static_cast<std::uint8_t>(dim);
}

IntVector::IntVector(std::initializer_list<Int> coords) : IntVector(coords.size()) {
  std::copy(coords.begin(), coords.end(), c_.begin());
}

IntVector::IntVector(const std::vector<Int>& coords) : IntVector(coords.size()) {
  std::copy(coords.begin(), coords.end(), c_.begin());
}

bool IntVector::is_zero() const {
  return std::all_of(c_.begin(), c_.begin() + n_, [](Int x) { return x == 0; });
}

IntVector IntVector::operator+(const IntVector& o) const {
  if (n_ != o.n_) throw InputError("dimension mismatch");
  IntVector r(n_);
  for (std::size_t i = 0; i < n_; ++i) r.c_[i] = checked_add(c_[i], o.c_[i]);
  return r;
}

IntVector IntVector::operator-(const IntVector& o) const {
  if (n_ != o.n_) throw InputError("dimension mismatch");
  IntVector r(n_);
  for (std::size_t i = 0; i < n_; ++i) r.c_[i] = checked_sub(c_[i], o.c_[i]);
  return r;
}

IntVector IntVector::operator-() const {
  IntVector r(n_);
  for (std::size_t i = 0; i < n_; ++i) r.c_[i] = checked_neg(c_[i]);
  return r;
}

IntVector IntVector::scaled(Int k) const {
  IntVector r(n_);
  for (std::size_t i = 0; i < n_; ++i) r.c_[i] = checked_mul(c_[i], k);
  return r;
}

bool IntVector::operator==(const IntVector& o) const {
  return n_ == o.n_ && std::equal(c_.begin(), c_.begin() + n_, o.c_.begin());
}

std::strong_ordering IntVector::operator<=>(const IntVector& o) const {
  if (n_ != o.n_) return n_ <=> o.n_;
  for (std::size_t i = 0; i < n_; ++i)
    if (c_[i] != o.c_[i]) return c_[i] <=> o.c_[i];
  return std::strong_ordering::equal;
}

std::string IntVector::str() const {
  std::string s;
  for (std::size_t i = 0; i < n_; ++i) {
    if (i) s += ',';
    s += std::to_string(c_[i]);
  }
  return s;
}

IntVector IntVector::parse(const std::string& text) {
  std::vector<Int> out;
  std::string cleaned;
  for (char ch : text)
    if (ch != '(' && ch != ')' && ch != ' ') cleaned += ch;
  std::stringstream ss(cleaned);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) throw InputError("bad integer");
    } catch (const std::logic_error&) {
      throw InputError("cannot parse vector '" + text + "'");
    }
  }
  if (out.empty() || out.size() > kMaxDim) throw InputError("cannot parse vector '" + text + "'");
  return IntVector(out);
}

// ----------------------------------------------------------------- Rational

Rational::Rational(Int n, Int d) {
  if (d == 0) throw InputError("zero denominator");
  *this = reduced(n, d);
}

Rational Rational::reduced(__int128 n, __int128 d) {
  if (d == 0) throw InputError("zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  __int128 a = n < 0 ? -n : n, b = d;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  if (a > 1) {
    n /= a;
    d /= a;
  }
  Rational r;
  r.num_ = narrow(n);
  r.den_ = narrow(d);
  return r;
}

Rational Rational::operator+(const Rational& o) const {
  return reduced(static_cast<__int128>(num_) * o.den_ + static_cast<__int128>(o.num_) * den_,
                 static_cast<__int128>(den_) * o.den_);
}

Rational Rational::operator-(const Rational& o) const {
  return reduced(static_cast<__int128>(num_) * o.den_ - static_cast<__int128>(o.num_) * den_,
                 static_cast<__int128>(den_) * o.den_);
}

Rational Rational::operator*(const Rational& o) const {
  return reduced(static_cast<__int128>(num_) * o.num_, static_cast<__int128>(den_) * o.den_);
}

Rational Rational::operator/(const Rational& o) const {
  if (o.num_ == 0) throw InputError("division by zero");
  return reduced(static_cast<__int128>(num_) * o.den_, static_cast<__int128>(den_) * o.num_);
}

Rational Rational::operator-() const { return reduced(-static_cast<__int128>(num_), den_); }

std::strong_ordering Rational::operator<=>(const Rational& o) const {
  __int128 l = static_cast<__int128>(num_) * o.den_;
  __int128 r = static_cast<__int128>(o.num_) * den_;
  if (l < r) return std::strong_ordering::less;
  if (l > r) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Rational::str() const {
  return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
}

RationalVector::RationalVector(const IntVector& v) : c_(v.dim()) {
  for (std::size_t i = 0; i < v.dim(); ++i) c_[i] = Rational(v[i]);
}

RationalVector::RationalVector(const IntVector& numer, Int denom) : c_(numer.dim()) {
  for (std::size_t i = 0; i < numer.dim(); ++i) c_[i] = Rational(numer[i], denom);
}

RationalVector RationalVector::operator+(const RationalVector& o) const {
  if (dim() != o.dim()) throw InputError("dimension mismatch");
  RationalVector r(dim());
  for (std::size_t i = 0; i < dim(); ++i) r.c_[i] = c_[i] + o.c_[i];
  return r;
}

RationalVector RationalVector::operator-(const RationalVector& o) const {
  if (dim() != o.dim()) throw InputError("dimension mismatch");
  RationalVector r(dim());
  for (std::size_t i = 0; i < dim(); ++i) r.c_[i] = c_[i] - o.c_[i];
  return r;
}

std::strong_ordering RationalVector::operator<=>(const RationalVector& o) const {
  if (dim() != o.dim()) return dim() <=> o.dim();
  for (std::size_t i = 0; i < dim(); ++i)
    if (auto c = c_[i] <=> o.c_[i]; c != 0) return c;
  return std::strong_ordering::equal;
}

std::string RationalVector::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < dim(); ++i) {
    if (i) s += ", ";
    s += c_[i].str();
  }
  return s + ")";
}

// ---------------------------------------------------------------- IntMatrix

Int determinant(std::size_t n, std::vector<Int> a) {
  if (n == 0) return 1;
  Int sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k * n + k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p * n + k] == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[p * n + j]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        __int128 v = static_cast<__int128>(a[i * n + j]) * a[k * n + k] -
                     static_cast<__int128>(a[i * n + k]) * a[k * n + j];
        a[i * n + j] = narrow(v / prev);
      }
    }
    prev = a[k * n + k];
  }
  return checked_mul(sign, a[n * n - 1]);
}

IntMatrix::IntMatrix(std::size_t dim, std::vector<Int> row_major) : n_(dim), a_(std::move(row_major)) {
  if (dim == 0 || dim > IntVector::kMaxDim) throw InputError("unsupported matrix dimension");
  if (a_.size() != dim * dim) throw InputError("matrix entry count does not match dimension");
  det_ = determinant(n_, a_);
  adj_.assign(n_ * n_, 0);
  if (n_ == 1) {
    adj_[0] = 1;
  } else {
    std::vector<Int> minor((n_ - 1) * (n_ - 1));
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        std::size_t w = 0;
        for (std::size_t r = 0; r < n_; ++r)
          for (std::size_t c = 0; c < n_; ++c)
            if (r != i && c != j) minor[w++] = a_[r * n_ + c];
        Int cof = determinant(n_ - 1, minor);
        adj_[j * n_ + i] = ((i + j) % 2) ? checked_neg(cof) : cof;
      }
    }
  }
  for (std::size_t r = 0; r < n_; ++r)
    for (std::size_t c = 0; c < n_; ++c) {
      Int s = 0;
      for (std::size_t k = 0; k < n_; ++k) s = checked_add(s, checked_mul(adj_[r * n_ + k], a_[k * n_ + c]));
      if (s != (r == c ? det_ : 0)) throw std::logic_error("adjugate self-check failed");
    }
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<Int>> rows) {
  std::vector<Int> flat;
  for (const auto& r : rows) {
    if (r.size() != rows.size()) throw InputError("matrix must be square");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  *this = IntMatrix(rows.size(), std::move(flat));
}

IntMatrix IntMatrix::identity(std::size_t dim) {
  std::vector<Int> a(dim * dim, 0);
  for (std::size_t i = 0; i < dim; ++i) a[i * dim + i] = 1;
  return IntMatrix(dim, std::move(a));
}

IntVector IntMatrix::apply(const IntVector& v) const {
  if (v.dim() != n_) throw InputError("dimension mismatch");
  IntVector r(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    Int s = 0;
    for (std::size_t j = 0; j < n_; ++j) s = checked_add(s, checked_mul(a_[i * n_ + j], v[j]));
    r[i] = s;
  }
  return r;
}

IntVector IntMatrix::apply_adjugate(const IntVector& v) const {
  if (v.dim() != n_) throw InputError("dimension mismatch");
  IntVector r(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    Int s = 0;
    for (std::size_t j = 0; j < n_; ++j) s = checked_add(s, checked_mul(adj_[i * n_ + j], v[j]));
    r[i] = s;
  }
  return r;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (n_ != o.n_) throw InputError("dimension mismatch");
  std::vector<Int> r(n_ * n_, 0);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) {
      Int s = 0;
      for (std::size_t k = 0; k < n_; ++k) s = checked_add(s, checked_mul(a_[i * n_ + k], o.a_[k * n_ + j]));
      r[i * n_ + j] = s;
    }
  return IntMatrix(n_, std::move(r));
}

IntMatrix IntMatrix::operator-(const IntMatrix& o) const {
  if (n_ != o.n_) throw InputError("dimension mismatch");
  std::vector<Int> r(n_ * n_);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = checked_sub(a_[i], o.a_[i]);
  return IntMatrix(n_, std::move(r));
}

IntMatrix IntMatrix::pow(unsigned e) const {
  IntMatrix r = identity(n_);
  for (unsigned i = 0; i < e; ++i) r = r * *this;
  return r;
}

std::string IntMatrix::str() const {
  std::string s = "[";
  for (std::size_t i = 0; i < n_; ++i) {
    if (i) s += ", ";
    s += "(";
    for (std::size_t j = 0; j < n_; ++j) {
      if (j) s += ",";
      s += std::to_string(at(i, j));
    }
    s += ")";
  }
  return s + "]";
}

std::optional<IntVector> solve_integer(const IntMatrix& m, const IntVector& w) {
  if (m.det() == 0) throw InputError("singular matrix");
  IntVector k = m.apply_adjugate(w);
  for (std::size_t i = 0; i < k.dim(); ++i) {
    if (k[i] % m.det() != 0) return std::nullopt;
    k[i] /= m.det();
  }
  return k;
}

RationalVector solve_rational(const IntMatrix& m, const RationalVector& w) {
  if (m.det() == 0) throw InputError("singular matrix");
  const std::size_t n = m.dim();
  RationalVector r(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rational s;
    for (std::size_t j = 0; j < n; ++j) s = s + Rational(m.adjugate()[i * n + j]) * w[j];
    r[i] = s / Rational(m.det());
  }
  return r;
}

// ----------------------------------------------------------------- DigitSet

DigitSet::DigitSet(std::vector<IntVector> digits) : digits_(std::move(digits)) {
  if (digits_.empty()) throw InputError("empty digit set");
  std::vector<IntVector> sorted = digits_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw InputError("digit set contains duplicates");
  for (const auto& d : digits_)
    if (d.dim() != digits_.front().dim()) throw InputError("digits of mixed dimension");
}

DigitSet DigitSet::collinear(std::size_t count, const IntVector& v) {
  if (v.is_zero()) throw InputError("collinear digit generator must be nonzero");
  std::vector<IntVector> ds;
  ds.reserve(count);
  for (std::size_t i = 0; i < count; ++i) ds.push_back(v.scaled(static_cast<Int>(i)));
  DigitSet out(std::move(ds));
  out.generator_ = v;
  return out;
}

std::optional<std::size_t> DigitSet::index_of(const IntVector& d) const {
  if (generator_) {
    const IntVector& v = *generator_;
    std::size_t pivot = 0;
    while (v[pivot] == 0) ++pivot;
    if (d[pivot] % v[pivot] != 0) return std::nullopt;
    Int k = d[pivot] / v[pivot];
    if (k < 0 || static_cast<std::size_t>(k) >= digits_.size()) return std::nullopt;
    if (v.scaled(k) != d) return std::nullopt;
    return static_cast<std::size_t>(k);
  }
  for (std::size_t i = 0; i < digits_.size(); ++i)
    if (digits_[i] == d) return i;
  return std::nullopt;
}

// ---------------------------------------------------------------- AbcParams

AbcParams::AbcParams(Int a, Int b, Int c) : A(a), B(b), C(c) {
  if (!(1 <= A && A <= B && B < C))
    throw InputError("ABC parameters must satisfy 1 <= A <= B < C, got " + str());
}

std::string AbcParams::str() const {
  return std::to_string(A) + "," + std::to_string(B) + "," + std::to_string(C);
}

AbcParams AbcParams::parse(const std::string& text) {
  IntVector v = IntVector::parse(text);
  if (v.dim() != 3) throw InputError("expected A,B,C");
  return AbcParams(v[0], v[1], v[2]);
}

TileSystem companion_form(const AbcParams& p) {
  IntMatrix m{{0, 0, checked_neg(p.C)}, {1, 0, checked_neg(p.B)}, {0, 1, checked_neg(p.A)}};
  return TileSystem{m, DigitSet::collinear(static_cast<std::size_t>(p.C), IntVector{1, 0, 0})};
}

std::vector<Int> char_poly(const IntMatrix& m) {
  // Faddeev-LeVerrier: N_k = M N_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(M N_k)/k.
  const std::size_t n = m.dim();
  std::vector<Int> coeffs{1};
  std::vector<Int> nk(n * n, 0);
  Int prev_c = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<Int> next(n * n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Int s = 0;
        for (std::size_t t = 0; t < n; ++t) s = checked_add(s, checked_mul(m.at(i, t), nk[t * n + j]));
        next[i * n + j] = s;
      }
    for (std::size_t i = 0; i < n; ++i) next[i * n + i] = checked_add(next[i * n + i], prev_c);
    nk = next;
    Int tr = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t t = 0; t < n; ++t) tr = checked_add(tr, checked_mul(m.at(i, t), nk[t * n + i]));
    prev_c = checked_neg(tr) / static_cast<Int>(k);
    coeffs.push_back(prev_c);
  }
  return coeffs;
}

bool is_expanding(const IntMatrix& m) {
  if (m.dim() != 3) throw InputError("is_expanding supports only 3x3 matrices");
  auto chi = char_poly(m);
  const Int a = chi[1], b = chi[2], c = chi[3];
  if (1 <= a && a <= b && b < c) return true;
  // Roots of chi lie outside the unit circle iff the reversed polynomial
  // c x^3 + b x^2 + a x + 1 has all roots strictly inside; Schur-Cohn steps.
  std::vector<Int> q{1, a, b, c};  // low to high
  while (q.size() > 1) {
    const std::size_t n = q.size() - 1;
    const Int lead = q[n], low = q[0];
    if ((low < 0 ? -low : low) >= (lead < 0 ? -lead : lead)) return false;
    std::vector<Int> next(n);
    for (std::size_t i = 0; i < n; ++i)
      next[i] = checked_sub(checked_mul(lead, q[i + 1]), checked_mul(low, q[n - 1 - i]));
    q = std::move(next);
  }
  return true;
}

DigitSet collinear_digit_set(const IntMatrix& m, const IntVector& v) {
  if (v.dim() != m.dim()) throw InputError("dimension mismatch");
  Int d = m.det() < 0 ? checked_neg(m.det()) : m.det();
  if (d == 0) throw InputError("singular matrix");
  return DigitSet::collinear(static_cast<std::size_t>(d), v);
}

bool is_complete_residue_system(const IntMatrix& m, const DigitSet& d) {
  Int det = m.det();
  if (det == 0) throw InputError("singular matrix");
  if (static_cast<Int>(d.size()) != (det < 0 ? -det : det))
    throw InputError("digit count " + std::to_string(d.size()) + " differs from |det M| = " +
                     std::to_string(det < 0 ? -det : det));
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = i + 1; j < d.size(); ++j)
      if (solve_integer(m, d[i] - d[j])) return false;
  return true;
}

RadixExpansion radix_expand(const TileSystem& sys, const IntVector& z, std::size_t max_len) {
  RadixExpansion out;
  std::unordered_map<IntVector, std::size_t> seen;
  std::vector<IntVector> path;
  IntVector cur = z;
  while (!cur.is_zero()) {
    if (auto it = seen.find(cur); it != seen.end()) {
      out.cycle.assign(path.begin() + static_cast<std::ptrdiff_t>(it->second), path.end());
      return out;
    }
    if (out.digits.size() >= max_len) return out;
    seen.emplace(cur, path.size());
    path.push_back(cur);
    bool found = false;
    for (std::size_t i = 0; i < sys.digits.size(); ++i) {
      if (auto q = solve_integer(sys.matrix, cur - sys.digits[i])) {
        out.digits.push_back(i);
        cur = *q;
        found = true;
        break;
      }
    }
    if (!found) throw InputError("no digit matches " + cur.str() + "; digit set is not a complete residue system");
  }
  out.terminated = true;
  return out;
}

}  // namespace tileforge
