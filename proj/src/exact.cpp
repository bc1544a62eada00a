#include "klab/exact.hpp"
#include "klab/errors.hpp"

#include <algorithm>

namespace klab {

namespace mp = boost::multiprecision;

Rat make_rat(long long p, long long q)
{
    if (q == 0) throw DomainError("zero denominator");
    if (q < 0) return Rat(-BigInt(p), -BigInt(q));
    return Rat(BigInt(p), BigInt(q));
}

std::string to_string(const Rat& r)
{
    const BigInt n = mp::numerator(r);
    const BigInt d = mp::denominator(r);
    if (d == 1) return n.str();
    return n.str() + "/" + d.str();
}

Rat parse_rat(std::string_view s)
{
    auto parse_int = [&](std::string_view t) {
        std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
        if (i == t.size()) throw DomainError("bad rational '" + std::string(s) + "'");
        for (std::size_t k = i; k < t.size(); ++k)
            if (t[k] < '0' || t[k] > '9')
                throw DomainError("bad rational '" + std::string(s) + "'");
        return BigInt(std::string(t[0] == '+' ? t.substr(1) : t));
    };
    const auto slash = s.find('/');
    if (slash == std::string_view::npos) return Rat(parse_int(s));
    BigInt q = parse_int(s.substr(slash + 1));
    if (q == 0) throw DomainError("zero denominator in '" + std::string(s) + "'");
    return Rat(parse_int(s.substr(0, slash)), q);
}

double to_double(const Rat& r) { return r.convert_to<double>(); }

// ---- PiLinear -------------------------------------------------------------

PiLinear& PiLinear::operator+=(const PiLinear& o)
{
    rat += o.rat;
    pi += o.pi;
    return *this;
}

PiLinear& PiLinear::operator-=(const PiLinear& o)
{
    rat -= o.rat;
    pi -= o.pi;
    return *this;
}

PiLinear& PiLinear::operator*=(const Rat& k)
{
    rat *= k;
    pi *= k;
    return *this;
}

PiLinear operator+(PiLinear a, const PiLinear& b) { return a += b; }
PiLinear operator-(PiLinear a, const PiLinear& b) { return a -= b; }
PiLinear operator-(PiLinear a) { return a *= Rat(-1); }
PiLinear operator*(PiLinear a, const Rat& k) { return a *= k; }
PiLinear operator*(const Rat& k, PiLinear a) { return a *= k; }

double pi_linear_eval(const PiLinear& x, double pi_approx)
{
    return to_double(x.rat) + to_double(x.pi) * pi_approx;
}

std::string to_string(const PiLinear& x)
{
    if (x.pi == 0) return to_string(x.rat);
    std::string s = x.rat == 0 ? "" : to_string(x.rat) + (x.pi > 0 ? " + " : " - ");
    Rat b = (x.rat != 0 && x.pi < 0) ? Rat(-x.pi) : x.pi;
    if (b == 1) return s + "pi";
    if (b == -1) return s + "-pi";
    return s + to_string(b) + "*pi";
}

// ---- PiPoly ---------------------------------------------------------------

PiPoly::PiPoly(const Rat& c0) : c_{c0} { trim(); }
PiPoly::PiPoly(const PiLinear& x) : c_{x.rat, x.pi} { trim(); }
PiPoly::PiPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

void PiPoly::trim()
{
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

double PiPoly::eval(double pi_approx) const
{
    double acc = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * pi_approx + to_double(*it);
    return acc;
}

PiPoly& PiPoly::operator+=(const PiPoly& o)
{
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    return *this;
}

PiPoly& PiPoly::operator-=(const PiPoly& o)
{
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    trim();
    return *this;
}

PiPoly operator*(const PiPoly& a, const PiPoly& b)
{
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rat> c(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return PiPoly(std::move(c));
}

// Machin: pi = 16 atan(1/5) - 4 atan(1/239). Consecutive partial sums of an
// alternating series with decreasing terms bracket the limit.
static std::pair<Rat, Rat> atan_inv_bounds(long long x, int terms)
{
    Rat s(0), last(0);
    BigInt pow = x;
    const BigInt x2 = BigInt(x) * x;
    for (int k = 0; k <= terms; ++k) {
        Rat term(BigInt(1), BigInt(2 * k + 1) * pow);
        last = s;
        s += (k % 2 == 0) ? term : Rat(-term);
        pow *= x2;
    }
    return s < last ? std::pair{s, last} : std::pair{last, s};
}

std::pair<Rat, Rat> pi_bounds(int terms)
{
    auto [a_lo, a_hi] = atan_inv_bounds(5, terms);
    auto [b_lo, b_hi] = atan_inv_bounds(239, terms);
    return {16 * a_lo - 4 * b_hi, 16 * a_hi - 4 * b_lo};
}

int sign_at_pi(const PiPoly& p)
{
    if (p.is_zero()) return 0;
    for (int terms = 4; terms <= 4096; terms *= 2) {
        auto [lo, hi] = pi_bounds(terms);
        Rat vlo(0), vhi(0), plo(1), phi(1);
        for (const Rat& c : p.coeffs()) {
            if (c >= 0) {
                vlo += c * plo;
                vhi += c * phi;
            } else {
                vlo += c * phi;
                vhi += c * plo;
            }
            plo *= lo;
            phi *= hi;
        }
        if (vlo > 0) return 1;
        if (vhi < 0) return -1;
    }
    throw DomainError("sign at pi undecided");
}

bool operator==(const PiRatio& a, const PiRatio& b) { return a.num * b.den == b.num * a.den; }

PiRatio operator*(const PiRatio& a, const PiRatio& b) { return {a.num * b.num, a.den * b.den}; }

PiRatio operator-(const PiRatio& a, const PiRatio& b)
{
    return {a.num * b.den - b.num * a.den, a.den * b.den};
}

bool less_at_pi(const PiRatio& a, const PiRatio& b) { return (b - a).sign() > 0; }

// ---- matrices -------------------------------------------------------------

IntSymMatrix::IntSymMatrix(std::size_t n) : n_(n), e_(n * n) {}

IntSymMatrix::IntSymMatrix(std::initializer_list<std::initializer_list<long long>> rows)
    : n_(rows.size()), e_(rows.size() * rows.size())
{
    std::size_t i = 0;
    for (const auto& row : rows) {
        if (row.size() != n_) throw DimensionMismatch("matrix rows must be square");
        std::size_t j = 0;
        for (long long v : row) e_[i * n_ + j++] = v;
        ++i;
    }
    for (std::size_t a = 0; a < n_; ++a)
        for (std::size_t b = a + 1; b < n_; ++b)
            if (e_[a * n_ + b] != e_[b * n_ + a]) throw DomainError("matrix is not symmetric");
}

void IntSymMatrix::set(std::size_t i, std::size_t j, const BigInt& v)
{
    e_[i * n_ + j] = v;
    e_[j * n_ + i] = v;
}

namespace {

// Bareiss forward elimination on [M | rhs]; rows are swapped to the first
// nonzero pivot. Returns the sign of the row permutation.
int bareiss(std::vector<std::vector<BigInt>>& a, std::size_t n)
{
    int sgn = 1;
    BigInt prev = 1;
    const std::size_t cols = a.empty() ? 0 : a[0].size();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && a[p][k] == 0) ++p;
        if (p == n) throw SingularMatrix("matrix is singular");
        if (p != k) {
            std::swap(a[p], a[k]);
            sgn = -sgn;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < cols; ++j)
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    return sgn;
}

std::vector<std::vector<BigInt>> augmented(const IntSymMatrix& m, std::size_t extra)
{
    const std::size_t n = m.size();
    std::vector<std::vector<BigInt>> a(n, std::vector<BigInt>(n + extra));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = m(i, j);
    return a;
}

std::vector<Rat> back_substitute(const std::vector<std::vector<BigInt>>& a, std::size_t n,
                                 std::size_t col)
{
    std::vector<Rat> x(n);
    for (std::size_t ii = n; ii-- > 0;) {
        Rat acc(a[ii][col]);
        for (std::size_t j = ii + 1; j < n; ++j) acc -= Rat(a[ii][j]) * x[j];
        x[ii] = acc / Rat(a[ii][ii]);
    }
    return x;
}

} // namespace

BigInt determinant(const IntSymMatrix& m)
{
    const std::size_t n = m.size();
    if (n == 0) return 1;
    auto a = augmented(m, 0);
    int sgn;
    try {
        sgn = bareiss(a, n);
    } catch (const SingularMatrix&) {
        return 0;
    }
    return sgn * a[n - 1][n - 1];
}

RatMatrix mat_inverse(const IntSymMatrix& m)
{
    const std::size_t n = m.size();
    auto a = augmented(m, n);
    for (std::size_t i = 0; i < n; ++i) a[i][n + i] = 1;
    bareiss(a, n);
    RatMatrix inv(n, std::vector<Rat>(n));
    for (std::size_t c = 0; c < n; ++c) {
        auto col = back_substitute(a, n, n + c);
        for (std::size_t i = 0; i < n; ++i) inv[i][c] = col[i];
    }
    return inv;
}

std::vector<Rat> solve_symmetric(const IntSymMatrix& m, const std::vector<Rat>& v)
{
    const std::size_t n = m.size();
    if (v.size() != n) throw DimensionMismatch("rhs has " + std::to_string(v.size()) +
                                               " entries, matrix is " + std::to_string(n));
    // Clear denominators so the elimination stays in Z.
    BigInt l = 1;
    for (const Rat& r : v) l = boost::multiprecision::lcm(l, BigInt(mp::denominator(r)));
    auto a = augmented(m, 1);
    for (std::size_t i = 0; i < n; ++i) a[i][n] = mp::numerator(v[i] * Rat(l));
    bareiss(a, n);
    auto x = back_substitute(a, n, n);
    for (Rat& r : x) r /= Rat(l);
    return x;
}

RatMatrix multiply(const IntSymMatrix& m, const RatMatrix& x)
{
    const std::size_t n = m.size();
    if (x.size() != n) throw DimensionMismatch("matrix product dimension mismatch");
    const std::size_t k = n == 0 ? 0 : x[0].size();
    RatMatrix out(n, std::vector<Rat>(k));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < k; ++j)
            for (std::size_t t = 0; t < n; ++t) out[i][j] += Rat(m(i, t)) * x[t][j];
    return out;
}

std::vector<Rat> multiply(const IntSymMatrix& m, const std::vector<Rat>& x)
{
    const std::size_t n = m.size();
    if (x.size() != n) throw DimensionMismatch("matrix-vector dimension mismatch");
    std::vector<Rat> out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t t = 0; t < n; ++t) out[i] += Rat(m(i, t)) * x[t];
    return out;
}

} // namespace klab
