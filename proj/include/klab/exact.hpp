#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <initializer_list>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace klab {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

Rat make_rat(long long p, long long q = 1);
/// "p/q", with "/q" dropped when q == 1.
std::string to_string(const Rat& r);
Rat parse_rat(std::string_view s);
double to_double(const Rat& r);

/// a + b*pi with pi treated as transcendental.
struct PiLinear {
    Rat rat{0};
    Rat pi{0};

    PiLinear() = default;
    PiLinear(Rat a, Rat b = Rat(0)) : rat(std::move(a)), pi(std::move(b)) {}
    PiLinear(int a) : rat(a) {}

    bool is_zero() const { return rat == 0 && pi == 0; }

    PiLinear& operator+=(const PiLinear& o);
    PiLinear& operator-=(const PiLinear& o);
    PiLinear& operator*=(const Rat& k);
    friend bool operator==(const PiLinear&, const PiLinear&) = default;
};

PiLinear operator+(PiLinear a, const PiLinear& b);
PiLinear operator-(PiLinear a, const PiLinear& b);
PiLinear operator-(PiLinear a);
PiLinear operator*(PiLinear a, const Rat& k);
PiLinear operator*(const Rat& k, PiLinear a);

double pi_linear_eval(const PiLinear& x, double pi_approx);
std::string to_string(const PiLinear& x);

/// Polynomial in pi with rational coefficients, c[k] multiplies pi^k.
class PiPoly {
public:
    PiPoly() = default;
    PiPoly(const Rat& c0);
    PiPoly(const PiLinear& x);
    explicit PiPoly(std::vector<Rat> coeffs);

    const std::vector<Rat>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    double eval(double pi_approx) const;

    PiPoly& operator+=(const PiPoly& o);
    PiPoly& operator-=(const PiPoly& o);
    friend PiPoly operator+(PiPoly a, const PiPoly& b) { return a += b; }
    friend PiPoly operator-(PiPoly a, const PiPoly& b) { return a -= b; }
    friend PiPoly operator*(const PiPoly& a, const PiPoly& b);
    friend bool operator==(const PiPoly&, const PiPoly&) = default;

private:
    void trim();
    std::vector<Rat> c_;
};

/// Rational enclosure lo < pi < hi from the Machin series truncated after `terms` terms.
std::pair<Rat, Rat> pi_bounds(int terms);

/// Exact sign of a polynomial evaluated at pi (refines the enclosure until decided).
int sign_at_pi(const PiPoly& p);
inline int sign_at_pi(const PiLinear& x) { return sign_at_pi(PiPoly(x)); }

/// Element of Q(pi) held as num/den; never divided out.
struct PiRatio {
    PiPoly num;
    PiPoly den{Rat(1)};

    double eval(double pi_approx) const { return num.eval(pi_approx) / den.eval(pi_approx); }
    int sign() const { return sign_at_pi(num) * sign_at_pi(den); }
};

bool operator==(const PiRatio& a, const PiRatio& b);
PiRatio operator*(const PiRatio& a, const PiRatio& b);
PiRatio operator-(const PiRatio& a, const PiRatio& b);
/// a < b decided exactly.
bool less_at_pi(const PiRatio& a, const PiRatio& b);

class IntSymMatrix {
public:
    IntSymMatrix() = default;
    explicit IntSymMatrix(std::size_t n);
    IntSymMatrix(std::initializer_list<std::initializer_list<long long>> rows);

    std::size_t size() const { return n_; }
    const BigInt& operator()(std::size_t i, std::size_t j) const { return e_[i * n_ + j]; }
    /// Sets both (i,j) and (j,i).
    void set(std::size_t i, std::size_t j, const BigInt& v);

private:
    std::size_t n_ = 0;
    std::vector<BigInt> e_;
};

using RatMatrix = std::vector<std::vector<Rat>>;

BigInt determinant(const IntSymMatrix& m);
RatMatrix mat_inverse(const IntSymMatrix& m);
std::vector<Rat> solve_symmetric(const IntSymMatrix& m, const std::vector<Rat>& v);

RatMatrix multiply(const IntSymMatrix& m, const RatMatrix& x);
std::vector<Rat> multiply(const IntSymMatrix& m, const std::vector<Rat>& x);

} // namespace klab
