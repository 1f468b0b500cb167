#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace k3fib {

using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

using IVec = std::vector<Int>;
using IMat = std::vector<IVec>;
using QVec = std::vector<Rat>;
using QMat = std::vector<QVec>;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// "p/q", or "p" when the denominator is one
std::string to_string(const Rat& r);
std::string to_string(const Int& z);

Int numer(const Rat& r);
Int denom(const Rat& r);
Int floor_div(const Rat& r);
Int floor_div(const Int& a, const Int& b);
Int mod_floor(const Int& a, const Int& m);
Int lcm(const Int& a, const Int& b);
Int gcd(const Int& a, const Int& b);
// representative in [0, m) for a positive rational modulus
Rat mod_rat(const Rat& r, const Rat& m);
bool fits_int64(const Int& z);

IMat identity(std::size_t n);
IMat zeros(std::size_t r, std::size_t c);
IMat transpose(const IMat& a);
IMat mul(const IMat& a, const IMat& b);
QMat mul(const QMat& a, const QMat& b);
IVec row_times(const IVec& x, const IMat& a);
QVec row_times(const QVec& x, const IMat& a);
QVec row_times(const QVec& x, const QMat& a);
Int dot(const IVec& a, const IVec& b);
Rat dot(const QVec& a, const QVec& b);
Int form(const IVec& x, const IMat& g, const IVec& y);
Rat form(const QVec& x, const IMat& g, const QVec& y);

QVec to_q(const IVec& v);
QMat to_q(const IMat& m);
// throws if any entry is non-integral
IVec to_int(const QVec& v);
IMat to_int(const QMat& m);
bool is_integral(const QVec& v);

IMat block_diag(const std::vector<IMat>& blocks);
// Gram matrix of the rows of b under g
IMat gram_of(const IMat& b, const IMat& g);

Int det(const IMat& a);  // fraction-free elimination
QMat inverse(const QMat& a);
std::size_t rank(const QMat& a);
std::size_t rank(const IMat& a);

bool is_symmetric(const IMat& a);

}  // namespace k3fib
