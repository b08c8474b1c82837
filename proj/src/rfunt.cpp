#include "ffcount/rfunt.hpp"

#include "ffcount/errors.hpp"

namespace ffcount {

RFunT::RFunT(UPoly num, UPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw Error(ErrorCode::InvalidArgument, "rational function with zero denominator");
  normalize();
}

void RFunT::normalize() {
  if (num_.is_zero()) {
    den_ = UPoly::constant(Rat(1));
    return;
  }
  UPoly g = gcd(num_, den_);
  if (g.degree() > 0) {
    num_ = divmod(num_, g).first;
    den_ = divmod(den_, g).first;
  }
  Rat lc = den_.leading();
  if (lc != 1) {
    Rat inv = 1 / lc;
    num_ *= inv;
    den_ *= inv;
  }
}

Rat RFunT::operator()(const Rat& tau) const {
  Rat d = den_(tau);
  if (sgn(d) == 0) throw Error(ErrorCode::InvalidArgument, "evaluation at a pole");
  return num_(tau) / d;
}

RFunT& RFunT::operator+=(const RFunT& o) {
  if (den_ == o.den_) {
    num_ += o.num_;
  } else {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ *= o.den_;
  }
  normalize();
  return *this;
}

RFunT& RFunT::operator-=(const RFunT& o) { return *this += -o; }

RFunT& RFunT::operator*=(const RFunT& o) {
  num_ *= o.num_;
  den_ *= o.den_;
  normalize();
  return *this;
}

RFunT& RFunT::operator/=(const RFunT& o) {
  if (o.is_zero()) throw Error(ErrorCode::InvalidArgument, "division by zero in Q(t)");
  num_ *= o.den_;
  den_ *= o.num_;
  normalize();
  return *this;
}

RFunT RFunT::operator-() const {
  RFunT r = *this;
  r.num_ = -r.num_;
  return r;
}

std::string RFunT::to_string() const {
  if (is_polynomial()) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

}  // namespace ffcount
