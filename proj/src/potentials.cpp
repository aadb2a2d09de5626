#include "kglpt/potentials.hpp"

#include <sstream>

namespace kglpt {

void HulthenParams::validate() const
{
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        std::ostringstream msg;
        msg << "screening parameter must be positive, got lambda = " << lambda;
        throw Error(ErrorKind::InvalidArgument, msg.str());
    }
    if (!(a >= 0.0) || !(b >= 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
        throw Error(ErrorKind::InvalidArgument, "Hulthen couplings a, b must be finite and >= 0");
    }
}

PotentialFunction::PotentialFunction(Evaluator vector_part, Evaluator scalar_part)
  : v_(std::move(vector_part))
  , w_(std::move(scalar_part))
{
}

namespace {

void require_positive_radius(double r)
{
    if (!(r > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "potential evaluated at r <= 0");
    }
}

// x / (e^x - 1) through x^8: 1 - x/2 + x^2/12 - x^4/720 + x^6/30240 - x^8/1209600
double bernoulli_ratio(double x)
{
    const double x2 = x * x;
    return 1.0 - 0.5 * x
           + x2 * (1.0 / 12.0 + x2 * (-1.0 / 720.0 + x2 * (1.0 / 30240.0 - x2 / 1209600.0)));
}

} // namespace

double PotentialFunction::v(double r) const
{
    require_positive_radius(r);
    return v_(r);
}

double PotentialFunction::w(double r) const
{
    require_positive_radius(r);
    return w_(r);
}

PotentialFunction hulthen_closed_form(const HulthenParams& p, double series_threshold)
{
    p.validate();
    const double lambda = p.lambda;
    auto shape = [lambda, series_threshold](double r) {
        const double x = lambda * r;
        if (x < series_threshold) {
            return -bernoulli_ratio(x) / r;
        }
        return -lambda / std::expm1(x);
    };
    const double a = p.a;
    const double b = p.b;
    return {[a, shape](double r) { return a * shape(r); },
            [b, shape](double r) { return b * shape(r); }};
}

PotentialFunction coulomb_closed_form(double v0, double w0)
{
    return {[v0](double r) { return v0 / r; }, [w0](double r) { return w0 / r; }};
}

} // namespace kglpt
