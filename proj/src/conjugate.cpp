#include "bnet/conjugate.hpp"

#include <cmath>

namespace bnet {

namespace {
void check_dims(const DirichletParams& prior, const CountVector& counts) {
  if (static_cast<std::size_t>(prior.dim()) != counts.size())
    throw Error("conjugate: dimension mismatch between prior and counts");
  for (double c : counts)
    if (c < 0.0) throw Error("conjugate: negative count");
}
}  // namespace

DirichletParams::DirichletParams(std::vector<double> a) : alpha(std::move(a)) {
  if (alpha.empty()) throw Error("DirichletParams: empty hyperparameter vector");
  for (double v : alpha)
    if (!(v > 0.0))
      throw Error("DirichletParams: hyperparameters must be strictly positive");
}

double DirichletParams::total() const {
  double t = 0.0;
  for (double v : alpha) t += v;
  return t;
}

DirichletParams update(const DirichletParams& prior, const CountVector& counts) {
  check_dims(prior, counts);
  std::vector<double> post(prior.alpha);
  for (std::size_t k = 0; k < counts.size(); ++k) post[k] += counts[k];
  return DirichletParams(std::move(post));
}

std::vector<double> predictive(const DirichletParams& prior,
                               const CountVector& counts) {
  check_dims(prior, counts);
  double n = 0.0;
  for (double c : counts) n += c;
  const double denom = prior.total() + n;
  std::vector<double> p(counts.size());
  for (std::size_t k = 0; k < counts.size(); ++k)
    p[k] = (prior.alpha[k] + counts[k]) / denom;
  return p;
}

double log_marginal_likelihood(const DirichletParams& prior,
                               const CountVector& counts) {
  check_dims(prior, counts);
  double n = 0.0;
  for (double c : counts) n += c;
  const double a = prior.total();
  double log_ml = std::lgamma(a) - std::lgamma(a + n);
  for (std::size_t k = 0; k < counts.size(); ++k)
    log_ml += std::lgamma(prior.alpha[k] + counts[k]) - std::lgamma(prior.alpha[k]);
  return log_ml;
}

std::pair<double, double> elicit_imagined_data(double p_first,
                                               double p_second_given_first) {
  if (!(p_first > 0.0 && p_first < 1.0))
    throw Error("elicit_imagined_data: p_first must lie strictly in (0,1)");
  if (!(p_second_given_first > p_first))
    throw Error("elicit_imagined_data: non-positive equivalent sample size "
                "(p_second must exceed p_first)");
  if (!(p_second_given_first < 1.0))
    throw Error("elicit_imagined_data: p_second must lie strictly below 1");
  // p1 = a/(a+b), p2 = (a+1)/(a+b+1)  =>  a+b = (1-p2)/(p2-p1).
  const double ess = (1.0 - p_second_given_first) /
                     (p_second_given_first - p_first);
  return {p_first * ess, (1.0 - p_first) * ess};
}

}  // namespace bnet
