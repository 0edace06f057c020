#include "depsent/harness.hpp"

namespace depsent {

void Confusion::add(Polarity gold, Polarity predicted) {
  const bool g = gold == Polarity::Positive;
  const bool p = predicted == Polarity::Positive;
  if (g && p) {
    ++tp;
  } else if (!g && p) {
    ++fp;
  } else if (g) {
    ++fn;
  } else {
    ++tn;
  }
}

namespace {

double ratio(std::size_t num, std::size_t den, bool& undefined) {
  undefined = den == 0;
  return undefined ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

double f1(double p, double r, bool& undefined) {
  undefined = p + r == 0.0;
  return undefined ? 0.0 : 2.0 * p * r / (p + r);
}

}  // namespace

Metrics compute_metrics(const Confusion& c) {
  if (c.total() == 0) throw EmptyError("confusion matrix is empty");
  Metrics m;
  m.precision = ratio(c.tp, c.tp + c.fp, m.precision_undefined);
  m.recall = ratio(c.tp, c.tp + c.fn, m.recall_undefined);
  m.f_measure = f1(m.precision, m.recall, m.f_undefined);
  m.accuracy = static_cast<double>(c.tp + c.tn) / static_cast<double>(c.total());

  bool unused = false;
  const double neg_p = ratio(c.tn, c.tn + c.fn, unused);
  const double neg_r = ratio(c.tn, c.tn + c.fp, unused);
  const double neg_f = f1(neg_p, neg_r, unused);
  m.macro_precision = (m.precision + neg_p) / 2.0;
  m.macro_recall = (m.recall + neg_r) / 2.0;
  m.macro_f_measure = (m.f_measure + neg_f) / 2.0;
  return m;
}

}  // namespace depsent
