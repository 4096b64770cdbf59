#include "fairshare/instances.hpp"

#include <limits>
#include <random>
#include <stdexcept>

namespace fairshare::instances {
namespace {

Rational rat(long num, long den = 1) {
  Rational r{mpz_class{num}, mpz_class{den}};
  r.canonicalize();
  return r;
}

void require_positive(const std::vector<long>& a) {
  if (a.empty()) throw std::invalid_argument("need at least one number");
  for (long x : a) {
    if (x <= 0) throw std::invalid_argument("numbers must be positive integers");
  }
}

// Uniform draw from [0, span) without modulo bias.
std::uint64_t bounded(std::mt19937_64& engine, std::uint64_t span) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t x;
  do {
    x = engine();
  } while (x >= limit);
  return x % span;
}

}  // namespace

Instance identical_partition(const std::vector<long>& a) {
  require_positive(a);
  RationalMatrix v(2, a.size());
  for (std::size_t o = 0; o < a.size(); ++o) v(0, o) = v(1, o) = rat(a[o]);
  return Instance(std::move(v));
}

Instance perturbed_partition(const std::vector<long>& a) {
  require_positive(a);
  const long m = static_cast<long>(a.size());
  RationalMatrix v(2, a.size());
  Rational perturbation_sum = 0;
  for (long o = 1; o <= m; ++o) {
    const Rational b = rat(o, 3 * m * (o + 1));
    perturbation_sum += b;
    v(0, o - 1) = rat(a[o - 1]);
    v(1, o - 1) = rat(a[o - 1]) + b;
  }
  if (perturbation_sum >= Rational(1, 2)) throw std::logic_error("perturbations must sum below 1/2");
  Instance inst(std::move(v), {"Alice", "Bob"});
  if (degeneracy(inst) != 0) {
    throw std::invalid_argument("perturbation o/(3m(o+1)) makes these numbers degenerate");
  }
  return inst;
}

Instance degeneracy_family(const std::vector<long>& a, std::size_t m) {
  require_positive(a);
  if (m < a.size() || (m - a.size()) % 2 != 0) {
    throw std::invalid_argument("m - |a| must be a nonnegative even number");
  }
  RationalMatrix v(2, m);
  for (std::size_t o = 0; o < a.size(); ++o) v(0, o) = v(1, o) = rat(a[o]);
  const long lm = static_cast<long>(m);
  Rational small_sum = 0;
  for (std::size_t k = 1, o = a.size(); o < m; ++k, o += 2) {
    const long lk = static_cast<long>(k);
    const Rational high = rat(lk + 1, 4 * lm * lk);
    const Rational low = rat(1, 4 * lm * lk);
    v(0, o) = high;
    v(1, o) = low;
    v(0, o + 1) = low;
    v(1, o + 1) = high;
    small_sum += high + low;
  }
  if (small_sum >= Rational(1, 2)) throw std::logic_error("small goods must sum below 1/2");
  Instance inst(std::move(v));
  if (degeneracy(inst) != a.size() - 1) throw std::logic_error("degeneracy family has the wrong degeneracy");
  return inst;
}

Instance consensus_tightness(std::size_t n) {
  if (n < 2) throw std::invalid_argument("need at least two agents");
  const std::size_t m = n * (n - 1);
  const long ln = static_cast<long>(n);
  RationalMatrix v(n, m, rat(1, 2 * (ln - 1)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t o = i * (n - 1); o < (i + 1) * (n - 1); ++o) v(i, o) = rat(2 * ln - 1, 2);
  }
  Instance inst(std::move(v));
  for (std::size_t i = 0; i < n; ++i) {
    if (inst.total_value(i) != Rational(static_cast<unsigned long>(m))) throw std::logic_error("row sum is not n(n-1)");
  }
  return inst;
}

Instance fig1_left() {
  RationalMatrix v(2, 3);
  v(0, 0) = 4, v(0, 1) = rat(5, 2), v(0, 2) = 1;
  v(1, 0) = rat(5, 4), v(1, 1) = 2, v(1, 2) = 5;
  return Instance(std::move(v), {"Alice", "Bob"}, {"farm", "house", "car"});
}

Instance fig1_right() {
  RationalMatrix v = fig1_left().values();
  v(0, 1) = 25;
  return Instance(std::move(v), {"Alice", "Bob"}, {"farm", "house", "car"});
}

Allocation fig1_allocation() {
  RationalMatrix z(2, 3, Rational(0));
  z(0, 0) = 1;
  z(0, 1) = z(1, 1) = rat(1, 2);
  z(1, 2) = 1;
  return Allocation(std::move(z));
}

Instance identical_goods(std::size_t n) {
  if (n < 2) throw std::invalid_argument("need at least two agents");
  return Instance(RationalMatrix(n, n - 1, Rational(1)));
}

NamedFixture fixture(const std::string& name, std::size_t n) {
  if (name == "fig1_left") return {fig1_left(), fig1_allocation()};
  if (name == "fig1_right") return {fig1_right(), fig1_allocation()};
  if (name == "identical_goods") return {identical_goods(n), std::nullopt};
  throw std::invalid_argument("unknown fixture '" + name + "'");
}

Instance random(std::size_t n, std::size_t m, std::uint64_t seed, long low, long high) {
  if (low > high) throw std::invalid_argument("empty value range");
  std::mt19937_64 engine(seed);
  const auto span = static_cast<std::uint64_t>(high - low) + 1;
  RationalMatrix v(n, m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t o = 0; o < m; ++o) v(i, o) = rat(low + static_cast<long>(bounded(engine, span)));
  }
  return Instance(std::move(v));
}

}  // namespace fairshare::instances
