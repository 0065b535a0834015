#include "betadim/markov.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "betadim/expansion.hpp"

namespace betadim {

double phi(double x) {
  if (x < 0.0) throw std::domain_error("phi: negative argument");
  if (x == 0.0) return 0.0;
  return -x * std::log(x);
}

unsigned word_bits(const DigitWord& w) {
  if (w.size() > 31) throw std::invalid_argument("word_bits: word too long");
  unsigned b = 0;
  for (std::uint8_t d : w.digits) {
    if (d > 1) throw std::invalid_argument("word_bits: digit beyond {0,1}");
    b = (b << 1) | unsigned(d);
  }
  return b;
}

DigitWord bits_word(int len, unsigned bits) {
  DigitWord w;
  w.digits.reserve(static_cast<std::size_t>(len));
  for (int i = len - 1; i >= 0; --i) w.push_back(int((bits >> i) & 1u));
  return w;
}

CylinderMeasure::CylinderMeasure(int L) : max_order(L) {
  if (L < 0 || L > 24) throw std::invalid_argument("CylinderMeasure: bad order");
  level.resize(static_cast<std::size_t>(L) + 1);
  for (int j = 0; j <= L; ++j)
    level[static_cast<std::size_t>(j)].assign(1u << j, 0.0);
  level[0][0] = 1.0;
}

double CylinderMeasure::mass(const DigitWord& w) const {
  int len = static_cast<int>(w.size());
  if (len > max_order) throw std::out_of_range("CylinderMeasure::mass: word too long");
  return level[static_cast<std::size_t>(len)][word_bits(w)];
}

void CylinderMeasure::set(const DigitWord& w, double v) {
  int len = static_cast<int>(w.size());
  if (len > max_order) throw std::out_of_range("CylinderMeasure::set: word too long");
  level[static_cast<std::size_t>(len)][word_bits(w)] = v;
}

CylinderMeasure CylinderMeasure::bernoulli(double p0, int L) {
  if (!(p0 >= 0.0 && p0 <= 1.0))
    throw std::domain_error("bernoulli: p0 outside [0,1]");
  CylinderMeasure cm(L);
  for (int j = 1; j <= L; ++j) {
    for (unsigned bits = 0; bits < (1u << j); ++bits) {
      int ones = __builtin_popcount(bits);
      cm.level[static_cast<std::size_t>(j)][bits] =
          std::pow(p0, j - ones) * std::pow(1.0 - p0, ones);
    }
  }
  return cm;
}

double MeasureDiagnostics::worst() const {
  return std::max(std::max(additivity_residual, shift_residual),
                  std::max(support_violation, norm_residual));
}

MeasureDiagnostics validate_cylinder_measure(const CylinderMeasure& cm,
                                             const BetaSystem& sys) {
  MeasureDiagnostics d;
  d.norm_residual = std::fabs(cm.level[0][0] - 1.0);
  for (int j = 0; j < cm.max_order; ++j) {
    const auto& cur = cm.level[static_cast<std::size_t>(j)];
    const auto& nxt = cm.level[static_cast<std::size_t>(j) + 1];
    for (unsigned bits = 0; bits < (1u << j); ++bits) {
      double add = nxt[bits << 1] + nxt[(bits << 1) | 1u] - cur[bits];
      double shf = nxt[bits] + nxt[bits | (1u << j)] - cur[bits];
      d.additivity_residual = std::max(d.additivity_residual, std::fabs(add));
      d.shift_residual = std::max(d.shift_residual, std::fabs(shf));
    }
  }
  for (int j = 1; j <= cm.max_order; ++j) {
    for (unsigned bits = 0; bits < (1u << j); ++bits) {
      double v = cm.level[static_cast<std::size_t>(j)][bits];
      if (v > 0.0 && !is_legal_word(bits_word(j, bits), sys))
        d.support_violation = std::max(d.support_violation, v);
    }
  }
  return d;
}

MarkovMeasure markovize(const CylinderMeasure& cm, int m) {
  if (m < 2) throw std::invalid_argument("markovize: order must be >= 2");
  if (cm.max_order < m)
    throw std::invalid_argument("markovize: measure shallower than m");
  MarkovMeasure mu;
  mu.order = m - 1;
  unsigned ns = 1u << (m - 1);
  mu.p.assign(ns, 0.0);
  mu.step.assign(ns, {0.0, 0.0});
  for (unsigned s = 0; s < ns; ++s) {
    double ps = cm.mass_bits(m - 1, s);
    mu.p[s] = std::max(ps, 0.0);
    if (ps > 0.0) {
      for (int dd = 0; dd <= 1; ++dd)
        mu.step[s][static_cast<std::size_t>(dd)] =
            std::max(cm.mass_bits(m, (s << 1) | unsigned(dd)), 0.0) / ps;
    } else {
      // zero-mass row: deterministic 0-continuation keeps pP = p
      mu.step[s][0] = 1.0;
      mu.step[s][1] = 0.0;
    }
  }
  return mu;
}

double measure_of_word(const MarkovMeasure& mu, const DigitWord& w) {
  int k = mu.order;
  int len = static_cast<int>(w.size());
  if (len <= k) {
    // marginal: sum p over all states extending w; big-endian codes make
    // those a contiguous block
    unsigned lo = word_bits(w) << (k - len);
    unsigned hi = lo + (1u << (k - len));
    double s = 0.0;
    for (unsigned st = lo; st < hi; ++st) s += mu.p[st];
    return s;
  }
  unsigned s = word_bits(w.prefix(static_cast<std::size_t>(k)));
  double val = mu.p[s];
  for (int i = k; i < len && val != 0.0; ++i) {
    int d = w.digits[static_cast<std::size_t>(i)];
    val *= mu.step[s][static_cast<std::size_t>(d)];
    s = mu.next_state(s, d);
  }
  return val;
}

double markov_entropy(const MarkovMeasure& mu) {
  double h = 0.0;
  for (unsigned s = 0; s < unsigned(mu.n_states()); ++s) {
    if (mu.p[s] <= 0.0) continue;
    for (int d = 0; d <= 1; ++d) {
      double q = mu.step[s][static_cast<std::size_t>(d)];
      if (q > 0.0) h -= mu.p[s] * q * std::log(q);
    }
  }
  return h;
}

double stationarity_residual(const MarkovMeasure& mu) {
  unsigned ns = unsigned(mu.n_states());
  std::vector<double> acc(ns, 0.0);
  double rowsum = 0.0;
  for (unsigned s = 0; s < ns; ++s) {
    acc[mu.next_state(s, 0)] += mu.p[s] * mu.step[s][0];
    acc[mu.next_state(s, 1)] += mu.p[s] * mu.step[s][1];
    rowsum = std::max(rowsum, std::fabs(mu.step[s][0] + mu.step[s][1] - 1.0));
  }
  double res = 0.0;
  for (unsigned s = 0; s < ns; ++s)
    res = std::max(res, std::fabs(acc[s] - mu.p[s]));
  return std::max(res, rowsum);
}

double conditional_entropy(const CylinderMeasure& cm, int m) {
  if (m < 1 || cm.max_order < m)
    throw std::invalid_argument("conditional_entropy: bad order");
  double hm = 0.0, hm1 = 0.0;
  for (double v : cm.level[static_cast<std::size_t>(m)]) hm += phi(std::max(v, 0.0));
  for (double v : cm.level[static_cast<std::size_t>(m) - 1]) hm1 += phi(std::max(v, 0.0));
  return hm - hm1;
}

CylinderMeasure build_max_cylinder_measure(int m, double a,
                                           const std::vector<double>& y) {
  if (m < 2 || m > 12)
    throw std::invalid_argument("build_max_cylinder_measure: order outside [2,12]");
  if (static_cast<int>(y.size()) != m - 2)
    throw std::invalid_argument("build_max_cylinder_measure: need m-2 parameters");
  if (!(a >= 0.0 && a <= 1.0))
    throw std::domain_error("build_max_cylinder_measure: a outside [0,1]");

  constexpr double kNegTol = 1e-12;
  auto checked = [](double v) {
    if (v < -kNegTol)
      throw std::domain_error(
          "build_max_cylinder_measure: parameters outside the feasible set");
    return std::max(v, 0.0);
  };

  CylinderMeasure cm(m);
  cm.level[1][0] = checked(a);
  cm.level[1][1] = checked(1.0 - a);

  if (m == 2) {
    cm.level[2][0b00] = checked(2.0 * a - 1.0);
    cm.level[2][0b01] = checked(1.0 - a);
    cm.level[2][0b10] = checked(1.0 - a);
    cm.level[2][0b11] = 0.0;
    return cm;
  }

  cm.level[2][0b00] = checked(a - y[0]);
  cm.level[2][0b01] = checked(y[0]);
  cm.level[2][0b10] = checked(y[0]);
  cm.level[2][0b11] = checked(1.0 - a - y[0]);

  double ysum = 0.0;  // running y_1 + ... + y_j
  for (int i = 0; i < m - 2; ++i) ysum += y[static_cast<std::size_t>(i)];

  for (int L = 3; L <= m; ++L) {
    int j = L - 1;
    auto& lev = cm.level[static_cast<std::size_t>(L)];
    // words whose interior digits 2..L-1 are all ones carry the table
    // values; everything else extends by conditional independence on the
    // (L-2)-digit interior: mass(x) = mass(prefix) mass(suffix) / mass(mid)
    unsigned ones_mid = ((1u << (L - 2)) - 1u) << 1;  // pattern ?1...1?
    for (unsigned bits = 0; bits < (1u << L); ++bits) {
      bool head = (bits >> (L - 1)) & 1u;
      bool tail = bits & 1u;
      if ((bits & ones_mid) == ones_mid) {
        double v;
        if (j <= m - 2) {
          double partial = 0.0;
          for (int i = 0; i < j; ++i) partial += y[static_cast<std::size_t>(i)];
          if (!head && !tail)       // 0 1^{j-1} 0
            v = y[static_cast<std::size_t>(j - 2)] - y[static_cast<std::size_t>(j - 1)];
          else if (head && tail)    // 1^{j+1}
            v = 1.0 - a - partial;
          else                      // 0 1^j or 1^j 0
            v = y[static_cast<std::size_t>(j - 1)];
        } else {  // L == m
          if (!head && !tail)       // 0 1^{m-2} 0
            v = (ysum - y[static_cast<std::size_t>(m - 3)]) +
                2.0 * y[static_cast<std::size_t>(m - 3)] + a - 1.0;
          else if (head && tail)    // 1^m
            v = 0.0;
          else                      // 0 1^{m-1} or 1^{m-1} 0
            v = 1.0 - a - ysum;
        }
        lev[bits] = checked(v);
      } else {
        const auto& prev = cm.level[static_cast<std::size_t>(L) - 1];
        const auto& mid = cm.level[static_cast<std::size_t>(L) - 2];
        double den = mid[(bits >> 1) & ((1u << (L - 2)) - 1u)];
        double num = prev[bits >> 1] * prev[bits & ((1u << (L - 1)) - 1u)];
        lev[bits] = den > 0.0 ? num / den : 0.0;
      }
    }
  }
  return cm;
}

MarkovMeasure build_max_measure(int m, double a, const std::vector<double>& y) {
  return markovize(build_max_cylinder_measure(m, a, y), m);
}

std::string markov_to_json(const MarkovMeasure& mu) {
  if (mu.order < 1)
    throw std::invalid_argument("markov_to_json: order must be >= 1");
  nlohmann::json j;
  j["order"] = mu.order;
  unsigned ns = unsigned(mu.n_states());
  nlohmann::json states = nlohmann::json::array();
  for (unsigned s = 0; s < ns; ++s)
    states.push_back(bits_word(mu.order, s).str());
  j["states"] = states;
  nlohmann::json p = nlohmann::json::object();
  nlohmann::json P = nlohmann::json::object();
  for (unsigned s = 0; s < ns; ++s) {
    std::string name = bits_word(mu.order, s).str();
    p[name] = mu.p[s];
    nlohmann::json row = nlohmann::json::object();
    for (int d = 0; d <= 1; ++d)
      row[bits_word(mu.order, mu.next_state(s, d)).str()] =
          mu.step[s][static_cast<std::size_t>(d)];
    P[name] = row;
  }
  j["p"] = p;
  j["P"] = P;
  return j.dump(2);
}

MarkovMeasure markov_from_json(const std::string& text) {
  MarkovMeasure mu;
  try {
    nlohmann::json j = nlohmann::json::parse(text);
    mu.order = j.at("order").get<int>();
    if (mu.order < 1 || mu.order > 20)
      throw std::invalid_argument("markov_from_json: order outside [1,20]");
    unsigned ns = 1u << mu.order;
    mu.p.assign(ns, 0.0);
    mu.step.assign(ns, {0.0, 0.0});
    for (auto& [name, val] : j.at("p").items()) {
      DigitWord w = DigitWord::parse(name);
      if (static_cast<int>(w.size()) != mu.order)
        throw std::invalid_argument("markov_from_json: state of wrong length");
      mu.p[word_bits(w)] = val.get<double>();
    }
    for (auto& [name, row] : j.at("P").items()) {
      DigitWord w = DigitWord::parse(name);
      if (static_cast<int>(w.size()) != mu.order)
        throw std::invalid_argument("markov_from_json: state of wrong length");
      unsigned s = word_bits(w);
      for (auto& [tname, tval] : row.items()) {
        unsigned t = word_bits(DigitWord::parse(tname));
        double v = tval.get<double>();
        if (mu.next_state(s, 0) == t)
          mu.step[s][0] = v;
        else if (mu.next_state(s, 1) == t)
          mu.step[s][1] = v;
        else if (v != 0.0)
          throw std::invalid_argument(
              "markov_from_json: nonzero entry without window overlap");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("markov_from_json: ") + e.what());
  }
  return mu;
}

}  // namespace betadim
