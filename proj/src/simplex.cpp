#include "theta_ran/simplex.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <limits>
#include <sstream>

#include "theta_ran/error.hpp"

namespace theta_ran {

MonotoneMap::MonotoneMap(int target_rank, std::vector<int> values)
    : target_rank_(target_rank), values_(std::move(values)) {
  if (target_rank_ < 0) throw InvalidArgument("monotone map: negative target rank");
  if (values_.empty()) throw InvalidArgument("monotone map: needs at least one value");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] < 0 || values_[i] > target_rank_) {
      throw InvalidArgument("monotone map: value " + std::to_string(values_[i]) +
                            " outside [0," + std::to_string(target_rank_) + "]");
    }
    if (i > 0 && values_[i] < values_[i - 1]) {
      throw InvalidArgument("monotone map: values not weakly increasing in " + to_string());
    }
  }
}

MonotoneMap MonotoneMap::identity(int rank) {
  std::vector<int> v(static_cast<std::size_t>(rank) + 1);
  for (int i = 0; i <= rank; ++i) v[static_cast<std::size_t>(i)] = i;
  return MonotoneMap(rank, std::move(v));
}

MonotoneMap MonotoneMap::constant(int source_rank, int target_rank, int value) {
  return MonotoneMap(target_rank, std::vector<int>(static_cast<std::size_t>(source_rank) + 1, value));
}

std::string MonotoneMap::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(values_[i]);
  }
  return out + ")";
}

MonotoneMap MonotoneMap::parse(std::string_view text, int target_rank) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text.size() < 2 || text.front() != '(' || text.back() != ')') {
    throw ParseError("monotone map: expected \"(v0,...,vp)\", got \"" + std::string(text) + "\"");
  }
  text = text.substr(1, text.size() - 2);
  std::vector<int> values;
  while (true) {
    auto comma = text.find(',');
    auto token = trim(text.substr(0, comma));
    int v = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc() || ptr != token.data() + token.size() || token.empty()) {
      throw ParseError("monotone map: bad value \"" + std::string(token) + "\"");
    }
    values.push_back(v);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return MonotoneMap(target_rank, std::move(values));
}

PointedMap::PointedMap(int target_size, std::vector<std::optional<int>> assignment)
    : target_size_(target_size), assignment_(std::move(assignment)) {
  for (const auto& a : assignment_) {
    if (a && (*a < 1 || *a > target_size_)) {
      throw InvalidArgument("pointed map: value " + std::to_string(*a) + " outside {1.." +
                            std::to_string(target_size_) + "}");
    }
  }
}

PointedMap PointedMap::identity(int size) {
  std::vector<std::optional<int>> a(static_cast<std::size_t>(size));
  for (int i = 0; i < size; ++i) a[static_cast<std::size_t>(i)] = i + 1;
  return PointedMap(size, std::move(a));
}

bool PointedMap::is_total() const {
  return std::all_of(assignment_.begin(), assignment_.end(), [](const auto& a) { return a.has_value(); });
}

bool PointedMap::is_injective() const {
  std::vector<char> seen(static_cast<std::size_t>(target_size_) + 1, 0);
  for (const auto& a : assignment_) {
    if (!a) continue;
    if (seen[static_cast<std::size_t>(*a)]) return false;
    seen[static_cast<std::size_t>(*a)] = 1;
  }
  return true;
}

bool PointedMap::is_surjective() const {
  std::vector<char> seen(static_cast<std::size_t>(target_size_) + 1, 0);
  for (const auto& a : assignment_) {
    if (a) seen[static_cast<std::size_t>(*a)] = 1;
  }
  return std::all_of(seen.begin() + 1, seen.end(), [](char c) { return c != 0; });
}

std::string PointedMap::to_string() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t x = 0; x < assignment_.size(); ++x) {
    if (x) os << ", ";
    os << x + 1 << "->";
    if (assignment_[x]) {
      os << *assignment_[x];
    } else {
      os << '*';
    }
  }
  os << '}';
  return os.str();
}

PointedMap compose(const PointedMap& after, const PointedMap& before) {
  if (before.target_size() != after.source_size()) {
    throw CompositionError("pointed maps: size mismatch " + std::to_string(before.target_size()) +
                           " vs " + std::to_string(after.source_size()));
  }
  std::vector<std::optional<int>> out(static_cast<std::size_t>(before.source_size()));
  for (int x = 1; x <= before.source_size(); ++x) {
    if (auto y = before(x)) out[static_cast<std::size_t>(x - 1)] = after(*y);
  }
  return PointedMap(after.target_size(), std::move(out));
}

MonotoneMap compose_delta(const MonotoneMap& g, const MonotoneMap& f) {
  if (f.target_rank() != g.source_rank()) {
    throw CompositionError("compose_delta: " + f.to_string() + " lands in [" +
                           std::to_string(f.target_rank()) + "] but " + g.to_string() +
                           " starts at [" + std::to_string(g.source_rank()) + "]");
  }
  std::vector<int> v(f.values().size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = g(f.values()[i]);
  return MonotoneMap(g.target_rank(), std::move(v));
}

namespace {

void enumerate_from(int pos, int low, int p, int q, bool active, std::vector<int>& cur,
                    std::vector<MonotoneMap>& out) {
  if (pos > p) {
    if (!active || cur.back() == q) out.emplace_back(q, cur);
    return;
  }
  int lo = low;
  int hi = q;
  if (active && pos == 0) hi = 0;
  if (active && pos == p) lo = std::max(lo, q);
  for (int v = lo; v <= hi; ++v) {
    cur[static_cast<std::size_t>(pos)] = v;
    enumerate_from(pos + 1, v, p, q, active, cur, out);
  }
}

unsigned long long saturating_binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (r > std::numeric_limits<unsigned long long>::max()) {
      return std::numeric_limits<unsigned long long>::max();
    }
  }
  return static_cast<unsigned long long>(r);
}

}  // namespace

std::vector<MonotoneMap> enumerate_delta_hom(int p, int q, bool active_only) {
  if (p < 0 || q < 0) throw InvalidArgument("enumerate_delta_hom: negative rank");
  std::vector<MonotoneMap> out;
  std::vector<int> cur(static_cast<std::size_t>(p) + 1, 0);
  enumerate_from(0, 0, p, q, active_only, cur, out);
  return out;
}

unsigned long long count_delta_hom(int p, int q, bool active_only) {
  if (!active_only) return saturating_binomial(p + q + 1, p + 1);
  if (p == 0) return q == 0 ? 1 : 0;
  // f(1..p-1) weakly increasing in [0, q]
  return saturating_binomial(p - 1 + q, p - 1);
}

PointedMap simplicial_circle(const MonotoneMap& f) {
  const int p = f.source_rank();
  const int q = f.target_rank();
  std::vector<std::optional<int>> a(static_cast<std::size_t>(q));
  for (int i = 1; i <= p; ++i) {
    for (int j = f(i - 1) + 1; j <= f(i); ++j) a[static_cast<std::size_t>(j - 1)] = i;
  }
  return PointedMap(p, std::move(a));
}

bool is_active_delta(const MonotoneMap& f) { return simplicial_circle(f).is_total(); }

}  // namespace theta_ran
