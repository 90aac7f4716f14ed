#include "tfact/permutation.hpp"

#include <cctype>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace tfact {

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  const int k = size();
  std::vector<char> seen(images_.size(), 0);
  for (int v : images_) {
    if (v < 0 || v >= k) {
      throw std::invalid_argument("permutation image " + std::to_string(v + 1) +
                                  " outside {1.." + std::to_string(k) + "}");
    }
    if (seen[static_cast<std::size_t>(v)]) {
      throw std::invalid_argument("permutation is not a bijection: image " +
                                  std::to_string(v + 1) + " repeated");
    }
    seen[static_cast<std::size_t>(v)] = 1;
  }
}

Permutation Permutation::identity(int k) {
  std::vector<int> images(static_cast<std::size_t>(k));
  std::iota(images.begin(), images.end(), 0);
  return Permutation(std::move(images));
}

Permutation Permutation::long_cycle(int k) {
  std::vector<int> images(static_cast<std::size_t>(k));
  for (int s = 0; s < k; ++s) images[static_cast<std::size_t>(s)] = (s + 1) % k;
  return Permutation(std::move(images));
}

Permutation Permutation::from_one_based(std::span<const int> images) {
  std::vector<int> zero_based;
  zero_based.reserve(images.size());
  for (int v : images) zero_based.push_back(v - 1);
  return Permutation(std::move(zero_based));
}

Permutation Permutation::parse_cycles(std::string_view text, int k) {
  if (k < 1) throw std::invalid_argument("cycle notation needs k >= 1");
  std::vector<int> images(static_cast<std::size_t>(k));
  std::iota(images.begin(), images.end(), 0);
  std::vector<char> used(static_cast<std::size_t>(k), 0);

  std::size_t pos = 0;
  while (pos < text.size()) {
    const char ch = text[pos];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++pos;
      continue;
    }
    if (ch != '(') throw std::invalid_argument("cycle notation: expected '(' in \"" + std::string(text) + "\"");
    const auto close = text.find(')', pos);
    if (close == std::string_view::npos) throw std::invalid_argument("cycle notation: unbalanced '('");
    const std::string_view body = text.substr(pos + 1, close - pos - 1);
    pos = close + 1;

    std::vector<int> cycle;
    const bool separated = body.find_first_of(" ,\t") != std::string_view::npos;
    if (separated) {
      std::string tmp(body);
      for (char& c : tmp)
        if (c == ',') c = ' ';
      std::istringstream in(tmp);
      int v;
      while (in >> v) cycle.push_back(v);
      if (!in.eof()) throw std::invalid_argument("cycle notation: bad token in \"" + std::string(body) + "\"");
    } else {
      for (char c : body) {
        if (!std::isdigit(static_cast<unsigned char>(c))) throw std::invalid_argument("cycle notation: bad character in \"" + std::string(body) + "\"");
      }
      if (k <= 9) {
        for (char c : body) cycle.push_back(c - '0');
      } else if (!body.empty()) {
        // Without separators a k > 9 body can only be a single element.
        cycle.push_back(std::stoi(std::string(body)));
      }
    }
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      const int v = cycle[i] - 1;
      if (v < 0 || v >= k) throw std::invalid_argument("cycle notation: element " + std::to_string(cycle[i]) + " outside {1.." + std::to_string(k) + "}");
      if (used[static_cast<std::size_t>(v)]) throw std::invalid_argument("cycle notation: element " + std::to_string(cycle[i]) + " repeated");
      used[static_cast<std::size_t>(v)] = 1;
      images[static_cast<std::size_t>(v)] = cycle[(i + 1) % cycle.size()] - 1;
    }
  }
  return Permutation(std::move(images));
}

std::vector<int> Permutation::one_based() const {
  std::vector<int> out(images_);
  for (int& v : out) ++v;
  return out;
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(images_.size());
  for (std::size_t s = 0; s < images_.size(); ++s) inv[static_cast<std::size_t>(images_[s])] = static_cast<int>(s);
  Permutation out;
  out.images_ = std::move(inv);
  return out;
}

Permutation Permutation::operator*(const Permutation& rhs) const {
  if (rhs.size() != size()) throw std::invalid_argument("composing permutations of different degree");
  std::vector<int> out(images_.size());
  for (std::size_t s = 0; s < images_.size(); ++s) out[s] = images_[static_cast<std::size_t>(rhs.images_[s])];
  Permutation p;
  p.images_ = std::move(out);
  return p;
}

int Permutation::cycle_count() const {
  std::vector<char> seen(images_.size(), 0);
  int cycles = 0;
  for (std::size_t s = 0; s < images_.size(); ++s) {
    if (seen[s]) continue;
    ++cycles;
    for (std::size_t t = s; !seen[t]; t = static_cast<std::size_t>(images_[t])) seen[t] = 1;
  }
  return cycles;
}

bool Permutation::is_identity() const {
  for (std::size_t s = 0; s < images_.size(); ++s)
    if (images_[s] != static_cast<int>(s)) return false;
  return true;
}

Permutation Permutation::with_swapped_images(int s1, int s2) const {
  Permutation p(*this);
  std::swap(p.images_[static_cast<std::size_t>(s1)], p.images_[static_cast<std::size_t>(s2)]);
  return p;
}

std::string Permutation::to_cycle_string() const {
  std::ostringstream out;
  std::vector<char> seen(images_.size(), 0);
  for (std::size_t s = 0; s < images_.size(); ++s) {
    if (seen[s]) continue;
    out << '(';
    bool first = true;
    for (std::size_t t = s; !seen[t]; t = static_cast<std::size_t>(images_[t])) {
      seen[t] = 1;
      if (!first) out << ' ';
      out << t + 1;
      first = false;
    }
    out << ')';
  }
  return out.str();
}

int cycle_count_of_quotient(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw std::invalid_argument("cycle_count_of_quotient: degree mismatch");
  // a b^{-1} is conjugate to b^{-1} a, which maps s -> b^{-1}(a(s)).
  const Permutation binv = b.inverse();
  const int k = a.size();
  std::vector<char> seen(static_cast<std::size_t>(k), 0);
  int cycles = 0;
  for (int s = 0; s < k; ++s) {
    if (seen[static_cast<std::size_t>(s)]) continue;
    ++cycles;
    for (int t = s; !seen[static_cast<std::size_t>(t)]; t = binv(a(t))) seen[static_cast<std::size_t>(t)] = 1;
  }
  return cycles;
}

int cayley_distance(const Permutation& a, const Permutation& b) {
  return a.size() - cycle_count_of_quotient(a, b);
}

Permutation direct_sum(std::span<const Permutation> parts) {
  std::vector<int> images;
  int offset = 0;
  for (const auto& p : parts) {
    for (int v : p.images()) images.push_back(v + offset);
    offset += p.size();
  }
  return Permutation(std::move(images));
}

}  // namespace tfact
