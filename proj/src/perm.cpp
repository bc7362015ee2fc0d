#include "hlim/perm.hpp"

#include <numeric>
#include <sstream>

#include "hlim/fp.hpp"

namespace hlim {

Perm::Perm(std::vector<Point> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (Point v : images_) {
    if (v >= images_.size() || seen[v]) throw ValidationError("Perm: images do not form a bijection");
    seen[v] = true;
  }
}

Perm Perm::identity(std::size_t degree) {
  std::vector<Point> img(degree);
  std::iota(img.begin(), img.end(), Point{0});
  Perm p;
  p.images_ = std::move(img);
  return p;
}

Perm Perm::from_cycle_list(const std::vector<std::vector<std::size_t>>& cycles, std::size_t degree) {
  Perm p = identity(degree);
  std::vector<bool> used(degree, false);
  for (const auto& cyc : cycles) {
    for (std::size_t pt : cyc) {
      if (pt >= degree) throw ValidationError("Perm: cycle point " + std::to_string(pt) + " exceeds degree");
      if (used[pt]) throw ValidationError("Perm: cycles are not disjoint");
      used[pt] = true;
    }
    for (std::size_t i = 0; i < cyc.size(); ++i) p.images_[cyc[i]] = static_cast<Point>(cyc[(i + 1) % cyc.size()]);
  }
  return p;
}

Perm Perm::from_cycles(const std::string& text, std::size_t degree) {
  std::vector<std::vector<std::size_t>> cycles;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == ' ' || c == '\t') {
      ++i;
      continue;
    }
    if (c != '(') throw ValidationError("Perm: expected '(' in cycle text \"" + text + "\"");
    std::size_t close = text.find(')', i);
    if (close == std::string::npos) throw ValidationError("Perm: unbalanced parenthesis in \"" + text + "\"");
    std::string body = text.substr(i + 1, close - i - 1);
    for (char& ch : body)
      if (ch == ',') ch = ' ';
    std::istringstream in(body);
    std::vector<std::size_t> cyc;
    std::string tok;
    while (in >> tok) {
      std::size_t pos = 0;
      unsigned long v = 0;
      try {
        v = std::stoul(tok, &pos);
      } catch (const std::exception&) {
        throw ValidationError("Perm: bad point \"" + tok + "\"");
      }
      if (pos != tok.size()) throw ValidationError("Perm: bad point \"" + tok + "\"");
      cyc.push_back(v);
    }
    if (!cyc.empty()) cycles.push_back(std::move(cyc));
    i = close + 1;
  }
  return from_cycle_list(cycles, degree);
}

Perm Perm::operator*(const Perm& rhs) const {
  if (rhs.images_.size() != images_.size()) throw ValidationError("Perm: degree mismatch in product");
  Perm out;
  out.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) out.images_[i] = images_[rhs.images_[i]];
  return out;
}

Perm Perm::inverse() const {
  Perm out;
  out.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) out.images_[images_[i]] = static_cast<Point>(i);
  return out;
}

Perm Perm::pow(long long e) const {
  Perm base = e < 0 ? inverse() : *this;
  unsigned long long k = e < 0 ? static_cast<unsigned long long>(-e) : static_cast<unsigned long long>(e);
  Perm acc = identity(degree());
  while (k) {
    if (k & 1) acc = acc * base;
    base = base * base;
    k >>= 1;
  }
  return acc;
}

std::size_t Perm::order() const {
  std::size_t ord = 1;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = images_[j]) {
      seen[j] = true;
      ++len;
    }
    ord = std::lcm(ord, len);
  }
  return ord;
}

bool Perm::is_identity() const { return first_moved() == images_.size(); }

std::size_t Perm::first_moved() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return i;
  return images_.size();
}

std::string Perm::to_cycles() const {
  std::string out;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i] || images_[i] == i) continue;
    out += "(";
    for (std::size_t j = i; !seen[j]; j = images_[j]) {
      seen[j] = true;
      if (j != i) out += " ";
      out += std::to_string(j);
    }
    out += ")";
  }
  return out.empty() ? "()" : out;
}

std::size_t PermHash::operator()(const Perm& p) const noexcept {
  std::uint64_t h = 1469598103934665603ull;
  for (auto v : p.images()) {
    h ^= v;
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

}  // namespace hlim
