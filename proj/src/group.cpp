#include "specinv/group.hpp"

#include <algorithm>

namespace specinv {
namespace {

class FreeAbelianGroup final : public Group {
public:
  explicit FreeAbelianGroup(GroupDescriptor desc) : Group(std::move(desc)) {
    int d = descriptor().rank;
    if (d < 1) fail(ErrorKind::config, "free-abelian: rank must be >= 1");
    for (int i = 0; i < d; ++i) {
      Elem plus(static_cast<std::size_t>(d), 0), minus(static_cast<std::size_t>(d), 0);
      plus[static_cast<std::size_t>(i)] = 1;
      minus[static_cast<std::size_t>(i)] = -1;
      gens_.push_back(plus);
      gens_.push_back(minus);
    }
  }

  [[nodiscard]] Elem identity() const override {
    return Elem(static_cast<std::size_t>(descriptor().rank), 0);
  }

  [[nodiscard]] Elem mul(const Elem& a, const Elem& b) const override {
    Elem r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
  }

  [[nodiscard]] Elem inverse(const Elem& a) const override {
    Elem r = a;
    for (auto& v : r) v = -v;
    return r;
  }

  [[nodiscard]] const std::vector<Elem>& generators() const override { return gens_; }

  void validate(const Elem& e) const override {
    if (e.size() != static_cast<std::size_t>(descriptor().rank))
      fail(ErrorKind::domain, "free-abelian element: wrong coordinate count");
  }

  [[nodiscard]] std::string describe() const override {
    return "free-abelian(" + std::to_string(descriptor().rank) + ")";
  }

private:
  std::vector<Elem> gens_;
};

class CyclicGroup final : public Group {
public:
  explicit CyclicGroup(GroupDescriptor desc) : Group(std::move(desc)) {
    n_ = descriptor().modulus;
    if (n_ < 1) fail(ErrorKind::config, "cyclic: modulus must be >= 1");
    if (n_ > 1) gens_.push_back({1});
    if (n_ > 2) gens_.push_back({n_ - 1});
  }

  [[nodiscard]] Elem identity() const override { return {0}; }

  [[nodiscard]] Elem mul(const Elem& a, const Elem& b) const override {
    return {(a[0] + b[0]) % n_};
  }

  [[nodiscard]] Elem inverse(const Elem& a) const override { return {(n_ - a[0]) % n_}; }

  [[nodiscard]] const std::vector<Elem>& generators() const override { return gens_; }

  void validate(const Elem& e) const override {
    if (e.size() != 1 || e[0] < 0 || e[0] >= n_)
      fail(ErrorKind::domain, "cyclic element: value out of range");
  }

  [[nodiscard]] bool is_finite() const override { return true; }

  [[nodiscard]] std::vector<Elem> all_elements() const override {
    std::vector<Elem> out;
    for (std::int64_t v = 0; v < n_; ++v) out.push_back({v});
    return out;
  }

  [[nodiscard]] std::string describe() const override {
    return "cyclic(" + std::to_string(n_) + ")";
  }

private:
  std::int64_t n_ = 0;
  std::vector<Elem> gens_;
};

/// Integer Heisenberg group on triples: (a,b,c)(a',b',c') = (a+a', b+b', c+c'+a*b').
class HeisenbergGroup final : public Group {
public:
  explicit HeisenbergGroup(GroupDescriptor desc) : Group(std::move(desc)) {
    gens_ = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}};
  }

  [[nodiscard]] Elem identity() const override { return {0, 0, 0}; }

  [[nodiscard]] Elem mul(const Elem& a, const Elem& b) const override {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2] + a[0] * b[1]};
  }

  [[nodiscard]] Elem inverse(const Elem& a) const override {
    return {-a[0], -a[1], -a[2] + a[0] * a[1]};
  }

  [[nodiscard]] const std::vector<Elem>& generators() const override { return gens_; }

  void validate(const Elem& e) const override {
    if (e.size() != 3) fail(ErrorKind::domain, "heisenberg element: need three coordinates");
  }

  [[nodiscard]] std::string describe() const override { return "heisenberg"; }

private:
  std::vector<Elem> gens_;
};

/// Free group on k letters; elements are reduced words, letter i+1 is the
/// i-th generator and -(i+1) its inverse.
class FreeGroup final : public Group {
public:
  explicit FreeGroup(GroupDescriptor desc) : Group(std::move(desc)) {
    int k = descriptor().rank;
    if (k < 1) fail(ErrorKind::config, "free: rank must be >= 1");
    for (int i = 1; i <= k; ++i) {
      gens_.push_back({i});
      gens_.push_back({-i});
    }
  }

  [[nodiscard]] Elem identity() const override { return {}; }

  [[nodiscard]] Elem mul(const Elem& a, const Elem& b) const override {
    Elem r = a;
    for (std::int64_t letter : b) {
      if (!r.empty() && r.back() == -letter) {
        r.pop_back();
      } else {
        r.push_back(letter);
      }
    }
    return r;
  }

  [[nodiscard]] Elem inverse(const Elem& a) const override {
    Elem r(a.rbegin(), a.rend());
    for (auto& v : r) v = -v;
    return r;
  }

  [[nodiscard]] const std::vector<Elem>& generators() const override { return gens_; }

  void validate(const Elem& e) const override {
    std::int64_t k = descriptor().rank;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0 || e[i] > k || e[i] < -k)
        fail(ErrorKind::domain, "free element: letter out of range");
      if (i > 0 && e[i] == -e[i - 1])
        fail(ErrorKind::domain, "free element: word is not reduced");
    }
  }

  [[nodiscard]] std::string describe() const override {
    return "free(" + std::to_string(descriptor().rank) + ")";
  }

private:
  std::vector<Elem> gens_;
};

class FiniteTableGroup final : public Group {
public:
  explicit FiniteTableGroup(GroupDescriptor desc) : Group(std::move(desc)) {
    const auto& t = descriptor().table;
    n_ = static_cast<std::int64_t>(t.size());
    if (n_ < 1) fail(ErrorKind::config, "finite-table: empty table");
    for (const auto& row : t) {
      if (row.size() != static_cast<std::size_t>(n_))
        fail(ErrorKind::config, "finite-table: table is not square");
      for (int v : row)
        if (v < 0 || v >= n_) fail(ErrorKind::config, "finite-table: entry out of range");
    }
    id_ = -1;
    for (std::int64_t e = 0; e < n_; ++e) {
      bool ok = true;
      for (std::int64_t j = 0; j < n_ && ok; ++j)
        ok = t[static_cast<std::size_t>(e)][static_cast<std::size_t>(j)] == j &&
             t[static_cast<std::size_t>(j)][static_cast<std::size_t>(e)] == j;
      if (ok) {
        id_ = e;
        break;
      }
    }
    if (id_ < 0) fail(ErrorKind::domain, "finite-table: no identity element");
    inv_.assign(static_cast<std::size_t>(n_), -1);
    for (std::int64_t i = 0; i < n_; ++i) {
      for (std::int64_t j = 0; j < n_; ++j) {
        if (t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] == id_ &&
            t[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] == id_) {
          inv_[static_cast<std::size_t>(i)] = j;
          break;
        }
      }
      if (inv_[static_cast<std::size_t>(i)] < 0)
        fail(ErrorKind::domain, "finite-table: element without inverse");
    }
    for (std::int64_t a = 0; a < n_; ++a)
      for (std::int64_t b = 0; b < n_; ++b)
        for (std::int64_t c = 0; c < n_; ++c) {
          auto at = [&](std::int64_t i, std::int64_t j) {
            return t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
          };
          if (at(at(a, b), c) != at(a, at(b, c)))
            fail(ErrorKind::domain, "finite-table: table is not associative");
        }
    std::vector<int> gen_ids = descriptor().table_generators;
    if (gen_ids.empty()) {
      for (std::int64_t g = 0; g < n_; ++g)
        if (g != id_) gen_ids.push_back(static_cast<int>(g));
    }
    for (int g : gen_ids) {
      if (g < 0 || g >= n_) fail(ErrorKind::config, "finite-table: generator out of range");
      Elem e{g};
      Elem ei{inv_[static_cast<std::size_t>(g)]};
      if (std::find(gens_.begin(), gens_.end(), e) == gens_.end()) gens_.push_back(e);
      if (std::find(gens_.begin(), gens_.end(), ei) == gens_.end()) gens_.push_back(ei);
    }
  }

  [[nodiscard]] Elem identity() const override { return {id_}; }

  [[nodiscard]] Elem mul(const Elem& a, const Elem& b) const override {
    return {descriptor().table[static_cast<std::size_t>(a[0])][static_cast<std::size_t>(b[0])]};
  }

  [[nodiscard]] Elem inverse(const Elem& a) const override {
    return {inv_[static_cast<std::size_t>(a[0])]};
  }

  [[nodiscard]] const std::vector<Elem>& generators() const override { return gens_; }

  void validate(const Elem& e) const override {
    if (e.size() != 1 || e[0] < 0 || e[0] >= n_)
      fail(ErrorKind::domain, "finite-table element: index out of range");
  }

  [[nodiscard]] bool is_finite() const override { return true; }

  [[nodiscard]] std::vector<Elem> all_elements() const override {
    std::vector<Elem> out;
    for (std::int64_t v = 0; v < n_; ++v) out.push_back({v});
    return out;
  }

  [[nodiscard]] std::string describe() const override {
    return "finite-table(" + std::to_string(n_) + ")";
  }

private:
  std::int64_t n_ = 0;
  std::int64_t id_ = -1;
  std::vector<std::int64_t> inv_;
  std::vector<Elem> gens_;
};

}  // namespace

GroupPtr make_group(const GroupDescriptor& desc) {
  if (desc.kind == "free-abelian") return std::make_shared<FreeAbelianGroup>(desc);
  if (desc.kind == "cyclic") return std::make_shared<CyclicGroup>(desc);
  if (desc.kind == "heisenberg") return std::make_shared<HeisenbergGroup>(desc);
  if (desc.kind == "free") return std::make_shared<FreeGroup>(desc);
  if (desc.kind == "finite-table") return std::make_shared<FiniteTableGroup>(desc);
  fail(ErrorKind::config, "unknown group kind: " + desc.kind);
}

}  // namespace specinv
