#include "heckebound/hurwitz.hpp"

#include <array>
#include <cstring>
#include <fstream>
#include <mutex>

#include "heckebound/errors.hpp"

namespace heckebound {

namespace {

constexpr char kMagic[8] = {'H', 'U', 'R', 'W', 'I', 'T', 'Z', '1'};

void put_u64(std::ostream& os, u64 v) {
  std::array<char, 8> b{};
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  os.write(b.data(), 8);
}

u64 get_u64(std::istream& is) {
  std::array<unsigned char, 8> b{};
  is.read(reinterpret_cast<char*>(b.data()), 8);
  if (!is) throw DataError("hurwitz cache: truncated file");
  u64 v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
  return v;
}

}  // namespace

HurwitzTable::HurwitzTable(u64 limit) : values_(build(limit)) {}

HurwitzTable::HurwitzTable(const HurwitzTable& other) {
  std::shared_lock lock(other.mu_);
  values_ = other.values_;
}

HurwitzTable& HurwitzTable::operator=(const HurwitzTable& other) {
  if (this == &other) return *this;
  std::vector<i64> copy = other.snapshot();
  std::unique_lock lock(mu_);
  values_ = std::move(copy);
  return *this;
}

std::vector<i64> HurwitzTable::build(u64 limit) {
  std::vector<i64> h(limit + 1, 0);
  h[0] = -1;
  // n = 4ac - b^2 >= 3a^2 for reduced forms.
  for (u64 a = 1; 3 * a * a <= limit; ++a) {
    const i64 ai = static_cast<i64>(a);
    for (i64 b = -ai + 1; b <= ai; ++b) {
      const u64 b2 = static_cast<u64>(b * b);
      for (u64 c = a;; ++c) {
        const u64 n = 4 * a * c - b2;
        if (n > limit) break;
        if (c == a && b < 0) continue;
        i64 w = 12;
        if (c == a && b == 0) w = 6;
        if (c == a && b == ai) w = 4;
        h[n] += w;
      }
    }
  }
  return h;
}

u64 HurwitzTable::limit() const {
  std::shared_lock lock(mu_);
  return values_.size() - 1;
}

void HurwitzTable::ensure(u64 n) {
  {
    std::shared_lock lock(mu_);
    if (n < values_.size()) return;
  }
  std::unique_lock lock(mu_);
  if (n < values_.size()) return;
  u64 target = std::max<u64>(n, 2 * (values_.size() - 1));
  target = std::max<u64>(target, 1024);
  values_ = build(target);
}

i64 HurwitzTable::twelve_h(u64 n) {
  {
    std::shared_lock lock(mu_);
    if (n < values_.size()) return values_[n];
  }
  ensure(n);
  std::shared_lock lock(mu_);
  return values_[n];
}

std::vector<i64> HurwitzTable::snapshot() const {
  std::shared_lock lock(mu_);
  return values_;
}

void HurwitzTable::save(const std::filesystem::path& file) const {
  std::vector<i64> vals = snapshot();
  std::ofstream os(file, std::ios::binary | std::ios::trunc);
  if (!os) throw DataError("hurwitz cache: cannot write " + file.string());
  os.write(kMagic, 8);
  put_u64(os, vals.size());
  for (i64 v : vals) put_u64(os, static_cast<u64>(v));
}

HurwitzTable HurwitzTable::load(const std::filesystem::path& file) {
  std::ifstream is(file, std::ios::binary);
  if (!is) throw DataError("hurwitz cache: cannot open " + file.string());
  char magic[8];
  is.read(magic, 8);
  if (!is || std::memcmp(magic, kMagic, 8) != 0) throw DataError("hurwitz cache: bad magic");
  const u64 count = get_u64(is);
  if (count == 0) throw DataError("hurwitz cache: empty table");
  HurwitzTable t(0);
  std::vector<i64> vals(count);
  for (u64 i = 0; i < count; ++i) vals[i] = static_cast<i64>(get_u64(is));
  if (vals[0] != -1) throw DataError("hurwitz cache: entry 0 must be -1");
  t.values_ = std::move(vals);
  return t;
}

HurwitzTable& global_hurwitz_table() {
  static HurwitzTable table(1 << 12);
  return table;
}

i64 hurwitz12(u64 n) { return global_hurwitz_table().twelve_h(n); }

mpq_class hurwitz(u64 n) { return global_hurwitz_table().hurwitz(n); }

}  // namespace heckebound
