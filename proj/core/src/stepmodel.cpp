#include "orbitsum/stepmodel.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cstdio>

namespace orbitsum {

namespace {

constexpr std::array<std::array<int, 3>, 6> kPermutations = {{
    {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0},
}};

Step permute_step(const Step& s, const std::array<int, 3>& perm) {
  int out[3] = {0, 0, 0};
  out[perm[0]] = s.dx;
  out[perm[1]] = s.dy;
  out[perm[2]] = s.dz;
  return {out[0], out[1], out[2]};
}

// For each non-identity permutation, chunked lookup tables mapping 7-bit
// slices of an id to the permuted bits.
struct PermutationTables {
  static constexpr int kChunkBits = 7;
  static constexpr int kChunks = 4;
  std::array<std::array<std::array<std::uint32_t, 1u << kChunkBits>, kChunks>, 6> table{};

  PermutationTables() {
    for (std::size_t p = 0; p < kPermutations.size(); ++p) {
      for (int c = 0; c < kChunks; ++c) {
        for (std::uint32_t v = 0; v < (1u << kChunkBits); ++v) {
          std::uint32_t out = 0;
          for (int b = 0; b < kChunkBits; ++b) {
            int bit = c * kChunkBits + b;
            if (bit >= kStepCount || !((v >> b) & 1u)) continue;
            out |= 1u << step_bit(permute_step(step_from_bit(bit), kPermutations[p]));
          }
          table[p][static_cast<std::size_t>(c)][v] = out;
        }
      }
    }
  }

  std::uint32_t apply(std::size_t p, std::uint32_t id) const {
    std::uint32_t out = 0;
    for (int c = 0; c < kChunks; ++c)
      out |= table[p][static_cast<std::size_t>(c)][(id >> (c * kChunkBits)) & ((1u << kChunkBits) - 1)];
    return out;
  }
};

const PermutationTables& tables() {
  static const PermutationTables t;
  return t;
}

}  // namespace

int step_bit(const Step& s) {
  int idx = 9 * (s.dx + 1) + 3 * (s.dy + 1) + (s.dz + 1);
  return idx < 13 ? idx : idx - 1;
}

Step step_from_bit(int bit) {
  int idx = bit < 13 ? bit : bit + 1;
  return {idx / 9 - 1, (idx / 3) % 3 - 1, idx % 3 - 1};
}

StepSet::StepSet(std::uint32_t id) : id_(id) {
  if (id == 0) throw StepSetError(StepSetError::Kind::Empty, "empty step set");
  if (id > kMaxModelId) throw StepSetError(StepSetError::Kind::OutOfRange, "model id exceeds 26 bits");
}

StepSet StepSet::from_steps(const std::vector<Step>& steps) {
  std::uint32_t id = 0;
  for (const auto& s : steps) {
    for (int a = 0; a < 3; ++a)
      if (s[a] < -1 || s[a] > 1)
        throw StepSetError(StepSetError::Kind::OutOfRange, "step component outside {-1,0,1}");
    if (s.dx == 0 && s.dy == 0 && s.dz == 0)
      throw StepSetError(StepSetError::Kind::ZeroStep, "the zero step is not allowed");
    std::uint32_t bit = 1u << step_bit(s);
    if (id & bit) throw StepSetError(StepSetError::Kind::Duplicate, "duplicate step");
    id |= bit;
  }
  if (id == 0) throw StepSetError(StepSetError::Kind::Empty, "empty step set");
  return StepSet(id);
}

std::vector<Step> StepSet::steps() const {
  std::vector<Step> out;
  for (int b = 0; b < kStepCount; ++b)
    if ((id_ >> b) & 1u) out.push_back(step_from_bit(b));
  return out;
}

int StepSet::size() const { return std::popcount(id_); }

std::string StepSet::to_string() const {
  std::string out;
  for (const auto& s : steps()) {
    if (!out.empty()) out += ',';
    out += '(' + std::to_string(s.dx) + ',' + std::to_string(s.dy) + ',' + std::to_string(s.dz) + ')';
  }
  return out;
}

std::string StepSet::id_hex() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "0x%07x", id_);
  return buf;
}

StepSet parse_stepset(std::string_view text) {
  auto bad = [](const std::string& msg) { return StepSetError(StepSetError::Kind::BadSyntax, msg); };
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip();
  if (text.substr(i, 2) == "0x" || text.substr(i, 2) == "0X") {
    i += 2;
    std::size_t end = text.size();
    while (end > i && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
    std::uint64_t id = 0;
    auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + end, id, 16);
    if (ec != std::errc() || ptr != text.data() + end || end == i) throw bad("malformed hex id");
    if (id > kMaxModelId) throw StepSetError(StepSetError::Kind::OutOfRange, "model id exceeds 26 bits");
    return StepSet(static_cast<std::uint32_t>(id));
  }
  auto read_int = [&]() {
    skip();
    std::size_t start = i;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    long v = 0;
    const char* first = text.data() + start + (text[start] == '+' ? 1 : 0);
    auto [ptr, ec] = std::from_chars(first, text.data() + i, v);
    if (ec != std::errc() || ptr != text.data() + i) throw bad("expected integer");
    return v;
  };
  auto expect = [&](char c) {
    skip();
    if (i >= text.size() || text[i] != c) throw bad(std::string("expected '") + c + "'");
    ++i;
  };
  std::vector<Step> steps;
  skip();
  if (i == text.size()) throw StepSetError(StepSetError::Kind::Empty, "empty step set");
  for (;;) {
    expect('(');
    long c[3];
    c[0] = read_int();
    expect(',');
    c[1] = read_int();
    expect(',');
    c[2] = read_int();
    expect(')');
    for (long v : c)
      if (v < -1 || v > 1) throw StepSetError(StepSetError::Kind::OutOfRange, "step component outside {-1,0,1}");
    steps.push_back({static_cast<int>(c[0]), static_cast<int>(c[1]), static_cast<int>(c[2])});
    skip();
    if (i == text.size()) break;
    expect(',');
  }
  return StepSet::from_steps(steps);
}

StepSet permute_axes(const StepSet& s, const std::array<int, 3>& perm) {
  std::uint32_t id = 0;
  for (const auto& st : s.steps()) id |= 1u << step_bit(permute_step(st, perm));
  return StepSet(id);
}

StepSet axis_canonical(const StepSet& s) {
  std::uint32_t best = s.id();
  for (std::size_t p = 1; p < kPermutations.size(); ++p) best = std::min(best, tables().apply(p, s.id()));
  return StepSet(best);
}

bool is_axis_canonical(std::uint32_t id) {
  const auto& t = tables();
  for (std::size_t p = 1; p < kPermutations.size(); ++p)
    if (t.apply(p, id) < id) return false;
  return true;
}

int axis_orbit_size(const StepSet& s) {
  std::array<std::uint32_t, 6> images{};
  for (std::size_t p = 0; p < kPermutations.size(); ++p) images[p] = tables().apply(p, s.id());
  std::sort(images.begin(), images.end());
  return static_cast<int>(std::unique(images.begin(), images.end()) - images.begin());
}

std::array<AxisUsage, 3> axis_usage(const StepSet& s) {
  std::array<AxisUsage, 3> u{};
  for (const auto& st : s.steps()) {
    for (int a = 0; a < 3; ++a) {
      if (st[a] < 0) u[static_cast<std::size_t>(a)].has_minus = true;
      if (st[a] > 0) u[static_cast<std::size_t>(a)].has_plus = true;
    }
  }
  return u;
}

bool uses_all_directions(const StepSet& s) {
  for (const auto& u : axis_usage(s))
    if (!u.has_minus || !u.has_plus) return false;
  return true;
}

void enumerate_models(std::uint32_t lo, std::uint32_t hi, const ModelPredicate& pred,
                      const std::function<bool(const StepSet&)>& fn) {
  lo = std::max<std::uint32_t>(lo, 1);
  hi = std::min(hi, kMaxModelId);
  for (std::uint64_t id = lo; id <= hi; ++id) {
    auto v = static_cast<std::uint32_t>(id);
    if (!is_axis_canonical(v)) continue;
    StepSet s(v);
    if (pred && !pred(s)) continue;
    if (!fn(s)) return;
  }
}

std::vector<StepSet> collect_models(std::uint32_t lo, std::uint32_t hi, const ModelPredicate& pred) {
  std::vector<StepSet> out;
  enumerate_models(lo, hi, pred, [&](const StepSet& s) {
    out.push_back(s);
    return true;
  });
  return out;
}

}  // namespace orbitsum
