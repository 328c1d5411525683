#include "flagkneser/projective.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <stdexcept>
#include <string_view>

namespace flagkneser {
namespace {

constexpr std::size_t kPointTableLimit = std::size_t{1} << 20;
constexpr PointIndex kNoPoint = std::numeric_limits<PointIndex>::max();

// Gauss-Jordan elimination in place on the first `cols` columns. Returns the
// rank; the first `rank` rows are then in reduced row echelon form.
template <std::size_t Cols>
int row_reduce(const FieldTable& f, std::span<std::array<Element, Cols>> rows, int cols) {
  const int count = static_cast<int>(rows.size());
  int rank = 0;
  for (int c = 0; c < cols && rank < count; ++c) {
    int pivot = -1;
    for (int r = rank; r < count; ++r) {
      if (rows[r][c] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(rows[rank], rows[pivot]);
    auto& pr = rows[rank];
    const Element scale = f.inv(pr[c]);
    if (scale != 1)
      for (int j = c; j < cols; ++j) pr[j] = f.mul(pr[j], scale);
    for (int r = 0; r < count; ++r) {
      if (r == rank || rows[r][c] == 0) continue;
      const Element m = f.neg(rows[r][c]);
      for (int j = c; j < cols; ++j) rows[r][j] = f.add(rows[r][j], f.mul(m, pr[j]));
    }
    ++rank;
  }
  return rank;
}

bool is_zero(const Vec& v, int len) {
  for (int i = 0; i < len; ++i)
    if (v[i] != 0) return false;
  return true;
}

}  // namespace

std::string Subspace::to_text() const {
  std::string out = std::to_string(dim());
  for (int r = 0; r < rank_; ++r) {
    out += ';';
    for (int c = 0; c <= n_; ++c) {
      if (c) out += ',';
      out += std::to_string(rows_[r][c]);
    }
  }
  return out;
}

std::size_t SubspaceHash::operator()(const Subspace& s) const noexcept {
  std::size_t h = 1469598103934665603ull ^ static_cast<std::size_t>(s.rank());
  for (const auto& row : s.rows())
    for (Element e : row) h = (h ^ e) * 1099511628211ull;
  return h;
}

void for_each_rref(int q, int cols, int rank, const std::function<void(std::span<const Vec>)>& visit) {
  if (rank < 0 || rank > cols || cols > kMaxCoordinates) return;
  std::array<int, kMaxCoordinates> piv{};
  for (int i = 0; i < rank; ++i) piv[i] = i;
  std::vector<std::pair<int, int>> free_cells;
  while (true) {
    std::array<Vec, kMaxCoordinates> rows{};
    std::array<bool, kMaxCoordinates> is_pivot{};
    for (int i = 0; i < rank; ++i) {
      rows[i][piv[i]] = 1;
      is_pivot[piv[i]] = true;
    }
    free_cells.clear();
    for (int i = 0; i < rank; ++i)
      for (int j = piv[i] + 1; j < cols; ++j)
        if (!is_pivot[j]) free_cells.emplace_back(i, j);

    while (true) {
      visit(std::span<const Vec>(rows.data(), rank));
      int k = static_cast<int>(free_cells.size()) - 1;
      for (; k >= 0; --k) {
        auto [i, j] = free_cells[k];
        if (++rows[i][j] < q) break;
        rows[i][j] = 0;
      }
      if (k < 0) break;
    }

    int i = rank - 1;
    while (i >= 0 && piv[i] == cols - rank + i) --i;
    if (i < 0) break;
    ++piv[i];
    for (int j = i + 1; j < rank; ++j) piv[j] = piv[j - 1] + 1;
  }
}

ProjectiveSpace::ProjectiveSpace(int n, int q) : n_(n), q_(q), field_(build_field(q)) {
  if (n < 0 || n > kMaxProjectiveDim)
    throw std::invalid_argument("projective dimension " + std::to_string(n) + " outside [0, " +
                                std::to_string(kMaxProjectiveDim) + "]");
  std::size_t codes = 1;
  for (int i = 0; i <= n; ++i) codes *= static_cast<std::size_t>(q);
  point_count_ = (codes - 1) / static_cast<std::size_t>(q - 1);
  if (codes > kPointTableLimit) return;

  point_of_code_.assign(codes, kNoPoint);
  code_of_point_.reserve(point_count_);
  // Normalized representatives (last nonzero coordinate 1) in ascending code order.
  for (std::uint32_t code = 1; code < codes; ++code) {
    std::uint32_t rest = code;
    Element last = 0;
    while (rest != 0 && (last = static_cast<Element>(rest % q)) == 0) rest /= q;
    if (last == 1) {
      point_of_code_[code] = static_cast<PointIndex>(code_of_point_.size());
      code_of_point_.push_back(code);
    }
  }
  for (std::uint32_t code = 1; code < codes; ++code) {
    if (point_of_code_[code] != kNoPoint) continue;
    Vec v{};
    std::uint32_t rest = code;
    for (int i = n; i >= 0; --i) {
      v[i] = static_cast<Element>(rest % q);
      rest /= q;
    }
    int last = n;
    while (v[last] == 0) --last;
    const Element s = field_.inv(v[last]);
    for (int i = 0; i <= last; ++i) v[i] = field_.mul(v[i], s);
    point_of_code_[code] = point_of_code_[pack(v)];
  }
}

std::uint32_t ProjectiveSpace::pack(const Vec& v) const {
  std::uint32_t code = 0;
  for (int i = 0; i <= n_; ++i) code = code * static_cast<std::uint32_t>(q_) + v[i];
  return code;
}

void ProjectiveSpace::require_member(const Subspace& s) const {
  if (s.n_ != n_ || s.q_ != q_)
    throw std::invalid_argument("subspace of PG(" + std::to_string(s.n_) + "," + std::to_string(s.q_) +
                                ") used in PG(" + std::to_string(n_) + "," + std::to_string(q_) + ")");
}

Vec ProjectiveSpace::unit(int i) const {
  if (i < 0 || i > n_) throw std::out_of_range("unit vector index " + std::to_string(i));
  Vec v{};
  v[i] = 1;
  return v;
}

Subspace ProjectiveSpace::empty() const {
  Subspace s;
  s.q_ = static_cast<std::uint8_t>(q_);
  s.n_ = static_cast<std::int8_t>(n_);
  return s;
}

Subspace ProjectiveSpace::whole() const {
  Subspace s = empty();
  s.rank_ = static_cast<std::int8_t>(n_ + 1);
  for (int i = 0; i <= n_ && i < kMaxCoordinates; ++i) {
    s.rows_[i][i] = 1;
    s.pivots_[i] = static_cast<std::uint8_t>(i);
  }
  return s;
}

Subspace ProjectiveSpace::canonical(std::span<const Vec> generators) const {
  const int cols = n_ + 1;
  std::array<Vec, 2 * kMaxCoordinates> buf{};
  int basis = 0;
  std::size_t next = 0;
  while (next < generators.size()) {
    int fill = basis;
    while (fill < static_cast<int>(buf.size()) && next < generators.size()) {
      if (!is_zero(generators[next], cols)) buf[fill++] = generators[next];
      ++next;
    }
    basis = row_reduce<kMaxCoordinates>(field_, std::span<Vec>(buf.data(), fill), cols);
  }
  Subspace s = empty();
  s.rank_ = static_cast<std::int8_t>(basis);
  for (int r = 0; r < basis; ++r) {
    s.rows_[r] = buf[r];
    for (int c = cols; c < kMaxCoordinates; ++c) s.rows_[r][c] = 0;
    int p = 0;
    while (s.rows_[r][p] == 0) ++p;
    s.pivots_[r] = static_cast<std::uint8_t>(p);
  }
  return s;
}

Subspace ProjectiveSpace::span_of(std::span<const Vec> generators) const {
  for (const auto& v : generators)
    for (int c = 0; c < kMaxCoordinates; ++c)
      if (v[c] >= q_ || (c > n_ && v[c] != 0))
        throw std::invalid_argument("vector entry outside GF(" + std::to_string(q_) + ")^" + std::to_string(n_ + 1));
  return canonical(generators);
}

Subspace ProjectiveSpace::span_of(std::initializer_list<Vec> generators) const {
  return span_of(std::span<const Vec>(generators.begin(), generators.size()));
}

Subspace ProjectiveSpace::coordinate_span(std::initializer_list<int> coords) const {
  std::vector<Vec> gens;
  for (int c : coords) gens.push_back(unit(c));
  return canonical(gens);
}

Subspace ProjectiveSpace::span(const Subspace& a, const Subspace& b) const {
  require_member(a);
  require_member(b);
  std::array<Vec, 2 * kMaxCoordinates> gens{};
  int k = 0;
  for (const auto& r : a.rows()) gens[k++] = r;
  for (const auto& r : b.rows()) gens[k++] = r;
  return canonical(std::span<const Vec>(gens.data(), k));
}

int ProjectiveSpace::span_rank(const Subspace& a, const Subspace& b) const {
  require_member(a);
  require_member(b);
  std::array<Vec, 2 * kMaxCoordinates> buf{};
  int k = 0;
  for (const auto& r : a.rows()) buf[k++] = r;
  for (const auto& r : b.rows()) buf[k++] = r;
  return row_reduce<kMaxCoordinates>(field_, std::span<Vec>(buf.data(), k), n_ + 1);
}

Subspace ProjectiveSpace::meet(const Subspace& a, const Subspace& b) const {
  require_member(a);
  require_member(b);
  // Zassenhaus: rows [a|a] and [b|0]; rows with zero left half span a ∩ b.
  using Wide = std::array<Element, 2 * kMaxCoordinates>;
  const int cols = n_ + 1;
  std::array<Wide, 2 * kMaxCoordinates> rows{};
  int k = 0;
  for (const auto& r : a.rows()) {
    for (int c = 0; c < cols; ++c) rows[k][c] = rows[k][cols + c] = r[c];
    ++k;
  }
  for (const auto& r : b.rows()) {
    for (int c = 0; c < cols; ++c) rows[k][c] = r[c];
    ++k;
  }
  const int rank = row_reduce<2 * kMaxCoordinates>(field_, std::span<Wide>(rows.data(), k), 2 * cols);
  std::array<Vec, kMaxCoordinates> gens{};
  int g = 0;
  for (int r = 0; r < rank; ++r) {
    bool left_zero = true;
    for (int c = 0; c < cols; ++c) left_zero = left_zero && rows[r][c] == 0;
    if (!left_zero) continue;
    for (int c = 0; c < cols; ++c) gens[g][c] = rows[r][cols + c];
    ++g;
  }
  return canonical(std::span<const Vec>(gens.data(), g));
}

Subspace ProjectiveSpace::dualize(const Subspace& a) const {
  require_member(a);
  const int cols = n_ + 1;
  std::array<bool, kMaxCoordinates> is_pivot{};
  for (int r = 0; r < a.rank(); ++r) is_pivot[a.pivot(r)] = true;
  std::array<Vec, kMaxCoordinates> gens{};
  int g = 0;
  for (int f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    Vec x{};
    x[f] = 1;
    for (int r = 0; r < a.rank(); ++r) x[a.pivot(r)] = field_.neg(a.rows()[r][f]);
    gens[g++] = x;
  }
  return canonical(std::span<const Vec>(gens.data(), g));
}

bool ProjectiveSpace::contains(const Subspace& outer, const Subspace& inner) const {
  if (inner.rank() > outer.rank()) return false;
  return span_rank(outer, inner) == outer.rank();
}

bool ProjectiveSpace::contains(const Subspace& outer, const Vec& v) const {
  require_member(outer);
  std::array<Vec, kMaxCoordinates + 1> buf{};
  int k = 0;
  for (const auto& r : outer.rows()) buf[k++] = r;
  buf[k++] = v;
  return row_reduce<kMaxCoordinates>(field_, std::span<Vec>(buf.data(), k), n_ + 1) == outer.rank();
}

bool ProjectiveSpace::satisfies(const Subspace& s, const SubspaceConstraints& c) const {
  if (c.contains && !contains(s, *c.contains)) return false;
  if (c.within && !contains(*c.within, s)) return false;
  if (c.skew_to && !skew(s, *c.skew_to)) return false;
  return true;
}

PointIndex ProjectiveSpace::point_index(const Vec& v) const {
  if (!has_point_index())
    throw std::length_error("point numbering of PG(" + std::to_string(n_) + "," + std::to_string(q_) + ") is not materialized");
  const PointIndex idx = point_of_code_[pack(v)];
  if (idx == kNoPoint) throw std::invalid_argument("zero vector is not a projective point");
  return idx;
}

Vec ProjectiveSpace::point_vector(PointIndex i) const {
  if (!has_point_index() || i >= code_of_point_.size()) throw std::out_of_range("point index " + std::to_string(i));
  Vec v{};
  std::uint32_t rest = code_of_point_[i];
  for (int c = n_; c >= 0; --c) {
    v[c] = static_cast<Element>(rest % q_);
    rest /= q_;
  }
  return v;
}

void ProjectiveSpace::write_point_bits(const Subspace& s, std::span<std::uint64_t> words) const {
  require_member(s);
  if (!has_point_index())
    throw std::length_error("point numbering of PG(" + std::to_string(n_) + "," + std::to_string(q_) + ") is not materialized");
  const int k = s.rank();
  if (k == 0) return;
  const auto rows = s.rows();
  // Odometer over coefficient vectors; packed codes are updated incrementally.
  std::array<std::uint32_t, kMaxCoordinates> row_code{};
  for (int r = 0; r < k; ++r) row_code[r] = pack(rows[r]);
  std::array<Element, kMaxCoordinates> coef{};
  Vec v{};
  while (true) {
    int r = k - 1;
    for (; r >= 0; --r) {
      if (++coef[r] < q_) break;
      coef[r] = 0;
    }
    if (r < 0) break;
    v = Vec{};
    for (int i = 0; i < k; ++i) {
      if (coef[i] == 0) continue;
      for (int c = 0; c <= n_; ++c) v[c] = field_.add(v[c], field_.mul(coef[i], rows[i][c]));
    }
    const PointIndex p = point_of_code_[pack(v)];
    words[p >> 6] |= std::uint64_t{1} << (p & 63);
  }
}

PointSet ProjectiveSpace::point_set(const Subspace& s) const {
  std::vector<std::uint64_t> words(point_words(), 0);
  write_point_bits(s, words);
  PointSet out(words.begin(), words.end());
  out.resize(point_count_);
  return out;
}

void ProjectiveSpace::for_each_subspace(int d, const SubspaceConstraints& constraints,
                                        const std::function<void(const Subspace&)>& visit) const {
  if (d < -1 || d > n_) return;
  for (const auto* c : {&constraints.contains, &constraints.within, &constraints.skew_to})
    if (*c) require_member(**c);

  const bool plain = !constraints.contains && !constraints.within;
  if (plain) {
    Subspace s = empty();
    s.rank_ = static_cast<std::int8_t>(d + 1);
    for_each_rref(q_, n_ + 1, d + 1, [&](std::span<const Vec> rows) {
      for (int r = 0; r <= d; ++r) {
        s.rows_[r] = rows[r];
        int p = 0;
        while (rows[r][p] == 0) ++p;
        s.pivots_[r] = static_cast<std::uint8_t>(p);
      }
      if (!constraints.skew_to || skew(s, *constraints.skew_to)) visit(s);
    });
    return;
  }

  const Subspace base = constraints.contains.value_or(empty());
  const Subspace outer = constraints.within.value_or(whole());
  if (!contains(outer, base)) return;
  const int k = base.rank();
  const int m = outer.rank() - k;
  const int r = d + 1 - k;
  if (r < 0 || r > m) return;

  // Complement of base inside outer: rows of outer that raise the rank.
  std::vector<Vec> complement;
  std::vector<Vec> acc(base.rows().begin(), base.rows().end());
  for (const auto& row : outer.rows()) {
    acc.push_back(row);
    if (canonical(acc).rank() == static_cast<int>(acc.size()))
      complement.push_back(row);
    else
      acc.pop_back();
  }

  std::vector<Subspace> found;
  std::array<Vec, kMaxCoordinates> gens{};
  for (int i = 0; i < k; ++i) gens[i] = base.rows()[i];
  for_each_rref(q_, m, r, [&](std::span<const Vec> quotient_rows) {
    for (int i = 0; i < r; ++i) {
      Vec lifted{};
      for (int j = 0; j < m; ++j) {
        const Element c = quotient_rows[i][j];
        if (c == 0) continue;
        for (int col = 0; col <= n_; ++col) lifted[col] = field_.add(lifted[col], field_.mul(c, complement[j][col]));
      }
      gens[k + i] = lifted;
    }
    Subspace s = canonical(std::span<const Vec>(gens.data(), k + r));
    if (!constraints.skew_to || skew(s, *constraints.skew_to)) found.push_back(s);
  });
  std::sort(found.begin(), found.end());
  for (const auto& s : found) visit(s);
}

std::vector<Subspace> ProjectiveSpace::subspaces(int d, const SubspaceConstraints& constraints) const {
  std::vector<Subspace> out;
  for_each_subspace(d, constraints, [&](const Subspace& s) { out.push_back(s); });
  return out;
}

Vec ProjectiveSpace::random_vector(std::mt19937_64& rng) const {
  std::uniform_int_distribution<int> dist(0, q_ - 1);
  Vec v{};
  for (int c = 0; c <= n_; ++c) v[c] = static_cast<Element>(dist(rng));
  return v;
}

Subspace ProjectiveSpace::random_subspace(int d, std::mt19937_64& rng) const {
  if (d < -1 || d > n_) throw std::invalid_argument("random subspace dimension " + std::to_string(d) + " out of range");
  std::vector<Vec> gens;
  while (static_cast<int>(gens.size()) < d + 1) {
    gens.push_back(random_vector(rng));
    if (canonical(gens).rank() != static_cast<int>(gens.size())) gens.pop_back();
  }
  return canonical(gens);
}

Subspace ProjectiveSpace::parse(std::string_view text) const {
  auto fail = [&](const std::string& why) {
    return std::invalid_argument("malformed subspace '" + std::string(text) + "': " + why);
  };
  auto next_field = [&](std::string_view& rest, char sep) {
    const auto pos = rest.find(sep);
    std::string_view head = rest.substr(0, pos);
    rest = pos == std::string_view::npos ? std::string_view{} : rest.substr(pos + 1);
    return head;
  };
  auto to_int = [&](std::string_view s) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size()) throw fail("'" + std::string(s) + "' is not an integer");
    return value;
  };

  std::string_view rest = text;
  while (!rest.empty() && (rest.back() == '\n' || rest.back() == '\r' || rest.back() == ' ')) rest.remove_suffix(1);
  const int d = to_int(next_field(rest, ';'));
  if (d < -1 || d > n_) throw fail("dimension out of range");
  std::vector<Vec> rows;
  while (!rest.empty()) {
    std::string_view row_text = next_field(rest, ';');
    Vec v{};
    int c = 0;
    while (!row_text.empty()) {
      if (c > n_) throw fail("row longer than " + std::to_string(n_ + 1));
      const int code = to_int(next_field(row_text, ','));
      if (code < 0 || code >= q_) throw fail("code outside GF(" + std::to_string(q_) + ")");
      v[c++] = static_cast<Element>(code);
    }
    if (c != n_ + 1) throw fail("row has " + std::to_string(c) + " entries, expected " + std::to_string(n_ + 1));
    rows.push_back(v);
  }
  if (static_cast<int>(rows.size()) != d + 1) throw fail("expected " + std::to_string(d + 1) + " rows");
  Subspace s = canonical(rows);
  if (s.dim() != d) throw fail("rows are linearly dependent");
  return s;
}

}  // namespace flagkneser
