#include "bipres/sparse_column.hpp"

#include <algorithm>

namespace bipres {

coeff_t SparseColumn::at(row_index_t row) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), row,
                             [](const Entry& e, row_index_t r) { return e.row < r; });
  return (it != entries.end() && it->row == row) ? it->coeff : coeff_t(0);
}

bool SparseColumn::well_formed(const PrimeField& field) const {
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].coeff == 0 || entries[i].coeff >= field.p()) return false;
    if (i > 0 && entries[i - 1].row >= entries[i].row) return false;
  }
  return true;
}

void add_multiple_inplace(SparseColumn& target, const SparseColumn& source,
                          coeff_t scalar, const PrimeField& field,
                          std::vector<Entry>& scratch) {
  if (scalar == 0 || source.entries.empty()) return;
  scratch.clear();
  scratch.reserve(target.entries.size() + source.entries.size());

  // scalar is 1 for every addition over Z/2 and for most pivot
  // cancellations; skipping the multiply avoids a division per entry
  const bool unscaled = scalar == 1;
  auto t = target.entries.begin(), te = target.entries.end();
  auto s = source.entries.begin(), se = source.entries.end();
  while (t != te && s != se) {
    if (t->row < s->row) {
      scratch.push_back(*t++);
    } else if (s->row < t->row) {
      coeff_t c = unscaled ? s->coeff : field.mul(s->coeff, scalar);
      if (c != 0) scratch.push_back({s->row, c});
      ++s;
    } else {
      coeff_t c = field.add(t->coeff, unscaled ? s->coeff : field.mul(s->coeff, scalar));
      if (c != 0) scratch.push_back({t->row, c});
      ++t;
      ++s;
    }
  }
  scratch.insert(scratch.end(), t, te);
  for (; s != se; ++s) {
    coeff_t c = unscaled ? s->coeff : field.mul(s->coeff, scalar);
    if (c != 0) scratch.push_back({s->row, c});
  }
  target.entries.swap(scratch);
}

SparseColumn add_multiple(const SparseColumn& target, const SparseColumn& source,
                          coeff_t scalar, const PrimeField& field) {
  SparseColumn out = target;
  std::vector<Entry> scratch;
  add_multiple_inplace(out, source, scalar, field, scratch);
  return out;
}

}  // namespace bipres
