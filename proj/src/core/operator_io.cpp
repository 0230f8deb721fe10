#include "bintomo/core/operator_io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace bintomo {

void write_operator(const SparseOperator& A, std::ostream& out) {
  out << A.rows() << ' ' << A.cols() << ' ' << A.nnz() << '\n';
  const auto& rp = A.row_ptr();
  const auto& ci = A.col_idx();
  const auto& v = A.values();
  char buf[64];
  for (std::int32_t r = 0; r < A.rows(); ++r) {
    for (std::int32_t k = rp[r]; k < rp[r + 1]; ++k) {
      std::snprintf(buf, sizeof(buf), "%" PRId32 " %" PRId32 " %.17g\n", r,
                    ci[k], v[k]);
      out << buf;
    }
  }
}

void write_operator(const SparseOperator& A, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  write_operator(A, f);
  if (!f) throw std::runtime_error("write failed: " + path);
}

SparseOperator read_operator(std::istream& in) {
  std::int64_t rows = 0;
  std::int64_t cols = 0;
  std::int64_t nnz = 0;
  if (!(in >> rows >> cols >> nnz) || rows < 0 || cols < 0 || nnz < 0) {
    throw std::runtime_error("bad operator header (expected 'rows cols nnz')");
  }
  std::vector<Triplet> entries;
  entries.reserve(static_cast<std::size_t>(nnz));
  for (std::int64_t k = 0; k < nnz; ++k) {
    Triplet t;
    if (!(in >> t.row >> t.col >> t.value)) {
      throw std::runtime_error("truncated operator triplet file");
    }
    entries.push_back(t);
  }
  return SparseOperator::from_triplets(static_cast<std::int32_t>(rows),
                                       static_cast<std::int32_t>(cols),
                                       std::move(entries));
}

SparseOperator read_operator(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open operator file: " + path);
  return read_operator(f);
}

}  // namespace bintomo
