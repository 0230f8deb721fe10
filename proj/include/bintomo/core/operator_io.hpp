#pragma once

#include <iosfwd>
#include <string>

#include "bintomo/core/sparse_operator.hpp"

namespace bintomo {

// Plain-text triplet format: a header line "rows cols nnz" followed by one
// "row col value" line per stored entry. Values round-trip bit-exactly.
void write_operator(const SparseOperator& A, std::ostream& out);
void write_operator(const SparseOperator& A, const std::string& path);
SparseOperator read_operator(std::istream& in);
SparseOperator read_operator(const std::string& path);

}  // namespace bintomo
