#pragma once

#include <vector>

#include "drinlev/ffpoly/small_field.hpp"

namespace drinlev::ff {

using Row = std::vector<SmallField::Elem>;
using Rows = std::vector<Row>;

/// Reduced row echelon form in place; returns the pivot columns.
std::vector<std::size_t> row_reduce(const SmallField& f, Rows& rows);

std::size_t rank(const SmallField& f, Rows rows);

/// Basis of {v : M v = 0} for the matrix with the given rows and `ncols` columns.
Rows null_space(const SmallField& f, Rows rows, std::size_t ncols);

}  // namespace drinlev::ff
