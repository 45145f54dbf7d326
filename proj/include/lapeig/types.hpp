#pragma once

#include <cstddef>
#include <vector>

namespace lapeig {

using Index = std::size_t;
using Vector = std::vector<double>;

}  // namespace lapeig
