#pragma once

#include <string>
#include <string_view>

namespace kgqa {

// Porter (1980) suffix-stripping stemmer. Expects a lower-case word.
std::string porter_stem(std::string_view word);

}  // namespace kgqa
