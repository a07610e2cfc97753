#pragma once

#include <string>

namespace nr2 {

/**
 * Porter suffix-stripping stemmer (the classic five-step algorithm).
 * Expects a lowercase token; tokens shorter than 3 characters or containing
 * non-letters are returned unchanged.
 */
std::string porter_stem(const std::string& word);

} // namespace nr2
