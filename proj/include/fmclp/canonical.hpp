/**
 * @file canonical.hpp
 * @brief Structured text serialization of crisp and fuzzy instances.
 *
 * The canonical format is line-based key-value text. Every double is written
 * in shortest round-trip form, so read(write(x)) reproduces x bit for bit.
 * Fuzzy files embed the crisp center, the seed and spread used to generate
 * them, and the complete TFN tables (demands, radii, costs, budget, distance
 * matrix). Generation settings such as cost mode, budget mode and radius are
 * carried as ordered meta lines.
 */

#ifndef FMCLP_CANONICAL_HPP
#define FMCLP_CANONICAL_HPP

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "fmclp/instance.hpp"

namespace fmclp::canonical {

/// Ordered generation metadata; round-trips verbatim.
using Meta = std::vector<std::pair<std::string, std::string>>;

void write_crisp(std::ostream& out, const CrispInstance& inst,
                 const Meta& meta = {});
CrispInstance read_crisp(std::istream& in, Meta* meta = nullptr);

void write_fuzzy(std::ostream& out, const FuzzyInstance& finst,
                 const Meta& meta = {});
FuzzyInstance read_fuzzy(std::istream& in, Meta* meta = nullptr);

/// Reads either kind of canonical file and returns only the point list
/// (facilities and budget unset). Used by load_points.
CrispInstance read_points(std::istream& in);

}  // namespace fmclp::canonical

#endif  // FMCLP_CANONICAL_HPP
