#pragma once

#include <optional>
#include <string>
#include <vector>

#include "catembed/embed.hpp"
#include "catembed/io.hpp"

namespace catembed {

// [[0, 1], [s, 0]], normal when s is unimodular; companion of x^2 - s.
ExactMatrix shift_companion(const CycElement& s);

// [[a, b], [b, -a]]; Hermitian for real a, b, with square a^2 + b^2.
ExactMatrix sum_of_squares_companion(const CycElement& a, const CycElement& b);

// i * 1/2 [[1, 1 + 2c], [1 + 2c, -1]] + c I, with eigenvalues c +- i sin
// whenever sin^2 = 1/4 + (1/2 + c)^2 = 1 - c^2. Rejects c for which the
// identity fails or sin = 0.
ExactMatrix shifted_rotation_companion(const CycElement& c);

struct CatalogEntry {
  std::string id;
  PreEmbedding embedding;
  ExactMatrix catalyst;  // unnormalized column
  CycElement norm_sq;
  std::string provenance;
  std::vector<ExactMatrix> probes;
  // Set when the entry is the concatenation outer o inner of two other entries.
  std::optional<std::pair<std::string, std::string>> concat_of;
};

// Builds and verifies one entry. A missing catalyst is taken from the
// alpha eigenspace.
CatalogEntry entry_from_json(const json& j);
json entry_to_json(const CatalogEntry& e);

// The 2^k tower: Z[zeta_{2^(k-1)}] in Z[zeta_{2^k}], Lambda_k = [[0,1],[zeta_{2^(k-1)},0]],
// catalyst [1, zeta_{2^k}]; 2 <= k <= 20.
CatalogEntry two_power_tower(std::size_t k);

std::string catalog_path();  // $CATEMBED_CATALOG or the shipped file
json read_catalog(const std::string& path);
std::vector<std::string> catalog_ids(const std::string& path = catalog_path());

// Looks up and verifies an entry; "zeta2k/tower(k)" is generated.
CatalogEntry catalog_get(const std::string& id, const std::string& path = catalog_path());

// Re-verifies concatenation claims against the referenced entries.
void verify_concat(const CatalogEntry& e, const std::string& path = catalog_path());

}  // namespace catembed
