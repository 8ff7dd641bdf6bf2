#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lexistat/distance.hpp"
#include "lexistat/error.hpp"

// Published reference data for 23 Malagasy dialects: the pairwise lexical
// distance table (per-mille integers, lower triangle) and the dialect
// registry.
namespace lexistat::fixtures {

inline constexpr std::size_t kDialectCount = 23;
inline constexpr std::size_t kPairCount = kDialectCount * (kDialectCount - 1) / 2;

// Row k (1-based, k >= 2) holds distances to dialects 1..k-1.
inline constexpr std::array<std::uint16_t, kPairCount> kLowerTriangle = {
    323,
    246, 276,
    322, 240, 295,
    302, 281, 309, 345,
    227, 318, 275, 359, 266,
    413, 386, 390, 418, 314, 370,
    280, 386, 342, 401, 356, 245, 436,
    366, 424, 379, 412, 405, 375, 450, 409,
    411, 396, 416, 440, 318, 366, 249, 456, 482,
    207, 326, 260, 362, 286, 61, 383, 201, 374, 384,
    362, 343, 345, 387, 292, 328, 289, 397, 435, 330, 324,
    303, 369, 330, 381, 384, 329, 454, 362, 256, 487, 318, 407,
    343, 302, 331, 355, 243, 317, 303, 403, 423, 314, 336, 301, 419,
    397, 453, 394, 462, 392, 375, 342, 463, 485, 304, 383, 405, 471, 388,
    368, 391, 385, 416, 392, 390, 448, 406, 320, 474, 383, 429, 325, 418, 486,
    400, 350, 369, 390, 280, 358, 165, 433, 427, 278, 373, 240, 439, 261, 358, 410,
    322, 376, 325, 374, 391, 337, 426, 381, 198, 473, 339, 412, 234, 406, 461, 264, 414,
    358, 407, 376, 417, 408, 394, 440, 419, 292, 481, 387, 431, 325, 422, 472, 161, 408, 243,
    297, 388, 359, 430, 356, 299, 400, 346, 386, 433, 275, 375, 363, 375, 455, 348, 394, 349, 355,
    386, 341, 370, 385, 290, 344, 262, 403, 422, 321, 348, 250, 404, 306, 403, 401, 213, 416, 417, 383,
    225, 389, 332, 394, 382, 316, 471, 319, 385, 475, 287, 421, 296, 431, 480, 382, 467, 348, 387, 356, 441,
    379, 424, 407, 424, 398, 380, 443, 433, 315, 466, 380, 412, 351, 420, 472, 203, 395, 288, 202, 351, 409, 406,
};

/// FNV-1a (64-bit) over the table, each entry as 4 little-endian bytes.
constexpr std::uint64_t table_checksum(const std::array<std::uint16_t, kPairCount>& table) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::uint32_t v : table) {
    for (int b = 0; b < 4; ++b) {
      h ^= (v >> (8 * b)) & 0xffu;
      h *= 0x100000001b3ULL;
    }
  }
  return h;
}

inline constexpr std::uint64_t kTableChecksum = 0x1026ad715f52527fULL;
static_assert(table_checksum(kLowerTriangle) == kTableChecksum, "reference table corrupted");

/// Entry of the lower triangle for 1-based dialect indices i != j.
constexpr std::uint16_t table_entry(std::size_t i, std::size_t j) {
  if (i < j) std::swap(i, j);
  return kLowerTriangle[(i - 1) * (i - 2) / 2 + (j - 1)];
}

/// Four-way partition from cutting the UPGMA tree of the reference table at
/// its two top-level splits.
enum class RegionGroup { EastCenter, North, SouthWest, South };

inline std::string_view to_string(RegionGroup g) {
  switch (g) {
    case RegionGroup::EastCenter: return "east-center";
    case RegionGroup::North: return "north";
    case RegionGroup::SouthWest: return "south-west";
    case RegionGroup::South: return "south";
  }
  return "";
}

struct Dialect {
  int appendix_index;
  std::string_view name;
  std::string_view town;
  std::string_view id;  // language id used as matrix label
  RegionGroup group;

  std::string display() const { return std::string(name) + " (" + std::string(town) + ")"; }
};

using enum RegionGroup;

inline constexpr std::array<Dialect, kDialectCount> kDialects = {{
    {1, "Antambohoaka", "Mananjary", "mananjary", EastCenter},
    {2, "Antaisaka", "Vangaindrano", "vangaindrano", EastCenter},
    {3, "Antaimoro", "Manakara", "manakara", EastCenter},
    {4, "Zafisoro", "Farafangana", "farafangana", EastCenter},
    {5, "Bara", "Betroka", "betroka", SouthWest},
    {6, "Betsileo", "Fianarantsoa", "fianarantsoa", EastCenter},
    {7, "Vezo", "Toliara", "toliara", SouthWest},
    {8, "Sihanaka", "Ambatondranzaka", "ambatondranzaka", EastCenter},
    {9, "Tsimihety", "Mandritsara", "mandritsara", North},
    {10, "Mahafaly", "Ampanihy", "ampanihy", SouthWest},
    {11, "Merina", "Antananarivo", "antananarivo", EastCenter},
    {12, "Sakalava", "Morondava", "morondava", SouthWest},
    {13, "Betsimisaraka", "Fenoarivo-Est", "fenoarivo-est", North},
    {14, "Antanosy", "Tolagnaro", "tolagnaro", SouthWest},
    {15, "Antandroy", "Ambovombe", "ambovombe", South},
    {16, "Antankarana", "Vohemar", "vohemar", North},
    {17, "Masikoro", "Miary", "miary", SouthWest},
    {18, "Antankarana", "Antalaha", "antalaha", North},
    {19, "Sakalava", "Ambanja", "ambanja", North},
    {20, "Sakalava", "Majunga", "majunga", EastCenter},
    {21, "Sakalava", "Maintirano", "maintirano", SouthWest},
    {22, "Betsimisaraka", "Mahanoro", "mahanoro", EastCenter},
    {23, "Antankarana", "Ambilobe", "ambilobe", North},
}};

class DialectRegistry {
 public:
  const std::array<Dialect, kDialectCount>& entries() const noexcept { return kDialects; }
  std::size_t size() const noexcept { return kDialects.size(); }

  const Dialect& by_index(int appendix_index) const {
    if (appendix_index < 1 || appendix_index > static_cast<int>(kDialectCount)) {
      fail(ErrorKind::ContractViolation, "dialect index " + std::to_string(appendix_index) + " outside 1..23");
    }
    return kDialects[static_cast<std::size_t>(appendix_index - 1)];
  }

  const Dialect* find(std::string_view id) const {
    for (const auto& d : kDialects) {
      if (d.id == id) return &d;
    }
    return nullptr;
  }

  std::vector<std::string> ids() const {
    std::vector<std::string> out;
    for (const auto& d : kDialects) out.emplace_back(d.id);
    return out;
  }

  std::vector<std::string> display_names() const {
    std::vector<std::string> out;
    for (const auto& d : kDialects) out.push_back(d.display());
    return out;
  }
};

inline DialectRegistry load_registry() { return {}; }

/// The reference table as a distance matrix labeled by dialect id, in
/// registry order. Entries are the published integers divided by 1000.
inline DistanceMatrix load_reference_matrix() {
  if (table_checksum(kLowerTriangle) != kTableChecksum) {
    fail(ErrorKind::Validation, "embedded reference table failed its checksum");
  }
  constexpr std::size_t n = kDialectCount;
  std::vector<double> values(n * n, 0.0);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j < i; ++j) {
      const double v = static_cast<double>(table_entry(i, j)) / 1000.0;
      values[(i - 1) * n + (j - 1)] = v;
      values[(j - 1) * n + (i - 1)] = v;
    }
  }
  return DistanceMatrix(load_registry().ids(), std::move(values));
}

}  // namespace lexistat::fixtures
