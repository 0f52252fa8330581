#pragma once

// JSON and CSV forms of the library's values and reports. Subsets are sorted
// residue lists, big integers and high-precision reals are decimal strings.

#include <ostream>
#include <string>
#include <vector>

#include "addcount/cache.hpp"
#include "addcount/counting.hpp"
#include "addcount/extremal.hpp"
#include "addcount/fourier.hpp"
#include "addcount/pollard.hpp"
#include "addcount/zp.hpp"

namespace addcount {

Json to_json(Subset A);
// Validates residues against p; rejects duplicates.
Subset subset_from_json(const PrimeContext& ctx, const Json& j);

Json to_json(const AffineMap& m);
Json to_json(const OrbitCatalog& cat);
Json to_json(const CountVector& v);
CountVector count_vector_from_json(const Json& j);
Json to_json(const ThresholdProfile& prof);
Json to_json(const EqualityCase& eq);
Json to_json(const ExtremalityConditions& c);

Json to_json(const LatticeAngle& angle, int p);
Json to_json(const FourierProfile& prof);
Json to_json(const RhoValue& r);
Json to_json(const SpectralLevels& levels);
Json to_json(const PrimaryImage& img);
Json to_json(const SpectralValue& v);
Json to_json(const AngleCheck& c);
Json to_json(const TGoodScan& scan);

Json to_json(const SearchReport& rep);
Json to_json(const TheoremVerdict& v);
Json to_json(const ScanReport& rep);

// Space-separated residues: the CSV form of a subset.
std::string residues_field(Subset A);

inline constexpr int kCsvVersion = 1;

/// Fixed-column table; every CSV starts with a `version` column.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

void write_csv(std::ostream& out, const CsvTable& table);

CsvTable csv_table(const SearchReport& rep);
CsvTable csv_table(const TheoremVerdict& v);
CsvTable csv_table(const ScanReport& rep);
CsvTable csv_table(const OrbitCatalog& cat);

}  // namespace addcount
