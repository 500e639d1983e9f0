#pragma once

// Text formats: IST datasets, homology tables, pair and set results.
//
// IST: `>ID` starts a string, a line holding only `#` inserts a contig
// break, a line whose first non-blank character is `%` is a comment, an
// empty line is ignored, and every other line is one position given as
// whitespace-separated labels.

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "awci/model.hpp"

namespace awci {

/// Throws FormatError (with line and column) on malformed input, including
/// a blank position line, a duplicate string id, a position before the
/// first `>` and a misplaced contig break.
Dataset parse_ist(std::istream& in);
Dataset read_ist(const std::filesystem::path& path);

/// Throws ValidationError if a label cannot be written back unambiguously.
void write_ist(std::ostream& out, const Dataset& data);

struct HomologyRecord {
  std::string genome_a;
  std::string gene_a;
  std::string genome_b;
  std::string gene_b;
  double score = 0;

  auto operator<=>(const HomologyRecord&) const = default;
};

struct GeneOrder {
  std::string genome;
  std::vector<std::string> genes;
  std::vector<int> contig_breaks;  // a break b follows genes[b - 1]
};

struct HomologyTable {
  std::vector<HomologyRecord> records;
  std::vector<GeneOrder> genomes;

  /// Throws ValidationError on a dangling gene reference, a duplicate gene
  /// or genome, or a negative or non-finite score.
  void validate() const;
};

/// Tab-separated `genomeA geneA genomeB geneB score`; `#` and `%` lines are
/// comments.
std::vector<HomologyRecord> parse_homology(std::istream& in);
/// One gene id per line, `#` for a contig break.
GeneOrder parse_gene_order(std::istream& in, std::string genome);

/// One string per genome, one position per gene. Every gene carries the
/// private character `genome:gene`; every record with score >= threshold
/// adds the character `hit:N` to both genes it relates. Records are put in
/// canonical order first, so the result does not depend on record order.
Dataset homology_to_strings(const HomologyTable& table, double threshold);

/// Returns the number of bytes written; throws IoError on a failed sink.
std::size_t write_pairs(std::ostream& out, const Dataset& data,
                        std::span<const AwciPair> pairs);

struct SetsFile {
  int delta = 0;
  int quorum = 2;
  std::vector<AwciSet> sets;
};

std::size_t write_sets(std::ostream& out, const Dataset& data,
                       std::span<const AwciSet> sets,
                       const SearchParams& params);

/// Reads members, closed flags and pair indel counts; string ids are
/// resolved against `data`.
SetsFile parse_sets(std::istream& in, const Dataset& data);

}  // namespace awci
