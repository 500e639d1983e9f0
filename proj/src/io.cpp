#include "awci/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "awci/errors.hpp"

namespace awci {

namespace {

bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_blank(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_blank(s.back())) s.remove_suffix(1);
  return s;
}

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t k = 0;
  while (k < line.size()) {
    while (k < line.size() && is_blank(line[k])) ++k;
    const auto start = k;
    while (k < line.size() && !is_blank(line[k])) ++k;
    if (k > start) out.push_back({line.substr(start, k - start), start + 1});
  }
  return out;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto tab = line.find('\t', start);
    out.push_back(trim(line.substr(start, tab - start)));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return out;
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

template <typename T>
bool parse_number(std::string_view text, T& value) {
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  return ec == std::errc() && ptr == end;
}

// Writes through a buffer so the byte count and failure are known.
std::size_t flush(std::ostream& out, const std::string& text) {
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.flush();
  if (!out) throw IoError("failed writing output");
  return text.size();
}

}  // namespace

Dataset parse_ist(std::istream& in) {
  struct Pending {
    std::string id;
    std::vector<CharSet> positions;
    std::vector<int> breaks;
    std::vector<std::size_t> break_lines;
    std::size_t line = 0;
  };
  Dataset data;
  std::optional<Pending> current;
  std::set<std::string> ids;

  auto finish = [&] {
    if (!current) return;
    auto& s = *current;
    if (s.positions.empty())
      throw FormatError("string '" + s.id + "' has no positions", s.line, 1);
    const int n = static_cast<int>(s.positions.size());
    for (std::size_t b = 0; b < s.breaks.size(); ++b)
      if (s.breaks[b] >= n)
        throw FormatError("contig break after the last position of '" + s.id +
                              "'",
                          s.break_lines[b], 1);
    data.strings.emplace_back(std::move(s.id), std::move(s.positions),
                              std::move(s.breaks));
    current.reset();
  };

  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    strip_cr(raw);
    if (raw.empty()) continue;
    const auto line = std::string_view(raw);
    const auto body = trim(line);
    if (!body.empty() && body.front() == '%') continue;
    if (line.front() == '>') {
      finish();
      const auto id = trim(line.substr(1));
      if (id.empty()) throw FormatError("empty string id", line_no, 2);
      if (!ids.insert(std::string(id)).second)
        throw FormatError("duplicate string id '" + std::string(id) + "'",
                          line_no, 2);
      current = Pending{std::string(id), {}, {}, {}, line_no};
      continue;
    }
    if (!current)
      throw FormatError("position before the first '>' line", line_no, 1);
    if (body == "#") {
      const int b = static_cast<int>(current->positions.size());
      if (b == 0)
        throw FormatError("contig break before the first position", line_no,
                          1);
      if (!current->breaks.empty() && current->breaks.back() == b)
        throw FormatError("repeated contig break", line_no, 1);
      current->breaks.push_back(b);
      current->break_lines.push_back(line_no);
      continue;
    }
    const auto tokens = tokenize(line);
    if (tokens.empty())
      throw FormatError("position with an empty character set", line_no, 1);
    CharSet set;
    for (const auto& t : tokens) {
      if (t.text.front() == '>' || t.text.front() == '#' ||
          t.text.front() == '%')
        throw FormatError("label may not start with '" +
                              std::string(1, t.text.front()) + "'",
                          line_no, t.column);
      set.push_back(data.alphabet.intern(t.text));
    }
    current->positions.push_back(std::move(set));
  }
  finish();
  return data;
}

Dataset read_ist(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return parse_ist(in);
}

void write_ist(std::ostream& out, const Dataset& data) {
  std::string text;
  for (const auto& s : data.strings) {
    text += '>';
    text += s.id();
    text += '\n';
    auto next_break = s.contig_breaks().begin();
    for (int p = 1; p <= s.length(); ++p) {
      bool first = true;
      for (CharId c : s.at(p)) {
        const auto& label = data.alphabet.label(c);
        if (label.empty() || label.front() == '>' || label.front() == '#' ||
            label.front() == '%' ||
            std::any_of(label.begin(), label.end(),
                        [](char ch) { return is_blank(ch) || ch == '\n'; }))
          throw ValidationError("label '" + label + "' cannot be written");
        if (!first) text += ' ';
        text += label;
        first = false;
      }
      text += '\n';
      if (next_break != s.contig_breaks().end() && *next_break == p) {
        text += "#\n";
        ++next_break;
      }
    }
  }
  flush(out, text);
}

void HomologyTable::validate() const {
  std::unordered_map<std::string, std::set<std::string>> genes;
  for (const auto& g : genomes) {
    auto [it, inserted] = genes.try_emplace(g.genome);
    if (!inserted) throw ValidationError("duplicate genome '" + g.genome + "'");
    for (const auto& gene : g.genes)
      if (!it->second.insert(gene).second)
        throw ValidationError("duplicate gene '" + gene + "' in genome '" +
                              g.genome + "'");
  }
  auto check = [&](const std::string& genome, const std::string& gene) {
    auto it = genes.find(genome);
    if (it == genes.end() || !it->second.count(gene))
      throw ValidationError("dangling gene reference " + genome + ":" + gene);
  };
  for (const auto& r : records) {
    check(r.genome_a, r.gene_a);
    check(r.genome_b, r.gene_b);
    if (!std::isfinite(r.score) || r.score < 0)
      throw ValidationError("invalid score for " + r.genome_a + ":" +
                            r.gene_a + " / " + r.genome_b + ":" + r.gene_b);
  }
}

std::vector<HomologyRecord> parse_homology(std::istream& in) {
  std::vector<HomologyRecord> out;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    strip_cr(raw);
    const auto body = trim(raw);
    if (body.empty() || body.front() == '#' || body.front() == '%') continue;
    const auto fields = split_tabs(raw);
    if (fields.size() != 5)
      throw FormatError("expected 5 tab-separated fields, found " +
                            std::to_string(fields.size()),
                        line_no, 1);
    for (std::size_t f = 0; f < 4; ++f)
      if (fields[f].empty())
        throw FormatError("empty field", line_no, f + 1);
    HomologyRecord r{std::string(fields[0]), std::string(fields[1]),
                     std::string(fields[2]), std::string(fields[3]), 0};
    if (!parse_number(fields[4], r.score) || !std::isfinite(r.score) ||
        r.score < 0)
      throw FormatError("invalid score '" + std::string(fields[4]) + "'",
                        line_no, raw.rfind('\t') + 2);
    out.push_back(std::move(r));
  }
  return out;
}

GeneOrder parse_gene_order(std::istream& in, std::string genome) {
  GeneOrder order;
  order.genome = std::move(genome);
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    strip_cr(raw);
    const auto body = trim(raw);
    if (body.empty() || body.front() == '%') continue;
    if (body == "#") {
      const int b = static_cast<int>(order.genes.size());
      if (b == 0 || (!order.contig_breaks.empty() &&
                     order.contig_breaks.back() == b))
        throw FormatError("misplaced contig break", line_no, 1);
      order.contig_breaks.push_back(b);
      continue;
    }
    if (tokenize(body).size() != 1)
      throw FormatError("expected one gene id per line", line_no, 1);
    order.genes.emplace_back(body);
  }
  if (!order.contig_breaks.empty() &&
      order.contig_breaks.back() == static_cast<int>(order.genes.size()))
    order.contig_breaks.pop_back();
  return order;
}

Dataset homology_to_strings(const HomologyTable& table, double threshold) {
  table.validate();
  std::map<std::pair<std::string, std::string>, std::vector<std::string>>
      labels;
  for (const auto& g : table.genomes)
    for (const auto& gene : g.genes)
      labels[{g.genome, gene}].push_back(g.genome + ":" + gene);

  auto records = table.records;
  for (auto& r : records)
    if (std::tie(r.genome_b, r.gene_b) < std::tie(r.genome_a, r.gene_a)) {
      std::swap(r.genome_a, r.genome_b);
      std::swap(r.gene_a, r.gene_b);
    }
  std::sort(records.begin(), records.end());
  std::size_t minted = 0;
  for (const auto& r : records) {
    if (!(r.score >= threshold)) continue;
    const auto label = "hit:" + std::to_string(++minted);
    labels[{r.genome_a, r.gene_a}].push_back(label);
    labels[{r.genome_b, r.gene_b}].push_back(label);
  }

  Dataset data;
  for (const auto& g : table.genomes) {
    std::vector<std::vector<std::string>> sets;
    sets.reserve(g.genes.size());
    for (const auto& gene : g.genes) sets.push_back(labels[{g.genome, gene}]);
    data.strings.push_back(
        build_string(data.alphabet, g.genome, sets, g.contig_breaks));
  }
  return data;
}

std::size_t write_pairs(std::ostream& out, const Dataset& data,
                        std::span<const AwciPair> pairs) {
  std::string text =
      "#awci-pairs v1\n"
      "#stringA\tiA\tjA\tstringB\tkB\tlB\tindels\tsizeA\tsizeB\tcommonSetSize\n";
  for (const auto& p : pairs) {
    text += data[p.left.string].id();
    for (int v : {p.left.i, p.left.j}) {
      text += '\t';
      text += std::to_string(v);
    }
    text += '\t';
    text += data[p.right.string].id();
    for (long v : {long{p.right.i}, long{p.right.j}, long{p.indel_total},
                   long{p.size_left}, long{p.size_right},
                   static_cast<long>(p.common_set.size())}) {
      text += '\t';
      text += std::to_string(v);
    }
    text += '\n';
  }
  return flush(out, text);
}

std::size_t write_sets(std::ostream& out, const Dataset& data,
                       std::span<const AwciSet> sets,
                       const SearchParams& params) {
  std::string text = "#awci-sets v1\n";
  std::size_t n = 0;
  for (const auto& set : sets) {
    text += "set " + std::to_string(++n) +
            " closed=" + (set.closed ? "true" : "false") +
            " delta=" + std::to_string(params.delta) +
            " quorum=" + std::to_string(params.quorum) +
            " members=" + std::to_string(set.members.size()) + " indels=";
    for (std::size_t k = 0; k < set.pair_indels.size(); ++k) {
      if (k) text += ',';
      text += std::to_string(set.pair_indels[k]);
    }
    text += '\n';
    for (const auto& m : set.members)
      text += data[m.string].id() + "\t" + std::to_string(m.i) + "\t" +
              std::to_string(m.j) + "\n";
    text += "end\n";
  }
  return flush(out, text);
}

SetsFile parse_sets(std::istream& in, const Dataset& data) {
  SetsFile file;
  std::string raw;
  std::size_t line_no = 0;
  if (!std::getline(in, raw)) throw FormatError("empty sets file", 1, 1);
  ++line_no;
  strip_cr(raw);
  if (raw != "#awci-sets v1")
    throw FormatError("missing '#awci-sets v1' header", line_no, 1);

  bool params_seen = false;
  std::optional<AwciSet> current;
  std::size_t expected_members = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    strip_cr(raw);
    if (raw.empty()) continue;
    if (!current) {
      const auto tokens = tokenize(raw);
      if (tokens.empty() || tokens[0].text != "set")
        throw FormatError("expected a 'set' record", line_no, 1);
      current.emplace();
      bool has_closed = false;
      bool has_members = false;
      for (std::size_t k = 2; k < tokens.size(); ++k) {
        const auto t = tokens[k].text;
        const auto eq = t.find('=');
        if (eq == std::string_view::npos)
          throw FormatError("expected key=value", line_no, tokens[k].column);
        const auto key = t.substr(0, eq);
        const auto value = t.substr(eq + 1);
        int number = 0;
        auto bad = [&] {
          return FormatError("invalid value for '" + std::string(key) + "'",
                             line_no, tokens[k].column + eq + 1);
        };
        if (key == "closed") {
          if (value != "true" && value != "false") throw bad();
          current->closed = value == "true";
          has_closed = true;
        } else if (key == "delta" || key == "quorum") {
          if (!parse_number(value, number)) throw bad();
          int& slot = key == "delta" ? file.delta : file.quorum;
          if (params_seen && slot != number)
            throw FormatError("parameters differ between records", line_no,
                              tokens[k].column);
          slot = number;
        } else if (key == "members") {
          if (!parse_number(value, expected_members)) throw bad();
          has_members = true;
        } else if (key == "indels") {
          std::size_t start = 0;
          while (start < value.size()) {
            auto comma = value.find(',', start);
            if (comma == std::string_view::npos) comma = value.size();
            if (!parse_number(value.substr(start, comma - start), number))
              throw bad();
            current->pair_indels.push_back(number);
            start = comma + 1;
          }
        } else {
          throw FormatError("unknown key '" + std::string(key) + "'", line_no,
                            tokens[k].column);
        }
      }
      if (!has_closed || !has_members)
        throw FormatError("set record lacks closed= or members=", line_no, 1);
      params_seen = true;
      continue;
    }
    if (raw == "end") {
      if (current->members.size() != expected_members)
        throw FormatError("member count does not match members=", line_no, 1);
      file.sets.push_back(std::move(*current));
      current.reset();
      continue;
    }
    const auto fields = split_tabs(raw);
    if (fields.size() != 3)
      throw FormatError("expected 'id<TAB>i<TAB>j'", line_no, 1);
    const auto x = data.find(fields[0]);
    if (!x)
      throw FormatError("unknown string id '" + std::string(fields[0]) + "'",
                        line_no, 1);
    AnchoredInterval member{*x, 0, 0};
    if (!parse_number(fields[1], member.i) ||
        !parse_number(fields[2], member.j) ||
        !data[*x].is_valid_interval(member.i, member.j))
      throw FormatError("invalid interval", line_no, fields[0].size() + 2);
    current->members.push_back(member);
  }
  if (current) throw FormatError("unterminated set record", line_no, 1);
  return file;
}

}  // namespace awci
