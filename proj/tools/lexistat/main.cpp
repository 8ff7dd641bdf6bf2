// lexistat: lexical distances, UPGMA trees and dialect analyses from
// Swadesh lists.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lexistat/lexistat.hpp"
#include "manifest.hpp"

namespace fs = std::filesystem;
using namespace lexistat;

namespace {

#ifndef LEXISTAT_VERSION
#define LEXISTAT_VERSION "dev"
#endif

constexpr std::string_view kFixtureArg = "@fixture";

enum ExitCode { kOk = 0, kValidation = 1, kIo = 2, kContract = 3 };

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Io: return kIo;
    case ErrorKind::ContractViolation: return kContract;
    default: return kValidation;
  }
}

struct Globals {
  int meanings = kDefaultMeaningCount;
  std::string format;
  bool quiet = false;
  unsigned threads = 0;
};

struct Output {
  std::string path;  // empty → stdout
};

void note(const Globals& g, const std::string& msg) {
  if (!g.quiet) std::cerr << msg << '\n';
}

std::string format_or(const Globals& g, std::string_view fallback, std::initializer_list<std::string_view> allowed) {
  std::string f = g.format.empty() ? std::string(fallback) : g.format;
  for (auto a : allowed) {
    if (a == f) return f;
  }
  std::string list;
  for (auto a : allowed) list += (list.empty() ? "" : "|") + std::string(a);
  fail(ErrorKind::Validation, "--format must be one of " + list + " for this command");
}

cli::RunManifest new_manifest(std::string command, const Globals& g) {
  cli::RunManifest m;
  m.command = std::move(command);
  m.version = LEXISTAT_VERSION;
  m.parameters["meanings"] = g.meanings;
  return m;
}

/// Writes to the output file (plus manifest) or to stdout.
void emit(const Output& out, cli::RunManifest& manifest, const std::string& contents) {
  if (out.path.empty()) {
    std::cout << contents;
    return;
  }
  manifest.write_output(out.path, contents);
  manifest.save(out.path);
}

std::vector<WordList> load_lists(const std::string& dir, const Globals& g, cli::RunManifest& manifest) {
  auto lists = load_word_list_dir(dir, g.meanings);
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".tsv") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& f : files) manifest.add_input(f.string(), read_file(f));
  return lists;
}

DistanceMatrix load_matrix(const std::string& path, cli::RunManifest& manifest) {
  if (path == kFixtureArg) {
    auto m = fixtures::load_reference_matrix();
    manifest.add_input(std::string(kFixtureArg), to_csv(m));
    return m;
  }
  const auto text = read_file(path);
  manifest.add_input(path, text);
  return read_matrix(text);
}

// ---------------------------------------------------------------------------

int cmd_distances(const Globals& g, const std::string& dir, const Output& out) {
  const auto format = format_or(g, "csv", {"csv", "json", "appendix"});
  auto manifest = new_manifest("distances", g);
  manifest.parameters["format"] = format;
  const auto lists = load_lists(dir, g, manifest);
  if (lists.size() < 2) fail(ErrorKind::Validation, "need at least two word lists in " + dir + ", found " + std::to_string(lists.size()));
  validate_corpus(lists);
  const auto m = build_matrix(lists, {g.threads});
  emit(out, manifest, write_matrix(m, *parse_matrix_format(format)));
  note(g, "distances: " + std::to_string(m.size()) + " languages, " + std::to_string(m.pair_count()) + " pairs");
  return kOk;
}

struct TreeArgs {
  std::string matrix;
  int root_year = 650;
  int collection_year = 2010;
  double scale = 1000.0;
};

int cmd_tree(const Globals& g, const TreeArgs& a, const Output& out) {
  auto manifest = new_manifest("tree", g);
  manifest.parameters["root_year"] = a.root_year;
  manifest.parameters["collection_year"] = a.collection_year;
  manifest.parameters["scale"] = a.scale;
  manifest.parameters["separation_time_rule"] = kSeparationTimeRule;
  const Calibration calibration{a.collection_year, a.root_year};
  if (!(calibration.root_year < calibration.collection_year)) {
    fail(ErrorKind::Validation, "--root-year must be earlier than --collection-year");
  }
  const auto m = load_matrix(a.matrix, manifest);
  const auto times = to_separation_times(m, a.scale);
  const auto tree = calibrate(upgma(times), calibration);
  const auto newick = emit_newick(tree) + '\n';
  const auto json = tree_to_json(tree, {a.scale, a.matrix}).dump(2) + '\n';
  if (out.path.empty()) {
    std::cout << newick;
    return kOk;
  }
  const fs::path base(out.path);
  auto nwk = base;
  nwk += ".nwk";
  auto js = base;
  js += ".json";
  manifest.write_output(nwk, newick);
  manifest.write_output(js, json);
  manifest.save(base);
  note(g, "tree: " + std::to_string(tree.leaf_count()) + " leaves, root " + std::to_string(a.root_year) + " CE");
  return kOk;
}

int cmd_averages(const Globals& g, const std::string& matrix, const Output& out) {
  const auto format = format_or(g, "csv", {"csv", "json"});
  auto manifest = new_manifest("averages", g);
  manifest.parameters["format"] = format;
  const auto m = load_matrix(matrix, manifest);
  const auto report = average_distances(m);
  const auto registry = fixtures::load_registry();
  emit(out, manifest, format == "csv" ? averages_to_csv(report, registry) : averages_to_json(report, registry));
  for (const auto& tie : report.ties) {
    std::string names;
    for (const auto& t : tie) names += (names.empty() ? "" : ", ") + t;
    note(g, "averages: tie between " + names + " (ordered by language id)");
  }
  return kOk;
}

struct RefArgs {
  std::string dir;
  std::string ref1;
  std::string ref2;
};

int cmd_compare_ref(const Globals& g, const RefArgs& a, const Output& out) {
  const auto format = format_or(g, "csv", {"csv", "json"});
  auto manifest = new_manifest("compare-ref", g);
  manifest.parameters["format"] = format;
  manifest.parameters["ratio"] = "ref1/ref2";
  const auto dialects = load_lists(a.dir, g, manifest);
  if (dialects.empty()) fail(ErrorKind::Validation, "no word lists in " + a.dir);
  const auto ref1 = load_word_list(a.ref1, g.meanings);
  const auto ref2 = load_word_list(a.ref2, g.meanings);
  manifest.add_input(a.ref1, read_file(a.ref1));
  manifest.add_input(a.ref2, read_file(a.ref2));
  const auto rc = reference_comparison(dialects, ref1, ref2);
  const auto registry = fixtures::load_registry();
  emit(out, manifest, format == "csv" ? refcomp_to_csv(rc) : refcomp_to_json(rc, registry));
  const auto dom = dominance_check(rc);
  note(g, std::string("compare-ref: dominance ") + (dom.holds ? "holds" : "fails") + ", margin " + fmt::fixed(dom.margin, 6));
  for (const auto& r : rc.records) {
    if (!r.ratio) note(g, "compare-ref: " + r.language_id + " is identical to " + rc.ref2_id + "; ratio undefined");
  }
  return kOk;
}

int cmd_fixture_export(const Globals& g, const Output& out) {
  const auto format = format_or(g, "appendix", {"appendix", "csv", "json"});
  auto manifest = new_manifest("fixture export", g);
  manifest.parameters["format"] = format;
  const auto m = fixtures::load_reference_matrix();
  manifest.add_input(std::string(kFixtureArg), to_csv(m));
  emit(out, manifest, write_matrix(m, *parse_matrix_format(format), fixtures::load_registry().display_names()));
  return kOk;
}

int cmd_validate(const Globals& g, const std::string& dir, std::size_t floor, const Output& out) {
  auto manifest = new_manifest("validate", g);
  manifest.parameters["coverage_floor"] = floor;
  const auto lists = load_lists(dir, g, manifest);
  if (lists.size() < 2) fail(ErrorKind::Validation, "need at least two word lists in " + dir + ", found " + std::to_string(lists.size()));
  const auto report = validate_corpus(lists, {floor});
  for (const auto& l : report.languages) {
    std::string line = l.language_id + ": coverage " + std::to_string(l.coverage);
    if (!l.missing.empty()) {
      line += ", missing";
      for (int i : l.missing) line += ' ' + std::to_string(i);
    }
    note(g, line);
  }
  for (const auto& w : report.warnings) note(g, "warning: " + w.language_id + ": " + w.message);
  if (!out.path.empty()) emit(out, manifest, validation_to_json(report));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lexical distances, UPGMA trees and dialect analyses from Swadesh lists"};
  app.set_version_flag("--version", LEXISTAT_VERSION);
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--meanings,-M", g.meanings, "Number of meanings per list")->check(CLI::PositiveNumber);
  app.add_option("--format,-f", g.format, "Output format: csv|json|appendix (matrices), csv|json (reports)");
  app.add_flag("--quiet,-q", g.quiet, "Suppress diagnostics on stderr");
  app.add_option("--threads", g.threads, "Worker threads for pairwise distances (0 = all cores)");

  Output out;
  std::function<int()> run;

  std::string lists_dir;
  auto* distances = app.add_subcommand("distances", "Pairwise lexical distance matrix from a directory of TSV lists");
  distances->add_option("lists", lists_dir, "Directory of *.tsv word lists")->required();
  distances->add_option("-o,--output", out.path, "Output file (stdout if omitted)");
  distances->callback([&] { run = [&] { return cmd_distances(g, lists_dir, out); }; });

  TreeArgs tree_args;
  auto* tree = app.add_subcommand("tree", "Calibrated UPGMA tree from a distance matrix");
  tree->add_option("matrix", tree_args.matrix, "Matrix file (csv|json|appendix) or @fixture")->required();
  tree->add_option("--root-year", tree_args.root_year, "Calendar year of the root")->capture_default_str();
  tree->add_option("--collection-year", tree_args.collection_year, "Calendar year of the leaves")->capture_default_str();
  tree->add_option("--scale", tree_args.scale, "Time scale of the logarithmic rule")->capture_default_str();
  tree->add_option("-o,--output", out.path, "Output base path: writes BASE.nwk and BASE.json");
  tree->callback([&] { run = [&] { return cmd_tree(g, tree_args, out); }; });

  std::string matrix_path;
  auto* averages = app.add_subcommand("averages", "Average distance of each language from all the others");
  averages->add_option("matrix", matrix_path, "Matrix file or @fixture")->required();
  averages->add_option("-o,--output", out.path, "Output file (stdout if omitted)");
  averages->callback([&] { run = [&] { return cmd_averages(g, matrix_path, out); }; });

  RefArgs ref_args;
  auto* compare = app.add_subcommand("compare-ref", "Distances of each dialect to two reference languages");
  compare->add_option("lists", ref_args.dir, "Directory of dialect *.tsv word lists")->required();
  compare->add_option("--ref1,--malay", ref_args.ref1, "Reference list for the ratio numerator")->required();
  compare->add_option("--ref2,--maanyan", ref_args.ref2, "Reference list for the ratio denominator")->required();
  compare->add_option("-o,--output", out.path, "Output file (stdout if omitted)");
  compare->callback([&] { run = [&] { return cmd_compare_ref(g, ref_args, out); }; });

  auto* fixture = app.add_subcommand("fixture", "Embedded reference data");
  fixture->require_subcommand(1);
  auto* fixture_export = fixture->add_subcommand("export", "Write the embedded 23-dialect matrix");
  fixture_export->add_option("-o,--output", out.path, "Output file (stdout if omitted)");
  fixture_export->callback([&] { run = [&] { return cmd_fixture_export(g, out); }; });

  std::size_t floor = 100;
  auto* validate = app.add_subcommand("validate", "Check a directory of word lists");
  validate->add_option("lists", lists_dir, "Directory of *.tsv word lists")->required();
  validate->add_option("--floor", floor, "Coverage below which a warning is raised")->capture_default_str();
  validate->add_option("-o,--output", out.path, "Write the report as JSON");
  validate->callback([&] { run = [&] { return cmd_validate(g, lists_dir, floor, out); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kValidation;
  }

  try {
    return run ? run() : kValidation;
  } catch (const Error& e) {
    std::cerr << "lexistat: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "lexistat: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "lexistat: " << e.what() << '\n';
    return kContract;
  }
}
