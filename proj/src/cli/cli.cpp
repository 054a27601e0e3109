#include "infoid/cli/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "infoid/analog/distance.hpp"
#include "infoid/disambiguation/resolve.hpp"
#include "infoid/identity/migration.hpp"
#include "infoid/interpretation/digital.hpp"
#include "infoid/interpretation/recognize.hpp"
#include "infoid/structure/text_layout.hpp"

namespace infoid::cli {

namespace {

namespace fs = std::filesystem;

struct InputError : Error {
  using Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << bytes)) throw InputError("cannot write " + path);
}

std::string guess_type_tag(const std::string& path) {
  auto ext = fs::path(path).extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext == ".html" || ext == ".htm" ? "text/html" : "text/plain; charset=utf-8";
}

DigitalObject load_object(const std::string& path, const std::string& type_tag) {
  return {fs::path(path).filename().string(), read_file(path), type_tag.empty() ? guess_type_tag(path) : type_tag};
}

InformationCarrier load_carrier(const std::string& path) {
  std::istringstream in(read_file(path));
  return read_carrier_file(in);
}

SensoryImpression load_impression(const std::string& path, const Rational& scale) {
  std::istringstream in(read_file(path));
  return {fs::path(path).filename().string(), read_pgm(in), scale};
}

SymbolStructure load_canonical(const std::string& path) { return parse_canonical(read_file(path)); }

PhysicalProjectionMethod method_named(const std::string& name, const Rational& scale) {
  if (name == "daylight") return daylight_scan(scale);
  if (name == "infrared") return infrared_scan(scale);
  throw InputError("unknown projection method '" + name + "' (daylight, infrared)");
}

const SymbolFont& font_for(const FormatRegistry& registry, const InformationFormat& format, const std::string& font_id) {
  if (!font_id.empty()) {
    if (std::find(format.font_ids.begin(), format.font_ids.end(), font_id) == format.font_ids.end())
      throw InputError("font " + font_id + " is not part of format " + format.id);
    return registry.get_font(font_id);
  }
  if (format.default_font) return registry.get_font(*format.default_font);
  if (format.font_ids.empty()) throw InputError("format " + format.id + " has no fonts");
  return registry.get_font(format.font_ids.front());
}

int exit_for(Verdict v) {
  switch (v) {
    case Verdict::Identical: return kExitOk;
    case Verdict::Different: return kExitDifferent;
    case Verdict::Undefined: return kExitUndefined;
  }
  return kExitUsage;
}

int exit_for(StructureStatus s) { return s == StructureStatus::Undefined ? kExitUndefined : kExitOk; }

void emit_canonical(const SymbolStructure& s, const std::string& out_path, std::ostream& out) {
  auto c = canonicalize(s);
  if (out_path.empty()) out << c.bytes;
  else write_file(out_path, c.bytes);
}

// `kind<TAB>path<TAB>typeTagOrMethod`; paths are relative to the manifest.
std::vector<MigrationArtifact> load_manifest(const std::string& path) {
  std::istringstream in(read_file(path));
  fs::path base = fs::path(path).parent_path();
  std::vector<MigrationArtifact> chain;
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, '\t')) f.push_back(field);
    if (f.size() != 3) throw InputError(path + ":" + std::to_string(n) + ": expected kind, path and type/method");
    std::string file = (base / f[1]).string();
    if (f[0] == "digital") {
      chain.emplace_back(load_object(file, f[2]));
    } else if (f[0] == "carrier" || f[0] == "impression") {
      // daylight | infrared, optionally followed by ",scale=p/q"; impressions take only the scale.
      std::string method = f[2];
      Rational scale(1, 1);
      auto pos = method.find("scale=");
      if (pos != std::string::npos) {
        scale = Rational::parse(method.substr(pos + 6));
        method = method.substr(0, pos);
        if (!method.empty() && method.back() == ',') method.pop_back();
      }
      if (f[0] == "carrier") {
        chain.emplace_back(CarrierReading{load_carrier(file), method_named(method, scale)});
      } else {
        if (!method.empty()) throw InputError(path + ":" + std::to_string(n) + ": impressions take only scale=p/q");
        chain.emplace_back(load_impression(file, scale));
      }
    } else {
      throw InputError(path + ":" + std::to_string(n) + ": unknown artifact kind '" + f[0] + "'");
    }
  }
  if (chain.empty()) throw InputError(path + ": manifest lists no artifacts");
  return chain;
}

std::string fmt17(double d) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", d);
  return buf;
}

struct Options {
  std::vector<std::string> defs;
  std::string format_id;
  std::string font_id;
  std::string in;
  std::string type_tag;
  std::string out;
  std::string carrier;
  std::string pgm;
  std::string method = "daylight";
  std::string scale = "1";
  int width = 400;
  std::string canon;
  std::string validate;
  std::string serialize;
  std::string resolution;
  std::vector<std::string> files;
  std::string lexicon;
  std::string grammar;
  bool undefined = false;
  bool show = false;
  std::string grid = "4x4";
  double threshold = -1;
  std::string vectors;
};

FormatRegistry make_registry(const Options& o) {
  FormatRegistry r = FormatRegistry::with_builtins();
  for (const auto& path : o.defs) r.parse_format_definition(read_file(path));
  return r;
}

int cmd_formats(const Options& o, std::ostream& out) {
  FormatRegistry reg = make_registry(o);
  if (!o.serialize.empty()) {
    out << reg.serialize_format_definition(o.serialize);
    return kExitOk;
  }
  if (!o.validate.empty()) {
    std::optional<Rational> r;
    if (!o.resolution.empty()) r = Rational::parse(o.resolution);
    auto report = reg.validate_format(o.validate, r);
    out << "format\t" << o.validate << "\nresolution\t" << report.resolution.str() << '\n';
    for (const auto& d : report.disjointness)
      out << "disjointness\t" << d.type_id << '\t' << d.set_a << '\t' << d.set_b << '\n';
    for (const auto& c : report.collisions)
      out << "collision\t" << c.type_a << '@' << c.font_a << '\t' << c.type_b << '@' << c.font_b << '\n';
    for (const auto& c : report.style_collisions)
      out << "style-collision\t" << c.type_a << '@' << c.font_a << '\t' << c.font_b << '\n';
    for (const auto& l : report.layout_issues) out << "layout\t" << l << '\n';
    out << (report.valid() ? "valid" : "invalid") << '\n';
    return report.valid() ? kExitOk : kExitDifferent;
  }
  for (const auto& id : reg.format_ids()) {
    const auto& f = reg.get_format(id);
    out << id << "\tfonts=" << f.font_ids.size() << "\tmeaningful=";
    auto names = f.meaningful.names();
    for (std::size_t i = 0; i < names.size(); ++i) out << (i ? "," : "") << names[i];
    out << '\n';
  }
  return kExitOk;
}

int cmd_extract(const Options& o, std::ostream& out) {
  FormatRegistry reg = make_registry(o);
  auto s = digital_interpret(load_object(o.in, o.type_tag), reg.get_format(o.format_id), reg);
  emit_canonical(s, o.out, out);
  return exit_for(s.status);
}

int cmd_render(const Options& o, std::ostream& out) {
  FormatRegistry reg = make_registry(o);
  const auto& format = reg.get_format(o.format_id);
  SymbolStructure s = !o.canon.empty() ? load_canonical(o.canon)
                                       : digital_interpret(load_object(o.in, o.type_tag), format, reg);
  InformationCarrier c = write_carrier(s, format, font_for(reg, format, o.font_id), o.width, reg,
                                       o.canon.empty() ? fs::path(o.in).stem().string() : fs::path(o.canon).stem().string());
  if (o.out.empty()) write_carrier_file(out, c);
  else write_file(o.out, to_carrier_file(c));
  if (!o.pgm.empty()) write_file(o.pgm, to_pgm(physical_project(c, method_named(o.method, Rational::parse(o.scale))).pixels));
  return kExitOk;
}

int cmd_recognize(const Options& o, std::ostream& out) {
  FormatRegistry reg = make_registry(o);
  Rational scale = Rational::parse(o.scale);
  if (o.carrier.empty() == o.pgm.empty()) throw InputError("give exactly one of --carrier and --pgm");
  SensoryImpression imp = !o.carrier.empty() ? physical_project(load_carrier(o.carrier), method_named(o.method, scale))
                                             : load_impression(o.pgm, scale);
  auto s = recognize(imp, reg.get_format(o.format_id), reg);
  if (o.show) out << display_text(s, reg.alphabet(o.format_id)) << '\n';
  if (!o.show || !o.out.empty()) emit_canonical(s, o.out, out);
  return exit_for(s.status);
}

int cmd_compare(const Options& o, std::ostream& out) {
  if (o.files.size() != 2) throw InputError("compare takes two canonical files");
  auto v = identical(load_canonical(o.files[0]), load_canonical(o.files[1]));
  out << verdict_name(v.value) << '\n';
  for (const auto& d : v.diff) out << d.path << '\t' << d.left << '\t' << d.right << '\n';
  return exit_for(v.value);
}

int cmd_resolve(const Options& o, std::ostream& out) {
  FormatRegistry reg = make_registry(o);
  SymbolStructure s = load_canonical(o.in);
  Lexicon lex = parse_lexicon(read_file(o.lexicon), fs::path(o.lexicon).stem().string());
  std::optional<GrammarRules> grammar;
  if (!o.grammar.empty()) {
    grammar = parse_grammar(read_file(o.grammar), fs::path(o.grammar).stem().string());
    check_grammar(*grammar, lex);
  }
  if (o.undefined) s = resolve_undefined(s, lex, reg);
  s = resolve(s, lex, grammar ? &*grammar : nullptr, reg);
  out << display_text(s, reg.alphabet(s.format_id)) << '\n';
  for (const auto& n : s.provenance) {
    out << "note\t/" << n.path << '\t' << n.level << '\t' << n.outcome << '\t';
    for (std::size_t i = 0; i < n.survivors.size(); ++i) out << (i ? "," : "") << n.survivors[i];
    out << '\n';
  }
  out << "status\t" << status_name(s.status) << '\n';
  if (!o.out.empty()) write_file(o.out, canonicalize(s).bytes);
  return exit_for(s.status);
}

int cmd_verify_chain(const Options& o, std::ostream& out) {
  FormatRegistry reg = make_registry(o);
  auto chain = load_manifest(o.in);
  auto report = verify_migration(chain, reg.get_format(o.format_id), reg);
  for (std::size_t i = 0; i < report.chain.size(); ++i) {
    const auto& st = report.chain[i];
    out << "step " << i + 1 << '\t' << st.artifact_id << '\t' << st.digest << '\t' << status_name(st.status) << '\n';
  }
  out << verdict_name(report.verdict.value);
  if (report.first_divergence) out << " at step " << *report.first_divergence + 1;
  out << '\n';
  for (const auto& d : report.verdict.diff) out << d.path << '\t' << d.left << '\t' << d.right << '\n';
  return exit_for(report.verdict.value);
}

int cmd_distance(const Options& o, std::ostream& out) {
  if (o.files.size() < 2) throw InputError("distance takes at least two PGM files");
  int rows = 0, cols = 0;
  char x = 0;
  std::istringstream gs(o.grid);
  if (!(gs >> rows >> x >> cols) || x != 'x' || !gs.eof()) throw InputError("--grid expects RxC");
  std::vector<FeatureVector> v;
  for (const auto& f : o.files) v.push_back(feature_vector(load_impression(f, Rational(1, 1)), rows, cols));
  if (!o.vectors.empty()) {
    std::string text;
    for (const auto& fv : v) text += format_feature_line(fv) + "\n";
    write_file(o.vectors, text);
  }
  if (v.size() == 2) {
    out << "distance\t" << fmt17(distance(v[0], v[1])) << '\n';
    return kExitOk;
  }
  MigrationBudget budget{std::max(0.0, o.threshold), 0};
  for (std::size_t i = 1; i < v.size(); ++i) {
    double d = distance(v[i - 1], v[i]);
    budget = migration_budget_update(budget, d);
    out << "step " << i << '\t' << fmt17(d) << '\n';
  }
  out << "spent\t" << fmt17(budget.spent) << '\n';
  out << "direct\t" << fmt17(distance(v.front(), v.back())) << '\n';
  if (o.threshold >= 0) out << "threshold\t" << fmt17(o.threshold) << "\nexhausted\t" << (budget.exhausted() ? "yes" : "no") << '\n';
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Decide whether carriers hold the same information object under a format"};
  app.name("infoid");
  app.require_subcommand(1, 1);
  app.fallthrough();
  Options o;
  app.add_option("--defs", o.defs, "Extra format definition file (repeatable)")->check(CLI::ExistingFile);

  std::function<int()> action;
  auto sub = [&](const char* name, const char* desc, int (*fn)(const Options&, std::ostream&)) {
    auto* s = app.add_subcommand(name, desc);
    s->callback([&, fn] { action = [&, fn] { return fn(o, out); }; });
    return s;
  };
  auto format_opt = [&](CLI::App* s) { s->add_option("--format", o.format_id, "Information format id")->required(); };

  auto* formats = sub("formats", "List formats, or validate or print one", cmd_formats);
  formats->add_option("--validate", o.validate, "Format id to validate");
  formats->add_option("--resolution", o.resolution, "Resolution scale p/q for --validate");
  formats->add_option("--serialize", o.serialize, "Format id to print as a definition document");

  auto* extract = sub("extract", "Decode a digital object into a canonical structure", cmd_extract);
  format_opt(extract);
  extract->add_option("--in", o.in, "Input bytes")->required();
  extract->add_option("--type", o.type_tag, "Type tag; guessed from the extension if omitted");
  extract->add_option("--out", o.out, "Canonical output file (stdout if omitted)");

  auto* render = sub("render", "Lay a digital object or canonical structure out on a carrier", cmd_render);
  format_opt(render);
  auto* render_in = render->add_option("--in", o.in, "Input bytes");
  render->add_option("--canon", o.canon, "Canonical structure instead of --in")->excludes(render_in);
  render->add_option("--type", o.type_tag, "Type tag for --in");
  render->add_option("--font", o.font_id, "Base font (format default if omitted)");
  render->add_option("--width", o.width, "Page width in pixels")->check(CLI::PositiveNumber);
  render->add_option("--out", o.out, "Carrier file (stdout if omitted)");
  render->add_option("--pgm", o.pgm, "Also write the scanned impression as PGM");
  render->add_option("--method", o.method, "Projection method for --pgm: daylight or infrared");
  render->add_option("--scale", o.scale, "Resolution scale p/q for --pgm");

  auto* recog = sub("recognize", "Scan a carrier or read a PGM and recognize its structure", cmd_recognize);
  format_opt(recog);
  recog->add_option("--carrier", o.carrier, "Carrier file");
  recog->add_option("--pgm", o.pgm, "Impression file");
  recog->add_option("--method", o.method, "Projection method for --carrier: daylight or infrared");
  recog->add_option("--scale", o.scale, "Resolution scale p/q");
  recog->add_option("--out", o.out, "Canonical output file (stdout if omitted)");
  recog->add_flag("--show", o.show, "Print the recognized text");

  auto* compare = sub("compare", "Compare two canonical structures", cmd_compare);
  compare->add_option("files", o.files, "Two canonical files")->expected(2)->required();

  auto* res = sub("resolve", "Narrow ambiguities and fill UNDEFINED symbols with a lexicon", cmd_resolve);
  res->add_option("--in", o.in, "Canonical input file")->required();
  res->add_option("--lexicon", o.lexicon, "Lexicon file")->required();
  res->add_option("--grammar", o.grammar, "Grammar file");
  res->add_flag("--undefined", o.undefined, "Fill UNDEFINED occurrences first");
  res->add_option("--out", o.out, "Canonical output file");

  auto* chain = sub("verify-chain", "Check every artifact of a migration chain against the first", cmd_verify_chain);
  format_opt(chain);
  chain->add_option("manifest", o.in, "Manifest: kind<TAB>path<TAB>typeTagOrMethod per line")->required();

  auto* dist = sub("distance", "Feature distance between impressions; more than two form a migration chain",
                   cmd_distance);
  dist->add_option("files", o.files, "PGM files")->required();
  dist->add_option("--grid", o.grid, "Feature grid RxC");
  dist->add_option("--threshold", o.threshold, "Migration budget threshold")->check(CLI::NonNegativeNumber);
  dist->add_option("--vectors", o.vectors, "Write the feature vectors as CSV lines");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\nRun with --help for usage.\n";
    return kExitUsage;
  }
  try {
    return action ? action() : kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace infoid::cli
