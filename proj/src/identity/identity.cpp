#include "infoid/identity/identity.hpp"

#include <set>

#include "infoid/interpretation/digital.hpp"

namespace infoid {

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Identical: return "Identical";
    case Verdict::Different: return "Different";
    case Verdict::Undefined: return "Undefined";
  }
  return "Undefined";
}

namespace {

constexpr const char* kAbsent = "<absent>";

std::string alternatives_text(const SymbolOccurrence& o) {
  std::string s = "{";
  for (std::size_t i = 0; i < o.alternatives.size(); ++i) s += (i ? "," : "") + o.alternatives[i];
  return s + "}";
}

std::string describe(const Node& n) {
  if (const auto* c = n.container()) return "NODE " + c->kind;
  return "OCC " + alternatives_text(*n.occurrence());
}

void compare_maps(const std::map<std::string, std::string>& a, const std::map<std::string, std::string>& b,
                  const std::string& path, std::vector<DiffEntry>& out) {
  std::set<std::string> keys;
  for (const auto& [k, v] : a) keys.insert(k);
  for (const auto& [k, v] : b) keys.insert(k);
  for (const auto& k : keys) {
    auto ia = a.find(k);
    auto ib = b.find(k);
    std::string va = ia == a.end() ? kAbsent : ia->second;
    std::string vb = ib == b.end() ? kAbsent : ib->second;
    if (va != vb) out.push_back({path + "#" + k, va, vb});
  }
}

void compare(const Container& a, const Container& b, const std::string& path, std::vector<DiffEntry>& out) {
  if (a.kind != b.kind) out.push_back({path + "#kind", a.kind, b.kind});
  compare_maps(a.attrs, b.attrs, path, out);
  std::size_t n = std::max(a.children.size(), b.children.size());
  for (std::size_t i = 0; i < n; ++i) {
    std::string p = (path == "/" ? "" : path) + "/" + std::to_string(i);
    if (i >= a.children.size()) {
      out.push_back({p, kAbsent, describe(b.children[i])});
      continue;
    }
    if (i >= b.children.size()) {
      out.push_back({p, describe(a.children[i]), kAbsent});
      continue;
    }
    const Node& na = a.children[i];
    const Node& nb = b.children[i];
    if (na.container() && nb.container()) {
      compare(*na.container(), *nb.container(), p, out);
    } else if (na.occurrence() && nb.occurrence()) {
      const auto& oa = *na.occurrence();
      const auto& ob = *nb.occurrence();
      std::string ta = alternatives_text(SymbolOccurrence::of(oa.alternatives));
      std::string tb = alternatives_text(SymbolOccurrence::of(ob.alternatives));
      if (ta != tb) out.push_back({p + "#type", ta, tb});
      compare_maps(oa.style, ob.style, p, out);
    } else {
      out.push_back({p, describe(na), describe(nb)});
    }
  }
}

std::string lines_after_root(const CanonicalForm& f, const char* tag) {
  std::string out;
  std::size_t pos = 0;
  std::string prefix = std::string(tag) + " ";
  while (pos < f.bytes.size()) {
    auto nl = f.bytes.find('\n', pos);
    std::string line = f.bytes.substr(pos, nl - pos);
    if (line.rfind(prefix, 0) == 0) out += (out.empty() ? "" : ";") + line.substr(prefix.size());
    pos = nl + 1;
  }
  return out.empty() ? kAbsent : out;
}

}  // namespace

std::vector<DiffEntry> structure_diff(const SymbolStructure& a, const SymbolStructure& b) {
  std::vector<DiffEntry> out;
  if (a.format_id != b.format_id) out.push_back({"#format", a.format_id, b.format_id});
  compare(a.root, b.root, "/", out);
  CanonicalForm ca = canonicalize(a), cb = canonicalize(b);
  for (const char* tag : {"OVERLAP", "ANALOG"}) {
    std::string la = lines_after_root(ca, tag), lb = lines_after_root(cb, tag);
    if (la != lb) out.push_back({std::string("#") + (tag[0] == 'O' ? "overlaps" : "analog"), la, lb});
  }
  if (a.status != b.status) out.push_back({"#status", status_name(a.status), status_name(b.status)});
  return out;
}

IdentityVerdict identical(const SymbolStructure& a, const SymbolStructure& b) {
  if (a.format_id != b.format_id)
    throw IdentityError(IdentityErrc::FormatMismatch, "structures were extracted under different formats (" + a.format_id +
                                                          " vs " + b.format_id + "); they are different information objects");
  IdentityVerdict v;
  bool same = canonicalize(a).bytes == canonicalize(b).bytes;
  if (!same) v.diff = structure_diff(a, b);
  if (a.status == StructureStatus::Undefined || b.status == StructureStatus::Undefined) {
    v.value = Verdict::Undefined;
  } else {
    v.value = same ? Verdict::Identical : Verdict::Different;
  }
  return v;
}

bool incorporates(const DigitalObject& obj, const SymbolStructure& s, const InformationFormat& format,
                  const FormatRegistry& registry) {
  return identical(digital_interpret(obj, format, registry), s).value == Verdict::Identical;
}

}  // namespace infoid
