#include "infoid/format/alphabet.hpp"

#include "infoid/format/registry.hpp"

namespace infoid {

char32_t latin_upper(char32_t cp) {
  if (cp >= U'a' && cp <= U'z') return cp - 32;
  if (cp >= 0xE0 && cp <= 0xFE && cp != 0xF7) return cp - 32;
  return cp;
}

char32_t latin_lower(char32_t cp) {
  if (cp >= U'A' && cp <= U'Z') return cp + 32;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 32;
  return cp;
}

Alphabet::Alphabet(const FormatRegistry& registry, const InformationFormat& format)
    : case_sensitive_(format.meaningful.case_sensitive) {
  std::map<char32_t, std::string> raw_by_cp;
  for (const auto& set_id : format.type_set_ids) {
    for (const auto& t : registry.get_type_set(set_id).members) {
      if (effective_.count(t.id)) continue;
      effective_[t.id] = t.id;
      render_[t.id] = t.id;
      if (t.separator) separators_.insert(t.id);
      if (t.code_point) {
        raw_by_cp.emplace(*t.code_point, t.id);
        code_point_of_.emplace(t.id, *t.code_point);
      }
    }
  }
  if (!case_sensitive_) {
    for (const auto& [cp, id] : raw_by_cp) {
      char32_t up = latin_upper(cp);
      if (up == cp) continue;
      auto upper = raw_by_cp.find(up);
      if (upper != raw_by_cp.end()) {
        effective_[id] = upper->second;
        render_.erase(id);
      }
    }
  }
  for (const auto& m : format.merges) {
    for (const auto& src : m.sources) {
      for (auto& [member, eff] : effective_)
        if (eff == src) eff = m.merged;
      render_.erase(src);
    }
    if (!m.sources.empty()) {
      render_[m.merged] = m.sources.back();
      auto cp = code_point_of_.find(m.sources.back());
      if (cp != code_point_of_.end()) code_point_of_[m.merged] = cp->second;
    }
  }
  for (const auto& [member, eff] : effective_) types_.insert(eff);
  for (auto it = code_point_of_.begin(); it != code_point_of_.end();) {
    it = types_.count(it->first) ? std::next(it) : code_point_of_.erase(it);
  }
  for (const auto& [cp, id] : raw_by_cp) by_code_point_[cp] = effective_.at(id);
}

std::optional<std::string> Alphabet::effective(std::string_view type_id) const {
  auto it = effective_.find(std::string(type_id));
  if (it == effective_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::string> Alphabet::type_for_code_point(char32_t cp) const {
  auto it = by_code_point_.find(cp);
  if (it == by_code_point_.end() && !case_sensitive_) it = by_code_point_.find(latin_upper(cp));
  if (it == by_code_point_.end()) return std::nullopt;
  return it->second;
}

std::optional<char32_t> Alphabet::code_point_for(std::string_view effective_id) const {
  auto it = code_point_of_.find(std::string(effective_id));
  if (it == code_point_of_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::string> Alphabet::render_type(std::string_view effective_id) const {
  auto it = render_.find(std::string(effective_id));
  if (it == render_.end()) return std::nullopt;
  return it->second;
}

bool Alphabet::is_separator(std::string_view effective_id) const {
  return separators_.count(std::string(effective_id)) != 0;
}

char32_t Alphabet::fold(char32_t cp) const { return case_sensitive_ ? cp : latin_lower(cp); }

}  // namespace infoid
