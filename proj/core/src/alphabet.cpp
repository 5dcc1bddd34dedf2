#include "decmon/alphabet.hpp"

#include <algorithm>

namespace decmon {

namespace {
const char* kEmptySet = "∅";
}

PartitionError::PartitionError(Kind k, std::string d)
    : std::runtime_error("partition error: " + d), kind(k), detail(std::move(d)) {}

DistributedAlphabet::DistributedAlphabet(std::vector<std::string> aps,
                                         std::vector<std::vector<int>> blocks)
    : names_(std::move(aps)) {
  if (static_cast<int>(names_.size()) > kMaxProps)
    throw PartitionError(PartitionError::Kind::TooLarge,
                         "more than " + std::to_string(kMaxProps) + " propositions");
  if (static_cast<int>(blocks.size()) > kMaxProps)
    throw PartitionError(PartitionError::Kind::TooLarge,
                         "more than " + std::to_string(kMaxProps) + " components");
  for (size_t i = 0; i < names_.size(); ++i)
    for (size_t j = i + 1; j < names_.size(); ++j)
      if (names_[i] == names_[j])
        throw PartitionError(PartitionError::Kind::Overlap,
                             "duplicate proposition name '" + names_[i] + "'");

  owner_.assign(names_.size(), -1);
  component_masks_.reserve(blocks.size());
  for (size_t c = 0; c < blocks.size(); ++c) {
    if (blocks[c].empty())
      throw PartitionError(PartitionError::Kind::EmptyBlock,
                           "component " + std::to_string(c + 1) + " observes nothing");
    Event mask = 0;
    for (int p : blocks[c]) {
      if (p < 0 || p >= n_props())
        throw PartitionError(PartitionError::Kind::Uncovered,
                             "proposition id " + std::to_string(p) + " out of range");
      if (owner_[p] != -1)
        throw PartitionError(PartitionError::Kind::Overlap,
                             "proposition '" + names_[p] + "' observed by components " +
                                 std::to_string(owner_[p] + 1) + " and " +
                                 std::to_string(c + 1));
      owner_[p] = static_cast<int>(c);
      mask |= (1u << p);
    }
    component_masks_.push_back(mask);
  }
  for (int p = 0; p < n_props(); ++p)
    if (owner_[p] == -1)
      throw PartitionError(PartitionError::Kind::Uncovered,
                           "proposition '" + names_[p] + "' observed by no component");
}

DistributedAlphabet DistributedAlphabet::centralized(std::vector<std::string> aps) {
  std::vector<int> all(aps.size());
  for (size_t i = 0; i < aps.size(); ++i) all[i] = static_cast<int>(i);
  return DistributedAlphabet(std::move(aps), {all});
}

int DistributedAlphabet::prop_id(const std::string& name) const {
  for (int p = 0; p < n_props(); ++p)
    if (names_[p] == name) return p;
  return -1;
}

Event DistributedAlphabet::observed_mask(ComponentSet s) const {
  Event m = 0;
  for (int c = 0; c < n_components(); ++c)
    if (s & (1u << c)) m |= component_masks_[c];
  return m;
}

std::string DistributedAlphabet::render_event(Event e) const {
  if (e == 0) return kEmptySet;
  std::string out = "{";
  bool first = true;
  for (int p = 0; p < n_props(); ++p) {
    if (!(e & (1u << p))) continue;
    if (!first) out += ",";
    out += names_[p];
    first = false;
  }
  out += "}";
  return out;
}

std::string DistributedAlphabet::render_components(ComponentSet s) {
  std::string out = "{";
  bool first = true;
  for (int c = 0; c < 32; ++c) {
    if (!(s & (1u << c))) continue;
    if (!first) out += ",";
    out += std::to_string(c + 1);
    first = false;
  }
  out += "}";
  return out;
}

Event DistributedAlphabet::parse_event(const std::string& text) const {
  std::string body = text;
  // Trim surrounding whitespace.
  auto ltrim = body.find_first_not_of(" \t");
  auto rtrim = body.find_last_not_of(" \t");
  if (ltrim == std::string::npos) throw EventParseError("empty event text");
  body = body.substr(ltrim, rtrim - ltrim + 1);
  if (body == kEmptySet || body == "{}") return 0;
  if (body.size() < 2 || body.front() != '{' || body.back() != '}')
    throw EventParseError("event must be {p,...} or {}: got '" + text + "'");
  body = body.substr(1, body.size() - 2);
  Event e = 0;
  size_t pos = 0;
  while (pos <= body.size()) {
    size_t comma = body.find(',', pos);
    std::string name = body.substr(pos, comma == std::string::npos ? std::string::npos
                                                                   : comma - pos);
    auto l = name.find_first_not_of(" \t");
    if (l == std::string::npos) throw EventParseError("empty proposition in '" + text + "'");
    auto r = name.find_last_not_of(" \t");
    name = name.substr(l, r - l + 1);
    int p = prop_id(name);
    if (p < 0) throw EventParseError("unknown proposition '" + name + "'");
    e |= (1u << p);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return e;
}

}  // namespace decmon
