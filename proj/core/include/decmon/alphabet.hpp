#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace decmon {

// An event is the set of atomic propositions observed true at one instant,
// packed as a bitmask over proposition ids. At most 31 propositions.
using Event = std::uint32_t;

// A set of component indices (0-based), packed as a bitmask. At most 31
// components.
using ComponentSet = std::uint32_t;

inline constexpr int kMaxProps = 31;

struct PartitionError : std::runtime_error {
  enum class Kind { Overlap, EmptyBlock, Uncovered, TooLarge };
  Kind kind;
  std::string detail;
  PartitionError(Kind k, std::string d);
};

// Atomic propositions partitioned over components: every proposition is
// observed by exactly one component. Component and proposition ids are
// 0-based internally; human-facing renderings are 1-based for components.
class DistributedAlphabet {
 public:
  // Throws PartitionError unless `blocks` is a partition of [0..aps.size())
  // into non-empty parts (one per component).
  DistributedAlphabet(std::vector<std::string> aps,
                      std::vector<std::vector<int>> blocks);

  // Single-component alphabet observing everything.
  static DistributedAlphabet centralized(std::vector<std::string> aps);

  int n_props() const { return static_cast<int>(names_.size()); }
  int n_components() const { return static_cast<int>(component_masks_.size()); }
  const std::string& prop_name(int p) const { return names_.at(p); }

  // -1 if no proposition has that name.
  int prop_id(const std::string& name) const;

  // Propositions observed by one component.
  Event component_mask(int i) const { return component_masks_.at(i); }
  // Component observing proposition p.
  int component_of(int p) const { return owner_.at(p); }

  // Union of the proposition sets observed by the components in s.
  Event observed_mask(ComponentSet s) const;

  // All components: bits 0..n_components-1.
  ComponentSet all_components() const {
    return static_cast<ComponentSet>((1u << n_components()) - 1);
  }

  Event full_event_mask() const {
    return n_props() == 0 ? 0 : static_cast<Event>((1u << n_props()) - 1);
  }

  // Restriction of an event to what the components in s can see.
  Event project(ComponentSet s, Event e) const { return e & observed_mask(s); }

  // "{a,b}" or the empty-set symbol. Propositions in id order.
  std::string render_event(Event e) const;
  // Set notation for a component set, 1-based: "{1,3}".
  static std::string render_components(ComponentSet s);

  // Parses "{a,b}", "{}", or the empty-set symbol. Throws PartitionError-free
  // std::runtime_error-derived EventParseError on unknown props / bad syntax.
  Event parse_event(const std::string& text) const;

 private:
  std::vector<std::string> names_;
  std::vector<Event> component_masks_;
  std::vector<int> owner_;  // prop id -> component id
};

struct EventParseError : std::runtime_error {
  explicit EventParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace decmon
