// Copyright 2026 The tpp authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TPP_PATTERN_HPP_
#define TPP_PATTERN_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tpp/errors.hpp"

namespace tpp {

// Model time is dimensionless; windows start at 0.
using TimeStamp = double;

struct Event {
  TimeStamp time = 0.0;
  std::optional<double> mark;  // present iff the owning pattern is marked
};

// Observation interval [0, t_end).
struct ObservationWindow {
  TimeStamp t_end = 0.0;
};

// A simple temporal point pattern: strictly increasing event times inside
// [0, t_end), either all events marked or none. Build one through
// validate_pattern so the invariants hold by construction.
struct PointPattern {
  std::vector<Event> events;
  ObservationWindow window;
  bool marked = false;

  std::size_t size() const { return events.size(); }
  bool empty() const { return events.empty(); }
};

// Read-only prefix of a pattern: all events strictly before a query time.
using HistoryView = std::span<const Event>;

inline HistoryView history_before(const PointPattern& pattern, TimeStamp t) {
  auto it = std::lower_bound(
      pattern.events.begin(), pattern.events.end(), t,
      [](const Event& e, TimeStamp v) { return e.time < v; });
  return HistoryView(pattern.events.data(),
                     static_cast<std::size_t>(it - pattern.events.begin()));
}

using RawEvent = std::pair<TimeStamp, std::optional<double>>;

// Checks a raw event list against the simple-point-process contract and
// returns the validated pattern. Times must already be sorted; nothing is
// reordered here. `expect_marked` pins the markedness when the caller
// knows it independently of the rows (a `time,mark` header over zero
// rows is still a marked pattern).
inline PointPattern validate_pattern(
    std::span<const RawEvent> raw_events, ObservationWindow window,
    std::optional<bool> expect_marked = std::nullopt) {
  if (!std::isfinite(window.t_end) || !(window.t_end > 0.0)) {
    throw NonFiniteValue("observation window must have finite t_end > 0");
  }
  PointPattern pattern;
  pattern.window = window;
  pattern.events.reserve(raw_events.size());

  bool any_marked = false;
  bool any_unmarked = false;
  TimeStamp prev = -1.0;
  for (std::size_t i = 0; i < raw_events.size(); ++i) {
    const auto& [time, mark] = raw_events[i];
    if (!std::isfinite(time)) {
      throw NonFiniteValue("event time at row " + std::to_string(i) +
                           " is not finite");
    }
    if (time < 0.0 || time >= window.t_end) {
      throw OutOfWindow("event time " + std::to_string(time) +
                        " outside [0, " + std::to_string(window.t_end) + ")");
    }
    if (i > 0) {
      if (time == prev) {
        throw DuplicateTime("two events share time " + std::to_string(time));
      }
      if (time < prev) {
        throw UnsortedTimes("event times must be strictly increasing");
      }
    }
    if (mark.has_value()) {
      if (!std::isfinite(*mark)) {
        throw NonFiniteValue("mark at row " + std::to_string(i) +
                             " is not finite");
      }
      if (*mark < 0.0) {
        throw DataError("mark at row " + std::to_string(i) +
                        " is negative");
      }
      any_marked = true;
    } else {
      any_unmarked = true;
    }
    pattern.events.push_back(Event{time, mark});
    prev = time;
  }
  if (any_marked && any_unmarked) {
    throw MixedMarks("some events carry marks and some do not");
  }
  if (expect_marked.has_value()) {
    if ((any_marked && !*expect_marked) || (any_unmarked && *expect_marked)) {
      throw MixedMarks("event marks disagree with the declared markedness");
    }
    pattern.marked = *expect_marked;
  } else {
    pattern.marked = any_marked;
  }
  return pattern;
}

inline PointPattern validate_pattern(
    const std::vector<RawEvent>& raw_events, ObservationWindow window,
    std::optional<bool> expect_marked = std::nullopt) {
  return validate_pattern(std::span<const RawEvent>(raw_events), window,
                          expect_marked);
}

}  // namespace tpp

#endif  // TPP_PATTERN_HPP_
