#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace trisect {

enum class Color { Red, Blue, Green };

const char* color_name(Color c);
Color parse_color(const std::string& s);
// true when (a, b) is one of (Red,Blue), (Blue,Green), (Green,Red)
bool color_first(Color a, Color b);

struct Curve {
  std::string id;
  Color color = Color::Red;
  std::vector<std::string> visits;  // cyclic; index 0 follows the basepoint
};

struct CrossingEnd {
  std::string curve;
  int index = 0;
  bool operator==(const CrossingEnd&) const = default;
};

// ends[0] lies on the curve whose colour comes first in the cyclic colour
// order; sign is the sign of det(first', second') at the crossing.
struct Crossing {
  std::string id;
  std::array<CrossingEnd, 2> ends;
  int sign = 1;
  bool operator==(const Crossing&) const = default;
};

enum class Kind { Closed, Disc };

struct TrisectionDiagram {
  int genus = 0;
  Kind kind = Kind::Closed;
  std::vector<Curve> curves;
  std::vector<Crossing> crossings;
  std::optional<int> declared_k;

  int curve_index(const std::string& id) const;     // -1 if absent
  int crossing_index(const std::string& id) const;  // -1 if absent
  const Curve& curve(const std::string& id) const;
  const Crossing& crossing(const std::string& id) const;
  std::vector<int> curves_of(Color c) const;
};

bool operator==(const Curve& a, const Curve& b);
bool operator==(const TrisectionDiagram& a, const TrisectionDiagram& b);

// (left, right) region of one segment; segment i runs from visit i to visit i+1
using Sides = std::pair<std::string, std::string>;

struct EmbeddedDiagram {
  TrisectionDiagram base;
  std::vector<std::string> regions;
  std::map<std::string, std::vector<Sides>> segment_sides;  // curve id -> per segment
  std::optional<std::string> boundary_region;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate(const TrisectionDiagram& d, bool strict = true);
ValidationReport validate(const EmbeddedDiagram& e, bool strict = true);
// local corner consistency of the region data only
std::vector<std::string> check_corners(const EmbeddedDiagram& e);

int euler_characteristic(int g, int k);

// catalog
TrisectionDiagram standard_s4();
TrisectionDiagram cp2();
TrisectionDiagram cp2bar();
TrisectionDiagram crossing_free(int g);
EmbeddedDiagram embedded_s4();
EmbeddedDiagram embedded_cp2();
EmbeddedDiagram embedded_cp2bar();
EmbeddedDiagram embedded_crossing_free();  // genus 1
std::vector<std::string> catalog_names();
TrisectionDiagram catalog(const std::string& name);
std::optional<EmbeddedDiagram> embedded_catalog(const std::string& name);

TrisectionDiagram connected_sum(const TrisectionDiagram& a, const TrisectionDiagram& b);
// glues region rb of b into region ra of a
EmbeddedDiagram connected_sum(const EmbeddedDiagram& a, const std::string& ra, const EmbeddedDiagram& b,
                              const std::string& rb);
TrisectionDiagram remove_disc(const TrisectionDiagram& d);
EmbeddedDiagram remove_disc(const EmbeddedDiagram& e, const std::string& region);

// ends ordered by colour; serialize(parse(f)) equals normalize(f)
TrisectionDiagram normalize(TrisectionDiagram d);
// crossings renamed x0, x1, ... in order of first appearance along the curves
TrisectionDiagram canonical_labels(const TrisectionDiagram& d);
bool same_up_to_relabeling(const TrisectionDiagram& a, const TrisectionDiagram& b);

std::string serialize(const TrisectionDiagram& d);
std::string serialize(const EmbeddedDiagram& e);
EmbeddedDiagram parse_embedded(const std::string& text, bool strict = true);
TrisectionDiagram parse_diagram(const std::string& text, bool strict = true);
// catalog name or file path
EmbeddedDiagram load_diagram(const std::string& name_or_path, bool strict = true);

}  // namespace trisect
